#pragma once

#include "jumpfall/scanners/checkpoint.hpp"
#include "jumpfall/scanners/glide_records.hpp"
#include "jumpfall/scanners/histogram.hpp"
#include "jumpfall/scanners/mersenne.hpp"
#include "jumpfall/scanners/neighborhood.hpp"
#include "jumpfall/scanners/random_search.hpp"
#include "jumpfall/scanners/records.hpp"
