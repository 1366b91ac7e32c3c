#include "jumpfall/cli/expr.hpp"

#include <stdexcept>
#include <string>

namespace jumpfall::cli {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::uint64_t small_decimal(std::string_view s, std::string_view whole) {
  if (!all_digits(s) || s.size() > 19) {
    throw std::invalid_argument("bad number expression '" + std::string(whole) + "'");
  }
  return std::stoull(std::string(s));
}

}  // namespace

Nat parse_nat_expr(std::string_view text) {
  if (all_digits(text)) return Nat::from_decimal(text);
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) throw std::invalid_argument("bad number '" + std::string(text) + "'");
  const std::string_view base = text.substr(0, caret);
  std::string_view rest = text.substr(caret + 1);
  const auto sign = rest.find_first_of("+-");
  const std::string_view exp = rest.substr(0, sign);
  Nat value = Nat::pow(small_decimal(base, text), small_decimal(exp, text));
  if (sign == std::string_view::npos) return value;
  const std::string_view offset = rest.substr(sign + 1);
  if (!all_digits(offset)) throw std::invalid_argument("bad number expression '" + std::string(text) + "'");
  const Nat c = Nat::from_decimal(offset);
  if (rest[sign] == '+') return value + c;
  if (value < c) throw std::invalid_argument("negative value '" + std::string(text) + "'");
  return value - c;
}

std::pair<Nat, Nat> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) throw std::invalid_argument("range must be LO..HI, got '" + std::string(text) + "'");
  Nat lo = parse_nat_expr(text.substr(0, dots));
  Nat hi = parse_nat_expr(text.substr(dots + 2));
  if (hi < lo) throw std::invalid_argument("range '" + std::string(text) + "' has LO > HI");
  return {std::move(lo), std::move(hi)};
}

std::pair<std::uint64_t, std::uint64_t> parse_range_u64(std::string_view text) {
  auto [lo, hi] = parse_range(text);
  if (!hi.fits_u64()) throw std::invalid_argument("range '" + std::string(text) + "' exceeds 64 bits");
  return {lo.to_u64(), hi.to_u64()};
}

}  // namespace jumpfall::cli
