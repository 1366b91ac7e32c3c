#include "jumpfall/scanners/records.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "jumpfall/digest.hpp"
#include "jumpfall/parallel.hpp"
#include "jumpfall/residue_sieve.hpp"
#include "jumpfall/scanners/checkpoint.hpp"

namespace jumpfall {

namespace {

struct Candidate {
  std::uint64_t n;
  int value;
};

struct ChunkResult {
  std::vector<Candidate> ft_records;
  std::vector<Candidate> new_ft;
  std::vector<Candidate> sft_records;
  std::optional<std::uint64_t> exhausted_at;
};

bool wants(const RecordScanConfig& c, RecordKind k) {
  return std::find(c.kinds.begin(), c.kinds.end(), k) != c.kinds.end();
}

ChunkResult scan_chunk(const RecordScanConfig& config, std::uint64_t a, std::uint64_t b) {
  ChunkResult out;
  const bool ft = wants(config, RecordKind::FtRecord) || wants(config, RecordKind::NewFt);
  const bool sft = wants(config, RecordKind::SftRecord);
  int ft_max = 0;
  int sft_max = 0;
  std::set<int> seen;
  bool stop = false;
  for_each_in_filter(config.filter, a, b, [&](std::uint64_t n) {
    if (stop) return;
    if (ft) {
      const auto v = falling_time_value(JumpKind::Jump, n, 1, config.budget);
      if (!v) {
        out.exhausted_at = n;
        stop = true;
        return;
      }
      if (*v > ft_max) {
        ft_max = *v;
        out.ft_records.push_back({n, *v});
      }
      if (seen.insert(*v).second) out.new_ft.push_back({n, *v});
    }
    if (sft && n >= 7 && (n & 1)) {
      const auto v = falling_time_value(JumpKind::SyracuseJump, n, 1, config.budget);
      if (!v) {
        out.exhausted_at = n;
        stop = true;
        return;
      }
      if (*v > sft_max) {
        sft_max = *v;
        out.sft_records.push_back({n, *v});
      }
    }
  });
  return out;
}

struct MergeState {
  std::uint64_t chunks_done = 0;
  std::uint64_t last_completed = 0;
  int ft_max = 0;
  int sft_max = 0;
  std::set<int> seen;
  std::vector<RecordEntry> records;

  ScanCheckpoint to_checkpoint(const std::string& id, const std::string& hash) const {
    return {id, hash, chunks_done, last_completed, ft_max, sft_max, {seen.begin(), seen.end()}, records};
  }
};

RecordEntry make_entry(std::uint64_t n, int value, RecordKind kind) {
  return {Nat(n), static_cast<std::uint64_t>(std::bit_width(n)), value, kind};
}

void merge_chunk(const RecordScanConfig& config, MergeState& state, const ChunkResult& chunk) {
  std::vector<RecordEntry> accepted;
  const auto stop_at = chunk.exhausted_at.value_or(~std::uint64_t{0});
  if (wants(config, RecordKind::FtRecord)) {
    for (const Candidate& c : chunk.ft_records) {
      if (c.n < stop_at && c.value > state.ft_max) {
        state.ft_max = c.value;
        accepted.push_back(make_entry(c.n, c.value, RecordKind::FtRecord));
      }
    }
  }
  for (const Candidate& c : chunk.new_ft) {
    if (c.n >= stop_at) break;
    // The running ft maximum is also tracked when only new-ft is requested.
    state.ft_max = std::max(state.ft_max, c.value);
    if (state.seen.insert(c.value).second && wants(config, RecordKind::NewFt)) {
      accepted.push_back(make_entry(c.n, c.value, RecordKind::NewFt));
    }
  }
  for (const Candidate& c : chunk.sft_records) {
    if (c.n < stop_at && c.value > state.sft_max) {
      state.sft_max = c.value;
      accepted.push_back(make_entry(c.n, c.value, RecordKind::SftRecord));
    }
  }
  std::stable_sort(accepted.begin(), accepted.end(), [](const RecordEntry& x, const RecordEntry& y) {
    if (x.n != y.n) return x.n < y.n;
    return x.kind < y.kind;
  });
  for (RecordEntry& e : accepted) state.records.push_back(std::move(e));
  if (chunk.exhausted_at) {
    throw BudgetExhaustedError("falling-time budget exhausted at n = " + std::to_string(*chunk.exhausted_at));
  }
}

}  // namespace

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::FtRecord:
      return "ft-record";
    case RecordKind::NewFt:
      return "new-ft";
    case RecordKind::SftRecord:
      return "sft-record";
  }
  return "?";
}

RecordKind parse_record_kind(std::string_view text) {
  if (text == "ft-record") return RecordKind::FtRecord;
  if (text == "new-ft") return RecordKind::NewFt;
  if (text == "sft-record") return RecordKind::SftRecord;
  throw std::invalid_argument("unknown record kind '" + std::string(text) + "'");
}

ScanFilter ScanFilter::parse(std::string_view text) {
  if (text == "mod4eq3") return mod4eq3();
  if (text == "odd") return odd();
  constexpr std::string_view prefix = "persistent";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string digits(text.substr(prefix.size()));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int k = std::stoi(digits);
      if (k >= 1 && k <= kMaxEnumerationBits) return persistent(k);
    }
  }
  throw std::invalid_argument("unknown filter '" + std::string(text) + "' (mod4eq3, odd, persistent<k>)");
}

std::string ScanFilter::to_string() const {
  switch (kind) {
    case FilterKind::Mod4Eq3:
      return "mod4eq3";
    case FilterKind::Odd:
      return "odd";
    case FilterKind::Persistent:
      return "persistent" + std::to_string(persist_k);
  }
  return "?";
}

std::string RecordScanConfig::canonical() const {
  std::ostringstream out;
  out << "records;lo=" << lo << ";hi=" << hi << ";filter=" << filter.to_string() << ";kinds=";
  std::vector<RecordKind> sorted = kinds;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) out << (i ? "," : "") << jumpfall::to_string(sorted[i]);
  out << ";max-jumps=" << budget.max_jumps << ";max-bits=";
  if (budget.max_bits) {
    out << *budget.max_bits;
  } else {
    out << "auto";
  }
  out << ";chunk=" << chunk_size << ";seed-ft-max=" << seed.ft_max << ";seed-sft-max=" << seed.sft_max
      << ";seed-seen=";
  for (std::size_t i = 0; i < seed.seen_ft.size(); ++i) out << (i ? "," : "") << seed.seen_ft[i];
  return out.str();
}

std::string RecordScanConfig::hash() const { return config_digest(canonical()); }

void for_each_in_filter(const ScanFilter& filter, std::uint64_t a, std::uint64_t b,
                        const std::function<void(std::uint64_t)>& fn) {
  if (a > b) return;
  switch (filter.kind) {
    case FilterKind::Mod4Eq3:
    case FilterKind::Odd: {
      const std::uint64_t step = filter.kind == FilterKind::Odd ? 2 : 4;
      const std::uint64_t want = filter.kind == FilterKind::Odd ? 1 : 3;
      std::uint64_t n = a + ((want + step - a % step) % step);
      for (; n <= b && n >= a; n += step) fn(n);
      return;
    }
    case FilterKind::Persistent: {
      const PersistentSet& set = cached_persistent_set(filter.persist_k);
      const std::uint64_t modulus = std::uint64_t{1} << set.k();
      const auto& residues = set.residues();
      for (std::uint64_t base = a - a % modulus; base <= b; base += modulus) {
        auto it = residues.begin();
        if (base < a) it = std::lower_bound(residues.begin(), residues.end(), a - base);
        for (; it != residues.end(); ++it) {
          const std::uint64_t n = base + *it;
          if (n > b) break;
          fn(n);
        }
      }
      return;
    }
  }
}

std::vector<RecordEntry> scan_records(const RecordScanConfig& config, const ScanOptions& options) {
  if (config.lo < 3 || config.lo > config.hi) throw std::invalid_argument("record scan: need 3 <= lo <= hi");
  if (config.chunk_size == 0) throw std::invalid_argument("record scan: chunk size must be positive");
  if (config.kinds.empty()) throw std::invalid_argument("record scan: no record kinds requested");

  const std::string hash = config.hash();
  const std::uint64_t span = config.hi - config.lo;
  const std::uint64_t total_chunks = span / config.chunk_size + 1;

  MergeState state;
  state.ft_max = config.seed.ft_max;
  state.sft_max = config.seed.sft_max;
  state.seen.insert(config.seed.seen_ft.begin(), config.seed.seen_ft.end());

  if (options.checkpoint) {
    if (auto cp = read_checkpoint(*options.checkpoint)) {
      if (cp->config_hash != hash) {
        throw ScanError("checkpoint " + options.checkpoint->string() + " was written for config " +
                        cp->config_hash + ", current config is " + hash + "; refusing to resume");
      }
      if (cp->chunks_done > total_chunks) throw ScanError("checkpoint is ahead of the configured range");
      state.chunks_done = cp->chunks_done;
      state.last_completed = cp->last_completed;
      state.ft_max = cp->ft_max;
      state.sft_max = cp->sft_max;
      state.seen = {cp->seen_ft.begin(), cp->seen_ft.end()};
      state.records = std::move(cp->records);
    }
  }

  const auto chunk_bounds = [&](std::uint64_t i) {
    const std::uint64_t a = config.lo + i * config.chunk_size;
    const std::uint64_t b = (config.hi - a < config.chunk_size - 1) ? config.hi : a + config.chunk_size - 1;
    return std::pair{a, b};
  };

  const std::uint64_t window = static_cast<std::uint64_t>(std::max(1, config.workers)) * 2;
  while (state.chunks_done < total_chunks) {
    const std::uint64_t first = state.chunks_done;
    const std::uint64_t count = std::min(window, total_chunks - first);
    std::vector<ChunkResult> results(count);
    parallel_for(count, config.workers, [&](std::size_t i) {
      const auto [a, b] = chunk_bounds(first + i);
      results[i] = scan_chunk(config, a, b);
    });
    for (std::uint64_t i = 0; i < count; ++i) {
      merge_chunk(config, state, results[i]);
      ++state.chunks_done;
      state.last_completed = chunk_bounds(first + i).second;
      if (options.checkpoint) {
        write_checkpoint(*options.checkpoint, state.to_checkpoint(options.scan_id, hash));
      }
      if (options.after_chunk) options.after_chunk(state.chunks_done);
    }
  }
  return state.records;
}

namespace {

std::vector<RecordEntry> scan_one(std::uint64_t lo, std::uint64_t hi, ScanFilter filter, RecordKind kind) {
  RecordScanConfig c;
  c.lo = lo;
  c.hi = hi;
  c.filter = filter;
  c.kinds = {kind};
  return scan_records(c);
}

}  // namespace

std::vector<RecordEntry> scan_ft_records(std::uint64_t lo, std::uint64_t hi, ScanFilter filter) {
  return scan_one(lo, hi, filter, RecordKind::FtRecord);
}

std::vector<RecordEntry> scan_new_ft(std::uint64_t lo, std::uint64_t hi, ScanFilter filter) {
  return scan_one(lo, hi, filter, RecordKind::NewFt);
}

std::vector<RecordEntry> scan_sft_records(std::uint64_t lo, std::uint64_t hi, ScanFilter filter) {
  return scan_one(lo, hi, filter, RecordKind::SftRecord);
}

void write_records_tsv(std::ostream& out, const std::vector<RecordEntry>& records) {
  for (const RecordEntry& r : records) {
    out << to_string(r.kind) << '\t' << r.n << '\t' << r.bit_length << '\t' << r.value << '\n';
  }
}

void write_records_jsonl(std::ostream& out, const std::vector<RecordEntry>& records) {
  for (const RecordEntry& r : records) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(r.kind);
    j["n"] = r.n.to_string();
    j["bit_length"] = r.bit_length;
    j["value"] = r.value;
    out << j.dump() << '\n';
  }
}

}  // namespace jumpfall
