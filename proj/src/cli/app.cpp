#include "jumpfall/cli/app.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jumpfall/cli/expr.hpp"
#include "jumpfall/cli/run_config.hpp"
#include "jumpfall/collatz_core.hpp"
#include "jumpfall/digest.hpp"
#include "jumpfall/jumps.hpp"
#include "jumpfall/residue_sieve.hpp"
#include "jumpfall/scanners.hpp"

namespace jumpfall::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AbortRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string env_name(const std::string& flag) {
  std::string out = kEnvPrefix;
  for (char c : flag) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

template <class T>
CLI::Option* option(CLI::App* app, const std::string& name, T& var, const std::string& help) {
  return app->add_option("--" + name, var, help)->envname(env_name(name));
}

struct Common {
  int max_jumps = kDefaultMaxJumps;
  std::optional<std::uint64_t> max_bits;
  std::uint64_t step_budget = kDefaultStepBudget;
  int workers = 1;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;

  FallingBudget budget() const { return {max_jumps, max_bits}; }
};

void add_common(CLI::App* app, Common& c, const std::string& formats) {
  option(app, "max-jumps", c.max_jumps, "jump budget per falling-time evaluation")->check(CLI::PositiveNumber);
  option(app, "max-bits", c.max_bits, "bit-length cap for jump values (default 4*bitlen(n)+64)");
  option(app, "step-budget", c.step_budget, "step budget for sigma and glide");
  option(app, "workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  option(app, "out", c.out_path, "output file (default stdout)");
  option(app, "format", c.format, "output format: " + formats);
  option(app, "seed", c.seed, "random seed");
}

RunConfig base_config(const std::string& command, const Common& c) {
  RunConfig cfg;
  cfg.command = command;
  cfg.max_jumps = c.max_jumps;
  cfg.max_bits = c.max_bits;
  cfg.step_budget = c.step_budget;
  cfg.workers = c.workers;
  cfg.output_path = c.out_path;
  cfg.seed = c.seed;
  return cfg;
}

std::string pick_format(const std::string& given, std::initializer_list<const char*> allowed) {
  if (given.empty()) return *allowed.begin();
  for (const char* f : allowed) {
    if (given == f) return given;
  }
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : "|") + std::string(f);
  throw UsageError("--format must be one of " + list + ", got '" + given + "'");
}

// Destination of a command's data: the --out file or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }

  std::ostream& stream() { return *os_; }

  void finish() {
    os_->flush();
    if (!*os_) throw std::runtime_error("failed writing output '" + (path_.empty() ? "<stdout>" : path_) + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_;
};

json config_json(const RunConfig& cfg) {
  json fields = json::object();
  std::istringstream in(cfg.canonical());
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return fields;
}

// Metadata header for tsv and jsonl data files. Contains nothing that varies
// between runs of the same configuration.
void write_header(std::ostream& out, const std::string& format, const RunConfig& cfg) {
  if (format == "jsonl") {
    json meta;
    meta["version"] = kVersion;
    meta["configHash"] = cfg.hash();
    meta["config"] = config_json(cfg);
    out << json{{"meta", meta}}.dump() << '\n';
    return;
  }
  out << "# jumpfall " << kVersion << '\n' << "# config-hash " << cfg.hash() << '\n';
  std::istringstream in(cfg.canonical());
  std::string line;
  while (std::getline(in, line)) out << "# " << line << '\n';
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Run metadata that is not part of the data file: written to stderr and,
// when there is an output file, to <out>.meta.json.
void write_run_metadata(const RunConfig& cfg, const Timer& timer, std::ostream& err, const json& extra = {}) {
  const double wall = timer.seconds();
  err << "jumpfall " << kVersion << ": " << cfg.command << " config-hash " << cfg.hash() << " wall "
      << std::fixed << std::setprecision(3) << wall << " s\n"
      << std::defaultfloat;
  if (cfg.output_path.empty()) return;
  json meta;
  meta["version"] = kVersion;
  meta["configHash"] = cfg.hash();
  meta["config"] = config_json(cfg);
  meta["workers"] = cfg.workers;
  if (cfg.seed) meta["seed"] = *cfg.seed;
  meta["wallSeconds"] = wall;
  if (!cfg.checkpoint_path.empty()) meta["checkpoint"] = cfg.checkpoint_path;
  for (const auto& [k, v] : extra.items()) meta[k] = v;
  std::ofstream side(cfg.output_path + ".meta.json", std::ios::trunc);
  if (!side) throw std::runtime_error("cannot write " + cfg.output_path + ".meta.json");
  side << meta.dump(2) << '\n';
}

Nat parse_n(const std::string& text) {
  try {
    return parse_nat_expr(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---- eval ----

struct EvalArgs {
  Common common;
  std::string n;
  std::string what;
  int h = 1;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> kWhat{"sigma", "glide", "ft", "sft", "ft_h", "sft_h", "jp", "sjp"};
  if (!kWhat.count(a.what)) throw UsageError("unknown quantity '" + a.what + "'");
  const std::string format = pick_format(a.common.format, {"tsv", "jsonl"});
  const Nat n = parse_n(a.n);
  json row;
  row["n"] = n.to_string();
  row["what"] = a.what;
  std::string value;
  std::string meta;
  bool exhausted = false;

  if (a.what == "sigma" || a.what == "glide") {
    const BudgetedResult r = a.what == "sigma" ? stopping_time(n, a.common.step_budget) : glide(n, a.common.step_budget);
    row["steps_used"] = r.steps_used;
    meta = "steps_used=" + std::to_string(r.steps_used);
    if (r.exhausted()) {
      exhausted = true;
    } else {
      value = std::to_string(*r.value);
    }
  } else if (a.what == "jp" || a.what == "sjp") {
    const JumpKind kind = a.what == "jp" ? JumpKind::Jump : JumpKind::SyracuseJump;
    value = jump_of(kind, n, a.h).to_string();
    row["h"] = a.h;
    meta = "h=" + std::to_string(a.h) + " bits=" + std::to_string(Nat::from_decimal(value).bit_length());
  } else {
    const JumpKind kind = a.what.rfind("sft", 0) == 0 ? JumpKind::SyracuseJump : JumpKind::Jump;
    const int h = a.what.ends_with("_h") ? a.h : 1;
    const FallingTimeResult r = falling_time_of(kind, n, h, a.common.budget());
    row["h"] = h;
    row["jumps_used"] = r.jumps_used;
    meta = "h=" + std::to_string(h) + " jumps_used=" + std::to_string(r.jumps_used);
    if (r.finite()) {
      value = std::to_string(r.k);
      row["witness"] = r.witness.to_string();
      meta += " witness=" + r.witness.to_string();
    } else {
      exhausted = true;
    }
  }

  if (exhausted) {
    row["value"] = nullptr;
    row["exhausted"] = true;
  } else {
    row["value"] = value;
  }
  if (format == "jsonl") {
    out << row.dump() << '\n';
  } else {
    out << (exhausted ? "exhausted" : value) << '\n';
    err << a.what << "(" << a.n << "): " << meta << '\n';
  }
  if (exhausted) throw ExhaustedError(a.what + "(" + a.n + "): budget exhausted");
  return kExitOk;
}

// ---- orbit ----

struct OrbitArgs {
  Common common;
  std::string n;
  std::string kind = "jump";
  int h = 1;
  int terms = 1000;
};

int cmd_orbit(const OrbitArgs& a, std::ostream& out, std::ostream& err) {
  const std::string format = pick_format(a.common.format, {"tsv", "jsonl"});
  if (a.kind != "jump" && a.kind != "syracuse") throw UsageError("--kind must be jump or syracuse");
  const JumpKind kind = a.kind == "jump" ? JumpKind::Jump : JumpKind::SyracuseJump;
  if (a.terms < 1) throw UsageError("--terms must be >= 1");
  Nat x = parse_n(a.n);
  const std::uint64_t limit = a.common.budget().bits_for(x.bit_length());

  // Stops after the first repeated value, which is printed.
  std::vector<Nat> terms{x};
  std::set<Nat> seen{x};
  bool capped = false;
  while (static_cast<int>(terms.size()) < a.terms) {
    x = jump_of(kind, x, a.h);
    terms.push_back(x);
    if (!seen.insert(x).second) break;
    if (x.bit_length() > limit) {
      capped = true;
      break;
    }
  }
  if (format == "jsonl") {
    json j;
    j["start"] = terms.front().to_string();
    j["kind"] = a.kind;
    j["h"] = a.h;
    j["terms"] = json::array();
    for (const Nat& t : terms) j["terms"].push_back(t.to_string());
    j["bits_exceeded"] = capped;
    out << j.dump() << '\n';
  } else {
    for (const Nat& t : terms) out << t << '\n';
  }
  if (capped) err << "orbit stopped: value exceeded " << limit << " bits\n";
  return kExitOk;
}

// ---- scan ----

std::vector<RecordKind> parse_kinds(const std::string& text) {
  std::vector<RecordKind> kinds;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    RecordKind k;
    if (item == "ft" || item == "ft-record") {
      k = RecordKind::FtRecord;
    } else if (item == "new-ft") {
      k = RecordKind::NewFt;
    } else if (item == "sft" || item == "sft-record") {
      k = RecordKind::SftRecord;
    } else {
      throw UsageError("unknown record kind '" + item + "'");
    }
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  }
  if (kinds.empty()) throw UsageError("--kinds is empty");
  std::sort(kinds.begin(), kinds.end());
  return kinds;
}

struct ScanArgs {
  Common common;
  std::string range;
  std::string filter = "mod4eq3";
  std::string kinds = "ft";
  std::uint64_t chunk_size = kDefaultChunkSize;
  std::string checkpoint;
  std::uint64_t abort_after_chunks = 0;
  int seed_ft_max = 0;
  int seed_sft_max = 0;
  std::vector<int> seed_seen_ft;
};

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  const Timer timer;
  const std::string format = pick_format(a.common.format, {"tsv", "jsonl"});
  RecordScanConfig sc;
  try {
    std::tie(sc.lo, sc.hi) = parse_range_u64(a.range);
    sc.filter = ScanFilter::parse(a.filter);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  sc.kinds = parse_kinds(a.kinds);
  sc.budget = a.common.budget();
  sc.chunk_size = a.chunk_size;
  sc.workers = a.common.workers;
  sc.seed.ft_max = a.seed_ft_max;
  sc.seed.sft_max = a.seed_sft_max;
  sc.seed.seen_ft = a.seed_seen_ft;
  std::sort(sc.seed.seen_ft.begin(), sc.seed.seen_ft.end());

  RunConfig cfg = base_config("scan", a.common);
  cfg.range = std::to_string(sc.lo) + ".." + std::to_string(sc.hi);
  cfg.checkpoint_path = a.checkpoint;
  cfg.params["filter"] = sc.filter.to_string();
  cfg.params["kinds"] = [&] {
    std::string s;
    for (RecordKind k : sc.kinds) s += (s.empty() ? "" : ",") + std::string(to_string(k));
    return s;
  }();
  cfg.params["chunk-size"] = std::to_string(sc.chunk_size);
  cfg.params["scan-hash"] = sc.hash();

  ScanOptions opts;
  if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
  if (a.abort_after_chunks > 0) {
    opts.after_chunk = [&](std::uint64_t done) {
      if (done >= a.abort_after_chunks) throw AbortRequested("aborted after " + std::to_string(done) + " chunks");
    };
  }
  std::vector<RecordEntry> records;
  try {
    records = scan_records(sc, opts);
  } catch (const BudgetExhaustedError& e) {
    throw ExhaustedError(e.what());
  }

  Sink sink(a.common.out_path, out);
  write_header(sink.stream(), format, cfg);
  if (format == "jsonl") {
    write_records_jsonl(sink.stream(), records);
  } else {
    write_records_tsv(sink.stream(), records);
  }
  sink.finish();
  write_run_metadata(cfg, timer, err, {{"records", records.size()}});
  return kExitOk;
}

// ---- histogram ----

struct HistogramArgs {
  Common common;
  std::string ell;
  std::string population = "odd";
};

int cmd_histogram(const HistogramArgs& a, std::ostream& out, std::ostream& err) {
  const Timer timer;
  const std::string format = pick_format(a.common.format, {"csv", "jsonl"});
  std::pair<std::uint64_t, std::uint64_t> ell;
  Population pop;
  try {
    ell = parse_range_u64(a.ell);
    pop = parse_population(a.population);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (ell.second > static_cast<std::uint64_t>(kMaxHistogramEll)) throw UsageError("--ell upper end too large");
  RunConfig cfg = base_config("histogram", a.common);
  cfg.params["ell"] = std::to_string(ell.first) + ".." + std::to_string(ell.second);
  cfg.params["population"] = std::string(to_string(pop));

  std::vector<HistogramRow> rows;
  try {
    rows = histogram(static_cast<int>(ell.first), static_cast<int>(ell.second), pop, a.common.budget(),
                     a.common.workers);
  } catch (const BudgetExhaustedError& e) {
    throw ExhaustedError(e.what());
  }
  Sink sink(a.common.out_path, out);
  if (format == "jsonl") {
    write_header(sink.stream(), format, cfg);
    write_histogram_jsonl(sink.stream(), rows);
  } else {
    write_histogram_csv(sink.stream(), rows);
  }
  sink.finish();
  json counts = json::array();
  for (const HistogramRow& r : rows) counts.push_back({r.ell, r.ft1, r.ft2, r.ft3plus});
  write_run_metadata(cfg, timer, err, {{"counts", counts}});
  return kExitOk;
}

// ---- mersenne ----

struct MersenneArgs {
  Common common;
  std::string ell;
  std::string kind = "ft";
};

int cmd_mersenne(const MersenneArgs& a, std::ostream& out, std::ostream& err) {
  const Timer timer;
  const std::string format = pick_format(a.common.format, {"tsv", "jsonl"});
  if (a.kind != "ft" && a.kind != "sft") throw UsageError("--kind must be ft or sft");
  std::pair<std::uint64_t, std::uint64_t> ell;
  try {
    ell = parse_range_u64(a.ell);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  RunConfig cfg = base_config("mersenne", a.common);
  cfg.params["ell"] = std::to_string(ell.first) + ".." + std::to_string(ell.second);
  cfg.params["kind"] = a.kind;
  const JumpKind kind = a.kind == "ft" ? JumpKind::Jump : JumpKind::SyracuseJump;
  const auto rows = mersenne_probe(ell.first, ell.second, kind, a.common.budget(), a.common.workers);

  Sink sink(a.common.out_path, out);
  write_header(sink.stream(), format, cfg);
  std::uint64_t exhausted = 0;
  for (const MersenneRow& r : rows) {
    if (!r.value) ++exhausted;
  }
  if (format == "jsonl") {
    for (const MersenneRow& r : rows) {
      json j;
      j["ell"] = r.ell;
      j["value"] = r.value ? json(*r.value) : json(nullptr);
      j["jumps_used"] = r.jumps_used;
      sink.stream() << j.dump() << '\n';
    }
  } else {
    write_mersenne_tsv(sink.stream(), rows);
  }
  sink.finish();
  write_run_metadata(cfg, timer, err, {{"exhausted", exhausted}});
  if (exhausted) throw ExhaustedError(std::to_string(exhausted) + " value(s) of l exhausted the budget");
  return kExitOk;
}

// ---- neighborhood ----

struct NeighborhoodArgs {
  Common common;
  std::string seed_n;
  int i_max = 0;
  int j_max = 0;
  int persist_k = 24;
  int threshold = 0;
  std::uint64_t node_cap = kDefaultNodeCap;
};

int cmd_neighborhood(const NeighborhoodArgs& a, std::ostream& out, std::ostream& err) {
  const Timer timer;
  const std::string format = pick_format(a.common.format, {"tsv", "jsonl"});
  NeighborhoodConfig nc;
  nc.seed = parse_n(a.seed_n);
  nc.i_max = a.i_max;
  nc.j_max = a.j_max;
  nc.persist_k = a.persist_k;
  nc.ft_threshold = a.threshold;
  nc.node_cap = a.node_cap;
  nc.budget = a.common.budget();
  RunConfig cfg = base_config("neighborhood", a.common);
  cfg.params["start"] = nc.seed.to_string();
  cfg.params["i-max"] = std::to_string(a.i_max);
  cfg.params["j-max"] = std::to_string(a.j_max);
  cfg.params["persist-k"] = std::to_string(a.persist_k);
  cfg.params["threshold"] = std::to_string(a.threshold);
  cfg.params["node-cap"] = std::to_string(a.node_cap);

  const NeighborhoodResult r = neighborhood(nc);
  Sink sink(a.common.out_path, out);
  write_header(sink.stream(), format, cfg);
  std::uint64_t exhausted = 0;
  for (const NeighborhoodHit& h : r.hits) {
    if (h.ft < 0) ++exhausted;
    if (format == "jsonl") {
      sink.stream() << json{{"n", h.n.to_string()}, {"ft", h.ft < 0 ? json(nullptr) : json(h.ft)}}.dump() << '\n';
    } else {
      sink.stream() << h.n << '\t' << (h.ft < 0 ? std::string("exhausted") : std::to_string(h.ft)) << '\n';
    }
  }
  if (r.truncated) {
    sink.stream() << (format == "jsonl" ? "{\"truncated\":true}\n" : "# truncated\n");
    err << "neighborhood truncated at " << a.node_cap << " nodes per orbit point\n";
  }
  sink.finish();
  write_run_metadata(cfg, timer, err,
                     {{"hits", r.hits.size()}, {"truncated", r.truncated}, {"nodesVisited", r.nodes_visited}});
  if (exhausted) throw ExhaustedError(std::to_string(exhausted) + " hit(s) exhausted the falling-time budget");
  return kExitOk;
}

// ---- random ----

struct RandomArgs {
  Common common;
  int bits = 64;
  std::uint64_t count = 1000;
  int ft_threshold = 5;
  int sft_threshold = 3;
};

int cmd_random(const RandomArgs& a, std::ostream& out, std::ostream& err) {
  const Timer timer;
  const std::string format = pick_format(a.common.format, {"tsv", "jsonl"});
  RandomSearchConfig rc;
  rc.bits = a.bits;
  rc.count = a.count;
  rc.ft_threshold = a.ft_threshold;
  rc.sft_threshold = a.sft_threshold;
  rc.seed = a.common.seed.value_or(1);
  rc.budget = a.common.budget();
  Common common = a.common;
  common.seed = rc.seed;
  RunConfig cfg = base_config("random", common);
  cfg.params["bits"] = std::to_string(a.bits);
  cfg.params["count"] = std::to_string(a.count);
  cfg.params["ft-threshold"] = std::to_string(a.ft_threshold);
  cfg.params["sft-threshold"] = std::to_string(a.sft_threshold);
  cfg.params["generator"] = "mt19937_64";

  const auto hits = random_search(rc);
  Sink sink(a.common.out_path, out);
  write_header(sink.stream(), format, cfg);
  auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("exhausted"); };
  bool exhausted = false;
  for (const RandomHit& h : hits) {
    exhausted = exhausted || !h.ft || !h.sft;
    if (format == "jsonl") {
      json j;
      j["n"] = h.n.to_string();
      j["ft"] = h.ft ? json(*h.ft) : json(nullptr);
      j["sft"] = h.sft ? json(*h.sft) : json(nullptr);
      sink.stream() << j.dump() << '\n';
    } else {
      sink.stream() << h.n << '\t' << show(h.ft) << '\t' << show(h.sft) << '\n';
    }
  }
  sink.finish();
  write_run_metadata(cfg, timer, err, {{"hits", hits.size()}});
  if (exhausted) throw ExhaustedError("a drawn integer exhausted the falling-time budget");
  return kExitOk;
}

// ---- verify ----

int cmd_verify_glide(bool inject_fault, std::ostream& out) {
  std::vector<GlideRecordEntry> records(glide_records().begin(), glide_records().end());
  // Test fixture for the exit-code contract: corrupt one expected value.
  if (inject_fault) records.front().ft += 1;
  const GlideReport report = verify_glide_records(records);
  for (const GlideMismatch& m : report.mismatches) {
    out << "MISMATCH " << m.name << ' ' << m.field << " expected " << m.expected << " computed " << m.computed
        << '\n';
  }
  out << "checked " << report.records_checked << " glide records, " << report.mismatches.size()
      << " mismatch(es)\n";
  if (!report.ok()) throw MismatchError("glide-record verification failed");
  return kExitOk;
}

// ---- persistent ----

int cmd_persistent(const std::string& action, int k, const Common& common, std::ostream& out) {
  if (k < 1 || k > kMaxEnumerationBits) {
    throw UsageError("k must be in [1, " + std::to_string(kMaxEnumerationBits) + "]");
  }
  if (action == "count") {
    out << count_persistent(k) << '\n';
    return kExitOk;
  }
  Sink sink(common.out_path, out);
  write_persistent(k, sink.stream());
  sink.finish();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"jumpfall: jumps and falling times of the 3x+1 map"};
  app.name("jumpfall");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one quantity at n");
  eval_cmd->add_option("n", eval.n, "decimal or B^k[+-c]")->required();
  eval_cmd->add_option("what", eval.what, "sigma|glide|ft|sft|ft_h|sft_h|jp|sjp")->required();
  option(eval_cmd, "mult", eval.h, "jump multiplier for ft_h, sft_h, jp, sjp")->check(CLI::PositiveNumber);
  add_common(eval_cmd, eval.common, "tsv|jsonl");

  OrbitArgs orbit;
  auto* orbit_cmd = app.add_subcommand("orbit", "print the jump or Syracuse-jump orbit of n");
  orbit_cmd->add_option("n", orbit.n, "decimal or B^k[+-c]")->required();
  option(orbit_cmd, "kind", orbit.kind, "jump|syracuse");
  option(orbit_cmd, "mult", orbit.h, "jump multiplier")->check(CLI::PositiveNumber);
  option(orbit_cmd, "terms", orbit.terms, "maximum number of terms, start included");
  add_common(orbit_cmd, orbit.common, "tsv|jsonl");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "falling-time record scan over a range");
  option(scan_cmd, "range", scan.range, "LO..HI")->required();
  option(scan_cmd, "filter", scan.filter, "mod4eq3|odd|persistent<k>");
  option(scan_cmd, "kinds", scan.kinds, "comma list of ft, new-ft, sft");
  option(scan_cmd, "chunk-size", scan.chunk_size, "integers per chunk")->check(CLI::PositiveNumber);
  option(scan_cmd, "checkpoint", scan.checkpoint, "checkpoint file; resumed from when present");
  option(scan_cmd, "abort-after-chunks", scan.abort_after_chunks, "stop with exit code 75 after N chunks");
  option(scan_cmd, "seed-ft-max", scan.seed_ft_max, "running ft maximum below LO");
  option(scan_cmd, "seed-sft-max", scan.seed_sft_max, "running sft maximum below LO");
  option(scan_cmd, "seed-seen-ft", scan.seed_seen_ft, "ft values already seen below LO")->delimiter(',');
  add_common(scan_cmd, scan.common, "tsv|jsonl");

  HistogramArgs hist;
  auto* hist_cmd = app.add_subcommand("histogram", "ft = 1, 2, >= 3 proportions per dyadic interval");
  option(hist_cmd, "ell", hist.ell, "LO..HI")->required();
  option(hist_cmd, "population", hist.population, "odd|mod4eq1|mod4eq3|persistent24");
  add_common(hist_cmd, hist.common, "csv|jsonl");

  MersenneArgs mers;
  auto* mers_cmd = app.add_subcommand("mersenne", "ft or sft of 2^l - 1");
  option(mers_cmd, "ell", mers.ell, "LO..HI")->required();
  option(mers_cmd, "kind", mers.kind, "ft|sft");
  add_common(mers_cmd, mers.common, "tsv|jsonl");

  NeighborhoodArgs nb;
  auto* nb_cmd = app.add_subcommand("neighborhood", "persistent ancestors of an orbit with large ft");
  nb_cmd->add_option("start", nb.seed_n, "orbit start, decimal or B^k[+-c]")->required();
  option(nb_cmd, "i-max", nb.i_max, "backward depth");
  option(nb_cmd, "j-max", nb.j_max, "forward depth");
  option(nb_cmd, "persist-k", nb.persist_k, "persistence filter modulus exponent, 0 disables");
  option(nb_cmd, "threshold", nb.threshold, "minimum ft");
  option(nb_cmd, "node-cap", nb.node_cap, "node cap per orbit point");
  add_common(nb_cmd, nb.common, "tsv|jsonl");

  RandomArgs rnd;
  auto* rnd_cmd = app.add_subcommand("random", "random odd integers with large ft or sft");
  option(rnd_cmd, "bits", rnd.bits, "bit length of the drawn integers");
  option(rnd_cmd, "count", rnd.count, "number of draws");
  option(rnd_cmd, "ft-threshold", rnd.ft_threshold, "report ft >= this");
  option(rnd_cmd, "sft-threshold", rnd.sft_threshold, "report sft >= this");
  add_common(rnd_cmd, rnd.common, "tsv|jsonl");

  std::string verify_target;
  bool inject_fault = false;
  auto* verify_cmd = app.add_subcommand("verify", "check embedded datasets");
  verify_cmd->add_option("target", verify_target, "glide-records")->required()->check(CLI::IsMember({"glide-records"}));
  verify_cmd->add_flag("--inject-fault", inject_fault, "corrupt one expected value (exit-code test)")
      ->envname(env_name("inject-fault"));

  std::string persist_action;
  int persist_k = 24;
  Common persist_common;
  auto* persist_cmd = app.add_subcommand("persistent", "k-persistent residue classes");
  persist_cmd->add_option("action", persist_action, "count|list")->required()->check(CLI::IsMember({"count", "list"}));
  persist_cmd->add_option("k", persist_k, "modulus exponent")->required();
  option(persist_cmd, "out", persist_common.out_path, "output file for list (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "jumpfall: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval, out, err);
    if (orbit_cmd->parsed()) return cmd_orbit(orbit, out, err);
    if (scan_cmd->parsed()) return cmd_scan(scan, out, err);
    if (hist_cmd->parsed()) return cmd_histogram(hist, out, err);
    if (mers_cmd->parsed()) return cmd_mersenne(mers, out, err);
    if (nb_cmd->parsed()) return cmd_neighborhood(nb, out, err);
    if (rnd_cmd->parsed()) return cmd_random(rnd, out, err);
    if (verify_cmd->parsed()) return cmd_verify_glide(inject_fault, out);
    if (persist_cmd->parsed()) return cmd_persistent(persist_action, persist_k, persist_common, out);
  } catch (const MismatchError& e) {
    err << "jumpfall: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const ExhaustedError& e) {
    err << "jumpfall: " << e.what() << '\n';
    return kExitExhausted;
  } catch (const AbortRequested& e) {
    err << "jumpfall: " << e.what() << '\n';
    return kExitAborted;
  } catch (const std::invalid_argument& e) {
    // UsageError and DomainError: a violated precondition.
    err << "jumpfall: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "jumpfall: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace jumpfall::cli
