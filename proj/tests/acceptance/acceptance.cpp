// Acceptance suite: one PASS/FAIL line per criterion.
//
// Tiers: T0 and T1 always run. T2 runs by default (the 2^28 scan and both
// neighborhoods take seconds here); JUMPFALL_TIER=1 skips it. T3 runs only
// with JUMPFALL_TIER=3. Every check is exact equality; there are no
// floating-point tolerances.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "jumpfall/collatz_core.hpp"
#include "jumpfall/jumps.hpp"
#include "jumpfall/residue_sieve.hpp"
#include "jumpfall/scanners.hpp"
#include "oracle.hpp"

using namespace jumpfall;

namespace {

constexpr int kDefaultTier = 2;

int tier() {
  const char* v = std::getenv("JUMPFALL_TIER");
  return v ? std::atoi(v) : kDefaultTier;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) {
      detail.clear();
    } else {
      detail += "; ";
    }
    pass = false;
    detail += why;
  }
};

int failures = 0;

void report(const std::string& id, const std::string& t, const std::string& title,
            const std::function<Outcome()>& check) {
  if (std::stoi(t.substr(1)) > tier()) {
    std::cout << "SKIP " << id << " [" << t << "] " << title << " (JUMPFALL_TIER=" << tier() << ")\n";
    return;
  }
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << (o.pass ? "PASS " : "FAIL ") << id << " [" << t << "] " << title;
  if (!o.detail.empty()) line << ": " << o.detail;
  line.precision(2);
  line << std::fixed << " (" << secs << " s)";
  std::cout << line.str() << std::endl;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::uint64_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

using Pairs = std::vector<std::pair<std::uint64_t, int>>;

Pairs pairs(const std::vector<RecordEntry>& records, RecordKind kind) {
  Pairs out;
  for (const RecordEntry& r : records) {
    if (r.kind == kind) out.emplace_back(r.n.to_u64(), r.value);
  }
  return out;
}

std::string show(const Pairs& p) {
  std::string s;
  for (const auto& [n, v] : p) s += (s.empty() ? "" : " ") + ("(" + std::to_string(n) + "," + std::to_string(v) + ")");
  return s;
}

std::vector<RecordEntry> scan_all_kinds(std::uint64_t hi) {
  RecordScanConfig c;
  c.lo = 3;
  c.hi = hi;
  c.kinds = {RecordKind::FtRecord, RecordKind::NewFt, RecordKind::SftRecord};
  c.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return scan_records(c);
}

// ---- criteria ----

Outcome orbit_fixtures() {
  Outcome o;
  const std::vector<std::uint64_t> jp{27, 71, 137, 395, 566, 3644, 650, 53, 8, 2, 2};
  const std::vector<std::uint64_t> sjp{27, 107, 233, 377, 911, 53, 1, 1};
  auto as_u64 = [](const JumpTrace& t) {
    std::vector<std::uint64_t> v;
    for (const Nat& x : t.terms) v.push_back(x.to_u64());
    return v;
  };
  const auto a = as_u64(jump_orbit(27, JumpKind::Jump, 1, static_cast<int>(jp.size())));
  const auto b = as_u64(jump_orbit(27, JumpKind::SyracuseJump, 1, static_cast<int>(sjp.size())));
  if (a != jp) o.fail("jump orbit " + join(a));
  if (b != sjp) o.fail("Syracuse orbit " + join(b));
  return o;
}

Outcome point_values() {
  Outcome o;
  struct Case {
    const char* what;
    std::uint64_t n;
    int expected;
  };
  const Case cases[] = {{"ft", 27, 8},   {"ft", 41, 8},    {"ft", 43, 2},    {"ft", 199, 1},  {"sft", 199, 5},
                        {"sft", 27, 6},  {"sigma", 41, 2}, {"sigma", 43, 5}, {"ft", 55, 7},   {"ft", 71, 6},
                        {"ft", 103, 5},  {"ft", 111, 4}};
  for (const Case& c : cases) {
    const std::string w = c.what;
    int got = -1;
    if (w == "ft") got = falling_time(c.n).k;
    if (w == "sft") got = sfalling_time(c.n).k;
    if (w == "sigma") got = static_cast<int>(*stopping_time(c.n).value);
    if (got != c.expected) {
      o.fail(w + "(" + std::to_string(c.n) + ")=" + std::to_string(got) + " expected " + std::to_string(c.expected));
    }
  }
  return o;
}

Outcome glide_verification() {
  Outcome o;
  const GlideReport r = verify_glide_records();
  if (r.records_checked != 10) o.fail("checked " + std::to_string(r.records_checked) + " records");
  for (const GlideMismatch& m : r.mismatches) {
    o.fail(m.name + " " + m.field + " expected " + m.expected + " computed " + m.computed);
  }
  if (o.pass) o.detail = "10 records: glide, sigma, ft, sft, ft_18 = 1, sft_12 = 1";
  return o;
}

Outcome record_scans_t1() {
  Outcome o;
  const std::uint64_t hi = std::uint64_t{1} << 26;
  const Pairs ft = pairs(scan_ft_records(3, hi), RecordKind::FtRecord);
  const Pairs sft = pairs(scan_sft_records(7, hi), RecordKind::SftRecord);
  const Pairs want_ft{{3, 2}, {7, 3}, {27, 8}, {60975, 9}, {1394431, 10}, {6649279, 11}, {63728127, 13}};
  const Pairs want_sft{{7, 2}, {27, 6}, {6649279, 7}, {63728127, 9}};
  if (ft != want_ft) o.fail("ft records " + show(ft));
  if (sft != want_sft) o.fail("sft records " + show(sft));
  return o;
}

Outcome record_scans_t2() {
  Outcome o;
  const auto all = scan_all_kinds(std::uint64_t{1} << 28);
  const Pairs fresh = pairs(all, RecordKind::NewFt);
  const std::pair<std::uint64_t, int> want{217740015, 12};
  if (std::find(fresh.begin(), fresh.end(), want) == fresh.end()) o.fail("new-ft " + show(fresh));
  const Pairs ft = pairs(all, RecordKind::FtRecord);
  const Pairs want_ft{{3, 2}, {7, 3}, {27, 8}, {60975, 9}, {1394431, 10}, {6649279, 11}, {63728127, 13}};
  if (ft != want_ft) o.fail("ft records " + show(ft));
  return o;
}

Outcome record_scans_t3() {
  Outcome o;
  const auto all = scan_all_kinds(std::uint64_t{1} << 35);
  const Pairs ft = pairs(all, RecordKind::FtRecord);
  const Pairs sft = pairs(all, RecordKind::SftRecord);
  const Pairs want_ft{{3, 2},          {7, 3},          {27, 8},           {60975, 9},
                      {1394431, 10},   {6649279, 11},   {63728127, 13},    {12235060455, 14}};
  const Pairs want_sft{{7, 2}, {27, 6}, {6649279, 7}, {63728127, 9}};
  if (ft != want_ft) o.fail("ft records " + show(ft));
  if (sft != want_sft) o.fail("sft records " + show(sft));
  return o;
}

Outcome persistence_oracle() {
  Outcome o;
  const std::uint64_t c24 = count_persistent(24);
  if (c24 != 286581) o.fail("count_persistent(24) = " + std::to_string(c24));
  // Brute force for k = 3: a class is persistent when 50 large members all
  // have sigma >= 3.
  std::uint64_t brute = 0;
  for (std::uint64_t r = 0; r < 8; ++r) {
    bool all = true;
    for (unsigned long t = 0; t < 50; ++t) {
      const mpz_class n = (mpz_class(1) << 40) + 8 * mpz_class(t * 7919) + static_cast<unsigned long>(r);
      if (oracle::sigma(n) < 3) all = false;
    }
    if (all) ++brute;
  }
  const std::uint64_t c3 = count_persistent(3);
  if (c3 != 2 || brute != 2) o.fail("k=3: sieve " + std::to_string(c3) + ", brute force " + std::to_string(brute));
  return o;
}

Outcome mersenne_t1() {
  Outcome o;
  const auto ft = mersenne_probe(2, 2000, JumpKind::Jump);
  for (const MersenneRow& r : ft) {
    if (!r.value) {
      o.fail("ft exhausted at l=" + std::to_string(r.ell));
      continue;
    }
    const int v = *r.value;
    const std::uint64_t l = r.ell;
    bool ok;
    if (l == 5 || l == 6) {
      ok = v == 8;
    } else if (l == 132) {
      ok = v == 5;
    } else if (l >= 133) {
      ok = v <= 4;
    } else {
      ok = v <= 5;
    }
    if (!ok) o.fail("ft(2^" + std::to_string(l) + "-1) = " + std::to_string(v));
  }
  const auto sft = mersenne_probe(2, 3000, JumpKind::SyracuseJump);
  std::vector<std::uint64_t> outside;
  for (const MersenneRow& r : sft) {
    if (!r.value) {
      o.fail("sft exhausted at l=" + std::to_string(r.ell));
      continue;
    }
    const int v = *r.value;
    const std::uint64_t l = r.ell;
    if (l == 5 || l == 6) {
      if (v != 5) o.fail("sft(2^" + std::to_string(l) + "-1) = " + std::to_string(v));
    } else if (l == 24) {
      if (v != 4) o.fail("sft(2^24-1) = " + std::to_string(v));
    } else if (v != 2 && v != 3) {
      outside.push_back(l);
    }
  }
  if (!outside.empty()) {
    std::string vals;
    for (std::uint64_t l : outside) vals += " sft(2^" + std::to_string(l) + "-1)=" + std::to_string(*sft[l - 2].value);
    o.fail("sft not in {2,3} at l in {" + join(outside) + "}:" + vals);
  }
  return o;
}

Outcome mersenne_t3() {
  Outcome o;
  const auto sft = mersenne_probe(2, 10000, JumpKind::SyracuseJump);
  for (const MersenneRow& r : sft) {
    const std::uint64_t l = r.ell;
    if (l == 5 || l == 6 || l == 24 || l <= 3000) continue;
    if (!r.value) {
      o.fail("sft exhausted at l=" + std::to_string(l));
      continue;
    }
    const int v = *r.value;
    const bool ok = l <= 4624 ? (v == 2 || v == 3) : v == 2;
    if (!ok) o.fail("sft(2^" + std::to_string(l) + "-1) = " + std::to_string(v));
  }
  return o;
}

Outcome bound_sweeps() {
  Outcome o;
  const std::uint64_t hi24 = std::uint64_t{1} << 24;
  int ft_max = 0;
  int sft_max = 0;
  std::uint64_t exhausted = 0;
  for (std::uint64_t n = 3; n <= hi24; n += 4) {
    const auto ft = falling_time_value(JumpKind::Jump, n, 1, {});
    const auto sft = falling_time_value(JumpKind::SyracuseJump, n, 1, {});
    if (!ft || !sft) {
      ++exhausted;
      continue;
    }
    ft_max = std::max(ft_max, *ft);
    sft_max = std::max(sft_max, *sft);
  }
  if (ft_max > 14) o.fail("max ft = " + std::to_string(ft_max));
  if (sft_max > 9) o.fail("max sft = " + std::to_string(sft_max));
  if (exhausted) o.fail(std::to_string(exhausted) + " budget exhaustions");
  std::uint64_t bad18 = 0;
  std::uint64_t bad12 = 0;
  for (std::uint64_t n = 3; n <= (std::uint64_t{1} << 20); n += 2) {
    if (falling_time_value(JumpKind::Jump, n, 18, {}) != 1) ++bad18;
    if (falling_time_value(JumpKind::SyracuseJump, n, 12, {}) != 1) ++bad12;
  }
  if (bad18) o.fail(std::to_string(bad18) + " odd n with ft_18 != 1");
  if (bad12) o.fail(std::to_string(bad12) + " odd n with sft_12 != 1");
  if (o.pass) {
    o.detail = "max ft " + std::to_string(ft_max) + ", max sft " + std::to_string(sft_max) +
               ", ft_18 = sft_12 = 1 on odd n <= 2^20";
  }
  return o;
}

Outcome neighborhoods() {
  Outcome o;
  NeighborhoodConfig a;
  a.seed = Nat::from_decimal("1008932249296231");
  a.i_max = 40;
  a.j_max = 30;
  a.persist_k = 24;
  a.ft_threshold = 15;
  const NeighborhoodResult ra = neighborhood(a);
  if (ra.truncated) o.fail("g30 neighborhood truncated");
  const char* g30_ancestors[] = {"1513398373944347", "1702573170687391", "2017864498592463", "2553859756031087",
                          "3405146341374783", "3830789634046631", "5107719512062175", "5746184451069947",
                          "6464457507453691", "7272514695885403", "22370169558105279"};
  std::set<Nat> hits_a;
  for (const auto& h : ra.hits) hits_a.insert(h.n);
  for (const char* s : g30_ancestors) {
    const Nat n = Nat::from_decimal(s);
    if (!hits_a.count(n)) o.fail(std::string(s) + " missing");
    const auto ft = oracle::falling_time(false, n.mpz());
    if (ft != 15) o.fail(std::string(s) + " has ft " + std::to_string(ft.value_or(-1)));
    if (oracle::sigma(n.mpz()) < 24 || !is_persistent(n.low_bits(24), 24)) o.fail(std::string(s) + " not 24-persistent");
  }

  NeighborhoodConfig b = a;
  b.seed = Nat::from_decimal("180352746940718527");
  b.i_max = 50;
  b.ft_threshold = 16;
  const NeighborhoodResult rb = neighborhood(b);
  if (rb.truncated) o.fail("g32 neighborhood truncated");
  std::set<Nat> hits_b;
  for (const auto& h : rb.hits) hits_b.insert(h.n);
  for (const char* s : {"739683900832185455", "986245201109580607", "1479367801664370911"}) {
    const Nat n = Nat::from_decimal(s);
    if (!hits_b.count(n)) o.fail(std::string(s) + " missing");
    const auto ft = oracle::falling_time(false, n.mpz());
    if (ft != 16) o.fail(std::string(s) + " has ft " + std::to_string(ft.value_or(-1)));
    const std::uint64_t sigma = oracle::sigma(n.mpz());
    if (sigma < 35 || sigma > 48) o.fail(std::string(s) + " has sigma " + std::to_string(sigma));
  }
  if (o.pass) {
    o.detail = std::to_string(ra.hits.size()) + " and " + std::to_string(rb.hits.size()) + " hits, " +
               std::to_string(ra.nodes_visited + rb.nodes_visited) + " nodes";
  }
  return o;
}

Outcome large_integer_regression() {
  Outcome o;
  const Nat n = Nat::from_decimal("1884032044420885877201579449071924925072300117065411");
  const FallingTimeResult ft = falling_time(n);
  if (!ft.finite() || ft.k != 5) o.fail("ft = " + std::to_string(ft.k));
  const auto sigma = stopping_time(n).value;
  if (sigma != 4u) o.fail("sigma = " + std::to_string(sigma.value_or(0)));
  if (n.mod_small(16) != 3) o.fail("n mod 16 = " + std::to_string(n.mod_small(16)));
  if (n.bit_length() != 71) o.fail("bit length is " + std::to_string(n.bit_length()) + ", not 71");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::uint64_t bad = 0;
  for (std::uint64_t n = 3; n <= 100000; n += 4) {
    if (falling_time_value(JumpKind::Jump, n, 1, {}) != oracle::falling_time(false, n)) ++bad;
    if (falling_time_value(JumpKind::SyracuseJump, n, 1, {}) != oracle::falling_time(true, n)) ++bad;
    if (falling_time(n).k != oracle::falling_time(false, n)) ++bad;
  }
  if (bad) o.fail(std::to_string(bad) + " falling-time mismatches against the single-step reference");

  // Sinai: for every vector with m <= 4 and sum <= 10, the x <= 10^5 in
  // 6N+{1,5} with that gamma vector are exactly the members of the computed
  // class (one class mod 2^(S+1), two classes mod 6*2^S).
  constexpr std::uint64_t kLimit = 100000;
  std::map<std::vector<int>, std::vector<std::uint64_t>> groups;
  for (std::uint64_t x = 1; x <= kLimit; ++x) {
    if (x % 6 != 1 && x % 6 != 5) continue;
    const std::vector<int> ks = oracle::sinai_gamma(x, 4);
    for (long m = 1; m <= 4; ++m) groups[{ks.begin(), ks.begin() + m}].push_back(x);
  }
  std::vector<std::vector<int>> vectors;
  std::function<void(std::vector<int>&, int)> gen = [&](std::vector<int>& cur, int sum) {
    if (!cur.empty()) vectors.push_back(cur);
    if (cur.size() == 4) return;
    for (int k = 1; sum + k <= 10; ++k) {
      cur.push_back(k);
      gen(cur, sum + k);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  gen(cur, 0);
  std::uint64_t sinai_bad = 0;
  for (const auto& ks : vectors) {
    const SinaiClass c = sinai_class({ks});
    std::vector<std::uint64_t> members;
    for (std::uint64_t x = 1; x <= kLimit; x += 2) {
      if (c.contains(Nat(x))) members.push_back(x);
    }
    if (members != groups[ks]) ++sinai_bad;
    for (const Nat& r : c.by_mod6) {
      if (!c.contains(r) || !(r < c.full_modulus)) ++sinai_bad;
    }
  }
  if (sinai_bad) o.fail(std::to_string(sinai_bad) + " Sinai class mismatches");
  if (o.pass) o.detail = std::to_string(vectors.size()) + " gamma vectors, 25000 n per falling time";
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "jumpfall-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = JUMPFALL_CLI_PATH;
  const std::string base = "\"" + cli + "\" scan --range 3..2^24 --kinds ft,new-ft,sft --chunk-size 262144";
  auto run = [&](const std::string& extra) {
    const std::string cmd = base + " " + extra + " 2>>\"" + (dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const fs::path one = dir / "w1.tsv";
  const fs::path eight = dir / "w8.tsv";
  const fs::path resumed = dir / "resumed.tsv";
  const fs::path ckpt = dir / "scan.ckpt";
  if (int rc = run("--workers 1 --out \"" + one.string() + "\""); rc != 0) o.fail("1-worker run exit " + std::to_string(rc));
  if (int rc = run("--workers 8 --out \"" + eight.string() + "\""); rc != 0) o.fail("8-worker run exit " + std::to_string(rc));
  const int killed = run("--workers 2 --checkpoint \"" + ckpt.string() + "\" --abort-after-chunks 29 --out \"" +
                         resumed.string() + "\"");
  if (killed != 75) o.fail("forced abort exit " + std::to_string(killed));
  if (fs::exists(resumed)) o.fail("aborted run wrote output");
  if (int rc = run("--workers 3 --checkpoint \"" + ckpt.string() + "\" --out \"" + resumed.string() + "\""); rc != 0) {
    o.fail("resume exit " + std::to_string(rc));
  }
  const std::string a = slurp(one);
  if (a.empty()) o.fail("empty output");
  if (a != slurp(eight)) o.fail("1-worker and 8-worker outputs differ");
  if (a != slurp(resumed)) o.fail("resumed output differs");
  if (o.pass) o.detail = "3 files, " + std::to_string(a.size()) + " bytes each, identical";
  return o;
}

}  // namespace

int main() {
  std::cout << "jumpfall acceptance suite, tier " << tier() << '\n';
  report("1", "T0", "orbit fixtures", orbit_fixtures);
  report("2", "T0", "point values", point_values);
  report("3", "T0", "glide-record verification", glide_verification);
  report("4a", "T1", "record scans to 2^26", record_scans_t1);
  report("4b", "T2", "record scans to 2^28 with new ft (217740015, 12)", record_scans_t2);
  report("4c", "T3", "record scans to 2^35", record_scans_t3);
  report("5", "T1", "persistence oracle", persistence_oracle);
  report("6a", "T1", "Mersenne probe, ft to l = 2000 and sft to l = 3000", mersenne_t1);
  report("6b", "T3", "Mersenne probe, sft to l = 10000", mersenne_t3);
  report("7", "T1", "bound sweeps", bound_sweeps);
  report("8", "T2", "neighborhood reproduction", neighborhoods);
  report("9", "T0", "52-digit regression", large_integer_regression);
  report("10", "T0", "oracle equivalence", oracle_equivalence);
  report("11", "T1", "determinism and checkpointing", determinism);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " criterion line(s) failed\n";
  return failures ? 1 : 0;
}
