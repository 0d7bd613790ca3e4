/*
Copyright 2026 The BLADE Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <blade/blade.hpp>

#include "oracles.hpp"

namespace {

using namespace blade;

// Pinned thresholds.
constexpr double kMaxSTolerance = 2;          // criterion 4: |max S - 19|
constexpr int kReferenceMaxS = 19;
constexpr double kTheoremRatio = 6.0;         // criterion 5: per t-doubling
constexpr double kDeltaBound = 1.0;
constexpr double kEmpiricalOrderRatio = 4.0;  // criterion 6: 2^(3-1)
constexpr double kKtOrderRatio = 8.0;         // criterion 6: 2^(4-1)
constexpr double kSigmas = 3.0;               // criterion 7
constexpr std::uint64_t kMonteCarloQ = 10000;
constexpr std::uint64_t kMonteCarloSeed = 1;
constexpr int kRandomSequences = 10000;       // criterion 3

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(BLADE_FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome table_one() {
  auto dist = weight_distribution(DensityKind::bernoulli(Rational(9, 10)), 4);
  auto table = build_code(dist);
  Rational avg = avg_code_length_exact(table, dist);
  // Pr and Length columns of the printed example, one entry per block.
  const int lengths[16] = {1, 3, 3, 6, 3, 7, 7, 9, 4, 7, 7, 9, 7, 9, 10, 10};
  const int pr[16] = {6561, 729, 729, 81, 729, 81, 81, 9, 729, 81, 81, 9, 81, 9, 9, 1};
  Rational dot = 0;
  for (int i = 0; i < 16; ++i) dot += Rational(pr[i], 10000) * lengths[i];
  Rational oracle_avg = oracle::huffman_average(4, dist.probs);

  std::multiset<int> ours;
  auto g = table.group_lengths();
  for (int k = 0; k <= 4; ++k)
    for (std::uint64_t i = 0; i < binomial(4, k); ++i) ours.insert(g.length_of(k, i));
  std::multiset<int> printed(std::begin(lengths), std::end(lengths));
  // The printed Pr column is p^k q^(n-k) at p = 1/10; with that source the
  // codewords themselves must match too.
  const char* codes[16] = {"1",       "001",     "010",       "000011",    "011",      "0000001",
                           "0000010", "000000001", "0001",    "0000011",   "0000100",  "000000010",
                           "0000101", "000000011", "0000000001", "0000000000"};
  auto mirrored = build_code(weight_distribution(DensityKind::bernoulli(Rational(1, 10)), 4));
  bool words = true;
  for (std::uint64_t w = 0; w < 16; ++w) {
    BitStream bs;
    encode_block(make_word(w, 4), mirrored, bs);
    words = words && bs.to_string() == codes[w];
  }
  bool ok = avg == Rational(19702, 10000) && avg == dot && avg == oracle_avg && ours == printed &&
            table.subgroup_count() == 8 && words;
  return {ok, "avg=" + avg.str() + " S=" + std::to_string(table.subgroup_count()) + ", codewords " +
                  (words ? "match" : "differ")};
}

Outcome universal_twelve() {
  auto dist = weight_distribution(DensityKind::kt_universal(), 12);
  auto table = build_code(dist);
  auto g = table.group_lengths();
  bool ok = kraft_sum(table) == 1;
  ok = ok && avg_code_length_exact(table, dist) == oracle::huffman_average(12, dist.probs);
  const std::map<int, int> expect{{0, 3}, {1, 7}, {2, 10}, {4, 13}, {5, 14}, {6, 14}};
  for (auto [k, len] : expect) ok = ok && g.len[k] == len && g.long_count(k) == 0;
  ok = ok && g.len[3] == 11 && g.long_count(3) > 0 && g.nk[3] > 0;
  auto reference = deserialize_set(slurp("reference_n12.txt"));
  Rational ref_kraft = kraft_sum(reference.tables[0]);
  ok = ok && ref_kraft == 1;
  return {ok, "nk[3]=" + std::to_string(g.nk[3]) + " (reference 92), reference Kraft=" + ref_kraft.str()};
}

Outcome round_trips() {
  bool ok = true;
  for (int n : {4, 8, 12}) {
    auto set = build_context_set(n);
    BlockEnumerator en(n);
    for (std::size_t i = 0; i < set.tables.size(); ++i) {
      BitStream bs;
      for (std::uint64_t w = 0; w < (1ull << n); ++w) encode_block(w, set.tables[i], en, bs);
      bs.rewind();
      for (std::uint64_t w = 0; w < (1ull << n); ++w) ok = ok && decode_block(set.decoders[i], en, bs).word == w;
      ok = ok && bs.remaining() == 0;
    }
  }
  auto four = std::make_shared<const ContextSet>(build_context_set(4));
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) {
      std::vector<std::uint64_t> seq{a, b};
      BitStream bs;
      encode_adaptive(seq, four, bs);
      bs.rewind();
      ok = ok && decode_adaptive(bs, four, 2) == seq;
    }
  auto sixteen = std::make_shared<const ContextSet>(build_context_set(16));
  SplitMix64 seeds(2026);
  for (int i = 0; i < kRandomSequences; ++i) {
    BernoulliSource src(0.02 + 0.96 * seeds.next_unit(), seeds.next());
    std::vector<std::uint64_t> seq(64);
    for (auto& b : seq) b = src.next_block(16);
    BitStream bs;
    encode_adaptive(seq, sixteen, bs);
    bs.rewind();
    ok = ok && decode_adaptive(bs, sixteen, seq.size()) == seq;
  }
  return {ok, "exhaustive n=4,8,12; 256 pairs at n=4; " + std::to_string(kRandomSequences) + " x 64 blocks at n=16"};
}

Outcome context_counts() {
  bool ok = true;
  std::string detail;
  const std::map<int, std::size_t> counts{{8, 15}, {12, 21}, {16, 27}, {20, 33}};
  for (auto [n, expect] : counts) {
    auto set = build_context_set(n);
    std::size_t max_s = 0;
    for (const auto& t : set.tables) {
      ok = ok && t.subgroup_count() >= static_cast<std::size_t>(n + 1) &&
           t.subgroup_count() <= static_cast<std::size_t>(2 * n);
      max_s = std::max(max_s, t.subgroup_count());
    }
    ok = ok && set.tables.size() == expect;
    if (n == 12) ok = ok && std::abs(static_cast<double>(max_s) - kReferenceMaxS) <= kMaxSTolerance;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(set.tables.size()) + " tables, max S " +
              std::to_string(max_s) + "; ";
  }
  return {ok, detail};
}

Outcome theorem_one() {
  bool ok = true;
  std::string detail;
  double max_delta = 0;
  for (double p : {0.1, 0.3, 0.5})
    for (int n : {8, 16}) {
      std::vector<double> residual;
      for (int mult : {1, 2, 4, 8}) {
        int t = mult * n;
        auto r = redundancy_report(n, t, p, build_sample_codes(n, t));
        residual.push_back(std::abs(static_cast<double>(r.residual())));
        max_delta = std::max(max_delta, std::abs(static_cast<double>(r.delta_exact)));
      }
      // Two doublings: 2n -> 4n -> 8n.
      double r1 = residual[1] / residual[2], r2 = residual[2] / residual[3];
      bool cell = r1 >= kTheoremRatio && r2 >= kTheoremRatio;
      ok = ok && cell;
      detail += fmt("p=%.1f", p) + " n=" + std::to_string(n) + fmt(" ratios %.2f", residual[0] / residual[1]) +
                fmt("/%.2f", r1) + fmt("/%.2f", r2) + (cell ? "" : " (low)") + "; ";
    }
  ok = ok && max_delta <= kDeltaBound;
  return {ok, detail + fmt("max |delta|=%.3f", max_delta)};
}

Outcome expansion_identities() {
  bool ok = true;
  const std::vector<Rational> thetas{Rational(1, 10), Rational(1, 3), Rational(1, 2), Rational(9, 10)};
  for (int n = 1; n <= 20; ++n)
    for (const auto& th : thetas)
      ok = ok && s1_exact(n, th) == s1_closed(n, th) && s2_exact(n, th) == s2_closed(n, th);
  bool sums = ok;

  bool bracket = true;
  double worst_ef = 1e9;
  for (const auto& th : thetas) {
    double p = static_cast<double>(th);
    for (int n = 2; n <= 20; ++n) {
      double v = static_cast<double>(empirical_entropy_avg_exact(n, p));
      double h = entropy(p);
      bracket = bracket && v <= h + 1e-15 && v >= h - 1.0 / n - 1e-15;
    }
    double e[3];
    int i = 0;
    for (int n : {32, 64, 128})
      e[i++] = std::abs(static_cast<double>(empirical_entropy_avg_exact(n, p) - empirical_entropy_avg_asymptotic(n, p)));
    worst_ef = std::min({worst_ef, e[0] / e[1], e[1] / e[2]});
  }
  double worst_kt = 1e9;
  for (double p : {0.3, 0.5}) {
    double e32 = std::abs(static_cast<double>(c_kt_exact(32, p) - c_kt_asymptotic(32, p)));
    double e64 = std::abs(static_cast<double>(c_kt_exact(64, p) - c_kt_asymptotic(64, p)));
    worst_kt = std::min(worst_kt, e32 / e64);
  }
  ok = sums && bracket && worst_ef >= kEmpiricalOrderRatio && worst_kt >= kKtOrderRatio;
  return {ok, std::string("S1/S2 exact ") + (sums ? "equal" : "differ") + ", bracket " + (bracket ? "holds" : "violated") +
                  fmt(", e_F min ratio %.2f", worst_ef) + fmt(", C_KT ratio 32->64 %.2f", worst_kt)};
}

Outcome monte_carlo() {
  bool ok = true;
  std::string detail;
  auto set = std::make_shared<const ContextSet>(build_context_set(16));
  for (double p : {0.1, 0.5}) {
    BenchConfig cfg;
    cfg.n = 16;
    cfg.p = p;
    cfg.m = {1, 2, 4, 10, 64};
    cfg.Q = kMonteCarloQ;
    cfg.seed = kMonteCarloSeed;
    auto rs = run_benchmark(cfg, set);
    double worst = 0;
    for (const auto& r : rs) worst = std::max(worst, std::abs(r.rate - expected_rate(*set, p, r.m)) / r.rate_sigma);
    ok = ok && worst <= kSigmas;
    if (p == 0.5) ok = ok && rs.back().rate < rs.front().rate;
    detail += fmt("p=%.1f", p) + fmt(" worst %.2f sigma", worst) + fmt(", rate m=1 %.4f", rs.front().rate) +
              fmt(" m=64 %.4f; ", rs.back().rate);
  }
  return {ok, detail};
}

Outcome serialization() {
  bool ok = true;
  for (int n : {4, 8, 12, 16, 20}) {
    auto text = serialize(build_context_set(n));
    ok = ok && serialize(deserialize_set(text)) == text;
  }
  bool rejected = false;
  try {
    deserialize_table(slurp("corrupt_base_n12.txt"));
  } catch (const ValidationError&) {
    rejected = true;
  }
  return {ok && rejected, std::string("round trip ") + (ok ? "identical" : "differs") + ", corrupted base " +
                              (rejected ? "rejected" : "accepted")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"example code table", table_one},   {"n=12 universal table", universal_twelve},
      {"round trips", round_trips},        {"context set counts", context_counts},
      {"redundancy theorem", theorem_one}, {"expansion identities", expansion_identities},
      {"Monte Carlo", monte_carlo},        {"serialization", serialization},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) o.detail.pop_back();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
