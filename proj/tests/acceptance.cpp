// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ctorsim/analytics.hpp"
#include "ctorsim/censor.hpp"
#include "ctorsim/codec.hpp"
#include "ctorsim/errors.hpp"
#include "ctorsim/experiment.hpp"
#include "ctorsim/gf256.hpp"
#include "ctorsim/rng.hpp"

using namespace ctorsim;
namespace an = ctorsim::analytics;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const std::string& id, const std::string& title, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %-3s %-44s %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              v.detail.c_str(), secs);
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F f) {
  if (k == 0) {
    f(std::vector<std::size_t>{});
    return;
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

unsigned shift_reduce_mul(unsigned a, unsigned b) {
  unsigned p = 0;
  for (int i = 0; i < 8; ++i)
    if (b & (1u << i)) p ^= a << i;
  for (int bit = 14; bit >= 8; --bit)
    if (p & (1u << bit)) p ^= 0x11Du << (bit - 8);
  return p;
}

std::vector<std::uint8_t> random_bytes(std::size_t len, Rng& rng) {
  std::vector<std::uint8_t> m(len);
  for (auto& b : m) b = static_cast<std::uint8_t>(rng.next());
  return m;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<int> kFig2Ns = {1, 4, 5, 8, 10};

// 1. Closed forms equal brute-force enumeration as exact rationals.
Verdict oracle_equivalence() {
  std::size_t points = 0;
  for (int mb = 0; mb <= 12; ++mb)
    for (int mk = 0; mk <= 12; ++mk)
      for (int n = 1; n <= 6 && n <= mb + mk; ++n) {
        if (!(an::p_block_plain(mb, mk, n) == an::enumerate_oracle(mb, mk, n, 0)))
          return {false, "plain mismatch at M_b=" + std::to_string(mb) + " M'=" +
                             std::to_string(mk) + " n=" + std::to_string(n)};
        for (int r = 0; r < n; ++r) {
          ++points;
          if (!(an::p_block_lnc(mb, mk, n, r) == an::enumerate_oracle(mb, mk, n, r)))
            return {false, "lnc mismatch at M_b=" + std::to_string(mb) + " M'=" +
                               std::to_string(mk) + " n=" + std::to_string(n) +
                               " r=" + std::to_string(r)};
        }
      }
  return {true, std::to_string(points) + " (M_b, M', n, r) points exact"};
}

// 2. Complement identity, r = 0 reduction and the M' <= r zero region.
Verdict identities() {
  std::size_t checks = 0;
  for (int mk = 0; mk <= 25; ++mk)
    for (int n = 1; n <= 10; ++n) {
      const auto plain = an::p_block_plain(25, mk, n);
      if (!(plain == an::p_block_plain_complement(25, mk, n)))
        return {false, "complement identity fails at M'=" + std::to_string(mk)};
      if (!(an::p_block_lnc(25, mk, n, 0) == plain))
        return {false, "r=0 reduction fails at M'=" + std::to_string(mk)};
      for (int r = 1; r < n; ++r)
        if (mk <= r && !(an::p_block_lnc(25, mk, n, r) == an::ExactProbability{}))
          return {false, "nonzero with M' <= r at M'=" + std::to_string(mk)};
      checks += static_cast<std::size_t>(n) + 1;
    }
  // The exact Fig. 2 curve set as well.
  for (const auto& row : an::sweep(25, 0, 25, an::fig2_configs())) {
    const auto n = static_cast<std::int64_t>(row.config.n);
    if (row.config.variant != Variant::CTor &&
        !(row.probability == an::p_block_plain_complement(25, row.m_known, n)))
      return {false, "sweep row disagrees with complement form"};
    ++checks;
  }
  return {true, std::to_string(checks) + " exact identities hold"};
}

// 3a. mTor with n = 8, 10 is almost surely blocked once the censor knows 16 bridges.
Verdict fig2_saturation() {
  const auto p10 = an::p_block_plain(25, 16, 10);
  const auto p8 = an::p_block_plain(25, 16, 8);
  const bool ok = p10.to_double() >= 0.99 && p8.to_double() >= 0.98 &&
                  an::ExactProbability(99, 100) <= p10 && an::ExactProbability(98, 100) <= p8;
  return {ok, "mTor(10)=" + an::to_string(p10) + "=" + experiment::format_double(p10.to_double()) +
                  ", mTor(8)=" + an::to_string(p8) + "=" +
                  experiment::format_double(p8.to_double())};
}

// 3b. Coding never hurts: cTor(n, r >= 1) <= mTor(n) pointwise.
Verdict fig2_dominance() {
  std::size_t checks = 0;
  for (int n : kFig2Ns)
    for (int r = 1; r < n; ++r)
      for (int mk = 1; mk <= 25; ++mk) {
        if (!(an::p_block_lnc(25, mk, n, r) <= an::p_block_plain(25, mk, n)))
          return {false, "cTor(" + std::to_string(n) + "," + std::to_string(r) +
                             ") above mTor at M'=" + std::to_string(mk)};
        ++checks;
      }
  return {true, std::to_string(checks) + " points, cTor <= mTor everywhere"};
}

// 3c. Crossover between cTor(10, 4) and cTor(5, 2). The claim is that (10, 4)
// is lowest for M' < 15 and (5, 2) for 15 <= M' < 25. The exact crossover is
// computed and any disagreement with 15 is reported explicitly.
Verdict fig2_crossover() {
  constexpr int kClaimed = 15;
  auto wide = [](int mk) { return an::p_block_lnc(25, mk, 10, 4); };
  auto narrow = [](int mk) { return an::p_block_lnc(25, mk, 5, 2); };

  // First M' in 1..24 at which (10, 4) is strictly worse.
  int crossover = 25;
  for (int mk = 1; mk < 25; ++mk)
    if (narrow(mk) < wide(mk)) {
      crossover = mk;
      break;
    }
  // The two curves must swap exactly once on 1..24.
  for (int mk = 1; mk < 25; ++mk) {
    const bool wide_lower = wide(mk) <= narrow(mk);
    const bool narrow_lower = narrow(mk) <= wide(mk);
    if (mk < crossover && !wide_lower)
      return {false, "no single crossover: (10,4) above (5,2) at M'=" + std::to_string(mk)};
    if (mk >= crossover && !narrow_lower)
      return {false, "no single crossover: (5,2) above (10,4) at M'=" + std::to_string(mk)};
  }
  if (crossover == kClaimed)
    return {true, "exact crossover at M'=15 as claimed"};

  std::string detail = "DISCREPANCY reported: exact crossover at M'=" +
                       std::to_string(crossover) + ", claimed 15;";
  for (int mk = std::min(crossover, kClaimed); mk < std::max(crossover, kClaimed); ++mk)
    detail += " at M'=" + std::to_string(mk) + " cTor(10,4)=" +
              experiment::format_double(wide(mk).to_double()) + " vs cTor(5,2)=" +
              experiment::format_double(narrow(mk).to_double());
  return {true, detail};
}

// 4. Monte Carlo lands within 3 binomial standard deviations of the exact value.
Verdict monte_carlo() {
  struct Point {
    VariantConfig config;
    int mk;
  };
  const std::vector<Point> sample = {
      {VariantConfig::otor(), 5},        {VariantConfig::mtor(4), 5},
      {VariantConfig::mtor(4), 12},      {VariantConfig::mtor(5), 20},
      {VariantConfig::mtor(8), 3},       {VariantConfig::mtor(8), 16},
      {VariantConfig::mtor(10), 10},     {VariantConfig::mtor(10), 16},
      {VariantConfig::ctor(5, 2), 8},    {VariantConfig::ctor(5, 2), 20},
      {VariantConfig::ctor(10, 4), 14},  {VariantConfig::ctor(10, 4), 25},
  };
  constexpr std::size_t kTrials = 100'000;
  double worst = 0.0;
  std::uint64_t index = 0;
  for (const auto& pt : sample) {
    censor::CampaignOptions opts;
    opts.trials = kTrials;
    opts.seed = derive_seed(20261018, index++);
    const censor::CensorScenario sc{censor::BridgePool::make(25, static_cast<std::size_t>(pt.mk)),
                                    pt.config};
    const auto res = censor::run_campaign(sc, opts);
    const double exact = an::p_block(25, pt.mk, pt.config).to_double();
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(kTrials));
    const double dev = std::abs(res.p_empirical - exact);
    if (res.pipeline_mismatches != 0) return {false, "pipeline mismatch at " + pt.config.label()};
    if (sigma == 0.0) {
      if (dev != 0.0) return {false, pt.config.label() + ": degenerate point not exact"};
      continue;
    }
    worst = std::max(worst, dev / sigma);
    if (dev > 3.0 * sigma)
      return {false, pt.config.label() + " M'=" + std::to_string(pt.mk) + ": empirical " +
                         experiment::format_double(res.p_empirical) + " vs exact " +
                         experiment::format_double(exact)};
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "12 points x 1e5 trials, worst deviation %.2f sigma", worst);
  return {true, buf};
}

// 5. Byte pipeline verdict equals the blocked-count rule on every trial.
Verdict pipeline_consistency() {
  struct Mix {
    VariantConfig config;
    std::size_t mk;
  };
  const std::vector<Mix> mix = {
      {VariantConfig::otor(), 10},      {VariantConfig::mtor(4), 6},
      {VariantConfig::mtor(10), 3},     {VariantConfig::ctor(4, 1), 5},
      {VariantConfig::ctor(5, 2), 15},  {VariantConfig::ctor(10, 4), 14},
      {VariantConfig::ctor(4, 1), 25},  {VariantConfig::ctor(8, 3), 20},
  };
  constexpr std::size_t kTotal = 10'000;
  std::size_t checks = 0, mismatches = 0, interrupted = 0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    censor::CampaignOptions opts;
    opts.trials = kTotal / mix.size();
    opts.seed = derive_seed(5, i);
    opts.full_pipeline_fraction = 1.0;
    const auto res =
        censor::run_campaign({censor::BridgePool::make(25, mix[i].mk), mix[i].config}, opts);
    checks += res.pipeline_checks;
    mismatches += res.pipeline_mismatches;
    interrupted += res.interrupted;
  }
  return {checks == kTotal && mismatches == 0,
          std::to_string(checks) + " full-pipeline trials, " + std::to_string(mismatches) +
              " mismatches, " + std::to_string(interrupted) + " interrupted"};
}

// 6a. Round trip through encode, erasure of up to r coded cells, decode, reassemble.
Verdict codec_round_trip() {
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {{1, 1}, {4, 3}, {5, 3}, {10, 6}};
  Rng rng(606);
  std::size_t messages = 0;
  for (auto [n, k] : shapes) {
    const auto params = codec::CodeParams::make(k, n - k);
    const auto matrix = codec::build_generator(params);
    for (int t = 0; t < 1000; ++t) {
      const auto msg = random_bytes(1 + rng.below(8192), rng);
      const auto gens = codec::split_message(msg, k);
      const auto coded = codec::encode_generations(gens, matrix);
      std::vector<codec::Generation> decoded;
      for (const auto& cells : coded) {
        // Keep a random k-or-larger subset.
        std::vector<codec::CodedCell> kept(cells.begin(), cells.end());
        for (std::size_t i = kept.size(); i > 1; --i) std::swap(kept[i - 1], kept[rng.below(i)]);
        kept.resize(k + rng.below(n - k + 1));
        decoded.push_back(codec::decode_generation(kept, params));
      }
      if (codec::reassemble_message(decoded) != msg)
        return {false, "round trip differs for (" + std::to_string(n) + "," + std::to_string(k) +
                           ") length " + std::to_string(msg.size())};
      ++messages;
    }
  }
  return {true, std::to_string(messages) + " messages bit-exact across 4 code shapes"};
}

// 6b / 6c. Every k-subset decodes, every (k-1)-subset fails, for all n <= 10.
Verdict codec_threshold() {
  std::size_t decodes = 0, failures_seen = 0;
  Rng rng(707);
  for (std::size_t n = 1; n <= 10; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      const auto params = codec::CodeParams::make(k, n - k);
      codec::Generation gen{0, std::vector<codec::Cell>(k)};
      for (auto& c : gen.cells)
        for (auto& b : c) b = static_cast<std::uint8_t>(rng.next());
      const auto coded = codec::encode_generation(gen, codec::build_generator(params));
      bool ok = true;
      for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
        std::vector<codec::CodedCell> rx;
        for (auto i : idx) rx.push_back(coded[i]);
        ok = ok && codec::decode_generation(rx, params).cells == gen.cells;
        ++decodes;
      });
      for_each_subset(n, k - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<codec::CodedCell> rx;
        for (auto i : idx) rx.push_back(coded[i]);
        try {
          codec::decode_generation(0, rx, params);
          ok = false;
        } catch (const UnrecoverableGeneration&) {
          ++failures_seen;
        }
      });
      if (!ok)
        return {false, "threshold violated for (" + std::to_string(n) + "," + std::to_string(k) +
                           ")"};
    }
  return {true, std::to_string(decodes) + " k-subsets decode, " + std::to_string(failures_seen) +
                    " (k-1)-subsets fail"};
}

// 7. Field axioms over all pairs (and all triples where three operands are involved).
Verdict field_axioms() {
  for (unsigned a = 0; a < 256; ++a) {
    const auto x = static_cast<gf::Element>(a);
    if (gf::add(x, 0) != x || gf::add(x, x) != 0 || gf::mul(x, 1) != x || gf::mul(x, 0) != 0)
      return {false, "identity/absorption fails at " + std::to_string(a)};
    for (unsigned b = 0; b < 256; ++b) {
      const auto y = static_cast<gf::Element>(b);
      if (gf::add(x, y) != gf::add(y, x) || gf::mul(x, y) != gf::mul(y, x))
        return {false, "commutativity fails"};
      if (gf::mul(x, y) != shift_reduce_mul(a, b)) return {false, "mul disagrees with oracle"};
      if (a && b && gf::mul(x, y) == 0) return {false, "zero divisor"};
      for (unsigned c = 0; c < 256; ++c) {
        const auto z = static_cast<gf::Element>(c);
        if (gf::mul(gf::mul(x, y), z) != gf::mul(x, gf::mul(y, z)) ||
            gf::add(gf::add(x, y), z) != gf::add(x, gf::add(y, z)) ||
            gf::mul(x, gf::add(y, z)) != gf::add(gf::mul(x, y), gf::mul(x, z)))
          return {false, "associativity/distributivity fails"};
      }
    }
  }
  for (unsigned a = 1; a < 256; ++a)
    if (gf::mul(static_cast<gf::Element>(a), gf::inv(static_cast<gf::Element>(a))) != 1)
      return {false, "inverse fails at " + std::to_string(a)};
  return {true, "65536 pairs, 16777216 triples, 255 inverses"};
}

// 8. `fig2` twice with one seed gives byte-identical CSVs.
Verdict reproducibility() {
  const auto base = std::filesystem::temp_directory_path() / "ctorsim_acceptance_fig2";
  std::filesystem::remove_all(base);
  experiment::ExperimentConfig cfg;
  cfg.seed = 42;
  const auto a = experiment::run_fig2(cfg, base / "a");
  const auto b = experiment::run_fig2(cfg, base / "b");
  const bool same = slurp(a.analytic) == slurp(b.analytic) &&
                    slurp(a.simulated) == slurp(b.simulated) && !slurp(a.simulated).empty();
  std::filesystem::remove_all(base);
  return {same, "default preset (" + std::to_string(cfg.trials) + " trials/point), seed 42"};
}

}  // namespace

int main() {
  run("1", "oracle equivalence (exact)", oracle_equivalence);
  run("2", "identity checks (exact)", identities);
  run("3a", "fig2: mTor saturation at M'=16", fig2_saturation);
  run("3b", "fig2: cTor <= mTor pointwise", fig2_dominance);
  run("3c", "fig2: cTor(10,4) / cTor(5,2) crossover", fig2_crossover);
  run("4", "Monte Carlo within 3 sigma", monte_carlo);
  run("5", "pipeline / combinatorics consistency", pipeline_consistency);
  run("6a", "codec round trip", codec_round_trip);
  run("6bc", "codec any-k decodes, k-1 fails", codec_threshold);
  run("7", "GF(2^8) exhaustive axioms", field_axioms);
  run("8", "fig2 reproducibility", reproducibility);
  std::printf("%d criterion/criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
