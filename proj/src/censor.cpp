#include "ctorsim/censor.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ctorsim/errors.hpp"

namespace ctorsim::censor {

BridgePool BridgePool::make(std::size_t unknown, std::size_t known) {
  std::vector<RouterId> u(unknown), k(known);
  std::iota(u.begin(), u.end(), RouterId{0});
  std::iota(k.begin(), k.end(), static_cast<RouterId>(unknown));
  return BridgePool(std::move(u), std::move(k));
}

BridgePool::BridgePool(std::vector<RouterId> unknown_bridges, std::vector<RouterId> known_bridges)
    : unknown_(std::move(unknown_bridges)), known_(std::move(known_bridges)) {
  const std::size_t total = unknown_.size() + known_.size();
  // 0 = unset, 1 = known, 2 = unknown
  std::vector<std::uint8_t> state(total, 0);
  auto mark = [&](const std::vector<RouterId>& ids, std::uint8_t tag) {
    for (auto id : ids) {
      if (id >= total) throw ConfigError("bridge pool: ids must be dense over 0..total-1");
      if (state[id] != 0) throw ConfigError("bridge pool: duplicate or overlapping bridge id");
      state[id] = tag;
    }
  };
  mark(unknown_, 2);
  mark(known_, 1);
  known_mask_.resize(total);
  for (std::size_t i = 0; i < total; ++i) known_mask_[i] = state[i] == 1;
}

void CensorScenario::validate() const {
  config.validate();
  if (config.n > pool.size())
    throw DomainError("scenario: n = " + std::to_string(config.n) + " exceeds the " +
                      std::to_string(pool.size()) + " available bridges");
}

std::vector<RouterId> select_bridges(const BridgePool& pool, std::size_t n, Rng& rng) {
  const std::size_t total = pool.size();
  if (n > total)
    throw DomainError("select_bridges: n = " + std::to_string(n) + " exceeds pool of " +
                      std::to_string(total));
  std::vector<RouterId> ids(total);
  std::iota(ids.begin(), ids.end(), RouterId{0});
  for (std::size_t i = 0; i < n; ++i) std::swap(ids[i], ids[i + rng.below(total - i)]);
  ids.resize(n);
  return ids;
}

std::size_t count_known(const BridgePool& pool, std::span<const RouterId> chosen) {
  std::size_t c = 0;
  for (auto id : chosen) c += pool.is_known(id) ? 1 : 0;
  return c;
}

namespace {

bool pipeline_interrupted(const CensorScenario& scenario, const onion::RouterRegistry& registry,
                          std::span<const RouterId> chosen, std::span<const std::uint8_t> message,
                          Rng& rng) {
  auto circuits = onion::build_circuits(chosen, registry, rng);
  for (auto& c : circuits.circuits) c.blocked = scenario.pool.is_known(c.entry.id);
  const auto result = onion::run_transfer(scenario.config.variant,
                                          scenario.config.code_params(), message, circuits);
  return !result.success;
}

std::vector<std::uint8_t> default_message(std::uint64_t seed) {
  std::vector<std::uint8_t> m(1500);
  Rng rng(derive_seed(seed, 0xC0FFEE));
  for (auto& b : m) b = static_cast<std::uint8_t>(rng.next());
  return m;
}

struct Campaign {
  const CensorScenario& scenario;
  const CampaignOptions& options;
  onion::RouterRegistry registry;
  std::vector<std::uint8_t> message;
  std::size_t blocks;

  Campaign(const CensorScenario& s, const CampaignOptions& o)
      : scenario(s),
        options(o),
        registry((s.validate(), s.pool.size()), o.middles, o.exits, derive_seed(o.seed, ~0ULL)),
        message(o.message.empty() ? default_message(o.seed) : o.message),
        blocks((o.trials + kTrialsPerBlock - 1) / kTrialsPerBlock) {
    if (o.trials < 1) throw DomainError("campaign: trials must be at least 1");
    if (!(o.full_pipeline_fraction >= 0.0 && o.full_pipeline_fraction <= 1.0))
      throw ConfigError("campaign: full pipeline fraction must lie in [0, 1]");
    if (o.full_pipeline_fraction > 0.0 && o.middles < s.n())
      throw ConfigError("campaign: need at least n = " + std::to_string(s.n()) + " middles");
    if (o.full_pipeline_fraction > 0.0 && o.exits < 1)
      throw ConfigError("campaign: need at least one exit");
  }

  struct Counts {
    std::size_t interrupted = 0, checks = 0, mismatches = 0;
  };

  Counts run_block(std::size_t b) const {
    Counts c;
    Rng rng(derive_seed(options.seed, b));
    const std::size_t begin = b * kTrialsPerBlock;
    const std::size_t end = std::min(options.trials, begin + kTrialsPerBlock);
    for (std::size_t t = begin; t < end; ++t) {
      const auto chosen = select_bridges(scenario.pool, scenario.n(), rng);
      const bool by_rule = scenario.config.interrupted_by(count_known(scenario.pool, chosen));
      c.interrupted += by_rule ? 1 : 0;
      if (rng.unit() < options.full_pipeline_fraction) {
        Rng trial_rng(rng.next());
        ++c.checks;
        if (pipeline_interrupted(scenario, registry, chosen, message, trial_rng) != by_rule)
          ++c.mismatches;
      }
    }
    return c;
  }

  CampaignResult finish(const Counts& c) const {
    CampaignResult r;
    r.trials = options.trials;
    r.interrupted = c.interrupted;
    r.p_empirical = static_cast<double>(c.interrupted) / static_cast<double>(options.trials);
    r.ci95 = ci95_half_width(r.p_empirical, options.trials);
    r.pipeline_checks = c.checks;
    r.pipeline_mismatches = c.mismatches;
    return r;
  }
};

}  // namespace

TrialOutcome run_trial(const CensorScenario& scenario, const onion::RouterRegistry& registry,
                       std::span<const std::uint8_t> message, std::uint64_t seed) {
  scenario.validate();
  Rng rng(seed);
  TrialOutcome out;
  out.chosen_bridges = select_bridges(scenario.pool, scenario.n(), rng);
  out.blocked_count = count_known(scenario.pool, out.chosen_bridges);
  out.interrupted = pipeline_interrupted(scenario, registry, out.chosen_bridges, message, rng);
  return out;
}

CampaignResult run_campaign_serial(const CensorScenario& scenario, const CampaignOptions& options) {
  const Campaign camp(scenario, options);
  Campaign::Counts total;
  for (std::size_t b = 0; b < camp.blocks; ++b) {
    const auto c = camp.run_block(b);
    total.interrupted += c.interrupted;
    total.checks += c.checks;
    total.mismatches += c.mismatches;
  }
  return camp.finish(total);
}

CampaignResult run_campaign(const CensorScenario& scenario, const CampaignOptions& options) {
  const Campaign camp(scenario, options);
  std::size_t interrupted = 0, checks = 0, mismatches = 0;
  const auto blocks = static_cast<std::ptrdiff_t>(camp.blocks);
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : interrupted, checks, mismatches)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const auto c = camp.run_block(static_cast<std::size_t>(b));
    interrupted += c.interrupted;
    checks += c.checks;
    mismatches += c.mismatches;
  }
  return camp.finish({interrupted, checks, mismatches});
}

double ci95_half_width(double p, std::size_t trials) noexcept {
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace ctorsim::censor
