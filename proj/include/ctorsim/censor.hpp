#pragma once

// Bridge-blocking censor model and the Monte Carlo trial runner.
//
// A censor knows a fixed subset of the bridges. The client draws n bridges
// uniformly without replacement and cannot tell known from unknown ones.
// Every circuit whose entry is known is blocked; the transfer is interrupted
// when more circuits are blocked than the variant tolerates.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ctorsim/onion.hpp"
#include "ctorsim/rng.hpp"
#include "ctorsim/variant.hpp"

namespace ctorsim::censor {

using onion::RouterId;

class BridgePool {
 public:
  // Unknown bridges get ids 0..unknown-1, known ones unknown..unknown+known-1.
  static BridgePool make(std::size_t unknown, std::size_t known);

  // Explicit sets; ids must be dense over 0..total-1 and the sets disjoint.
  BridgePool(std::vector<RouterId> unknown_bridges, std::vector<RouterId> known_bridges);

  const std::vector<RouterId>& unknown_bridges() const noexcept { return unknown_; }
  const std::vector<RouterId>& known_bridges() const noexcept { return known_; }
  std::size_t size() const noexcept { return known_mask_.size(); }
  bool is_known(RouterId id) const { return known_mask_.at(id) != 0; }

 private:
  std::vector<RouterId> unknown_;
  std::vector<RouterId> known_;
  std::vector<std::uint8_t> known_mask_;
};

struct CensorScenario {
  BridgePool pool;
  VariantConfig config;

  std::size_t n() const noexcept { return config.n; }
  // Throws ConfigError/DomainError for an invalid variant or n > pool size.
  void validate() const;
};

struct TrialOutcome {
  std::vector<RouterId> chosen_bridges;
  std::size_t blocked_count = 0;
  bool interrupted = false;
};

// Uniform n-subset of the pool in draw order (partial Fisher-Yates).
std::vector<RouterId> select_bridges(const BridgePool& pool, std::size_t n, Rng& rng);

std::size_t count_known(const BridgePool& pool, std::span<const RouterId> chosen);

// Select bridges, build circuits, block known entries and push `message`
// through the full transfer pipeline. `interrupted` is the pipeline verdict.
TrialOutcome run_trial(const CensorScenario& scenario, const onion::RouterRegistry& registry,
                       std::span<const std::uint8_t> message, std::uint64_t seed);

struct CampaignOptions {
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  // Share of trials that also run the byte pipeline and cross-check it.
  double full_pipeline_fraction = 0.01;
  std::size_t middles = 50;
  std::size_t exits = 10;
  // Payload for pipeline trials; a deterministic 1500-byte message when empty.
  std::vector<std::uint8_t> message;
};

struct CampaignResult {
  std::size_t trials = 0;
  std::size_t interrupted = 0;
  double p_empirical = 0.0;
  double ci95 = 0.0;
  std::size_t pipeline_checks = 0;
  std::size_t pipeline_mismatches = 0;

  friend bool operator==(const CampaignResult&, const CampaignResult&) = default;
};

// Trials are grouped in fixed blocks; block b draws from Rng(derive_seed(seed, b)),
// so the result does not depend on the number of worker threads.
inline constexpr std::size_t kTrialsPerBlock = 1024;

CampaignResult run_campaign(const CensorScenario& scenario, const CampaignOptions& options);
CampaignResult run_campaign_serial(const CensorScenario& scenario, const CampaignOptions& options);

// 1.96 * sqrt(p (1 - p) / trials).
double ci95_half_width(double p, std::size_t trials) noexcept;

}  // namespace ctorsim::censor
