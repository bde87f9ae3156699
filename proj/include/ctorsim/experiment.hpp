#pragma once

// Batch experiment driver behind the command-line tool: configuration,
// analytic and Monte Carlo CSV emission, the standard figure preset and the
// single-transfer end-to-end demo.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctorsim/variant.hpp"

namespace ctorsim::experiment {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitInterrupted = 2,
  kExitResource = 3,
};

struct ExperimentConfig {
  std::int64_t mb = 25;
  std::int64_t mknown_lo = 0;
  std::int64_t mknown_hi = 25;
  std::vector<VariantConfig> variants;  // empty means the standard figure set
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  std::string out;
  double full_pipeline_fraction = 0.01;
  std::size_t middles = 50;
  std::size_t exits = 10;
  // Cross-check every analytic point against brute-force enumeration.
  bool verify_oracle = false;

  // Variants in effect (the standard set when none were given).
  std::vector<VariantConfig> effective_variants() const;
  // Throws ConfigError on any inconsistency; nothing is computed before this passes.
  void validate() const;
};

// "a" or "a..b".
std::pair<std::int64_t, std::int64_t> parse_mknown(std::string_view text);

// Flat key-value text: one `key = value` per line, '#' starts a comment.
// Keys: mb, mknown, variant (repeatable), trials, seed, out,
// full_pipeline_fraction, middles, exits.
void apply_config_text(std::string_view text, ExperimentConfig& config);
void apply_config_file(const std::filesystem::path& path, ExperimentConfig& config);

inline constexpr std::string_view kAnalyticHeader = "m_known,variant,n,r,p_exact_num,p_exact_den,p_float";
inline constexpr std::string_view kSimulateHeader = "m_known,variant,n,r,p_empirical,ci95,trials,seed";

// Shortest round-trip decimal form.
std::string format_double(double v);

void write_analytic_csv(const ExperimentConfig& config, std::ostream& out);
void write_simulate_csv(const ExperimentConfig& config, std::ostream& out);

struct Fig2Paths {
  std::filesystem::path analytic;
  std::filesystem::path simulated;
};

// Writes fig2_analytic.csv and fig2_simulated.csv into `dir`.
Fig2Paths run_fig2(const ExperimentConfig& config, const std::filesystem::path& dir);

struct E2eOptions {
  VariantConfig variant = VariantConfig::ctor(4, 1);
  std::vector<std::uint8_t> message;
  // Explicit circuit indices to block. When absent, bridges are drawn from a
  // (mb, mknown) pool with `seed` and known entries are blocked.
  std::optional<std::vector<std::size_t>> blocked;
  std::int64_t mb = 25;
  std::int64_t mknown = 0;
  std::uint64_t seed = 1;
  std::size_t middles = 50;
  std::size_t exits = 10;
};

// Runs one transfer, prints a report, returns kExitOk or kExitInterrupted.
int run_e2e(const E2eOptions& options, std::ostream& out);

}  // namespace ctorsim::experiment
