#include "ctorsim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ctorsim/analytics.hpp"
#include "ctorsim/censor.hpp"
#include "ctorsim/errors.hpp"
#include "ctorsim/onion.hpp"

namespace ctorsim::experiment {

std::vector<VariantConfig> ExperimentConfig::effective_variants() const {
  return variants.empty() ? analytics::fig2_configs() : variants;
}

void ExperimentConfig::validate() const {
  if (mb < 0) throw ConfigError("mb must be non-negative");
  if (mknown_lo < 0 || mknown_hi < mknown_lo)
    throw ConfigError("mknown range must be non-negative and ascending");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (!(full_pipeline_fraction >= 0.0 && full_pipeline_fraction <= 1.0))
    throw ConfigError("full pipeline fraction must lie in [0, 1]");
  for (const auto& v : effective_variants()) {
    v.validate();
    if (static_cast<std::int64_t>(v.n) > mb + mknown_lo)
      throw ConfigError(v.label() + ": n exceeds the bridge pool at mknown = " +
                        std::to_string(mknown_lo));
    if (full_pipeline_fraction > 0.0 && v.n > middles)
      throw ConfigError(v.label() + ": n exceeds the " + std::to_string(middles) + " middles");
  }
  if (full_pipeline_fraction > 0.0 && exits < 1) throw ConfigError("need at least one exit");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
    throw ConfigError(std::string(what) + ": cannot parse '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::pair<std::int64_t, std::int64_t> parse_mknown(std::string_view text) {
  text = trim(text);
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto v = parse_number<std::int64_t>(text, "mknown");
    return {v, v};
  }
  return {parse_number<std::int64_t>(text.substr(0, dots), "mknown"),
          parse_number<std::int64_t>(text.substr(dots + 2), "mknown")};
}

void apply_config_text(std::string_view text, ExperimentConfig& config) {
  bool variants_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "mb") {
      config.mb = parse_number<std::int64_t>(value, key);
    } else if (key == "mknown") {
      std::tie(config.mknown_lo, config.mknown_hi) = parse_mknown(value);
    } else if (key == "variant") {
      if (!variants_seen) config.variants.clear();
      variants_seen = true;
      config.variants.push_back(VariantConfig::parse(value));
    } else if (key == "trials") {
      config.trials = parse_number<std::size_t>(value, key);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "out") {
      config.out = std::string(value);
    } else if (key == "full_pipeline_fraction") {
      config.full_pipeline_fraction = parse_number<double>(value, key);
    } else if (key == "middles") {
      config.middles = parse_number<std::size_t>(value, key);
    } else if (key == "exits") {
      config.exits = parse_number<std::size_t>(value, key);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
}

void apply_config_file(const std::filesystem::path& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(ss.str(), config);
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

void write_analytic_csv(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  const auto rows =
      analytics::sweep(config.mb, config.mknown_lo, config.mknown_hi, config.effective_variants());
  if (config.verify_oracle) {
    for (const auto& row : rows) {
      const auto oracle = analytics::enumerate_oracle(
          config.mb, row.m_known, static_cast<std::int64_t>(row.config.n),
          static_cast<std::int64_t>(row.config.tolerated_blocks()));
      if (!(oracle == row.probability))
        throw std::logic_error("closed form disagrees with enumeration for " + row.config.label() +
                               " at mknown = " + std::to_string(row.m_known));
    }
  }
  out << kAnalyticHeader << '\n';
  for (const auto& row : rows) {
    out << row.m_known << ',' << to_string(row.config.variant) << ',' << row.config.n << ','
        << row.config.r << ',' << row.probability.numerator() << ','
        << row.probability.denominator() << ',' << format_double(row.probability.to_double())
        << '\n';
  }
}

void write_simulate_csv(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  auto variants = config.effective_variants();
  std::sort(variants.begin(), variants.end());
  out << kSimulateHeader << '\n';
  std::uint64_t point = 0;
  for (std::int64_t m = config.mknown_lo; m <= config.mknown_hi; ++m) {
    for (const auto& v : variants) {
      const censor::CensorScenario scenario{
          censor::BridgePool::make(static_cast<std::size_t>(config.mb),
                                   static_cast<std::size_t>(m)),
          v};
      censor::CampaignOptions opts;
      opts.trials = config.trials;
      opts.seed = derive_seed(config.seed, point++);
      opts.full_pipeline_fraction = config.full_pipeline_fraction;
      opts.middles = config.middles;
      opts.exits = config.exits;
      const auto res = censor::run_campaign(scenario, opts);
      if (res.pipeline_mismatches != 0)
        throw std::logic_error("pipeline verdict disagrees with the blocking rule for " +
                               v.label() + " at mknown = " + std::to_string(m));
      out << m << ',' << to_string(v.variant) << ',' << v.n << ',' << v.r << ','
          << format_double(res.p_empirical) << ',' << format_double(res.ci95) << ','
          << res.trials << ',' << opts.seed << '\n';
    }
  }
}

Fig2Paths run_fig2(const ExperimentConfig& config, const std::filesystem::path& dir) {
  config.validate();
  std::filesystem::create_directories(dir);
  Fig2Paths paths{dir / "fig2_analytic.csv", dir / "fig2_simulated.csv"};
  {
    std::ofstream a(paths.analytic, std::ios::binary);
    if (!a) throw ConfigError("cannot write " + paths.analytic.string());
    write_analytic_csv(config, a);
  }
  {
    std::ofstream s(paths.simulated, std::ios::binary);
    if (!s) throw ConfigError("cannot write " + paths.simulated.string());
    write_simulate_csv(config, s);
  }
  return paths;
}

int run_e2e(const E2eOptions& options, std::ostream& out) {
  const auto& v = options.variant;
  const auto params = v.code_params();
  if (options.message.empty()) throw ConfigError("e2e: message is empty");

  onion::CircuitSet circuits;
  Rng rng(options.seed);
  if (options.blocked) {
    const onion::RouterRegistry registry(v.n, options.middles, options.exits,
                                         derive_seed(options.seed, ~0ULL));
    std::vector<onion::RouterId> bridges(v.n);
    for (std::size_t i = 0; i < v.n; ++i) bridges[i] = static_cast<onion::RouterId>(i);
    circuits = onion::build_circuits(bridges, registry, rng);
    for (auto idx : *options.blocked) {
      if (idx >= v.n)
        throw ConfigError("e2e: blocked circuit index " + std::to_string(idx) +
                          " out of range for n = " + std::to_string(v.n));
      circuits.circuits[idx].blocked = true;
    }
  } else {
    const censor::CensorScenario scenario{
        censor::BridgePool::make(static_cast<std::size_t>(options.mb),
                                 static_cast<std::size_t>(options.mknown)),
        v};
    scenario.validate();
    const onion::RouterRegistry registry(scenario.pool.size(), options.middles, options.exits,
                                         derive_seed(options.seed, ~0ULL));
    const auto chosen = censor::select_bridges(scenario.pool, v.n, rng);
    circuits = onion::build_circuits(chosen, registry, rng);
    for (auto& c : circuits.circuits) c.blocked = scenario.pool.is_known(c.entry.id);
  }

  const auto result = onion::run_transfer(v.variant, params, options.message, circuits);

  out << "variant " << v.label() << " (n=" << params.n << " k=" << params.k << " r=" << params.r
      << "), message " << options.message.size() << " bytes, " << result.generations
      << " generation(s)\n";
  for (const auto& c : circuits.circuits) {
    out << "circuit " << c.id << ": entry " << c.entry.id << " middle " << c.middle.id
        << " exit " << c.exit.id << (c.blocked ? " BLOCKED" : "") << '\n';
  }
  for (std::size_t g = 0; g < result.delivered_per_generation.size(); ++g)
    out << "generation " << g << ": delivered " << result.delivered_per_generation[g] << '/'
        << params.n << " (need " << params.k << ")\n";
  if (result.success) {
    out << "decode: ok\nbytes identical: yes\nresult: delivered\n";
    return kExitOk;
  }
  out << "decode: failed (" << result.failure_reason << ")\n"
      << "bytes identical: no\nresult: interrupted\n";
  return kExitInterrupted;
}

}  // namespace ctorsim::experiment
