// ctorsim: censorship experiments for single-circuit, multi-circuit and
// coded multi-circuit onion routing.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctorsim/errors.hpp"
#include "ctorsim/experiment.hpp"
#include "ctorsim/rng.hpp"

namespace ex = ctorsim::experiment;

namespace {

struct Flags {
  std::string config_file;
  std::optional<std::int64_t> mb;
  std::optional<std::string> mknown;
  std::vector<std::string> variants;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> fraction;
  std::optional<std::size_t> middles;
  std::optional<std::size_t> exits;
  bool verify_oracle = false;
};

void add_common(CLI::App* cmd, Flags& f, bool simulation) {
  cmd->add_option("--config", f.config_file, "key = value config file (flags override it)");
  cmd->add_option("--mb", f.mb, "bridges unknown to the censor");
  cmd->add_option("--mknown", f.mknown, "censor-known bridges: N or A..B");
  cmd->add_option("--variant", f.variants, "otor | mtor:<n> | ctor:<n>:<r> (repeatable)");
  cmd->add_option("--out", f.out, "output path (directory for fig2)");
  if (simulation) {
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per grid point");
    cmd->add_option("--seed", f.seed, "campaign seed");
    cmd->add_option("--full-pipeline-fraction", f.fraction,
                    "share of trials cross-checked through the byte pipeline");
    cmd->add_option("--middles", f.middles, "middle relay pool size");
    cmd->add_option("--exits", f.exits, "exit relay pool size");
  }
}

ex::ExperimentConfig resolve(const Flags& f) {
  ex::ExperimentConfig c;
  if (!f.config_file.empty()) ex::apply_config_file(f.config_file, c);
  if (f.mb) c.mb = *f.mb;
  if (f.mknown) std::tie(c.mknown_lo, c.mknown_hi) = ex::parse_mknown(*f.mknown);
  if (!f.variants.empty()) {
    c.variants.clear();
    for (const auto& v : f.variants) c.variants.push_back(ctorsim::VariantConfig::parse(v));
  }
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  if (f.fraction) c.full_pipeline_fraction = *f.fraction;
  if (f.middles) c.middles = *f.middles;
  if (f.exits) c.exits = *f.exits;
  c.verify_oracle = f.verify_oracle;
  c.validate();
  return c;
}

template <typename Writer>
void emit(const ex::ExperimentConfig& c, Writer write) {
  if (c.out.empty() || c.out == "-") {
    write(c, std::cout);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ctorsim::ConfigError("cannot write " + c.out);
  write(c, file);
}

std::vector<std::uint8_t> make_message(const std::string& file, std::size_t size,
                                       std::uint64_t seed) {
  if (!file.empty()) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ctorsim::ConfigError("cannot open message file " + file);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::vector<std::uint8_t> m(size);
  ctorsim::Rng rng(ctorsim::derive_seed(seed, 0x6D657373));
  for (auto& b : m) b = static_cast<std::uint8_t>(rng.next());
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctorsim: bridge-blocking censorship analysis for oTor, mTor and cTor"};
  app.require_subcommand(1);

  Flags analytic_flags, simulate_flags, fig2_flags;
  auto* analytic = app.add_subcommand("analytic", "exact blocking probabilities as CSV");
  add_common(analytic, analytic_flags, false);
  analytic->add_flag("--verify-oracle", analytic_flags.verify_oracle,
                     "cross-check each point by exhaustive enumeration");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo blocking probabilities as CSV");
  add_common(simulate, simulate_flags, true);
  auto* fig2 = app.add_subcommand("fig2", "analytic + simulated CSVs for the standard grid");
  add_common(fig2, fig2_flags, true);

  auto* e2e = app.add_subcommand("e2e", "one full transfer through the onion pipeline");
  std::string e2e_variant = "ctor:4:1";
  std::string message_file;
  std::size_t message_size = 4096;
  std::vector<std::size_t> blocked;
  std::int64_t e2e_mb = 25, e2e_mknown = 0;
  std::uint64_t e2e_seed = 1;
  std::size_t e2e_middles = 50, e2e_exits = 10;
  e2e->add_option("--variant", e2e_variant, "otor | mtor:<n> | ctor:<n>:<r>");
  e2e->add_option("--message-file", message_file, "file to transfer");
  e2e->add_option("--message-size", message_size, "size of a generated message");
  auto* block_opt =
      e2e->add_option("--block", blocked, "circuit indices to block (0-based)")->delimiter(',');
  e2e->add_option("--mb", e2e_mb, "unknown bridges (scenario mode)");
  e2e->add_option("--mknown", e2e_mknown, "censor-known bridges (scenario mode)");
  e2e->add_option("--seed", e2e_seed, "scenario seed");
  e2e->add_option("--middles", e2e_middles, "middle relay pool size");
  e2e->add_option("--exits", e2e_exits, "exit relay pool size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ex::kExitOk : ex::kExitConfig;
  }

  try {
    if (*analytic) {
      emit(resolve(analytic_flags), ex::write_analytic_csv);
    } else if (*simulate) {
      emit(resolve(simulate_flags), ex::write_simulate_csv);
    } else if (*fig2) {
      auto c = resolve(fig2_flags);
      const auto paths = ex::run_fig2(c, c.out.empty() ? std::string(".") : c.out);
      std::cerr << "wrote " << paths.analytic.string() << " and " << paths.simulated.string()
                << '\n';
    } else if (*e2e) {
      ex::E2eOptions o;
      o.variant = ctorsim::VariantConfig::parse(e2e_variant);
      o.message = make_message(message_file, message_size, e2e_seed);
      if (block_opt->count() > 0) o.blocked = blocked;
      o.mb = e2e_mb;
      o.mknown = e2e_mknown;
      o.seed = e2e_seed;
      o.middles = e2e_middles;
      o.exits = e2e_exits;
      return ex::run_e2e(o, std::cout);
    }
  } catch (const ctorsim::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ex::kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ex::kExitConfig;
  }
  return ex::kExitOk;
}
