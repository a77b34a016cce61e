// hilltongue: exact tongue series and their Floquet check from a config file.
#include <omp.h>

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hilltongue/config.hpp"
#include "hilltongue/errors.hpp"
#include "hilltongue/report.hpp"
#include "hilltongue/sweeps.hpp"
#include "hilltongue/tongues.hpp"
#include "hilltongue/verify.hpp"

using namespace hilltongue;

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumerical = 2, kVerification = 3 };

struct Options {
  std::string config;
  std::string out;
  int threads = 0;
  std::uint64_t seed = 0;  // reserved; every pipeline is deterministic
};

std::vector<unsigned> tongue_indices(unsigned n_max) {
  std::vector<unsigned> Ns;
  for (unsigned N = 1; N <= n_max; ++N) Ns.push_back(N);
  return Ns;
}

void finish(const Emitter& e, const Options& opt, const RunConfig& cfg) {
  const std::string dir = opt.out.empty() ? cfg.out_dir : opt.out;
  if (dir.empty()) {
    e.write(std::cout);
  } else {
    e.write_dir(dir);
  }
}

int cmd_series(const RunConfig& cfg, const Options& opt) {
  const SeriesTables t = compute_series(cfg.spec, cfg.n_max);
  Emitter e(cfg);
  emit_series(e, t);
  if (cfg.wants("shape")) emit_shapes(e, t);
  if (cfg.wants("coexist")) {
    emit_coexistence(e, coexistence_check(cfg.spec.osc, cfg.spec.coupling, t.lin));
  }
  finish(e, opt, cfg);
  return kOk;
}

int cmd_tongues(const RunConfig& cfg, const Options& opt) {
  if (cfg.q_grid.empty()) throw ConfigError(0, "q_grid", "tongues needs a q grid");
  const SeriesTables t = compute_series(cfg.spec, cfg.n_max);
  const Polynomial f = Polynomial::from_taylor(cfg.spec.osc.alpha);
  const Polynomial g = Polynomial::from_taylor(cfg.spec.coupling.gamma);
  const TongueGrid grid = tongue_grid_parallel(f, g, tongue_indices(cfg.n_max), cfg.q_grid,
                                               cfg.settings, opt.threads);
  Emitter e(cfg);
  emit_tongues(e, grid, t);
  if (cfg.wants("order")) emit_order(e, grid, t);
  if (cfg.wants("chart")) {
    std::vector<double> beta0;
    for (double q : cfg.q_grid) beta0.push_back(boundary0(numeric_problem(cfg.spec, q, cfg.settings)));
    emit_chart(e, grid, beta0);
  }
  finish(e, opt, cfg);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const Options& opt) {
  std::vector<CheckResult> checks = check_config(cfg, opt.threads);
  const auto suite = acceptance_suite(opt.threads);
  checks.insert(checks.end(), suite.begin(), suite.end());
  std::ostringstream report;
  print_checks(report, checks, false);
  const bool ok = all_passed(checks);
  report << (ok ? "all checks passed\n" : "verification FAILED\n");
  Emitter e(cfg);
  e.text("verify.txt", report.str());
  finish(e, opt, cfg);
  return ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instability tongues of Hill equations driven by a nonlinear oscillator"};
  app.require_subcommand(1);
  Options opt;
  int (*handler)(const RunConfig&, const Options&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*fn)(const RunConfig&, const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "problem configuration file")->required();
    sub->add_option("--out", opt.out, "output directory (default: stdout)");
    sub->add_option("--threads", opt.threads, "OpenMP threads for oracle sweeps")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", opt.seed, "reserved; the pipeline is deterministic");
    sub->callback([&handler, fn] { handler = fn; });
  };
  add("series", "exact series tables", cmd_series);
  add("tongues", "oracle tongue endpoints against the series", cmd_tongues);
  add("verify", "invariant suite and acceptance criteria", cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
    const RunConfig cfg = load_config(opt.config);
    set_coefficient_bit_limit(cfg.coefficient_bits);
    return handler(cfg, opt);
  } catch (const ValidationError& e) {
    std::cerr << "hilltongue: invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "hilltongue: numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}
