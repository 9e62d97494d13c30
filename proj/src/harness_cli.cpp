#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csbsd/harness.hpp"
#include "csbsd/kernels.hpp"
#include "csbsd/model.hpp"
#include "csbsd/reconstruct.hpp"
#include "csbsd/sensing.hpp"

namespace csbsd::harness_cli {
namespace {

std::vector<double> read_values(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open measurements file: " + path);
  std::vector<double> v;
  double x = 0.0;
  while (is >> x) v.push_back(x);
  if (!is.eof()) throw std::runtime_error("non-numeric content in " + path);
  return v;
}

void write_estimate(std::ostream& os, const reconstruct::ReconResult& res) {
  os << "i,x_hat,s_hat\n";
  char buf[64];
  for (std::size_t i = 0; i < res.x_hat.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g", res.x_hat[i]);
    os << i << ',' << buf << ',' << int(res.s_hat[i]) << '\n';
  }
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return 0;
  }
  std::ofstream os(path);
  if (!os) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 1;
  }
  fn(os);
  return os.good() ? 0 : 1;
}

int cmd_gen_matrix(std::size_t n, std::size_t m, std::size_t l, std::uint64_t seed,
                   const std::string& output) {
  const auto g = sensing::SensingGraph::generate(n, m, l, seed);
  return with_output(output, [&](std::ostream& os) { g.write_text(os); });
}

struct ReconArgs {
  std::string matrix, measurements, output;
  double q = 0.05, sigma_x = 10.0, sigma_n = 1.0, damping = 0.0;
  std::optional<double> epsilon;
  std::size_t max_iters = 10, n_d = 64;
  std::string mode = "fft";
  bool trace = false;
};

int cmd_reconstruct(const ReconArgs& a) {
  std::ifstream ms(a.matrix);
  if (!ms) {
    std::cerr << "error: cannot open matrix file: " << a.matrix << "\n";
    return 1;
  }
  const auto g = sensing::SensingGraph::read_text(ms);
  const auto z = read_values(a.measurements);
  if (z.size() != g.n_rows()) {
    std::cerr << "error: measurement length " << z.size() << " does not match matrix rows "
              << g.n_rows() << "\n";
    return 1;
  }
  model::PriorParams prior{a.q, a.sigma_x, a.sigma_n};
  reconstruct::CsBsdConfig rc;
  rc.epsilon = a.epsilon;
  rc.max_iters = a.max_iters;
  rc.n_d = a.n_d;
  rc.conv_mode = a.mode == "direct" ? bp::ConvMode::direct_linear : bp::ConvMode::circular_fft;
  rc.damping = a.damping;
  const auto res = reconstruct::cs_bsd(g, z, prior, rc);

  const int rc_out = with_output(a.output, [&](std::ostream& os) { write_estimate(os, res); });
  if (rc_out != 0) return rc_out;
  if (a.trace) {
    std::cerr << "iterations=" << res.iterations_run;
    std::cerr << " residuals=";
    for (std::size_t i = 0; i < res.residual_trace.size(); ++i)
      std::cerr << (i ? ";" : "") << res.residual_trace[i];
    std::size_t k = 0;
    for (auto s : res.s_hat) k += s;
    std::cerr << " support=" << k << "\n";
  }
  if (res.diverged) {
    std::cerr << "warning: message updates degenerated; estimate may be unreliable\n";
    return 2;
  }
  return 0;
}

int cmd_experiment(const std::string& config, const std::vector<std::string>& sets,
                   const std::string& output_override) {
  harness::ExperimentConfig cfg =
      config.empty() ? harness::ExperimentConfig{} : harness::parse_config_file(config);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --set expects key=value, got: " << kv << "\n";
      return 1;
    }
    harness::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!output_override.empty()) cfg.output = output_override;

  const auto rows = harness::run_experiment(cfg);
  const int rc = with_output(cfg.output, [&](std::ostream& os) { write_csv(cfg.kind, rows, os); });
  if (rc != 0) return rc;
  if (harness::anomalous(cfg, rows)) {
    std::cerr << "warning: diverged-trial fraction exceeded "
              << cfg.max_diverged_fraction << " in at least one cell\n";
    return 2;
  }
  return 0;
}

int cmd_selftest() {
  harness::ExperimentConfig cfg;
  cfg.kind = harness::ExperimentKind::ser;
  cfg.n = 64;
  cfg.m_over_n = {0.5};
  cfg.l = 3;
  cfg.n_d = 16;
  cfg.snr_grid_db = {30.0};
  cfg.trials = 4;
  cfg.seed = 7;
  auto run_once = [&] {
    std::ostringstream os;
    write_csv(cfg.kind, harness::run_experiment(cfg), os);
    return os.str();
  };
  const std::string a = run_once();
  const std::string b = run_once();
  if (a != b) {
    std::cerr << "selftest FAILED: repeated run produced different output\n" << a << "---\n" << b;
    return 1;
  }
  std::cout << "kernels backend: " << kernels::backend_name(kernels::active_backend()) << "\n";
  std::cout << "selftest ok\n" << a;
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Detection-directed sparse reconstruction toolkit"};
  app.require_subcommand(1);

  // gen-matrix
  auto* gm = app.add_subcommand("gen-matrix", "Generate a sparse sign matrix and print it");
  std::size_t gm_n = 1024, gm_m = 512, gm_l = 4;
  std::uint64_t gm_seed = 1;
  std::string gm_out;
  gm->add_option("-n,--cols", gm_n, "signal dimension (columns)")->capture_default_str();
  gm->add_option("-m,--rows", gm_m, "measurement dimension (rows)")->capture_default_str();
  gm->add_option("-l,--weight", gm_l, "nonzeros per column")->capture_default_str();
  gm->add_option("--seed", gm_seed, "generator seed")->capture_default_str();
  gm->add_option("-o,--output", gm_out, "output file (default stdout)");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Recover a sparse signal from measurements");
  ReconArgs ra;
  double ra_eps = -1.0;
  rec->add_option("--matrix", ra.matrix, "matrix file from gen-matrix")->required();
  rec->add_option("--measurements", ra.measurements, "text file, one value per line")->required();
  rec->add_option("-o,--output", ra.output, "estimate CSV (default stdout)");
  rec->add_option("--q", ra.q, "activity probability")->capture_default_str();
  rec->add_option("--sigma-x", ra.sigma_x, "active-value deviation")->capture_default_str();
  rec->add_option("--sigma-n", ra.sigma_n, "noise deviation")->capture_default_str();
  rec->add_option("--epsilon", ra_eps, "residual stop threshold (default sqrt(m)*sigma_n*1.1)");
  rec->add_option("--max-iters", ra.max_iters, "sweep budget")->capture_default_str();
  rec->add_option("--nd", ra.n_d, "value-grid resolution (power of two)")->capture_default_str();
  rec->add_option("--mode", ra.mode, "convolution route: fft|direct")
      ->check(CLI::IsMember({"fft", "direct"}))
      ->capture_default_str();
  rec->add_option("--damping", ra.damping, "message damping in [0,1)")->capture_default_str();
  rec->add_flag("--trace", ra.trace, "print residual trace to stderr");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo sweep and emit CSV");
  std::string ex_config, ex_out;
  std::vector<std::string> ex_sets;
  exp->add_option("-c,--config", ex_config, "key=value config file");
  exp->add_option("--set", ex_sets, "override one config key (key=value, repeatable)");
  exp->add_option("-o,--output", ex_out, "output CSV (overrides config's output)");

  // selftest
  auto* st = app.add_subcommand("selftest", "Deterministic smoke run; repeats must match");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gm->parsed()) return cmd_gen_matrix(gm_n, gm_m, gm_l, gm_seed, gm_out);
    if (rec->parsed()) {
      if (rec->count("--epsilon") > 0) ra.epsilon = ra_eps;
      return cmd_reconstruct(ra);
    }
    if (exp->parsed()) return cmd_experiment(ex_config, ex_sets, ex_out);
    if (st->parsed()) return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace csbsd::harness_cli
