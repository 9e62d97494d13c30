#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "csbsd/bp.hpp"
#include "csbsd/reconstruct.hpp"

namespace csbsd::harness {

enum class ExperimentKind { ser, mse, iters };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ser;
  std::size_t n = 1024;
  std::vector<double> m_over_n = {0.5};
  double q = 0.05;
  double sigma_x = 10.0;
  std::size_t l = 4;
  std::size_t n_d = 64;
  std::vector<double> snr_grid_db = {26, 28, 30, 32, 34, 36, 38};
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  std::string output;  // empty = stdout
  bp::ConvMode conv_mode = bp::ConvMode::circular_fft;
  std::size_t max_iters = 10;
  double damping = 0.0;
  double max_diverged_fraction = 0.25;  // above this per cell, the run is anomalous
};

// One aggregated cell. `value` carries the experiment's metric (SER or MSE);
// `aux` carries the companion quantity (average SNR requirement for SER runs,
// analytic error trace for MSE runs). `iteration` is nonzero for sweep-depth
// rows only.
struct ExperimentRow {
  double m_over_n = 0.0;
  double snr_db = 0.0;
  std::size_t iteration = 0;
  double value = 0.0;
  double std_err = 0.0;
  double aux = 0.0;
  std::size_t trials = 0;
  std::size_t diverged = 0;
};

// key=value lines, '#' comments, blank lines ignored.
ExperimentConfig parse_config_file(const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

std::vector<ExperimentRow> run_ser_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_mse_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_iters_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

void write_csv(ExperimentKind kind, const std::vector<ExperimentRow>& rows, std::ostream& os);

// Worker count: BSD_THREADS when set (0 = auto), else hardware concurrency.
std::size_t thread_count();

// True when any cell's diverged-trial fraction exceeds the configured limit.
bool anomalous(const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows);

}  // namespace csbsd::harness

namespace csbsd::harness_cli {
int cli_main(int argc, char** argv);
}
