#include "csbsd/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "csbsd/model.hpp"
#include "csbsd/seeding.hpp"
#include "csbsd/sensing.hpp"

namespace csbsd::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list value");
  return out;
}

std::size_t parse_size(const std::string& v) {
  const long long x = std::stoll(v);
  if (x < 0) throw std::invalid_argument("negative value: " + v);
  return static_cast<std::size_t>(x);
}

// Per-trial outputs; slot-addressed so worker scheduling cannot reorder them.
struct TrialOut {
  double ser = 0.0;
  double mse = 0.0;
  double snr_limit_db = 0.0;
  double mse_star = 0.0;
  bool diverged = false;
  std::vector<double> iter_mse;  // iters runs only
};

struct Cell {
  std::size_t mi = 0, si = 0;
  double m_over_n = 0.0, snr_db = 0.0;
  std::size_t m = 0;
  std::vector<TrialOut> out;
};

constexpr std::uint64_t kCellStride = 100003;  // cell id = mi * stride + si

enum Stream : std::uint64_t { kSignal = 0, kGraph = 1, kNoise = 2 };

TrialOut run_trial(const ExperimentConfig& cfg, const Cell& cell, std::size_t trial,
                   const density::GridPtr& grid) {
  const std::uint64_t cid = cell.mi * kCellStride + cell.si;
  model::PriorParams prior{cfg.q, cfg.sigma_x, 0.0};

  std::uint64_t sig_seed = derive_seed(cfg.seed, cid, trial, kSignal);
  auto sig = model::generate_signal(cfg.n, prior, *grid, sig_seed);
  for (int attempt = 0; attempt < 64 && sig.support_size() == 0; ++attempt) {
    sig_seed = splitmix64(sig_seed);
    sig = model::generate_signal(cfg.n, prior, *grid, sig_seed);
  }
  if (sig.support_size() == 0)
    throw std::runtime_error("could not draw a signal with nonempty support");

  const auto graph = sensing::SensingGraph::generate(
      cfg.n, cell.m, cfg.l, derive_seed(cfg.seed, cid, trial, kGraph));

  prior.sigma_n = model::sigma_for_target_snr(graph, sig, cell.snr_db);
  const auto meas = model::sense(graph, sig, prior.sigma_n,
                                 derive_seed(cfg.seed, cid, trial, kNoise));

  reconstruct::CsBsdConfig rc;
  rc.max_iters = cfg.max_iters;
  rc.n_d = cfg.n_d;
  rc.conv_mode = cfg.conv_mode;
  rc.damping = cfg.damping;
  if (cfg.kind == ExperimentKind::iters) {
    rc.stop_on_residual = false;  // fixed sweep depth so every row has all trials
    rc.record_estimates = true;
  }
  const auto res = reconstruct::cs_bsd(graph, meas.z, prior, rc);

  TrialOut t;
  t.ser = model::ser(res.s_hat, sig.states);
  t.mse = model::mse(res.x_hat, sig.values);
  t.diverged = res.diverged;
  const std::size_t k = sig.support_size();
  t.snr_limit_db =
      model::snr_limit_db(cfg.n, cell.m, k, model::mar(sig.values));
  if (cfg.kind == ExperimentKind::mse) {
    const auto sub = sensing::submatrix_on_support(graph, sig.states);
    std::vector<double> x_supp(sub.support.size());
    for (std::size_t p = 0; p < sub.support.size(); ++p)
      x_supp[p] = sig.values[sub.support[p]];
    t.mse_star = model::mse_star(sub.graph, prior, x_supp);
  }
  if (cfg.kind == ExperimentKind::iters) {
    t.iter_mse.reserve(cfg.max_iters);
    for (const auto& xh : res.estimate_trace) t.iter_mse.push_back(model::mse(xh, sig.values));
    while (t.iter_mse.size() < cfg.max_iters)
      t.iter_mse.push_back(t.iter_mse.empty() ? t.mse : t.iter_mse.back());
  }
  return t;
}

struct MeanErr {
  double mean = 0.0, std_err = 0.0;
};

MeanErr mean_err(const std::vector<double>& v) {
  MeanErr r;
  if (v.empty()) return r;
  double s = 0.0;
  for (double x : v) s += x;
  r.mean = s / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.std_err = std::sqrt(ss / static_cast<double>(v.size() - 1) /
                          static_cast<double>(v.size()));
  }
  return r;
}

std::vector<Cell> make_cells(const ExperimentConfig& cfg) {
  if (cfg.n == 0 || cfg.trials == 0) throw std::invalid_argument("n and trials must be positive");
  if (cfg.m_over_n.empty() || cfg.snr_grid_db.empty())
    throw std::invalid_argument("m_over_n and snr_grid_db must be nonempty");
  std::vector<Cell> cells;
  for (std::size_t mi = 0; mi < cfg.m_over_n.size(); ++mi) {
    const double r = cfg.m_over_n[mi];
    if (!(r > 0.0)) throw std::invalid_argument("m_over_n entries must be positive");
    const auto m = static_cast<std::size_t>(std::llround(r * static_cast<double>(cfg.n)));
    if (m == 0) throw std::invalid_argument("m_over_n * n rounds to zero rows");
    for (std::size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
      Cell c;
      c.mi = mi;
      c.si = si;
      c.m_over_n = r;
      c.snr_db = cfg.snr_grid_db[si];
      c.m = m;
      c.out.resize(cfg.trials);
      cells.push_back(std::move(c));
    }
  }
  return cells;
}

void run_all_trials(const ExperimentConfig& cfg, std::vector<Cell>& cells) {
  const auto grid = density::make_grid(cfg.n_d, 3.0 * cfg.sigma_x);
  struct Item {
    std::size_t cell, trial;
  };
  std::vector<Item> items;
  items.reserve(cells.size() * cfg.trials);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t t = 0; t < cfg.trials; ++t) items.push_back({c, t});

  const std::size_t workers = std::min(thread_count(), items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex err_mu;

  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size() || failed.load()) return;
      auto& cell = cells[items[i].cell];
      try {
        cell.out[items[i].trial] = run_trial(cfg, cell, items[i].trial, grid);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("trial failed: " + first_error);
}

std::vector<ExperimentRow> aggregate(const ExperimentConfig& cfg, const std::vector<Cell>& cells) {
  std::vector<ExperimentRow> rows;
  for (const auto& cell : cells) {
    std::size_t diverged = 0;
    for (const auto& t : cell.out) diverged += t.diverged ? 1 : 0;
    if (cfg.kind == ExperimentKind::iters) {
      for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        std::vector<double> v(cfg.trials);
        for (std::size_t t = 0; t < cfg.trials; ++t) v[t] = cell.out[t].iter_mse[it];
        const auto me = mean_err(v);
        rows.push_back({cell.m_over_n, cell.snr_db, it + 1, me.mean, me.std_err, 0.0,
                        cfg.trials, diverged});
      }
      continue;
    }
    std::vector<double> v(cfg.trials), aux(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto& o = cell.out[t];
      v[t] = cfg.kind == ExperimentKind::ser ? o.ser : o.mse;
      aux[t] = cfg.kind == ExperimentKind::ser ? o.snr_limit_db : o.mse_star;
    }
    const auto me = mean_err(v);
    const auto ma = mean_err(aux);
    rows.push_back({cell.m_over_n, cell.snr_db, 0, me.mean, me.std_err, ma.mean, cfg.trials,
                    diverged});
  }
  return rows;
}

void put(std::ostream& os, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  os << buf;
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "kind") {
    if (value == "ser")
      cfg.kind = ExperimentKind::ser;
    else if (value == "mse")
      cfg.kind = ExperimentKind::mse;
    else if (value == "iters")
      cfg.kind = ExperimentKind::iters;
    else
      throw std::invalid_argument("kind must be ser|mse|iters, got: " + value);
  } else if (key == "n") {
    cfg.n = parse_size(value);
  } else if (key == "m_over_n") {
    cfg.m_over_n = parse_list(value);
  } else if (key == "q") {
    cfg.q = std::stod(value);
  } else if (key == "sigma_x") {
    cfg.sigma_x = std::stod(value);
  } else if (key == "l") {
    cfg.l = parse_size(value);
  } else if (key == "n_d") {
    cfg.n_d = parse_size(value);
  } else if (key == "snr_grid_db") {
    cfg.snr_grid_db = parse_list(value);
  } else if (key == "trials") {
    cfg.trials = parse_size(value);
  } else if (key == "seed") {
    cfg.seed = std::stoull(value);
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "conv_mode") {
    if (value == "fft")
      cfg.conv_mode = bp::ConvMode::circular_fft;
    else if (value == "direct")
      cfg.conv_mode = bp::ConvMode::direct_linear;
    else
      throw std::invalid_argument("conv_mode must be fft|direct, got: " + value);
  } else if (key == "max_iters") {
    cfg.max_iters = parse_size(value);
  } else if (key == "damping") {
    cfg.damping = std::stod(value);
  } else if (key == "max_diverged_fraction") {
    cfg.max_diverged_fraction = std::stod(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

std::vector<ExperimentRow> run_ser_experiment(const ExperimentConfig& cfg) {
  auto c = cfg;
  c.kind = ExperimentKind::ser;
  auto cells = make_cells(c);
  run_all_trials(c, cells);
  return aggregate(c, cells);
}

std::vector<ExperimentRow> run_mse_experiment(const ExperimentConfig& cfg) {
  auto c = cfg;
  c.kind = ExperimentKind::mse;
  auto cells = make_cells(c);
  run_all_trials(c, cells);
  return aggregate(c, cells);
}

std::vector<ExperimentRow> run_iters_experiment(const ExperimentConfig& cfg) {
  auto c = cfg;
  c.kind = ExperimentKind::iters;
  if (c.max_iters == 0) throw std::invalid_argument("iters experiment needs max_iters >= 1");
  auto cells = make_cells(c);
  run_all_trials(c, cells);
  return aggregate(c, cells);
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::ser:
      return run_ser_experiment(cfg);
    case ExperimentKind::mse:
      return run_mse_experiment(cfg);
    case ExperimentKind::iters:
      return run_iters_experiment(cfg);
  }
  throw std::logic_error("unreachable experiment kind");
}

void write_csv(ExperimentKind kind, const std::vector<ExperimentRow>& rows, std::ostream& os) {
  switch (kind) {
    case ExperimentKind::ser:
      os << "m_over_n,snr_db,ser,stderr,trials,snr_limit_db\n";
      break;
    case ExperimentKind::mse:
      os << "m_over_n,snr_db,mse,stderr,mse_star,trials\n";
      break;
    case ExperimentKind::iters:
      os << "m_over_n,snr_db,iteration,mse,stderr,trials\n";
      break;
  }
  for (const auto& r : rows) {
    put(os, r.m_over_n);
    os << ',';
    put(os, r.snr_db);
    os << ',';
    if (kind == ExperimentKind::iters) {
      os << r.iteration << ',';
      put(os, r.value);
      os << ',';
      put(os, r.std_err);
      os << ',' << r.trials << '\n';
      continue;
    }
    put(os, r.value);
    os << ',';
    put(os, r.std_err);
    os << ',';
    if (kind == ExperimentKind::ser) {
      os << r.trials << ',';
      put(os, r.aux);
    } else {
      put(os, r.aux);
      os << ',' << r.trials;
    }
    os << '\n';
  }
}

std::size_t thread_count() {
  if (const char* env = std::getenv("BSD_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') throw std::runtime_error("BSD_THREADS must be an integer");
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

bool anomalous(const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows) {
  for (const auto& r : rows) {
    if (r.trials == 0) continue;
    const double frac = static_cast<double>(r.diverged) / static_cast<double>(r.trials);
    if (frac > cfg.max_diverged_fraction) return true;
  }
  return false;
}

}  // namespace csbsd::harness
