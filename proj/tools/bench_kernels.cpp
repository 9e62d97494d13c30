// Microbenchmark for the dispatched kernels: scalar vs the best available
// vector backend on this machine. Times are per-call medians over repeats.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "csbsd/fft.hpp"
#include "csbsd/kernels.hpp"

namespace {

using csbsd::kernels::Backend;

double time_once(const std::function<void()>& fn, std::size_t inner) {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < inner; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::nano>(t1 - t0).count() / double(inner);
}

double median_ns(const std::function<void()>& fn, std::size_t inner) {
  std::vector<double> xs;
  for (int rep = 0; rep < 9; ++rep) xs.push_back(time_once(fn, inner));
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

}  // namespace

int main() {
  using namespace csbsd::kernels;
  const std::size_t n = 64;
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> a(n), b(n), out(n), re1(n), im1(n), re2(n), im2(n), ore(n), oim(n);
  for (auto* v : {&a, &b, &re1, &im1, &re2, &im2})
    for (auto& x : *v) x = u(rng);

  const Backend act = active_backend();
  std::printf("active backend: %s (n = %zu)\n", backend_name(act), n);
  std::printf("%-14s %12s %12s %8s\n", "kernel", "scalar ns", "active ns", "speedup");

  volatile double sink = 0.0;
  auto bench = [&](const char* name, auto&& scalar_fn, auto&& active_fn, std::size_t inner) {
    const double s = median_ns(scalar_fn, inner);
    const double v = median_ns(active_fn, inner);
    std::printf("%-14s %12.1f %12.1f %7.2fx\n", name, s, v, s / v);
  };

  bench(
      "mul", [&] { scalar::mul(a.data(), b.data(), out.data(), n); },
      [&] { mul(a.data(), b.data(), out.data(), n); }, 4096);
  bench(
      "sum", [&] { sink = scalar::sum(a.data(), n); }, [&] { sink = sum(a.data(), n); }, 4096);
  bench(
      "dot", [&] { sink = scalar::dot(a.data(), b.data(), n); },
      [&] { sink = dot(a.data(), b.data(), n); }, 4096);
  bench(
      "mix", [&] { scalar::mix(a.data(), b.data(), 0.3, out.data(), n); },
      [&] { mix(a.data(), b.data(), 0.3, out.data(), n); }, 4096);
  bench(
      "cmul",
      [&] { scalar::cmul(re1.data(), im1.data(), re2.data(), im2.data(), ore.data(), oim.data(), n); },
      [&] { cmul(re1.data(), im1.data(), re2.data(), im2.data(), ore.data(), oim.data(), n); },
      4096);
  bench(
      "conv_clamped", [&] { scalar::conv_clamped(a.data(), b.data(), out.data(), n, n / 2); },
      [&] { conv_clamped(a.data(), b.data(), out.data(), n, n / 2); }, 256);

  // FFT round-trip at the production grid size, for scale.
  const auto& plan = csbsd::density::FftPlan::shared(n);
  std::vector<double> fre(n), fim(n);
  const double fft_ns = median_ns(
      [&] {
        std::copy(a.begin(), a.end(), fre.begin());
        std::fill(fim.begin(), fim.end(), 0.0);
        plan.forward(fre.data(), fim.data());
        plan.inverse(fre.data(), fim.data());
      },
      1024);
  std::printf("%-14s %12s %12.1f\n", "fft fwd+inv", "-", fft_ns);
  (void)sink;
  return 0;
}
