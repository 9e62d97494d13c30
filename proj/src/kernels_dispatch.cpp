#include "csbsd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace csbsd::kernels {

namespace {

struct Table {
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*scale)(const double*, double, double*, std::size_t);
  void (*mix)(const double*, const double*, double, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*cmul)(const double*, const double*, const double*, const double*, double*, double*,
               std::size_t);
  void (*cmul_conj)(const double*, const double*, const double*, const double*, double*, double*,
                    std::size_t);
  void (*conv_clamped)(const double*, const double*, double*, std::size_t, std::size_t);
  Backend backend;
};

constexpr Table kScalarTable = {
    scalar::mul,  scalar::scale,     scalar::mix,          scalar::sum,     scalar::dot,
    scalar::cmul, scalar::cmul_conj, scalar::conv_clamped, Backend::scalar,
};

#if defined(CSBSD_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
constexpr Table kAvx2Table = {
    avx2::mul,  avx2::scale,     avx2::mix,          avx2::sum,     avx2::dot,
    avx2::cmul, avx2::cmul_conj, avx2::conv_clamped, Backend::avx2,
};
#endif

#if defined(CSBSD_HAVE_NEON_TU) && defined(__aarch64__)
constexpr Table kNeonTable = {
    neon::mul,  neon::scale,     neon::mix,          neon::sum,     neon::dot,
    neon::cmul, neon::cmul_conj, neon::conv_clamped, Backend::neon,
};
#endif

const Table* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &kScalarTable;
    case Backend::avx2:
#if defined(CSBSD_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
      if (__builtin_cpu_supports("avx2")) return &kAvx2Table;
#endif
      return nullptr;
    case Backend::neon:
#if defined(CSBSD_HAVE_NEON_TU) && defined(__aarch64__)
      return &kNeonTable;  // baseline on aarch64
#endif
      return nullptr;
  }
  return nullptr;
}

const Table* detect() {
  if (const char* env = std::getenv("BSD_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
    if (std::strcmp(env, "avx2") == 0) {
      if (const Table* t = table_for(Backend::avx2)) return t;
      throw std::runtime_error("BSD_KERNELS=avx2 but AVX2 is not available");
    }
    if (std::strcmp(env, "neon") == 0) {
      if (const Table* t = table_for(Backend::neon)) return t;
      throw std::runtime_error("BSD_KERNELS=neon but NEON is not available");
    }
    if (std::strcmp(env, "auto") != 0) {
      throw std::runtime_error(std::string("unknown BSD_KERNELS value: ") + env);
    }
  }
  if (const Table* t = table_for(Backend::avx2)) return t;
  if (const Table* t = table_for(Backend::neon)) return t;
  return &kScalarTable;
}

std::atomic<const Table*> g_table{nullptr};

const Table& active() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    t = detect();
    g_table.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "?";
}

bool backend_available(Backend b) { return table_for(b) != nullptr; }

Backend active_backend() { return active().backend; }

void select_backend(Backend b) {
  const Table* t = table_for(b);
  if (!t) throw std::runtime_error(std::string("kernel backend unavailable: ") + backend_name(b));
  g_table.store(t, std::memory_order_release);
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  active().mul(a, b, out, n);
}
void scale(const double* a, double s, double* out, std::size_t n) {
  active().scale(a, s, out, n);
}
void mix(const double* x, const double* y, double t, double* out, std::size_t n) {
  active().mix(x, y, t, out, n);
}
double sum(const double* a, std::size_t n) { return active().sum(a, n); }
double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
void cmul(const double* are, const double* aim, const double* bre, const double* bim, double* ore,
          double* oim, std::size_t n) {
  active().cmul(are, aim, bre, bim, ore, oim, n);
}
void cmul_conj(const double* are, const double* aim, const double* bre, const double* bim,
               double* ore, double* oim, std::size_t n) {
  active().cmul_conj(are, aim, bre, bim, ore, oim, n);
}
void conv_clamped(const double* a, const double* b, double* out, std::size_t n,
                  std::size_t center) {
  active().conv_clamped(a, b, out, n, center);
}

}  // namespace csbsd::kernels
