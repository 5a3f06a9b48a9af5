#include "aw/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "aw/errors.hpp"

namespace aw::kernels {
namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("AW_SIMD");
  const std::string mode = env ? env : "auto";
  if (mode == "scalar") return Backend::scalar;
  if (mode == "avx2") {
    if (avx2_ops() == nullptr || !cpu_has_avx2_fma())
      throw ConfigError("AW_SIMD=avx2 requested but AVX2+FMA is unavailable");
    return Backend::avx2;
  }
  if (mode != "auto" && mode != "")
    throw ConfigError("AW_SIMD must be one of auto|scalar|avx2, got '" + mode +
                      "'");
  return (avx2_ops() != nullptr && cpu_has_avx2_fma()) ? Backend::avx2
                                                       : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(); }

const Ops& active() {
  return active_backend() == Backend::avx2 ? *avx2_ops() : scalar_ops();
}

void force_backend(Backend b) {
  if (b == Backend::avx2 && (avx2_ops() == nullptr || !cpu_has_avx2_fma()))
    throw ConfigError("AVX2 backend unavailable on this machine");
  backend_slot().store(b);
}

}  // namespace aw::kernels
