#include <stdexcept>
#include <string>

#include "periscreen/kernels.hpp"

namespace periscreen::spectral {

std::string_view kernel_name(KernelKind k) noexcept {
  switch (k) {
    case KernelKind::Auto: return "auto";
    case KernelKind::Scalar: return "scalar";
    case KernelKind::Avx2: return "avx2";
  }
  return "?";
}

bool avx2_available() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

KernelKind resolve_kernel(KernelKind requested) {
  switch (requested) {
    case KernelKind::Auto: return avx2_available() ? KernelKind::Avx2 : KernelKind::Scalar;
    case KernelKind::Scalar: return KernelKind::Scalar;
    case KernelKind::Avx2:
      if (!avx2_available())
        throw std::invalid_argument("avx2 kernel requested but this CPU lacks AVX2+FMA");
      return KernelKind::Avx2;
  }
  throw std::invalid_argument("unknown kernel kind");
}

void batch_ordinates(const TrigTable& t, KernelKind kind, const double* x, int stride,
                     int width, int jmax, double* out) {
  if (x == nullptr || out == nullptr)
    throw std::invalid_argument("batch_ordinates: null buffer");
  if (width < 1 || stride < width)
    throw std::invalid_argument("batch_ordinates: need stride >= width >= 1");
  if (jmax < 0 || jmax > t.n())
    throw std::invalid_argument("batch_ordinates: jmax out of range [0, n]");
  const KernelKind k = resolve_kernel(kind);
  int done = 0;
  if (k == KernelKind::Avx2) {
    const int w8 = width & ~7;
    if (w8 > 0) {
      avx2_batch_kernel(t, x, stride, w8, jmax, out);
      done = w8;
    }
  }
  if (done < width) scalar_batch_kernel(t, x + done, stride, width - done, jmax, out + done);
}

}  // namespace periscreen::spectral
