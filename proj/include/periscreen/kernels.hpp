#pragma once

#include <string_view>
#include <vector>

namespace periscreen::spectral {

// Shared cos/sin table at the n-th roots of unity: cosv()[m] = cos(2*pi*m/n),
// m = 0..n-1. The periodogram kernels never call cos/sin in their inner loops;
// the angle j*k*2*pi/n is reduced exactly by walking the index (j*k) mod n.
class TrigTable {
 public:
  explicit TrigTable(int n);

  int n() const noexcept { return n_; }
  const double* cosv() const noexcept { return cos_.data(); }
  const double* sinv() const noexcept { return sin_.data(); }

 private:
  int n_;
  std::vector<double> cos_, sin_;
};

enum class KernelKind { Auto, Scalar, Avx2 };

std::string_view kernel_name(KernelKind k) noexcept;
bool avx2_available() noexcept;

// Auto picks the widest kernel the CPU supports; asking for an unsupported
// kernel throws std::invalid_argument.
KernelKind resolve_kernel(KernelKind requested);

// Batched periodogram ordinates for `width` interleaved series of length n:
//   x[(k-1)*stride + b]   = X_k of series b        (k = 1..n, b = 0..width-1)
//   out[(j-1)*stride + b] = I_n(2*pi*j/n) of series b   (j = 1..jmax)
// Both kernels produce ordinates that agree to ~1e-13 relative to the largest
// ordinate; equivalence is enforced by tests at 1e-9.
void scalar_batch_kernel(const TrigTable& t, const double* x, int stride, int width,
                         int jmax, double* out);

// Requires width % 8 == 0; processes 8 series per register group.
// Defined only on x86-64 builds; guarded at runtime by avx2_available().
void avx2_batch_kernel(const TrigTable& t, const double* x, int stride, int width,
                       int jmax, double* out);

// Dispatch front end: resolves `kind`, routes multiples of 8 columns to the
// SIMD kernel when selected, and the remainder to the scalar kernel.
void batch_ordinates(const TrigTable& t, KernelKind kind, const double* x, int stride,
                     int width, int jmax, double* out);

}  // namespace periscreen::spectral
