// AVX2+FMA batch periodogram kernel. Eight series per register group, two
// complex accumulator sets per group (k unrolled by two) so eight FMA chains
// are in flight — enough to saturate both FMA ports despite the 4-cycle
// latency. Twiddles are scalar broadcasts from the shared table; the angle
// index walks (j*k) mod n exactly, same as the scalar kernel.

#include <stdexcept>

#include "periscreen/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace periscreen::spectral {

__attribute__((target("avx2,fma"))) void avx2_batch_kernel(const TrigTable& t, const double* x,
                                                           int stride, int width, int jmax,
                                                           double* out) {
  if (width <= 0 || width % 8 != 0)
    throw std::invalid_argument("avx2_batch_kernel: width must be a positive multiple of 8");
  const int n = t.n();
  const double* cv = t.cosv();
  const double* sv = t.sinv();
  const __m256d vinv_n = _mm256_set1_pd(1.0 / n);

  for (int b = 0; b < width; b += 8) {
    const double* xb = x + b;
    double* ob = out + b;
    for (int j = 1; j <= jmax; ++j) {
      __m256d re0a = _mm256_setzero_pd(), im0a = _mm256_setzero_pd();
      __m256d re1a = _mm256_setzero_pd(), im1a = _mm256_setzero_pd();
      __m256d re0b = _mm256_setzero_pd(), im0b = _mm256_setzero_pd();
      __m256d re1b = _mm256_setzero_pd(), im1b = _mm256_setzero_pd();
      int idx = 0;
      int k = 0;
      for (; k + 2 <= n; k += 2) {
        idx += j;
        if (idx >= n) idx -= n;
        const int i0 = idx;
        idx += j;
        if (idx >= n) idx -= n;
        const int i1 = idx;
        const __m256d c0 = _mm256_set1_pd(cv[i0]);
        const __m256d s0 = _mm256_set1_pd(sv[i0]);
        const __m256d c1 = _mm256_set1_pd(cv[i1]);
        const __m256d s1 = _mm256_set1_pd(sv[i1]);
        const double* p0 = xb + static_cast<std::size_t>(k) * stride;
        const double* p1 = xb + static_cast<std::size_t>(k + 1) * stride;
        const __m256d x00 = _mm256_loadu_pd(p0);
        const __m256d x01 = _mm256_loadu_pd(p0 + 4);
        const __m256d x10 = _mm256_loadu_pd(p1);
        const __m256d x11 = _mm256_loadu_pd(p1 + 4);
        re0a = _mm256_fmadd_pd(x00, c0, re0a);
        im0a = _mm256_fmadd_pd(x00, s0, im0a);
        re1a = _mm256_fmadd_pd(x01, c0, re1a);
        im1a = _mm256_fmadd_pd(x01, s0, im1a);
        re0b = _mm256_fmadd_pd(x10, c1, re0b);
        im0b = _mm256_fmadd_pd(x10, s1, im0b);
        re1b = _mm256_fmadd_pd(x11, c1, re1b);
        im1b = _mm256_fmadd_pd(x11, s1, im1b);
      }
      if (k < n) {  // odd n: one trailing sample
        idx += j;
        if (idx >= n) idx -= n;
        const __m256d c0 = _mm256_set1_pd(cv[idx]);
        const __m256d s0 = _mm256_set1_pd(sv[idx]);
        const double* p0 = xb + static_cast<std::size_t>(k) * stride;
        const __m256d x00 = _mm256_loadu_pd(p0);
        const __m256d x01 = _mm256_loadu_pd(p0 + 4);
        re0a = _mm256_fmadd_pd(x00, c0, re0a);
        im0a = _mm256_fmadd_pd(x00, s0, im0a);
        re1a = _mm256_fmadd_pd(x01, c0, re1a);
        im1a = _mm256_fmadd_pd(x01, s0, im1a);
      }
      const __m256d re0 = _mm256_add_pd(re0a, re0b);
      const __m256d im0 = _mm256_add_pd(im0a, im0b);
      const __m256d re1 = _mm256_add_pd(re1a, re1b);
      const __m256d im1 = _mm256_add_pd(im1a, im1b);
      __m256d pw0 = _mm256_mul_pd(re0, re0);
      pw0 = _mm256_fmadd_pd(im0, im0, pw0);
      __m256d pw1 = _mm256_mul_pd(re1, re1);
      pw1 = _mm256_fmadd_pd(im1, im1, pw1);
      double* o = ob + static_cast<std::size_t>(j - 1) * stride;
      _mm256_storeu_pd(o, _mm256_mul_pd(pw0, vinv_n));
      _mm256_storeu_pd(o + 4, _mm256_mul_pd(pw1, vinv_n));
    }
  }
}

}  // namespace periscreen::spectral

#else  // non-x86 build: symbol exists, selection is blocked by avx2_available()

namespace periscreen::spectral {

void avx2_batch_kernel(const TrigTable&, const double*, int, int, int, double*) {
  throw std::invalid_argument("avx2_batch_kernel: not compiled for this architecture");
}

}  // namespace periscreen::spectral

#endif
