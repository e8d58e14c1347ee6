#include <immintrin.h>

#include "kernels_impl.hpp"

namespace wco::kernels {

namespace {

constexpr std::size_t kLanes = 4;

void horner_avx2(std::span<const cplx> coeffs, const double* re, const double* im,
                 double* out_re, double* out_im, std::size_t n) {
  const std::size_t deg = coeffs.size() - 1;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(re + i);
    const __m256d zi = _mm256_loadu_pd(im + i);
    __m256d ar = _mm256_set1_pd(coeffs[deg].real());
    __m256d ai = _mm256_set1_pd(coeffs[deg].imag());
    for (std::size_t k = deg; k-- > 0;) {
      const __m256d cr = _mm256_set1_pd(coeffs[k].real());
      const __m256d ci = _mm256_set1_pd(coeffs[k].imag());
      const __m256d tr = _mm256_fmsub_pd(ar, zr, _mm256_fmsub_pd(ai, zi, cr));
      const __m256d ti = _mm256_fmadd_pd(ar, zi, _mm256_fmadd_pd(ai, zr, ci));
      ar = tr;
      ai = ti;
    }
    _mm256_storeu_pd(out_re + i, ar);
    _mm256_storeu_pd(out_im + i, ai);
  }
  if (i < n) scalar().horner(coeffs, re + i, im + i, out_re + i, out_im + i, n - i);
}

void moebius_avx2(cplx a, cplx b, cplx c, cplx d, double* re, double* im, std::size_t n) {
  const __m256d a_r = _mm256_set1_pd(a.real()), a_i = _mm256_set1_pd(a.imag());
  const __m256d b_r = _mm256_set1_pd(b.real()), b_i = _mm256_set1_pd(b.imag());
  const __m256d c_r = _mm256_set1_pd(c.real()), c_i = _mm256_set1_pd(c.imag());
  const __m256d d_r = _mm256_set1_pd(d.real()), d_i = _mm256_set1_pd(d.imag());
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(re + i);
    const __m256d zi = _mm256_loadu_pd(im + i);
    const __m256d nr = _mm256_fmsub_pd(a_r, zr, _mm256_fmsub_pd(a_i, zi, b_r));
    const __m256d ni = _mm256_fmadd_pd(a_r, zi, _mm256_fmadd_pd(a_i, zr, b_i));
    const __m256d dr = _mm256_fmsub_pd(c_r, zr, _mm256_fmsub_pd(c_i, zi, d_r));
    const __m256d di = _mm256_fmadd_pd(c_r, zi, _mm256_fmadd_pd(c_i, zr, d_i));
    const __m256d inv = _mm256_div_pd(one, _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
    _mm256_storeu_pd(re + i, _mm256_mul_pd(_mm256_fmadd_pd(nr, dr, _mm256_mul_pd(ni, di)), inv));
    _mm256_storeu_pd(im + i, _mm256_mul_pd(_mm256_fmsub_pd(ni, dr, _mm256_mul_pd(nr, di)), inv));
  }
  if (i < n) scalar().moebius(a, b, c, d, re + i, im + i, n - i);
}

void abs2_avx2(const double* re, const double* im, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(re + i);
    const __m256d zi = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(zr, zr, _mm256_mul_pd(zi, zi)));
  }
  if (i < n) scalar().abs2(re + i, im + i, out + i, n - i);
}

void normalize_avx2(double* re, double* im, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(re + i);
    const __m256d zi = _mm256_loadu_pd(im + i);
    const __m256d inv =
        _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_fmadd_pd(zr, zr, _mm256_mul_pd(zi, zi))));
    _mm256_storeu_pd(re + i, _mm256_mul_pd(zr, inv));
    _mm256_storeu_pd(im + i, _mm256_mul_pd(zi, inv));
  }
  if (i < n) scalar().normalize(re + i, im + i, n - i);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", horner_avx2, moebius_avx2, abs2_avx2, normalize_avx2};
  return table;
}

}  // namespace wco::kernels
