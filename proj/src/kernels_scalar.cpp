#include <cmath>

#include "kernels_impl.hpp"

namespace wco::kernels {

namespace {

void horner_scalar(std::span<const cplx> coeffs, const double* re, const double* im,
                   double* out_re, double* out_im, std::size_t n) {
  const std::size_t deg = coeffs.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    double ar = coeffs[deg].real();
    double ai = coeffs[deg].imag();
    const double zr = re[i];
    const double zi = im[i];
    for (std::size_t k = deg; k-- > 0;) {
      const double tr = ar * zr - ai * zi + coeffs[k].real();
      const double ti = ar * zi + ai * zr + coeffs[k].imag();
      ar = tr;
      ai = ti;
    }
    out_re[i] = ar;
    out_im[i] = ai;
  }
}

void moebius_scalar(cplx a, cplx b, cplx c, cplx d, double* re, double* im, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double zr = re[i];
    const double zi = im[i];
    const double nr = a.real() * zr - a.imag() * zi + b.real();
    const double ni = a.real() * zi + a.imag() * zr + b.imag();
    const double dr = c.real() * zr - c.imag() * zi + d.real();
    const double di = c.real() * zi + c.imag() * zr + d.imag();
    const double inv = 1.0 / (dr * dr + di * di);
    re[i] = (nr * dr + ni * di) * inv;
    im[i] = (ni * dr - nr * di) * inv;
  }
}

void abs2_scalar(const double* re, const double* im, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

void normalize_scalar(double* re, double* im, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double inv = 1.0 / std::sqrt(re[i] * re[i] + im[i] * im[i]);
    re[i] *= inv;
    im[i] *= inv;
  }
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar", horner_scalar, moebius_scalar, abs2_scalar,
                                 normalize_scalar};
  return table;
}

}  // namespace wco::kernels
