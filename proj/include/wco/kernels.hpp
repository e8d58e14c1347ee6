#pragma once

// Batched inner loops over structure-of-arrays complex data. Every kernel has
// a scalar reference implementation; an AVX2+FMA variant is selected at run
// time when the CPU supports it. Set WCO_FORCE_SCALAR=1 to pin the reference
// path.

#include <cstddef>
#include <span>

#include "wco/common.hpp"

namespace wco::kernels {

/// out = poly(z) for each point, Horner in complex arithmetic.
/// coeffs are lowest degree first.
using HornerFn = void (*)(std::span<const cplx> coeffs, const double* re, const double* im,
                          double* out_re, double* out_im, std::size_t n);

/// In-place z <- (a z + b) / (c z + d).
using MoebiusFn = void (*)(cplx a, cplx b, cplx c, cplx d, double* re, double* im,
                           std::size_t n);

/// out = re^2 + im^2.
using Abs2Fn = void (*)(const double* re, const double* im, double* out, std::size_t n);

/// In-place projection onto the unit circle: z <- z / |z|.
using NormalizeFn = void (*)(double* re, double* im, std::size_t n);

struct KernelTable {
  const char* name;
  HornerFn horner;
  MoebiusFn moebius;
  Abs2Fn abs2;
  NormalizeFn normalize;
};

const KernelTable& scalar();
/// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2();
/// The table in use for this process.
const KernelTable& active();

}  // namespace wco::kernels
