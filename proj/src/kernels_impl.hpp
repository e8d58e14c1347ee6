#pragma once

#include "wco/kernels.hpp"

namespace wco::kernels {

#if defined(WCO_BUILD_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace wco::kernels
