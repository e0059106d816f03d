#pragma once

#include <complex>

#include "mollsum/common.hpp"

namespace mollsum {

// zeta(1/2 + it) through the eta function with Chebyshev-weighted
// alternating-series acceleration. The weight scheme carries a proven
// error bound that grows like exp(pi |t|/2), so the term count scales
// linearly with |t|; |t| is capped (default 500) to keep the weights
// inside long-double range. Estimated error <= precision_target.
std::complex<double> zeta_critical(double t, double precision_target = 1e-10,
                                   double t_cap = 500.0);

}  // namespace mollsum
