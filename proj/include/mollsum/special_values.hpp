#pragma once

#include <complex>
#include <cstdint>

#include "mollsum/arith.hpp"
#include "mollsum/characters.hpp"
#include "mollsum/common.hpp"

namespace mollsum {

// sin(2*pi*a/q) with quadrant reduction done in exact integer arithmetic,
// so the zeros at a = 0 and 2a = q come out exactly 0.0.
double sin_two_pi_rational(int64_t a, int64_t q);

// Hurwitz zeta at s = 0: zeta(0, b/q) = 1/2 - b/q, for 1 <= b <= q.
double hurwitz_zeta_zero(int64_t b, int64_t q);

// L(0,chi) = sum_{b=1}^q chi(b)(1/2 - b/q). Vanishes for even
// non-principal chi; equals -1/2 for the modulus-1 character.
Complex l_at_zero(const DirichletCharacter& chi);

// L(1,chi) for non-principal chi: direct sum over complete periods up to
// M*q plus an asymptotic tail in inverse powers of the block index (the
// block sums shrink like 1/m^2 because each period of chi sums to zero).
// Estimated error <= precision_target. Principal chi is a domain error.
Complex l_at_one(const DirichletCharacter& chi, double precision_target = 1e-12);

// The two candidate additive constants for the finite log-derivative
// expression below; the series oracle singles out kLogDerivConstGamma,
// and the identities report carries both so the discrepancy is visible.
inline constexpr double kLogDerivConstGamma = kEulerGamma;
inline constexpr double kLogDerivConstHalfGamma = kEulerGamma / 2.0;

// Finite closed form for L'/L(1,chi), odd non-principal chi:
//   L'/L(1,chi) = log 2pi + c + [sum_a conj(chi)(a) logGamma(a/q)] /
//                               [sum_a conj(chi)(a) (a/q)]
// evaluated at the conductor and corrected by the Euler factors
// chi1(p) log p/(p - chi1(p)) over p | q for imprimitive chi.
Complex log_deriv_l1_finite(const DirichletCharacter& chi, double additive_constant);

// The production value: the finite expression with the oracle-validated
// additive constant.
Complex log_deriv_l_at_one(const DirichletCharacter& chi);

// Independent series oracle for L'/L(1,chi): exponentially smoothed
// partial sums -sum Lambda(n) chi(n) exp(-n/x)/n with x = n_max/30.
// Smoothing error is driven by the low zeros of L and is ~1e-6 at
// n_max = 1e6 for small conductors.
Complex log_deriv_l1_series(const DirichletCharacter& chi, const ArithTables& tables,
                            int64_t n_max);

// Absolutely convergent prime-power part sum_{p|q} log p *
// sum_{k>=1} sin(2 pi a p^k/q)/p^k, truncated per prime once the
// geometric tail bound drops below tol.
double prime_power_tail(const RationalPoint& point, double tol = 1e-14);

// Limit of sum mu(n){n a/q}/n: -sin(2 pi a/q)/pi.
double u_limit(const RationalPoint& point);

// Closed form for sum_n Lambda(n) sin(2 pi a n/q)/n, split into the odd-
// character part and the prime-power part. The defining series is real;
// the character sum's imaginary residue is recorded and dropped.
struct ClosedFormTarget {
    RationalPoint point;
    double value;
    double character_part;
    double prime_power_part;
    double imag_residual;
};

ClosedFormTarget tsum_closed_form(const RationalPoint& point);

// Limit of sum mu(n) log n psi(n a/q)/n: the closed form above divided
// by pi (same code path, exact rescaling).
double vstar_limit(const RationalPoint& point);

}  // namespace mollsum
