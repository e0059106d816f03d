#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mollsum/common.hpp"

namespace mollsum {

// Sieved arithmetic functions on 1..limit, built once and shared read-only:
//   mobius[n]  in {-1,0,+1}
//   lambda[n]  = log p if n = p^k, else 0   (natural log)
//   phi[n]     = Euler totient
//   spf[n]     = smallest prime factor (spf[1] = 1)
// Immutable after build; safe to share across threads.
class ArithTables {
  public:
    static constexpr int64_t kDefaultLimitCap = 100'000'000;

    explicit ArithTables(int64_t limit, int64_t limit_cap = kDefaultLimitCap);

    int64_t limit() const { return limit_; }
    int mobius(int64_t n) const { return mobius_[n]; }
    double lambda(int64_t n) const { return lambda_[n]; }
    int64_t phi(int64_t n) const { return phi_[n]; }
    int64_t spf(int64_t n) const { return spf_[n]; }

    const std::vector<signed char>& mobius_table() const { return mobius_; }
    const std::vector<double>& lambda_table() const { return lambda_; }

  private:
    int64_t limit_;
    std::vector<signed char> mobius_;
    std::vector<double> lambda_;
    std::vector<int32_t> phi_;
    std::vector<int32_t> spf_;
};

inline ArithTables build_tables(int64_t limit,
                                int64_t limit_cap = ArithTables::kDefaultLimitCap) {
    return ArithTables(limit, limit_cap);
}

// Plain fractional part {x} = x - floor(x), in [0,1). Throws on non-finite x.
double frac(double x);

// Saw-tooth psi(x) = x - [x] - 1/2 off integers, exactly 0 at integers
// (integer detection is exact: frac(x) == 0.0, no epsilon snapping).
double sawtooth(double x);

// Truncated cosine series (1/(2 pi^2)) sum_{m<=terms} cos(2 pi m t)/m^2,
// an antiderivative of psi shifted so the mean is 1/12. Truncation error
// is at most (1/(2 pi^2))/terms.
double sawtooth2(double t, int64_t terms);

// Continued-fraction convergents p_m/q_m of alpha with q_m <= max_q, in
// order, excluding the integer-part convergent [alpha]/1. Terminates at
// rational alpha; stops early if a denominator would exceed 1e9.
struct Convergent {
    int64_t p;
    int64_t q;
};

struct ConvergentList {
    double alpha = 0.0;
    std::vector<Convergent> entries;
};

ConvergentList convergents(double alpha, int64_t max_q);

// sum over listed convergent denominators of 1/phi(q_m); phi computed by
// trial-division factorization (denominators can exceed any sieve limit).
double phi_reciprocal_sum(const ConvergentList& list);

// Trial-division fallbacks for arguments outside any sieve.
int mobius_by_factorization(int64_t n);
int64_t phi_by_factorization(int64_t n);

// Reduced fraction a/q with gcd(a,q) = 1 and 0 <= a < q. The constructor
// validates rather than reduces: feeding 2/4 is an error, by design, so
// that callers cannot silently evaluate at an unreduced point.
struct RationalPoint {
    int64_t a;
    int64_t q;

    RationalPoint(int64_t a_in, int64_t q_in);

    static RationalPoint reduce(int64_t a_in, int64_t q_in);

    double value() const { return static_cast<double>(a) / static_cast<double>(q); }
};

// List of (n, log p) over prime powers n = p^k <= n_max, for kernels
// weighted by the von Mangoldt function (0.7% density: iterating the
// list beats scanning the full lambda table when many alphas share it).
struct PrimePowerList {
    std::vector<int64_t> n;
    std::vector<double> lambda;
};

PrimePowerList prime_powers(const ArithTables& tables, int64_t n_max);

}  // namespace mollsum
