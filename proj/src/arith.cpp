#include "mollsum/arith.hpp"

#include <cmath>
#include <numeric>

namespace mollsum {

ArithTables::ArithTables(int64_t limit, int64_t limit_cap) : limit_(limit) {
    if (limit < 1 || limit > limit_cap)
        throw capacity_error("sieve limit " + std::to_string(limit) +
                             " outside [1, " + std::to_string(limit_cap) + "]");

    mobius_.assign(limit + 1, 0);
    lambda_.assign(limit + 1, 0.0);
    phi_.assign(limit + 1, 0);
    spf_.assign(limit + 1, 0);

    mobius_[1] = 1;
    phi_[1] = 1;
    spf_[1] = 1;

    // Linear (Euler) sieve: each composite is struck once via its smallest
    // prime factor, giving mobius/phi/spf in one O(limit) pass.
    std::vector<int32_t> primes;
    for (int64_t i = 2; i <= limit_; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<int32_t>(i);
            mobius_[i] = -1;
            phi_[i] = static_cast<int32_t>(i - 1);
            primes.push_back(static_cast<int32_t>(i));
        }
        for (int32_t p : primes) {
            if (p > spf_[i] || i * p > limit_) break;
            int64_t ip = i * p;
            spf_[ip] = p;
            if (p == spf_[i]) {
                mobius_[ip] = 0;
                phi_[ip] = static_cast<int32_t>(static_cast<int64_t>(phi_[i]) * p);
                break;
            }
            mobius_[ip] = static_cast<signed char>(-mobius_[i]);
            phi_[ip] = static_cast<int32_t>(static_cast<int64_t>(phi_[i]) * (p - 1));
        }
    }

    // lambda[n] = log p when n = p^k: n/p is either 1 or a power of the
    // same prime, in which case it already carries the same log p.
    for (int64_t n = 2; n <= limit_; ++n) {
        int64_t p = spf_[n];
        int64_t m = n / p;
        if (m == 1)
            lambda_[n] = std::log(static_cast<double>(p));
        else if (spf_[m] == p && lambda_[m] != 0.0)
            lambda_[n] = lambda_[m];
    }
}

double frac(double x) {
    if (!std::isfinite(x)) throw domain_error("frac: non-finite argument");
    return x - std::floor(x);
}

double sawtooth(double x) {
    double f = frac(x);
    return f == 0.0 ? 0.0 : f - 0.5;
}

double sawtooth2(double t, int64_t terms) {
    if (terms < 1) throw domain_error("sawtooth2: terms must be >= 1");
    if (!std::isfinite(t)) throw domain_error("sawtooth2: non-finite argument");
    KahanSum sum;
    // Summed downward so the tiny high-m terms accumulate first.
    for (int64_t m = terms; m >= 1; --m) {
        double dm = static_cast<double>(m);
        sum.add(std::cos(kTwoPi * dm * frac(t)) / (dm * dm));
    }
    return sum.value() / (2.0 * kPi * kPi);
}

ConvergentList convergents(double alpha, int64_t max_q) {
    if (!std::isfinite(alpha)) throw domain_error("convergents: non-finite alpha");
    if (max_q < 1) throw domain_error("convergents: max_q must be >= 1");

    constexpr int64_t kDenomStop = 1'000'000'000;

    ConvergentList list;
    list.alpha = alpha;

    // Standard floor/reciprocal recurrence. h/k indices: (h_{-1},k_{-1}) =
    // (1,0), (h_0,k_0) = (a_0,1); the m=0 convergent is not listed.
    double y = alpha;
    int64_t h_prev = 1, k_prev = 0;
    int64_t a0 = static_cast<int64_t>(std::floor(y));
    int64_t h = a0, k = 1;
    y -= std::floor(y);

    while (true) {
        if (y == 0.0) break;            // rational input: expansion terminated
        double inv = 1.0 / y;
        if (inv > 9.0e18) break;        // next partial quotient unrepresentable
        int64_t a = static_cast<int64_t>(std::floor(inv));
        y = inv - std::floor(inv);

        int64_t h_next = a * h + h_prev;
        int64_t k_next = a * k + k_prev;
        if (k_next > kDenomStop || k_next < 0) break;
        h_prev = h; k_prev = k;
        h = h_next; k = k_next;

        if (k > max_q) break;
        list.entries.push_back({h, k});
    }
    return list;
}

int64_t phi_by_factorization(int64_t n) {
    int64_t result = n;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

int mobius_by_factorization(int64_t n) {
    if (n < 1) throw domain_error("mobius_by_factorization: n must be >= 1");
    int sign = 1;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

double phi_reciprocal_sum(const ConvergentList& list) {
    KahanSum sum;
    for (const Convergent& c : list.entries)
        sum.add(1.0 / static_cast<double>(phi_by_factorization(c.q)));
    return sum.value();
}

RationalPoint::RationalPoint(int64_t a_in, int64_t q_in) : a(a_in), q(q_in) {
    if (q < 1) throw domain_error("RationalPoint: denominator must be >= 1");
    if (a < 0 || a >= q) throw domain_error("RationalPoint: need 0 <= a < q");
    if (std::gcd(a, q) != 1) throw domain_error("RationalPoint: a/q not reduced");
}

RationalPoint RationalPoint::reduce(int64_t a_in, int64_t q_in) {
    if (q_in < 1) throw domain_error("RationalPoint: denominator must be >= 1");
    a_in %= q_in;
    if (a_in < 0) a_in += q_in;
    int64_t g = std::gcd(a_in, q_in);
    return RationalPoint(a_in / g, q_in / g);
}

PrimePowerList prime_powers(const ArithTables& tables, int64_t n_max) {
    if (n_max > tables.limit())
        throw capacity_error("prime_powers: n_max exceeds sieve limit");
    PrimePowerList list;
    for (int64_t n = 2; n <= n_max; ++n) {
        double l = tables.lambda(n);
        if (l != 0.0) {
            list.n.push_back(n);
            list.lambda.push_back(l);
        }
    }
    return list;
}

}  // namespace mollsum
