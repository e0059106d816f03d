#include "mollsum/special_values.hpp"

#include <cmath>
#include <vector>

namespace mollsum {

double sin_two_pi_rational(int64_t a, int64_t q) {
    a %= q;
    if (a < 0) a += q;
    double sign = 1.0;
    if (2 * a > q) {  // sin(2 pi (1 - r)) = -sin(2 pi r)
        a = q - a;
        sign = -1.0;
    }
    // Now a/q in [0, 1/2]. Use sin(pi - x) = sin(x) to keep the argument
    // in [0, pi/2]; both branches hit an exact integer numerator at the
    // zeros a = 0 and 2a = q.
    double angle = (4 * a <= q) ? kPi * static_cast<double>(2 * a) / static_cast<double>(q)
                                : kPi * static_cast<double>(q - 2 * a) / static_cast<double>(q);
    return sign * std::sin(angle);
}

double hurwitz_zeta_zero(int64_t b, int64_t q) {
    if (q < 1 || b < 1 || b > q) throw domain_error("hurwitz_zeta_zero: need 1 <= b <= q");
    return 0.5 - static_cast<double>(b) / static_cast<double>(q);
}

Complex l_at_zero(const DirichletCharacter& chi) {
    int64_t q = chi.modulus();
    KahanSum re, im;
    for (int64_t b = 1; b <= q; ++b) {
        Complex v = chi(b);
        if (v == Complex(0.0, 0.0)) continue;
        double w = 0.5 - static_cast<double>(b) / static_cast<double>(q);
        re.add(v.real() * w);
        im.add(v.imag() * w);
    }
    return {re.value(), im.value()};
}

namespace {

// sum_{m >= M} m^{-s} for integer s >= 2, by direct terms to M+32 and
// Euler-Maclaurin beyond.
double zeta_tail(int64_t s, int64_t M) {
    const int64_t cut = M + 32;
    KahanSum direct;
    for (int64_t m = M; m < cut; ++m)
        direct.add(std::pow(static_cast<double>(m), -static_cast<double>(s)));

    double c = static_cast<double>(cut);
    double sd = static_cast<double>(s);
    double tail = std::pow(c, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(c, -sd);
    static const double bern[4] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30};
    double fact = 1.0;       // (2k)!
    double rising = 1.0;     // s(s+1)...(s+2k-2)
    for (int k = 1; k <= 4; ++k) {
        fact *= (2 * k - 1) * (2 * k);
        rising *= (k == 1) ? sd : (sd + 2 * k - 4) * (sd + 2 * k - 3);
        tail += bern[k - 1] / fact * rising * std::pow(c, -(sd + 2 * k - 1));
    }
    return direct.value() + tail;
}

}  // namespace

Complex l_at_one(const DirichletCharacter& chi, double precision_target) {
    if (chi.is_principal())
        throw domain_error("l_at_one: L(1) of a principal character diverges");
    if (precision_target <= 0.0) throw domain_error("l_at_one: precision_target must be > 0");

    int64_t q = chi.modulus();

    // Power sums S_j = sum_b chi(b) b^j drive the tail expansion
    //   block(m) = sum_j (-1)^j S_j/(mq)^{j+1},  S_0 = 0.
    constexpr int kMaxJ = 12;
    Complex power_sum[kMaxJ + 1];
    for (int64_t b = 1; b < q; ++b) {
        Complex v = chi(b);
        if (v == Complex(0.0, 0.0)) continue;
        double bp = static_cast<double>(b);
        for (int j = 1; j <= kMaxJ; ++j) {
            power_sum[j] += v * bp;
            bp *= static_cast<double>(b);
        }
    }

    int64_t blocks = 64;
    while (std::pow(static_cast<double>(blocks), -kMaxJ) > precision_target &&
           blocks < (1 << 24))
        blocks *= 2;

    KahanSum re, im;
    for (int64_t n = 1; n < blocks * q; ++n) {
        Complex v = chi(n);
        if (v == Complex(0.0, 0.0)) continue;
        double w = 1.0 / static_cast<double>(n);
        re.add(v.real() * w);
        im.add(v.imag() * w);
    }

    Complex tail(0.0, 0.0);
    double sign = -1.0;
    for (int j = 1; j <= kMaxJ; ++j) {
        double scale = std::pow(static_cast<double>(q), -(j + 1)) * zeta_tail(j + 1, blocks);
        tail += sign * power_sum[j] * scale;
        sign = -sign;
    }
    return Complex(re.value(), im.value()) + tail;
}

namespace {

// L'/L(1,chi) for odd *primitive* chi via the log-Gamma closed form.
Complex log_deriv_primitive(const DirichletCharacter& chi, double additive_constant) {
    int64_t q = chi.modulus();
    Complex num(0.0, 0.0), den(0.0, 0.0);
    for (int64_t a = 1; a < q; ++a) {
        Complex v = std::conj(chi(a));
        if (v == Complex(0.0, 0.0)) continue;
        double x = static_cast<double>(a) / static_cast<double>(q);
        num += v * std::lgamma(x);
        den += v * x;
    }
    if (std::abs(den) < 1e-12)
        throw std::logic_error("log_deriv: vanishing denominator for odd character");
    return kLog2Pi + additive_constant + num / den;
}

}  // namespace

Complex log_deriv_l1_finite(const DirichletCharacter& chi, double additive_constant) {
    if (chi.is_principal() || chi.is_even())
        throw domain_error("log_deriv_l1_finite: character must be odd");

    if (chi.is_primitive()) return log_deriv_primitive(chi, additive_constant);

    // Imprimitive: L(s,chi) = L(s,chi1) prod_{p|q}(1 - chi1(p) p^-s), so the
    // log derivative picks up chi1(p) log p/(p - chi1(p)) per prime p | q.
    DirichletCharacter chi1 = induced_primitive(chi);
    Complex value = log_deriv_primitive(chi1, additive_constant);
    int64_t rest = chi.modulus();
    for (int64_t p = 2; rest > 1; ++p) {
        if (p * p > rest) p = rest;
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        Complex cp = chi1(p);
        if (cp != Complex(0.0, 0.0))
            value += cp * std::log(static_cast<double>(p)) / (static_cast<double>(p) - cp);
    }
    return value;
}

Complex log_deriv_l_at_one(const DirichletCharacter& chi) {
    return log_deriv_l1_finite(chi, kLogDerivConstGamma);
}

Complex log_deriv_l1_series(const DirichletCharacter& chi, const ArithTables& tables,
                            int64_t n_max) {
    if (chi.is_principal())
        throw domain_error("log_deriv_l1_series: character must be non-principal");
    if (n_max > tables.limit())
        throw capacity_error("log_deriv_l1_series: n_max exceeds sieve limit");

    double x = static_cast<double>(n_max) / 30.0;
    KahanSum re, im;
    for (int64_t n = 2; n <= n_max; ++n) {
        double l = tables.lambda(n);
        if (l == 0.0) continue;
        Complex v = chi(n);
        if (v == Complex(0.0, 0.0)) continue;
        double w = l * std::exp(-static_cast<double>(n) / x) / static_cast<double>(n);
        re.add(v.real() * w);
        im.add(v.imag() * w);
    }
    return -Complex(re.value(), im.value());
}

double prime_power_tail(const RationalPoint& point, double tol) {
    if (tol <= 0.0) throw domain_error("prime_power_tail: tol must be > 0");
    int64_t q = point.q;

    std::vector<int64_t> primes;
    int64_t rest = q;
    for (int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            primes.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    }
    if (rest > 1) primes.push_back(rest);

    double per_prime_tol = tol / static_cast<double>(std::max<size_t>(primes.size(), 1));
    KahanSum total;
    for (int64_t p : primes) {
        double logp = std::log(static_cast<double>(p));
        KahanSum inner;
        int64_t pk_mod = p % q;
        double weight = 1.0 / static_cast<double>(p);
        // Geometric tail after k terms is weight/(p-1).
        while (logp * weight * static_cast<double>(p) / static_cast<double>(p - 1) >=
               per_prime_tol) {
            inner.add(sin_two_pi_rational(point.a * pk_mod % q, q) * weight);
            pk_mod = pk_mod * p % q;
            weight /= static_cast<double>(p);
        }
        total.add(logp * inner.value());
    }
    return total.value();
}

double u_limit(const RationalPoint& point) {
    return -sin_two_pi_rational(point.a, point.q) / kPi;
}

ClosedFormTarget tsum_closed_form(const RationalPoint& point) {
    int64_t q = point.q;

    // Character part: -(1/phi(q)) sum over odd chi of chi(a) tau(conj chi)/i
    // times L'/L(1,chi). The minus comes from sum Lambda(n)chi(n)/n being
    // -L'/L(1,chi), the abscissa-1 value of the log-derivative series.
    Complex char_sum(0.0, 0.0);
    int64_t phi_q = 0;
    if (q >= 3) {
        CharacterGroup group(q);
        phi_q = group.size();
        for (const DirichletCharacter& chi : group.characters()) {
            if (!chi.is_odd()) continue;
            Complex tau_bar(0.0, 0.0);
            for (int64_t b = 1; b < q; ++b) {
                Complex v = chi(b);
                if (v == Complex(0.0, 0.0)) continue;
                double angle = kTwoPi * static_cast<double>(b) / static_cast<double>(q);
                tau_bar += std::conj(v) * Complex(std::cos(angle), std::sin(angle));
            }
            char_sum += chi(point.a) * tau_bar * log_deriv_l_at_one(chi);
        }
        char_sum /= Complex(0.0, 1.0) * static_cast<double>(phi_q);
        char_sum = -char_sum;
    }

    ClosedFormTarget target{point, 0.0, char_sum.real(), prime_power_tail(point),
                            std::abs(char_sum.imag())};
    target.value = target.character_part + target.prime_power_part;
    return target;
}

double vstar_limit(const RationalPoint& point) {
    return tsum_closed_form(point).value / kPi;
}

}  // namespace mollsum
