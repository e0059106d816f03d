#include "mollsum/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mollsum {

namespace {

int64_t pow_mod(int64_t base, int64_t exp, int64_t mod) {
    // mod <= 1e6 keeps every product below 1e12, well inside int64.
    int64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> factors;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            factors.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

int64_t primitive_root_mod_p(int64_t p) {
    if (p == 2) return 1;
    std::vector<int64_t> factors = prime_factors(p - 1);
    for (int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (int64_t f : factors) {
            if (pow_mod(g, (p - 1) / f, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive root search failed");
}

// One cyclic factor of (Z/q)*: a generator of known order inside the
// component modulo pe, with its discrete-log table over residues mod pe.
struct GeneratorSlot {
    int64_t pe;          // component modulus p^e
    int64_t order;       // order of the generator
    std::vector<int32_t> dlog;  // residue mod pe -> exponent, -1 if n/a
};

// Decompose (Z/q)* via CRT. Odd p^e components are cyclic; the 2^e
// component is trivial (e=1), cyclic on 3 (e=2), or <-1> x <5> (e>=3).
std::vector<GeneratorSlot> build_slots(int64_t q) {
    std::vector<std::pair<int64_t, int64_t>> factors;  // (p, p^e)
    int64_t rest = q;
    for (int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int64_t pe = 1;
        while (rest % p == 0) { rest /= p; pe *= p; }
        factors.emplace_back(p, pe);
    }
    if (rest > 1) factors.emplace_back(rest, rest);

    std::vector<GeneratorSlot> slots;
    for (auto [p, pe] : factors) {

        if (p == 2) {
            if (pe == 2) continue;  // (Z/2)* trivial
            if (pe == 4) {
                GeneratorSlot s{pe, 2, std::vector<int32_t>(pe, -1)};
                int64_t r = 1;
                for (int64_t j = 0; j < 2; ++j) { s.dlog[r] = static_cast<int32_t>(j); r = r * 3 % pe; }
                slots.push_back(std::move(s));
                continue;
            }
            // 2^e, e >= 3: sign part -1 (order 2) and 5-part (order 2^(e-2)).
            GeneratorSlot sign{pe, 2, std::vector<int32_t>(pe, -1)};
            GeneratorSlot five{pe, pe / 4, std::vector<int32_t>(pe, -1)};
            for (int64_t sgn = 0; sgn < 2; ++sgn) {
                int64_t r = (sgn == 0) ? 1 : pe - 1;
                for (int64_t j = 0; j < pe / 4; ++j) {
                    sign.dlog[r] = static_cast<int32_t>(sgn);
                    five.dlog[r] = static_cast<int32_t>(j);
                    r = r * 5 % pe;
                }
            }
            slots.push_back(std::move(sign));
            slots.push_back(std::move(five));
            continue;
        }

        int64_t g = primitive_root_mod_p(p);
        int64_t phi_pe = pe / p * (p - 1);
        if (pe > p && pow_mod(g, p - 1, p * p) == 1) g += p;  // lift to p^e
        GeneratorSlot s{pe, phi_pe, std::vector<int32_t>(pe, -1)};
        int64_t r = 1;
        for (int64_t j = 0; j < phi_pe; ++j) { s.dlog[r] = static_cast<int32_t>(j); r = r * g % pe; }
        slots.push_back(std::move(s));
    }
    return slots;
}

}  // namespace

DirichletCharacter::DirichletCharacter(int64_t modulus, std::vector<Complex> values)
    : modulus_(modulus), values_(std::move(values)) {
    if (modulus_ < 1) throw domain_error("DirichletCharacter: modulus must be >= 1");
    if (static_cast<int64_t>(values_.size()) != modulus_)
        throw domain_error("DirichletCharacter: value table size != modulus");

    for (int64_t b = 0; b < modulus_; ++b) {
        bool coprime = std::gcd(b, modulus_) == 1;
        double mag = std::abs(values_[b]);
        if (coprime ? std::abs(mag - 1.0) > 1e-9 : mag != 0.0)
            throw domain_error("DirichletCharacter: invalid value table");
    }

    // Conductor: smallest divisor d of q with chi trivial on the kernel of
    // (Z/q)* -> (Z/d)*, i.e. chi(b) = 1 for all b = 1 (mod d) coprime to q.
    conductor_ = modulus_;
    for (int64_t d = 1; d <= modulus_; ++d) {
        if (modulus_ % d != 0) continue;
        bool trivial_on_kernel = true;
        for (int64_t b = 1; b < modulus_; b += d) {
            if (std::gcd(b, modulus_) != 1) continue;
            if (std::abs(values_[b] - Complex(1.0, 0.0)) > 1e-7) {
                trivial_on_kernel = false;
                break;
            }
        }
        if (trivial_on_kernel) { conductor_ = d; break; }
    }
    principal_ = conductor_ == 1;
    odd_ = modulus_ > 1 && values_[modulus_ - 1].real() < 0.0;
}

CharacterGroup::CharacterGroup(int64_t q, int64_t modulus_cap) : q_(q) {
    if (q < 1) throw domain_error("character_group: modulus must be >= 1");
    if (q > modulus_cap)
        throw capacity_error("character_group: modulus " + std::to_string(q) +
                             " exceeds cap " + std::to_string(modulus_cap));

    std::vector<GeneratorSlot> slots = build_slots(q);

    // Angles are exact rationals num/L of the common order L, accumulated
    // in integers, so conjugate characters come out exactly conjugate and
    // chi(-1) is exactly +-1.
    int64_t order_lcm = 1;
    for (const GeneratorSlot& s : slots) order_lcm = std::lcm(order_lcm, s.order);

    std::vector<Complex> roots(order_lcm);
    for (int64_t j = 0; j < order_lcm; ++j) {
        double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(order_lcm);
        roots[j] = Complex(std::cos(angle), std::sin(angle));
    }

    int64_t n_chars = 1;
    for (const GeneratorSlot& s : slots) n_chars *= s.order;

    std::vector<int64_t> exponents(slots.size(), 0);
    characters_.reserve(n_chars);
    for (int64_t index = 0; index < n_chars; ++index) {
        std::vector<Complex> values(q, Complex(0.0, 0.0));
        for (int64_t b = 0; b < q; ++b) {
            if (std::gcd(b, q) != 1) continue;
            int64_t num = 0;
            for (size_t si = 0; si < slots.size(); ++si) {
                const GeneratorSlot& s = slots[si];
                int64_t e = s.dlog[b % s.pe];
                num = (num + exponents[si] * e % s.order * (order_lcm / s.order)) % order_lcm;
            }
            values[b] = roots[num];
        }
        characters_.emplace_back(q, std::move(values));

        // Odometer with the last slot fastest: lexicographic tuple order.
        for (size_t si = slots.size(); si-- > 0;) {
            if (++exponents[si] < slots[si].order) break;
            exponents[si] = 0;
        }
    }
}

Complex gauss_sum(const DirichletCharacter& chi) {
    int64_t q = chi.modulus();
    Complex sum(0.0, 0.0);
    for (int64_t b = 1; b <= q; ++b) {
        Complex v = chi(b);
        if (v == Complex(0.0, 0.0)) continue;
        double angle = kTwoPi * static_cast<double>(b) / static_cast<double>(q);
        sum += v * Complex(std::cos(angle), std::sin(angle));
    }
    return sum;
}

DirichletCharacter induced_primitive(const DirichletCharacter& chi) {
    int64_t q = chi.modulus();
    int64_t f = chi.conductor();
    if (f == q) return chi;

    std::vector<Complex> values(f, Complex(0.0, 0.0));
    for (int64_t b = 0; b < f; ++b) {
        if (std::gcd(b, f) != 1) continue;
        // Some lift b' = b + kf is coprime to q; chi(b') is independent of
        // the choice because chi is trivial on the kernel mod f.
        for (int64_t lift = b;; lift += f) {
            if (std::gcd(lift, q) == 1) {
                values[b] = chi(lift);
                break;
            }
        }
    }
    return DirichletCharacter(f, std::move(values));
}

Complex sine_character_sum(const RationalPoint& point) {
    CharacterGroup group(point.q);
    Complex sum(0.0, 0.0);
    int64_t phi_q = 0;
    for (const DirichletCharacter& chi : group.characters()) {
        ++phi_q;
        if (!chi.is_odd()) continue;
        Complex tau_bar(0.0, 0.0);
        for (int64_t b = 1; b < point.q; ++b) {
            Complex v = chi(b);
            if (v == Complex(0.0, 0.0)) continue;
            double angle = kTwoPi * static_cast<double>(b) / static_cast<double>(point.q);
            tau_bar += std::conj(v) * Complex(std::cos(angle), std::sin(angle));
        }
        sum += chi(point.a) * tau_bar;
    }
    return sum / (Complex(0.0, 1.0) * static_cast<double>(phi_q));
}

}  // namespace mollsum
