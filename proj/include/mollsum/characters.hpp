#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mollsum/arith.hpp"
#include "mollsum/common.hpp"

namespace mollsum {

using Complex = std::complex<double>;

// Dirichlet character mod q as a dense table of values on 0..q-1:
// roots of unity on residues coprime to q, 0 elsewhere. Parity, conductor
// and principality are computed at construction. Immutable.
class DirichletCharacter {
  public:
    DirichletCharacter(int64_t modulus, std::vector<Complex> values);

    int64_t modulus() const { return modulus_; }
    int64_t conductor() const { return conductor_; }
    bool is_principal() const { return principal_; }
    bool is_odd() const { return odd_; }
    bool is_even() const { return !odd_; }
    bool is_primitive() const { return conductor_ == modulus_; }

    // chi(n) for any integer n (reduced mod q internally).
    Complex operator()(int64_t n) const {
        int64_t r = n % modulus_;
        if (r < 0) r += modulus_;
        return values_[r];
    }

    const std::vector<Complex>& values() const { return values_; }

  private:
    int64_t modulus_;
    std::vector<Complex> values_;
    int64_t conductor_;
    bool principal_;
    bool odd_;
};

// All phi(q) characters mod q, built from generators of the CRT components
// of (Z/q)*. Enumeration order is lexicographic in the generator-exponent
// tuples with the principal character first, so output orderings are
// reproducible. Immutable after construction.
class CharacterGroup {
  public:
    static constexpr int64_t kDefaultModulusCap = 1'000'000;

    explicit CharacterGroup(int64_t q, int64_t modulus_cap = kDefaultModulusCap);

    int64_t modulus() const { return q_; }
    int64_t size() const { return static_cast<int64_t>(characters_.size()); }
    const DirichletCharacter& character(int64_t index) const { return characters_[index]; }
    const std::vector<DirichletCharacter>& characters() const { return characters_; }

  private:
    int64_t q_;
    std::vector<DirichletCharacter> characters_;
};

inline CharacterGroup character_group(int64_t q,
                                      int64_t cap = CharacterGroup::kDefaultModulusCap) {
    return CharacterGroup(q, cap);
}

// Gauss sum tau(chi) = sum_b chi(b) e(b/q). |tau|^2 = q for primitive chi;
// for imprimitive chi it factors through the inducing character (and is
// often 0), which the identity suite checks.
Complex gauss_sum(const DirichletCharacter& chi);

// The primitive character of modulus conductor(chi) inducing chi.
// Idempotent on primitive characters.
DirichletCharacter induced_primitive(const DirichletCharacter& chi);

// (1/(i phi(q))) sum over odd chi mod q of chi(a) tau(conj chi), which
// collapses by orthogonality to sin(2 pi a/q). Returned as computed so the
// identity can be asserted externally; empty sum (q <= 2) gives 0.
Complex sine_character_sum(const RationalPoint& point);

}  // namespace mollsum
