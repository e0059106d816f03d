#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mollsum {

using std::int64_t;

// Input outside an operation's mathematical domain (bad argument values,
// unreduced fractions, wrong character parity, ...). CLI exit code 2.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured resource cap (sieve size, breakpoint count,
// zeta |t| range, ...). CLI exit code 3.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Euler-Mascheroni constant, 20 digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647693;
inline constexpr double kLog2Pi = 1.83787706640934548356;  // log(2*pi)

// High-precision literals for the named scan points, so runs at "generic"
// irrational alpha are reproducible byte-for-byte.
inline constexpr double kSqrt2Minus1 = 0.41421356237309504880;
inline constexpr double kGoldenMinus1 = 0.61803398874989484820;
inline constexpr double kPiMinus3 = 0.14159265358979323846;

// Compensated (Kahan) accumulator. Partial sums here run to 1e7 terms of
// size ~1/n and downstream identity checks assert at 1e-10..1e-12, which
// plain accumulation does not reliably reach.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace mollsum
