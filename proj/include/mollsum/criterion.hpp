#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mollsum/arith.hpp"
#include "mollsum/common.hpp"

namespace mollsum {

// Dirichlet-polynomial coefficients d_n, n = 1..n_max. The built-in
// families are the log-weighted Mobius coefficients
// b_n = mu(n) log(N/n)/log N and the sharp cutoff mu(n); arbitrary user
// vectors are accepted through custom_coeffs.
struct MollifierCoeffs {
    int64_t n_max = 0;
    std::vector<double> b;  // 1-indexed, b[0] unused

    double coeff(int64_t n) const { return b[n]; }

    // (n, b_n) over nonzero coefficients.
    std::vector<std::pair<int64_t, double>> active() const;

    // A = sum of all coefficients: the slope of the inner sum near u = 0.
    double coefficient_sum() const;
};

MollifierCoeffs mollifier_coeffs(int64_t n_max, const ArithTables& tables);
MollifierCoeffs sharp_cutoff_coeffs(int64_t n_max, const ArithTables& tables);
MollifierCoeffs custom_coeffs(std::vector<double> b_from_n1);

// sum_{n<=N} mu(n) log(N/n)/log N, the value of the inner sum's slope on
// (0, 1/N] for the log-weighted family.
double weighted_mertens(int64_t n_max, const ArithTables& tables);

struct RationalBreakpoint {
    int64_t num;
    int64_t den;
    double u() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Exact piecewise evaluation of int_0^u_max |sum_n b_n {n u}/n|^2 du/u^2.
// Between consecutive breakpoints m/n the inner sum is A u - B with A
// fixed and B constant, so each segment integrates in closed form; the
// sweep walks all breakpoints in exact rational order, merging
// coincident ones. The tail over (u_max, inf) is modeled as M/u_max with
// M the mean of the squared inner sum over the last decade of u, with
// half the tail reported as uncertainty.
class PiecewiseIntegral {
  public:
    double finite_value() const { return finite_value_; }
    double tail_estimate() const { return tail_estimate_; }
    double total() const { return finite_value_ + tail_estimate_; }
    double uncertainty() const { return 0.5 * tail_estimate_; }

    double u_max() const { return u_max_; }
    double slope() const { return a_; }
    double mean_sq_last_decade() const { return mean_sq_; }

    bool has_segments() const { return has_segments_; }
    int64_t segment_count() const;

    struct Segment {
        double u_lo;
        double u_hi;
        double a;  // inner sum is a*u - b on (u_lo, u_hi)
        double b;
    };
    Segment segment(int64_t index) const;
    const std::vector<RationalBreakpoint>& breakpoints() const { return breakpoints_; }

  private:
    friend PiecewiseIntegral rhs_piecewise(const MollifierCoeffs&, double, int64_t, bool);
    double u_max_ = 0.0;
    double a_ = 0.0;
    double finite_value_ = 0.0;
    double tail_estimate_ = 0.0;
    double mean_sq_ = 0.0;
    bool has_segments_ = false;
    std::vector<RationalBreakpoint> breakpoints_;
    std::vector<double> segment_b_;  // segment i left-bounded by breakpoint i-1
};

inline constexpr int64_t kDefaultBreakpointCap = 50'000'000;

PiecewiseIntegral rhs_piecewise(const MollifierCoeffs& coeffs, double u_max,
                                int64_t breakpoint_cap = kDefaultBreakpointCap,
                                bool keep_segments = true);

// A value carrying the additive tail model's half-width.
struct TailedValue {
    double value;
    double uncertainty;
};

// F(h/k) = (1/h) int_0^inf {hu}{ku} du/u^2, swept piecewise-exactly over
// (0, u_max] with the same tail model (tail omitted when include_tail is
// false, for matched-domain comparisons).
TailedValue pair_kernel(int64_t h, int64_t k, double u_max, bool include_tail = true,
                        int64_t breakpoint_cap = kDefaultBreakpointCap);

// sum_{h,k} b_h b_k/k F(h/k) over nonzero coefficients: the same integral
// as rhs_piecewise expanded over pairs. Agrees with rhs_piecewise to
// round-off at matched u_max with tails disabled.
TailedValue rhs_via_pairs(const MollifierCoeffs& coeffs, double u_max,
                          bool include_tails = true,
                          int64_t breakpoint_cap = kDefaultBreakpointCap);

// (1/2pi) int |zeta(1/2+it) M(1/2+it)|^2 / |1/2+it|^2 dt over
// [-t_max, t_max] (computed on [0, t_max] and doubled), by per-panel
// adaptive quadrature, plus a last-decade tail estimate. The coefficient
// length is capped: the fractional-part side is the scalable route, this
// side exists for cross-validation.
TailedValue lhs_quadrature(const MollifierCoeffs& coeffs, double t_max,
                           double precision_target = 1e-6);

struct CriterionRow {
    int64_t n;
    double rhs_value;
    double rhs_uncertainty;
    std::optional<double> lhs_value;
    std::optional<double> lhs_uncertainty;
    double gap_to_one;
    double weighted_mertens;
    std::optional<double> pairs_residual;  // |pairs - piecewise| at matched u_max
};

enum class CoeffFamily { levinson, sharp };

struct CriterionOptions {
    double u_max = 1e4;
    bool with_lhs = false;
    double t_max = 200.0;
    double lhs_precision = 1e-6;
    int64_t pairs_check_max_n = 32;  // skip the O(N^2) cross-check above this
    int64_t breakpoint_cap = kDefaultBreakpointCap;
    CoeffFamily family = CoeffFamily::levinson;
};

// One row per N: the distance value against its target 1. No convergence
// assertion is made; the gap column is reporting only. The pairs-vs-
// piecewise residual is the internally asserted consistency check.
std::vector<CriterionRow> criterion_report(const std::vector<int64_t>& n_schedule,
                                           const ArithTables& tables,
                                           const CriterionOptions& options = {});

}  // namespace mollsum
