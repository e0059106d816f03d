#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mollsum/arith.hpp"
#include "mollsum/common.hpp"

namespace mollsum {

// The partial-sum families scanned by the CLI:
//   U     sum mu(n) {n a}/n
//   V     sum mu(n) {n a} log n /n
//   Vstar sum mu(n) psi(n a) log n /n
//   W     U - V/log N          (the log-weighted average)
//   Tsum  sum Lambda(n) sin(2 pi n a)/n
//   S     sum Lambda(n) sin(2 pi n a)   (unweighted)
enum class SeriesKind { U, V, Vstar, W, Tsum, S };

const char* series_kind_name(SeriesKind kind);
std::optional<SeriesKind> parse_series_kind(const std::string& name);

// Argument reduction for irrational alpha. fast computes frac(n*alpha) in
// plain double; compensated recovers the product rounding error with an
// fma, for n*ulp-sensitive runs.
enum class ArgReduction { fast, compensated };

// Evaluation point: exact rational (residues n*a mod q stepped in integer
// arithmetic, so Dirichlet-character comparisons see exact residue
// classes) or a double treated as irrational.
class Alpha {
  public:
    static Alpha rational(const RationalPoint& p) { return Alpha(true, p, p.value()); }
    static Alpha real(double value) {
        if (!std::isfinite(value)) throw domain_error("Alpha: non-finite value");
        return Alpha(false, RationalPoint(0, 1), value);
    }

    bool is_rational() const { return rational_; }
    const RationalPoint& point() const {
        if (!rational_) throw domain_error("Alpha: not a rational point");
        return point_;
    }
    double numeric() const { return value_; }

  private:
    Alpha(bool r, const RationalPoint& p, double v) : rational_(r), point_(p), value_(v) {}
    bool rational_;
    RationalPoint point_;
    double value_;
};

double u_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                 ArgReduction reduction = ArgReduction::fast);
double v_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                 ArgReduction reduction = ArgReduction::fast);
double vstar_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                     ArgReduction reduction = ArgReduction::fast);

// Defined as u_partial - v_partial/log(n_max); requires n_max >= 2.
double w_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                 ArgReduction reduction = ArgReduction::fast);

// Optional pp reuses a prime-power list (it must cover n_max).
double tsum_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                    const PrimePowerList* pp = nullptr,
                    ArgReduction reduction = ArgReduction::fast);
double s_exponential(const Alpha& alpha, int64_t u, const ArithTables& tables,
                     const PrimePowerList* pp = nullptr,
                     ArgReduction reduction = ArgReduction::fast);

// Serial single-accumulator reference implementations, kept for testing
// the blocked OpenMP kernels and as the benchmark baseline.
namespace ref {
double u_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables);
double v_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables);
double vstar_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables);
double tsum_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables);
}  // namespace ref

// Partial sums of mu(n) log n/n, full and restricted to multiples of q:
// the exact bookkeeping between V and Vstar.
double mobius_log_sum(int64_t n_max, const ArithTables& tables);
double mobius_log_sum_multiples(int64_t q, int64_t n_max, const ArithTables& tables);

// One pass over n with snapshots at the schedule points. Snapshot values
// equal the corresponding independent *_partial calls bit-for-bit (same
// block decomposition and combine order).
struct SeriesScan {
    SeriesKind kind;
    std::vector<int64_t> schedule;
    std::vector<double> values;
    std::optional<double> target;  // closed-form limit where one exists
    std::vector<double> errors;    // values - target, empty without target
};

SeriesScan convergence_scan(SeriesKind kind, const Alpha& alpha,
                            std::vector<int64_t> schedule, const ArithTables& tables,
                            ArgReduction reduction = ArgReduction::fast);

// One-sided estimates of T = Tsum/pi near a rational point, against the
// conjectured half-jump mu(q)/(2 phi(q)). Reporting only: nothing here is
// asserted, the conjecture is printed next to the measurements.
struct JumpRow {
    double eps;
    double t_minus;  // T(a/q - eps)
    double t_plus;   // T(a/q + eps)
    double avg;
};

struct JumpReport {
    RationalPoint point;
    int64_t n_max;
    double t_at;
    double conjectured_half_jump;
    std::vector<JumpRow> rows;
};

JumpReport jump_probe(const RationalPoint& point, const std::vector<double>& eps_schedule,
                      int64_t n_max, const ArithTables& tables);

// Sup over the grid and over all N <= n_max of the partial sums (for Tsum,
// of the partial sums divided by pi). Reports the empirical sup; callers
// gate it against generous engineering ceilings only.
struct MonitorReport {
    SeriesKind kind;
    int64_t n_max;
    double sup_abs;
    double argmax_alpha;
    std::vector<double> per_alpha_sup;
};

MonitorReport boundedness_monitor(SeriesKind kind, const std::vector<Alpha>& grid,
                                  int64_t n_max, const ArithTables& tables);

}  // namespace mollsum
