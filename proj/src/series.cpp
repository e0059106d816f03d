#include "mollsum/series.hpp"

#include <algorithm>
#include <cmath>

#include "mollsum/special_values.hpp"

namespace mollsum {

const char* series_kind_name(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::U: return "U";
        case SeriesKind::V: return "V";
        case SeriesKind::Vstar: return "Vstar";
        case SeriesKind::W: return "W";
        case SeriesKind::Tsum: return "Tsum";
        case SeriesKind::S: return "S";
    }
    return "?";
}

std::optional<SeriesKind> parse_series_kind(const std::string& name) {
    if (name == "U") return SeriesKind::U;
    if (name == "V") return SeriesKind::V;
    if (name == "Vstar") return SeriesKind::Vstar;
    if (name == "W") return SeriesKind::W;
    if (name == "Tsum") return SeriesKind::Tsum;
    if (name == "S") return SeriesKind::S;
    return std::nullopt;
}

namespace {

constexpr int64_t kBlockSize = 1 << 16;

// Deterministic parallel prefix sum: fixed blocks of term indices are
// summed independently (OpenMP), then combined in index order with a
// fresh compensated tail for the final partial block. The result is
// identical for any thread count, and a snapshot at any prefix length
// reproduces the standalone call bit-for-bit.
template <class TermFn>
std::vector<double> block_sums(int64_t full_blocks, const TermFn& term) {
    std::vector<double> sums(full_blocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int64_t k = 0; k < full_blocks; ++k) {
        KahanSum s;
        const int64_t lo = k * kBlockSize;
        const int64_t hi = lo + kBlockSize;
        for (int64_t i = lo; i < hi; ++i) s.add(term(i));
        sums[k] = s.value();
    }
    return sums;
}

template <class TermFn>
double blocked_prefix(int64_t count, const TermFn& term) {
    const int64_t full = count / kBlockSize;
    std::vector<double> sums = block_sums(full, term);
    KahanSum total;
    for (double s : sums) total.add(s);
    for (int64_t i = full * kBlockSize; i < count; ++i) total.add(term(i));
    return total.value();
}

template <class TermFn>
std::vector<double> blocked_snapshots(const std::vector<int64_t>& counts, const TermFn& term) {
    std::vector<double> out;
    out.reserve(counts.size());
    const int64_t full_max = counts.empty() ? 0 : counts.back() / kBlockSize;
    std::vector<double> sums = block_sums(full_max, term);
    KahanSum prefix;
    int64_t done = 0;
    for (int64_t count : counts) {
        const int64_t full = count / kBlockSize;
        while (done < full) prefix.add(sums[done++]);
        KahanSum snap = prefix;
        for (int64_t i = full * kBlockSize; i < count; ++i) snap.add(term(i));
        out.push_back(snap.value());
    }
    return out;
}

inline double frac_times(int64_t n, double alpha, ArgReduction reduction) {
    const double p = static_cast<double>(n) * alpha;
    double f = p - std::floor(p);
    if (reduction == ArgReduction::compensated) {
        f += std::fma(static_cast<double>(n), alpha, -p);
        if (f >= 1.0) f -= 1.0;
        if (f < 0.0) f += 1.0;
    }
    return f;
}

void check_capacity(int64_t n_max, const ArithTables& tables, const char* op) {
    if (n_max < 0 || n_max > tables.limit())
        throw capacity_error(std::string(op) + ": n_max exceeds sieve limit");
}

// Shared shape of the Mobius-weighted kernels: weight(n) * measure({n a}).
enum class FracKind { plain, sawtooth };
enum class LogWeight { off, on };

template <FracKind FK, LogWeight LW>
struct MobiusTerm {
    const signed char* mob;
    bool rational;
    int64_t a, q;
    double alpha;
    ArgReduction reduction;

    double operator()(int64_t i) const {
        const int64_t n = i + 1;
        const int m = mob[n];
        if (m == 0) return 0.0;
        double f;
        if (rational) {
            const int64_t r = (n % q) * a % q;
            if (FK == FracKind::sawtooth && r == 0) return 0.0;
            f = static_cast<double>(r) / static_cast<double>(q);
        } else {
            f = frac_times(n, alpha, reduction);
            if (FK == FracKind::sawtooth && f == 0.0) return 0.0;
        }
        if (FK == FracKind::sawtooth) f -= 0.5;
        double term = m * f / static_cast<double>(n);
        if (LW == LogWeight::on) term *= std::log(static_cast<double>(n));
        return term;
    }
};

template <FracKind FK, LogWeight LW>
MobiusTerm<FK, LW> make_mobius_term(const Alpha& alpha, const ArithTables& tables,
                                    ArgReduction reduction) {
    MobiusTerm<FK, LW> t{tables.mobius_table().data(), alpha.is_rational(), 0, 1,
                         alpha.numeric(), reduction};
    if (t.rational) {
        t.a = alpha.point().a;
        t.q = alpha.point().q;
    }
    return t;
}

// Lambda-weighted kernels iterate the prime-power list; sin(2 pi r/q) at
// rational points goes through a per-residue table built with exact
// quadrant reduction.
struct LambdaTerm {
    const int64_t* n;
    const double* lambda;
    bool rational;
    int64_t a, q;
    const double* sin_table;
    double alpha;
    ArgReduction reduction;
    bool weight_by_n;

    double operator()(int64_t i) const {
        const int64_t ni = n[i];
        double s;
        if (rational) {
            s = sin_table[(ni % q) * a % q];
        } else {
            s = std::sin(kTwoPi * frac_times(ni, alpha, reduction));
        }
        double term = lambda[i] * s;
        if (weight_by_n) term /= static_cast<double>(ni);
        return term;
    }
};

std::vector<double> rational_sin_table(int64_t q) {
    std::vector<double> table(q);
    for (int64_t r = 0; r < q; ++r) table[r] = sin_two_pi_rational(r, q);
    return table;
}

struct LambdaKernel {
    PrimePowerList owned;
    const PrimePowerList* list;
    std::vector<double> sin_table;
    LambdaTerm term;

    // A caller-supplied list must cover n_max; internal callers build it
    // from the same tables so this holds by construction.
    LambdaKernel(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                 const PrimePowerList* pp, ArgReduction reduction, bool weight_by_n) {
        if (pp == nullptr) {
            owned = prime_powers(tables, n_max);
            list = &owned;
        } else {
            list = pp;
        }
        term = LambdaTerm{list->n.data(), list->lambda.data(), alpha.is_rational(),
                          0, 1, nullptr, alpha.numeric(), reduction, weight_by_n};
        if (alpha.is_rational()) {
            term.a = alpha.point().a;
            term.q = alpha.point().q;
            sin_table = rational_sin_table(term.q);
            term.sin_table = sin_table.data();
        }
    }

    int64_t count_for(int64_t n_max) const {
        return std::upper_bound(list->n.begin(), list->n.end(), n_max) - list->n.begin();
    }
};

}  // namespace

double u_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                 ArgReduction reduction) {
    check_capacity(n_max, tables, "u_partial");
    return blocked_prefix(n_max,
                          make_mobius_term<FracKind::plain, LogWeight::off>(alpha, tables, reduction));
}

double v_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                 ArgReduction reduction) {
    check_capacity(n_max, tables, "v_partial");
    return blocked_prefix(n_max,
                          make_mobius_term<FracKind::plain, LogWeight::on>(alpha, tables, reduction));
}

double vstar_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                     ArgReduction reduction) {
    check_capacity(n_max, tables, "vstar_partial");
    return blocked_prefix(
        n_max, make_mobius_term<FracKind::sawtooth, LogWeight::on>(alpha, tables, reduction));
}

double w_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                 ArgReduction reduction) {
    if (n_max < 2) throw domain_error("w_partial: n_max must be >= 2 (log N > 0)");
    check_capacity(n_max, tables, "w_partial");
    const double u = u_partial(alpha, n_max, tables, reduction);
    const double v = v_partial(alpha, n_max, tables, reduction);
    return u - v / std::log(static_cast<double>(n_max));
}

double tsum_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables,
                    const PrimePowerList* pp, ArgReduction reduction) {
    check_capacity(n_max, tables, "tsum_partial");
    LambdaKernel kernel(alpha, n_max, tables, pp, reduction, /*weight_by_n=*/true);
    return blocked_prefix(kernel.count_for(n_max), kernel.term);
}

double s_exponential(const Alpha& alpha, int64_t u, const ArithTables& tables,
                     const PrimePowerList* pp, ArgReduction reduction) {
    check_capacity(u, tables, "s_exponential");
    LambdaKernel kernel(alpha, u, tables, pp, reduction, /*weight_by_n=*/false);
    return blocked_prefix(kernel.count_for(u), kernel.term);
}

namespace ref {

double u_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables) {
    check_capacity(n_max, tables, "ref::u_partial");
    auto term = make_mobius_term<FracKind::plain, LogWeight::off>(alpha, tables,
                                                                  ArgReduction::fast);
    KahanSum s;
    for (int64_t i = 0; i < n_max; ++i) s.add(term(i));
    return s.value();
}

double v_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables) {
    check_capacity(n_max, tables, "ref::v_partial");
    auto term = make_mobius_term<FracKind::plain, LogWeight::on>(alpha, tables,
                                                                 ArgReduction::fast);
    KahanSum s;
    for (int64_t i = 0; i < n_max; ++i) s.add(term(i));
    return s.value();
}

double vstar_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables) {
    check_capacity(n_max, tables, "ref::vstar_partial");
    auto term = make_mobius_term<FracKind::sawtooth, LogWeight::on>(alpha, tables,
                                                                    ArgReduction::fast);
    KahanSum s;
    for (int64_t i = 0; i < n_max; ++i) s.add(term(i));
    return s.value();
}

double tsum_partial(const Alpha& alpha, int64_t n_max, const ArithTables& tables) {
    check_capacity(n_max, tables, "ref::tsum_partial");
    LambdaKernel kernel(alpha, n_max, tables, nullptr, ArgReduction::fast, true);
    const int64_t count = kernel.count_for(n_max);
    KahanSum s;
    for (int64_t i = 0; i < count; ++i) s.add(kernel.term(i));
    return s.value();
}

}  // namespace ref

double mobius_log_sum(int64_t n_max, const ArithTables& tables) {
    check_capacity(n_max, tables, "mobius_log_sum");
    const signed char* mob = tables.mobius_table().data();
    return blocked_prefix(n_max, [mob](int64_t i) {
        const int64_t n = i + 1;
        const int m = mob[n];
        if (m == 0) return 0.0;
        return m * std::log(static_cast<double>(n)) / static_cast<double>(n);
    });
}

double mobius_log_sum_multiples(int64_t q, int64_t n_max, const ArithTables& tables) {
    check_capacity(n_max, tables, "mobius_log_sum_multiples");
    if (q < 1) throw domain_error("mobius_log_sum_multiples: q must be >= 1");
    KahanSum s;
    for (int64_t n = q; n <= n_max; n += q) {
        const int m = tables.mobius(n);
        if (m == 0) continue;
        s.add(m * std::log(static_cast<double>(n)) / static_cast<double>(n));
    }
    return s.value();
}

namespace {

std::optional<double> scan_target(SeriesKind kind, const Alpha& alpha) {
    switch (kind) {
        case SeriesKind::U:
        case SeriesKind::W:
            if (alpha.is_rational()) return u_limit(alpha.point());
            return -std::sin(kTwoPi * alpha.numeric()) / kPi;
        case SeriesKind::Tsum:
            if (alpha.is_rational()) return tsum_closed_form(alpha.point()).value;
            return std::nullopt;
        case SeriesKind::Vstar:
            if (alpha.is_rational()) return vstar_limit(alpha.point());
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

}  // namespace

SeriesScan convergence_scan(SeriesKind kind, const Alpha& alpha,
                            std::vector<int64_t> schedule, const ArithTables& tables,
                            ArgReduction reduction) {
    if (schedule.empty()) throw domain_error("convergence_scan: empty schedule");
    for (size_t i = 0; i + 1 < schedule.size(); ++i)
        if (schedule[i] >= schedule[i + 1])
            throw domain_error("convergence_scan: schedule must be strictly increasing");
    if (schedule.front() < 1 || (kind == SeriesKind::W && schedule.front() < 2))
        throw domain_error("convergence_scan: schedule start too small");
    check_capacity(schedule.back(), tables, "convergence_scan");

    SeriesScan scan;
    scan.kind = kind;
    scan.schedule = schedule;

    switch (kind) {
        case SeriesKind::U:
            scan.values = blocked_snapshots(
                schedule, make_mobius_term<FracKind::plain, LogWeight::off>(alpha, tables,
                                                                            reduction));
            break;
        case SeriesKind::V:
            scan.values = blocked_snapshots(
                schedule,
                make_mobius_term<FracKind::plain, LogWeight::on>(alpha, tables, reduction));
            break;
        case SeriesKind::Vstar:
            scan.values = blocked_snapshots(
                schedule,
                make_mobius_term<FracKind::sawtooth, LogWeight::on>(alpha, tables, reduction));
            break;
        case SeriesKind::W: {
            auto u = blocked_snapshots(
                schedule, make_mobius_term<FracKind::plain, LogWeight::off>(alpha, tables,
                                                                            reduction));
            auto v = blocked_snapshots(
                schedule,
                make_mobius_term<FracKind::plain, LogWeight::on>(alpha, tables, reduction));
            scan.values.resize(schedule.size());
            for (size_t i = 0; i < schedule.size(); ++i)
                scan.values[i] = u[i] - v[i] / std::log(static_cast<double>(schedule[i]));
            break;
        }
        case SeriesKind::Tsum:
        case SeriesKind::S: {
            LambdaKernel kernel(alpha, schedule.back(), tables, nullptr, reduction,
                                kind == SeriesKind::Tsum);
            std::vector<int64_t> counts;
            counts.reserve(schedule.size());
            for (int64_t N : schedule) counts.push_back(kernel.count_for(N));
            scan.values = blocked_snapshots(counts, kernel.term);
            break;
        }
    }

    scan.target = scan_target(kind, alpha);
    if (scan.target) {
        scan.errors.resize(scan.values.size());
        for (size_t i = 0; i < scan.values.size(); ++i)
            scan.errors[i] = scan.values[i] - *scan.target;
    }
    return scan;
}

JumpReport jump_probe(const RationalPoint& point, const std::vector<double>& eps_schedule,
                      int64_t n_max, const ArithTables& tables) {
    if (eps_schedule.empty()) throw domain_error("jump_probe: empty eps schedule");
    for (size_t i = 0; i < eps_schedule.size(); ++i) {
        if (eps_schedule[i] <= 0.0)
            throw domain_error("jump_probe: eps values must be positive");
        if (i > 0 && eps_schedule[i] >= eps_schedule[i - 1])
            throw domain_error("jump_probe: eps schedule must be decreasing");
    }
    check_capacity(n_max, tables, "jump_probe");

    PrimePowerList pp = prime_powers(tables, n_max);
    JumpReport report{point, n_max, 0.0, 0.0, {}};
    report.t_at = tsum_partial(Alpha::rational(point), n_max, tables, &pp) / kPi;
    report.conjectured_half_jump = 0.5 * mobius_by_factorization(point.q) /
                                   static_cast<double>(phi_by_factorization(point.q));

    const double at = point.value();
    for (double eps : eps_schedule) {
        JumpRow row{eps, 0.0, 0.0, 0.0};
        row.t_minus = tsum_partial(Alpha::real(at - eps), n_max, tables, &pp) / kPi;
        row.t_plus = tsum_partial(Alpha::real(at + eps), n_max, tables, &pp) / kPi;
        row.avg = 0.5 * (row.t_minus + row.t_plus);
        report.rows.push_back(row);
    }
    return report;
}

MonitorReport boundedness_monitor(SeriesKind kind, const std::vector<Alpha>& grid,
                                  int64_t n_max, const ArithTables& tables) {
    if (kind != SeriesKind::V && kind != SeriesKind::Vstar && kind != SeriesKind::Tsum)
        throw domain_error("boundedness_monitor: kind must be V, Vstar or Tsum");
    if (grid.empty()) throw domain_error("boundedness_monitor: empty grid");
    check_capacity(n_max, tables, "boundedness_monitor");

    PrimePowerList pp;
    if (kind == SeriesKind::Tsum) pp = prime_powers(tables, n_max);

    MonitorReport report{kind, n_max, 0.0, 0.0, std::vector<double>(grid.size(), 0.0)};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t g = 0; g < static_cast<int64_t>(grid.size()); ++g) {
        const Alpha& alpha = grid[g];
        double sup = 0.0;
        KahanSum running;
        if (kind == SeriesKind::Tsum) {
            LambdaKernel kernel(alpha, n_max, tables, &pp, ArgReduction::fast, true);
            const int64_t count = kernel.count_for(n_max);
            for (int64_t i = 0; i < count; ++i) {
                running.add(kernel.term(i));
                sup = std::max(sup, std::abs(running.value()));
            }
            sup /= kPi;  // monitored quantity is T's partial sum
        } else {
            auto step = [&](auto term) {
                for (int64_t i = 0; i < n_max; ++i) {
                    double t = term(i);
                    if (t == 0.0) continue;
                    running.add(t);
                    sup = std::max(sup, std::abs(running.value()));
                }
            };
            if (kind == SeriesKind::V)
                step(make_mobius_term<FracKind::plain, LogWeight::on>(alpha, tables,
                                                                      ArgReduction::fast));
            else
                step(make_mobius_term<FracKind::sawtooth, LogWeight::on>(alpha, tables,
                                                                         ArgReduction::fast));
        }
        report.per_alpha_sup[g] = sup;
    }

    for (size_t g = 0; g < grid.size(); ++g) {
        if (report.per_alpha_sup[g] > report.sup_abs) {
            report.sup_abs = report.per_alpha_sup[g];
            report.argmax_alpha = grid[g].numeric();
        }
    }
    return report;
}

}  // namespace mollsum
