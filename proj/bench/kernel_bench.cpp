// Wall-clock comparison of the serial reference kernels against the
// blocked OpenMP kernels, plus the sweep and quadrature cores.
//
//   ./mollsum-bench [n_max]     (default 5e6)

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mollsum/arith.hpp"
#include "mollsum/criterion.hpp"
#include "mollsum/series.hpp"

using namespace mollsum;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class Fn>
double time_of(const Fn& fn, double* result) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        double t0 = now_seconds();
        *result = fn();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

void row(const char* name, double serial_s, double parallel_s, double serial_v,
         double parallel_v) {
    std::printf("%-22s serial %8.3fs   blocked %8.3fs   speedup %5.2fx   |diff| %.2e\n",
                name, serial_s, parallel_s, serial_s / parallel_s,
                std::abs(serial_v - parallel_v));
}

}  // namespace

int main(int argc, char** argv) {
    int64_t n_max = 5'000'000;
    if (argc > 1) n_max = std::strtoll(argv[1], nullptr, 10);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d, n_max = %lld\n", omp_get_max_threads(),
                static_cast<long long>(n_max));
#else
    std::printf("built without OpenMP, n_max = %lld\n", static_cast<long long>(n_max));
#endif

    ArithTables tables(n_max);
    Alpha alpha = Alpha::real(kSqrt2Minus1);

    double sv = 0.0, pv = 0.0;
    double st = time_of([&] { return ref::u_partial(alpha, n_max, tables); }, &sv);
    double pt = time_of([&] { return u_partial(alpha, n_max, tables); }, &pv);
    row("u_partial", st, pt, sv, pv);

    st = time_of([&] { return ref::v_partial(alpha, n_max, tables); }, &sv);
    pt = time_of([&] { return v_partial(alpha, n_max, tables); }, &pv);
    row("v_partial", st, pt, sv, pv);

    st = time_of([&] { return ref::vstar_partial(alpha, n_max, tables); }, &sv);
    pt = time_of([&] { return vstar_partial(alpha, n_max, tables); }, &pv);
    row("vstar_partial", st, pt, sv, pv);

    st = time_of([&] { return ref::tsum_partial(alpha, n_max, tables); }, &sv);
    pt = time_of([&] { return tsum_partial(alpha, n_max, tables); }, &pv);
    row("tsum_partial", st, pt, sv, pv);

    // Sweep and pairs cores (parallelism lives across pairs).
    if (n_max >= 1000) {
        MollifierCoeffs coeffs = mollifier_coeffs(64, tables);
        double t0 = now_seconds();
        PiecewiseIntegral p = rhs_piecewise(coeffs, 2000.0, kDefaultBreakpointCap, false);
        double sweep_s = now_seconds() - t0;
        t0 = now_seconds();
        TailedValue pairs = rhs_via_pairs(coeffs, 2000.0, false);
        double pairs_s = now_seconds() - t0;
        std::printf("%-22s sweep  %8.3fs   pairs   %8.3fs   |diff| %.2e\n",
                    "criterion N=64", sweep_s, pairs_s,
                    std::abs(p.finite_value() - pairs.value));
    }
    return 0;
}
