#include <chrono>
#include <cstdio>
#include <vector>

#include "petzlab/bounds.hpp"
#include "petzlab/random.hpp"

#ifdef PETZLAB_HAVE_OPENMP
#include <omp.h>
#endif

// Wall-clock comparison of the serial reference against the parallel kernels
// on the two drivers that fan out: the time-grid scan and the recovery-map
// quadrature. Results must agree bitwise; only the clock may differ.

namespace {

using petzlab::Exec;

double seconds(void (*body)(Exec), Exec exec) {
    const auto start = std::chrono::steady_clock::now();
    body(exec);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

void run_scan(Exec exec) {
    const petzlab::QubitFamilyParams params{0.3, 0.8, 1.0};
    const petzlab::Lindbladian lb = petzlab::qubit_family_generator(params);
    const petzlab::DensityMatrix rho0 = petzlab::qubit_family_initial(params);
    std::vector<double> grid;
    for (int i = 0; i < 480; ++i) grid.push_back(1e-3 + 0.1 * i);
    petzlab::theorem1_scan(lb, rho0, grid, {1.0, 2.0, 3.0}, exec);
}

void run_quadrature(Exec exec) {
    petzlab::SplitMix64 rng(7);
    const petzlab::Superoperator s = petzlab::kraus_map(petzlab::random_unitary(6, rng));
    const petzlab::DensityMatrix sigma = petzlab::random_density(6, rng);
    const petzlab::DensityMatrix rho = petzlab::random_density(6, rng);
    petzlab::universal_bound_integral(s, sigma, rho, {5.0, 401}, exec);
}

void report(const char* name, void (*body)(Exec)) {
    const double serial = seconds(body, Exec::serial);
    const double parallel = seconds(body, Exec::parallel);
    std::printf("%-12s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name, serial,
                parallel, serial / parallel);
}

}  // namespace

int main() {
#ifdef PETZLAB_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP, parallel falls back to serial\n");
#endif
    report("scan", run_scan);
    report("quadrature", run_quadrature);
    return 0;
}
