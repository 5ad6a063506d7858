#pragma once

#include <vector>

#include "petzlab/lindblad.hpp"
#include "petzlab/parallel.hpp"

namespace petzlab {

// Entropy-production bounds along thermalizing semigroups: the free-energy
// drop on the left, recovery-map divergences on the right.

struct QubitFamilyParams {
    double q;   // equilibrium population of the first level, in (0,1)
    double p0;  // initial population of the first level, in (0,1)
    double a;   // population relaxation rate, > 0
};

// Davies qubit in the basis where the fixed point is diag(q, 1-q); the
// generator's relaxation rate is exactly params.a.
Lindbladian qubit_family_generator(const QubitFamilyParams& params);
DensityMatrix qubit_family_initial(const QubitFamilyParams& params);

double entropy_production(const DensityMatrix& rho0, const DensityMatrix& rhot,
                          const DensityMatrix& tau);

struct Lemma1Report {
    double lhs;       // beta*(F(0) - F(t)) as a divergence difference
    double rhs_petz;  // D(rho0 || recover(evolve(rho0)))
    double gap;       // lhs - rhs_petz
    bool rhs_infinite;
};

Lemma1Report lemma1_bound(const Lindbladian& lb, const DensityMatrix& rho0, double t);

struct BoundScanResult {
    std::vector<double> t_grid;
    std::vector<double> lhs;
    std::vector<double> k_list;
    std::vector<std::vector<double>> rhs;      // rhs[k index][time index]
    std::vector<std::vector<bool>> saturated;  // |lhs - rhs| < 1e-10, reported not sign-compared
    std::vector<double> d_to_fixed;
};

// LHS follows the physical semigroup (unitary part included); the k*t
// comparison states always evolve under the dissipative part alone.
BoundScanResult theorem1_scan(const Lindbladian& lb, const DensityMatrix& rho0,
                              const std::vector<double>& t_grid,
                              const std::vector<double>& k_list, Exec exec = Exec::parallel);

// 60 logarithmically spaced times spanning [1e-3, 50] / gamma0.
std::vector<double> default_scan_grid(double gamma0);

// Exact bound gap for the classical qubit family at x = e^{-At}, comparing
// the entropy production against D(p0 || p(k t)).
double g_function(double x, double k, const QubitFamilyParams& params);

struct SpohnReport {
    double rate;         // first_term + second_term; +infinity when divergent
    double first_term;   // Tr[L(rho)(log tau - log rho)] on the support
    double second_term;  // Tr[L(rho) P_rho]; zero whenever supports nest
    bool divergent;
};

SpohnReport spohn_rate(const Lindbladian& lb, const DensityMatrix& rho);

struct InfinitesimalReport {
    std::vector<double> quotients;  // D(rho || rho(2h)) / h per requested h
    double slope;                   // least-squares slope of quotient vs h
    double intercept;               // fitted h -> 0 limit
    bool nonvanishing_limit;
};

InfinitesimalReport infinitesimal_rhs_limit(const Lindbladian& lb, const DensityMatrix& rho,
                                            const std::vector<double>& h_list);

struct FidelityReport {
    double lhs;
    double rhs_fid;  // -2 log F(rho0, rho(2t))
};

FidelityReport fidelity_bound(const Lindbladian& lb, const DensityMatrix& rho0, double t);

struct QuadratureSpec {
    double t_max = 5.0;
    int nodes = 201;
};

struct UniversalReport {
    double lhs;                // D(rho||sigma) - D(S rho||S sigma)
    double rhs_int;            // quadrature of -2 p(t) log F(rho, rotated recovery)
    double tail_mass;          // probability mass beyond the truncation
    double truncation_budget;  // tail_mass times the largest sampled integrand
    QuadratureSpec quad;
};

UniversalReport universal_bound_integral(const Superoperator& s, const DensityMatrix& sigma,
                                         const DensityMatrix& rho,
                                         const QuadratureSpec& quad = {},
                                         Exec exec = Exec::parallel);

// The same trapezoid applied to the density alone; near 1 for honest specs.
double quadrature_normalization(const QuadratureSpec& quad);

}  // namespace petzlab
