#pragma once

#include <vector>

#include "petzlab/channels.hpp"
#include "petzlab/lindblad.hpp"
#include "petzlab/numcore.hpp"

namespace petzlab {

// Finite system-bath joint dynamics: exact unitary evolution from a product
// initial state, used to test the correlation bound at the fixed point and
// to probe how the truncated reduced dynamics approaches the weak-coupling
// semigroup.

struct BathModel {
    int levels;
    HermitianOperator h_b;          // bath Hamiltonian, levels x levels
    double beta;
    HermitianOperator interaction;  // acts on the joint d_S * levels space
    double lambda;                  // coupling strength, >= 0
};

// Validates dimensions and signs; the joint space may hold at most 64 levels.
BathModel make_bath(int levels, HermitianOperator h_b, double beta,
                    HermitianOperator interaction, double lambda);

// Equally spaced ladder diag(0, omega, 2*omega, ...).
HermitianOperator harmonic_bath(int levels, double omega);

// Nearest-level flip on the system tensored with a nearest-level hop on the
// bath, scaled so the operator norm is exactly 1.
HermitianOperator ladder_interaction(int d_s, int levels);

Matrix joint_hamiltonian(const HermitianOperator& h_s, const BathModel& bath);

// Full joint state exp(-i t H) (rho_s x gibbs(H_B)) exp(+i t H).
DensityMatrix joint_state(const HermitianOperator& h_s, const BathModel& bath,
                          const DensityMatrix& rho_s, double t_tilde);

// The same evolution with the bath traced out.
DensityMatrix joint_evolve(const HermitianOperator& h_s, const BathModel& bath,
                           const DensityMatrix& rho_s, double t_tilde);

struct CorrelationReport {
    double lhs;       // (1/2) || U G^a U' - G^a ||_1 at the Gibbs product G
    double rhs;       // Tr[G^a] * beta * sqrt(lambda ||interaction||)
    bool pass;        // lhs <= rhs (1 + 1e-9) + 1e-12
    double lhs_full;  // the unhalved trace norm
    double rhs_full;  // its doubled bound
};

CorrelationReport correlation_bound_check(const HermitianOperator& h_s, const BathModel& bath,
                                          double alpha, double t_tilde);

// Trace distance between the interaction-picture reduced state at t/lambda^2
// and the dissipative semigroup at t, one entry per family member. The family
// must share the bath dimension and come in strictly decreasing lambda order;
// a lambda = 0 member compares the untouched initial state. Diagnostic only:
// a finite bath cannot realize the full limit.
std::vector<double> davies_limit_probe(const HermitianOperator& h_s,
                                       const std::vector<BathModel>& family,
                                       const Lindbladian& lb, double t,
                                       const DensityMatrix& rho_s);

}  // namespace petzlab
