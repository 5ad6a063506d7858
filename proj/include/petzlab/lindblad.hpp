#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "petzlab/channels.hpp"
#include "petzlab/numcore.hpp"

namespace petzlab {

// GKLS dissipator for weighted jump operators: the superoperator matrix of
// rho -> sum_i w_i (K_i rho K_i^dag - {K_i^dag K_i, rho}/2).
Matrix gkls_matrix(const std::vector<std::pair<double, Matrix>>& jumps);

class Lindbladian {
public:
    // Validates Hermiticity preservation, trace annihilation, and (when a
    // fixed point is declared) that it is actually annihilated.
    Lindbladian(Matrix dissipative, HermitianOperator h_eff,
                std::optional<DensityMatrix> declared_fixed_point = std::nullopt);

    int dim() const { return h_eff_.dim(); }
    const Matrix& dissipative() const { return dissipative_; }
    const HermitianOperator& h_eff() const { return h_eff_; }
    const std::optional<DensityMatrix>& declared_fixed_point() const { return fixed_point_; }

    // Superoperator matrix of theta: rho -> [rho, H_eff]; the semigroup
    // generator with the unitary part on is i*theta() + dissipative().
    Matrix theta() const;
    bool unitary_part_is_zero() const;

private:
    Matrix dissipative_;
    HermitianOperator h_eff_;
    std::optional<DensityMatrix> fixed_point_;
};

struct DaviesModel {
    HermitianOperator h_s;
    double beta;
    std::vector<HermitianOperator> coupling_ops;
    std::function<double(double)> rate_function;  // Bohr frequency -> rate
    double gamma0;
};

// The simplest rate profile compatible with detailed balance at inverse
// temperature beta: gamma0 on emission (omega >= 0), Boltzmann-suppressed
// absorption gamma0*exp(beta*omega) below.
std::function<double(double)> default_rate(double beta, double gamma0);

DaviesModel make_davies(HermitianOperator h_s, double beta,
                        std::vector<HermitianOperator> coupling_ops, double gamma0);

Lindbladian davies_generator(const DaviesModel& model);

// The same mode-resolved assembly with the rate table taken at face value:
// no detailed-balance guard and no declared fixed point, so deliberately
// broken rates can be handed to the residual checks.
Lindbladian davies_unchecked(const DaviesModel& model);

// Population transition matrix of the thermalizing qubit at time t; columns
// sum to 1 exactly.
Eigen::Matrix2d qubit_davies(double q, double a, double t);

Superoperator evolve(const Lindbladian& lb, double t, bool include_unitary);

// Detailed-balance residuals of the dissipative generator with respect to
// Omega, maximized over matrix-unit basis pairs. check_qdb uses the KMS
// inner product Tr[Omega^{1/2} A^dag Omega^{1/2} B]; the _alt variant uses
// Tr[Omega A^dag B].
double qdb_residual(const Matrix& generator, const DensityMatrix& omega);
double qdb_alt_residual(const Matrix& generator, const DensityMatrix& omega);
double check_qdb(const Lindbladian& lb, const DensityMatrix& omega);
double check_qdb_alt(const Lindbladian& lb, const DensityMatrix& omega);

double check_ttsfp(const Lindbladian& lb, const DensityMatrix& omega,
                   const std::vector<double>& t_samples);

inline constexpr double mode_tol = 1e-9;

struct Mode {
    double omega;
    Matrix component;
};

struct ModeDecomposition {
    std::vector<Mode> modes;  // ascending in omega
    std::vector<std::string> warnings;
};

ModeDecomposition mode_decompose(const Matrix& a, const DensityMatrix& omega);

double check_mode_preservation(const Lindbladian& lb, const DensityMatrix& omega);

// Max-entry distance between the Petz transpose of the dissipative semigroup
// e^{tL} (with respect to Omega) and the semigroup itself.
double verify_self_recovery(const Lindbladian& lb, const DensityMatrix& omega, double t);

// Max-entry distance between the Petz transpose of e^{i t theta + t L} and
// the unitary-reversed semigroup e^{-i t theta + t L}.
double verify_unitary_reversal(const Lindbladian& lb, const DensityMatrix& omega, double t);

}  // namespace petzlab
