#pragma once

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

namespace petzlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Shared tolerances. Eigenvalues in (eig_dust_floor, rank_tol) count as zero
// for logs, square roots and support projectors.
constexpr double herm_reject_tol = 1e-8;
constexpr double eig_dust_floor = -1e-10;
constexpr double trace_tol = 1e-10;
constexpr double rank_tol = 1e-12;

// Dense complex matrix constrained to H = H^dagger. The constructor
// symmetrizes via (A + A^dagger)/2 and rejects inputs whose asymmetry
// exceeds herm_reject_tol in max-entry norm.
class HermitianOperator {
public:
    explicit HermitianOperator(const Matrix& a);
    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& mat() const { return m_; }

private:
    Matrix m_;
};

// Unit-trace positive semidefinite Hermitian matrix. The checked constructor
// verifies trace within trace_tol of 1 and eigenvalues >= eig_dust_floor;
// trusted() skips the spectral check for matrices that are valid by
// construction (Gibbs states, clamped channel outputs).
class DensityMatrix {
public:
    explicit DensityMatrix(const Matrix& rho);
    static DensityMatrix trusted(Matrix rho);
    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& mat() const { return m_; }

private:
    DensityMatrix() = default;
    Matrix m_;
};

struct Spectrum {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns, values(i) <-> vectors.col(i)
};

// Cyclic Jacobi diagonalization of a Hermitian matrix; deterministic sweep
// order, so results are bit-for-bit reproducible on a fixed platform.
// The input is assumed symmetrized; pass through HermitianOperator or
// symmetrize() first for matrices with roundoff asymmetry.
Spectrum eigh(const Matrix& a);
Spectrum eigh(const HermitianOperator& h);

inline Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

// V f(lambda) V^dagger. Throws std::domain_error naming the offending
// eigenvalue if f is non-finite there; `what` names f in the message.
Matrix matfunc(const Matrix& h, const std::function<Complex(double)>& f,
               const std::string& what);
Matrix matfunc(const HermitianOperator& h, const std::function<Complex(double)>& f,
               const std::string& what);

// Sum of singular values. Hermitian and anti-Hermitian inputs take the exact
// |eigenvalue| path; general matrices go through sqrt(eig(M^dagger M)).
double trace_norm(const Matrix& m);
// Largest singular value, same dispatch.
double operator_norm(const Matrix& m);

// e^{-beta H}/Z, computed with the spectrum shifted by its maximum before
// exponentiation so large beta*E never overflows. Full rank by construction.
DensityMatrix gibbs(const HermitianOperator& h, double beta);

// Relative entropy in nats. `infinite` is the explicit flag for
// supp(rho) escaping supp(sigma); `nats` is meaningless in that case.
struct RelEntropy {
    double nats = 0.0;
    bool infinite = false;
};

RelEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double von_neumann_entropy(const DensityMatrix& rho);

// Tr[H rho] + (1/beta) Tr[rho log rho]; beta must be positive.
double free_energy(const DensityMatrix& rho, const HermitianOperator& h, double beta);

// Tr sqrt(sqrt(sigma) rho sqrt(sigma)), clamped into [0,1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

Matrix kron(const Matrix& a, const Matrix& b);
inline Complex hs_inner(const Matrix& a, const Matrix& b) {
    return (a.adjoint() * b).trace();
}
Matrix matrix_unit(int d, int i, int j);

}  // namespace petzlab
