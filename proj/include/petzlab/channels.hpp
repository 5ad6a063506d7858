#pragma once

#include <optional>

#include "petzlab/numcore.hpp"

namespace petzlab {

// Quantum channels in the superoperator representation. Operators are
// column-vectorized, so a map X -> AXB has matrix kron(B^T, A) and the
// Hilbert-Schmidt adjoint is the plain conjugate transpose.

struct CptpReport {
    double cp_residual = 0.0;  // magnitude of the most negative Choi eigenvalue
    double tp_residual = 0.0;  // Frobenius distance of Tr_out(Choi) from the identity
    bool pass = false;
};

class Superoperator {
public:
    Superoperator(int dim, Matrix matrix);
    static Superoperator identity(int dim);

    int dim() const { return dim_; }
    const Matrix& mat() const { return m_; }

    // filled in by is_cptp, so repeated checks of the same map are free
    mutable std::optional<CptpReport> cptp_checked;

private:
    int dim_;
    Matrix m_;
};

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, int d);

Superoperator sandwich_map(const Matrix& left, const Matrix& right);  // X -> left X right
Superoperator kraus_map(const Matrix& k);                             // X -> K X K^dag
Superoperator unitary_map(const Matrix& u);

// Applies the map and polishes the result back into a state: symmetrize,
// clamp eigenvalue dust above -1e-10, renormalize. Trace drift beyond 1e-6
// is a consistency error, as is an eigenvalue below the dust floor.
DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho);

// Raw action on an arbitrary operator, no state validation.
Matrix apply_raw(const Superoperator& s, const Matrix& x);

Superoperator adjoint(const Superoperator& s);
Superoperator compose(const Superoperator& s2, const Superoperator& s1);

// Choi matrix with the input copy as the first tensor factor and the map
// output as the second.
Matrix choi_matrix(const Superoperator& s);
CptpReport is_cptp(const Superoperator& s, double tol);

struct FixedPointResult {
    DensityMatrix state;
    bool unique;
    int multiplicity;
};

// Eigenvalue-1 eigenvector via power iteration on (S+1)/2, started from the
// all-ones vector. Throws if the dominant eigenvalue is not within tol of 1.
FixedPointResult fixed_point(const Superoperator& s, double tol);

// Petz transpose map of s with respect to sigma; sigma and s(sigma) must be
// full rank (eigenvalues above 1e-12).
Superoperator petz_recovery(const Superoperator& s, const DensityMatrix& sigma);

// Rotated Petz map; t = 0 returns the plain Petz map unchanged.
Superoperator rotated_petz(const Superoperator& s, const DensityMatrix& sigma, double t);

struct RecoveryReport {
    double d_drop;
    DensityMatrix recovered_rho;
    bool exact;
};

RecoveryReport recovery_check(const Superoperator& s, const DensityMatrix& rho,
                              const DensityMatrix& sigma);

Matrix partial_trace_first(const Matrix& joint, int d1, int d2);
Matrix partial_trace_second(const Matrix& joint, int d1, int d2);

}  // namespace petzlab
