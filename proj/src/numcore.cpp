#include "petzlab/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace petzlab {

namespace {

double max_asymmetry(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Eigenvalue clamp shared by log/sqrt consumers: dust in
// (eig_dust_floor, rank_tol) counts as exactly zero.
double clamp_eig(double x) { return x < rank_tol ? 0.0 : x; }

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument("HermitianOperator: matrix must be square and nonempty");
    const double asym = max_asymmetry(a);
    if (asym > herm_reject_tol)
        throw std::invalid_argument("HermitianOperator: asymmetry " + fmt(asym) +
                                    " exceeds " + fmt(herm_reject_tol));
    m_ = symmetrize(a);
}

DensityMatrix::DensityMatrix(const Matrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0)
        throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
    const double asym = max_asymmetry(rho);
    if (asym > herm_reject_tol)
        throw std::invalid_argument("DensityMatrix: asymmetry " + fmt(asym) +
                                    " exceeds " + fmt(herm_reject_tol));
    m_ = symmetrize(rho);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > trace_tol)
        throw std::invalid_argument("DensityMatrix: trace " + fmt(tr) +
                                    " deviates from 1 beyond " + fmt(trace_tol));
    const Spectrum s = eigh(m_);
    if (s.values(0) < eig_dust_floor)
        throw std::invalid_argument("DensityMatrix: eigenvalue " + fmt(s.values(0)) +
                                    " below " + fmt(eig_dust_floor));
}

DensityMatrix DensityMatrix::trusted(Matrix rho) {
    DensityMatrix out;
    out.m_ = std::move(rho);
    return out;
}

Spectrum eigh(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    Matrix m = a;
    Matrix v = Matrix::Identity(n, n);

    if (n > 1) {
        const double scale = m.norm();
        const double stop = 1e-15 * std::max(scale, 1e-300);
        const int max_sweeps = 100;
        int sweep = 0;
        for (; sweep < max_sweeps; ++sweep) {
            double off = 0.0;
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(m(p, q));
            off = std::sqrt(off);
            if (off <= stop) break;

            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const Complex apq = m(p, q);
                    const double beta = std::abs(apq);
                    if (beta <= 1e-18 * std::max(scale, 1e-300)) continue;
                    // Phase-reduce the pivot to a real symmetric 2x2 block,
                    // then the classical Schur pair (Golub & Van Loan 8.4).
                    const Complex phase = apq / beta;
                    const double app = m(p, p).real();
                    const double aqq = m(q, q).real();
                    const double tau = (aqq - app) / (2.0 * beta);
                    double t;
                    if (tau >= 0)
                        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                    else
                        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    // Unitary G: G(p,p)=c, G(p,q)=s, G(q,p)=-s*conj(phase),
                    // G(q,q)=c*conj(phase); apply m <- G^dagger m G, v <- v G.
                    const Complex gqp = -s * std::conj(phase);
                    const Complex gqq = c * std::conj(phase);
                    for (int r = 0; r < n; ++r) {
                        const Complex mp = m(r, p), mq = m(r, q);
                        m(r, p) = c * mp + gqp * mq;
                        m(r, q) = s * mp + gqq * mq;
                    }
                    for (int col = 0; col < n; ++col) {
                        const Complex mp = m(p, col), mq = m(q, col);
                        m(p, col) = c * mp + std::conj(gqp) * mq;
                        m(q, col) = s * mp + std::conj(gqq) * mq;
                    }
                    for (int r = 0; r < n; ++r) {
                        const Complex vp = v(r, p), vq = v(r, q);
                        v(r, p) = c * vp + gqp * vq;
                        v(r, q) = s * vp + gqq * vq;
                    }
                    m(p, q) = 0.0;
                    m(q, p) = 0.0;
                }
            }
        }
        if (sweep == max_sweeps) {
            double off = 0.0;
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(m(p, q));
            throw std::runtime_error("eigh: Jacobi sweeps exhausted, off-diagonal residual " +
                                     fmt(std::sqrt(off)));
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return m(i, i).real() < m(j, j).real(); });

    Spectrum out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.values(i) = m(idx[i], idx[i]).real();
        out.vectors.col(i) = v.col(idx[i]);
    }
    return out;
}

Spectrum eigh(const HermitianOperator& h) { return eigh(h.mat()); }

Matrix matfunc(const Matrix& h, const std::function<Complex(double)>& f,
               const std::string& what) {
    const Spectrum s = eigh(h);
    const int n = static_cast<int>(h.rows());
    Vector fv(n);
    for (int i = 0; i < n; ++i) {
        const Complex y = f(s.values(i));
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
            throw std::domain_error("matfunc: " + what + " non-finite at eigenvalue " +
                                    fmt(s.values(i)));
        fv(i) = y;
    }
    return s.vectors * fv.asDiagonal() * s.vectors.adjoint();
}

Matrix matfunc(const HermitianOperator& h, const std::function<Complex(double)>& f,
               const std::string& what) {
    return matfunc(h.mat(), f, what);
}

namespace {

enum class Symmetry { hermitian, anti_hermitian, general };

Symmetry classify(const Matrix& m) {
    const double scale = std::max(m.norm(), 1e-300);
    if ((m - m.adjoint()).norm() <= 1e-12 * scale) return Symmetry::hermitian;
    if ((m + m.adjoint()).norm() <= 1e-12 * scale) return Symmetry::anti_hermitian;
    return Symmetry::general;
}

RealVector singular_values(const Matrix& m) {
    switch (classify(m)) {
        case Symmetry::hermitian:
            return eigh(symmetrize(m)).values.cwiseAbs();
        case Symmetry::anti_hermitian:
            // i*M is Hermitian when M is anti-Hermitian
            return eigh(symmetrize(Complex(0, 1) * m)).values.cwiseAbs();
        case Symmetry::general: {
            const Spectrum s = eigh(symmetrize(m.adjoint() * m));
            return s.values.cwiseMax(0.0).cwiseSqrt();
        }
    }
    return {};
}

}  // namespace

double trace_norm(const Matrix& m) { return singular_values(m).sum(); }

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m).maxCoeff();
}

DensityMatrix gibbs(const HermitianOperator& h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("gibbs: beta must be finite and positive, got " + fmt(beta));
    const Spectrum s = eigh(h);
    const double emin = s.values.minCoeff();
    RealVector w = (-beta * (s.values.array() - emin)).exp();
    w /= w.sum();
    Matrix rho = s.vectors * w.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    return DensityMatrix::trusted(symmetrize(rho));
}

RelEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    const Spectrum sr = eigh(rho.mat());
    const Spectrum ss = eigh(sigma.mat());

    double tr_rho_log_rho = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        const double r = clamp_eig(sr.values(i));
        if (r > 0.0) tr_rho_log_rho += r * std::log(r);
    }

    double tr_rho_log_sigma = 0.0;
    double mass_outside = 0.0;
    for (int i = 0; i < sigma.dim(); ++i) {
        const double si = clamp_eig(ss.values(i));
        const double w =
            std::max(0.0, (ss.vectors.col(i).adjoint() * rho.mat() * ss.vectors.col(i))(0).real());
        if (si > 0.0)
            tr_rho_log_sigma += w * std::log(si);
        else
            mass_outside += w;
    }
    if (mass_outside > rank_tol) return {0.0, true};
    return {tr_rho_log_rho - tr_rho_log_sigma, false};
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Spectrum s = eigh(rho.mat());
    double ent = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        const double r = clamp_eig(s.values(i));
        if (r > 0.0) ent -= r * std::log(r);
    }
    return ent;
}

double free_energy(const DensityMatrix& rho, const HermitianOperator& h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("free_energy: beta must be finite and positive, got " +
                                    fmt(beta));
    if (rho.dim() != h.dim()) throw std::invalid_argument("free_energy: dimension mismatch");
    const double energy = (h.mat() * rho.mat()).trace().real();
    return energy - von_neumann_entropy(rho) / beta;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    const Matrix sqrt_sigma =
        matfunc(sigma.mat(), [](double x) { return Complex(std::sqrt(clamp_eig(x)), 0.0); },
                "sqrt");
    const Matrix m = symmetrize(sqrt_sigma * rho.mat() * sqrt_sigma);
    const Spectrum s = eigh(m);
    double f = 0.0;
    for (int i = 0; i < rho.dim(); ++i) f += std::sqrt(std::max(0.0, s.values(i)));
    return std::clamp(f, 0.0, 1.0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix matrix_unit(int d, int i, int j) {
    Matrix e = Matrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

}  // namespace petzlab
