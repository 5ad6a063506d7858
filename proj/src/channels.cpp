#include "petzlab/channels.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace petzlab {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void require_dim(const Superoperator& s, int d, const char* who) {
    if (s.dim() != d)
        throw std::invalid_argument(std::string(who) + ": dimension mismatch (map is " +
                                    std::to_string(s.dim()) + ", operand is " +
                                    std::to_string(d) + ")");
}

// Checks full rank and hands back the spectrum for the fractional powers.
Spectrum full_rank_spectrum(const Matrix& m, const char* role) {
    const Spectrum s = eigh(m);
    const double smallest = s.values.minCoeff();
    if (smallest <= rank_tol)
        throw std::invalid_argument(std::string("petz_recovery: ") + role +
                                    " is rank deficient, smallest eigenvalue " + fmt(smallest));
    return s;
}

Matrix spectral_power(const Spectrum& s, const std::function<Complex(double)>& f) {
    Vector w(s.values.size());
    for (int i = 0; i < s.values.size(); ++i) w(i) = f(s.values(i));
    return s.vectors * w.asDiagonal() * s.vectors.adjoint();
}

}  // namespace

Superoperator::Superoperator(int dim, Matrix matrix) : dim_(dim), m_(std::move(matrix)) {
    if (dim_ < 1) throw std::invalid_argument("Superoperator: dimension must be positive");
    const auto want = static_cast<Eigen::Index>(dim_) * dim_;
    if (m_.rows() != want || m_.cols() != want)
        throw std::invalid_argument("Superoperator: matrix must be " + std::to_string(want) +
                                    "x" + std::to_string(want) + ", got " +
                                    std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
}

Superoperator Superoperator::identity(int dim) {
    return Superoperator(dim, Matrix::Identity(static_cast<Eigen::Index>(dim) * dim,
                                               static_cast<Eigen::Index>(dim) * dim));
}

Vector vec(const Matrix& x) {
    return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, int d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

Superoperator sandwich_map(const Matrix& left, const Matrix& right) {
    if (left.rows() != left.cols() || right.rows() != right.cols() ||
        left.rows() != right.rows())
        throw std::invalid_argument("sandwich_map: factors must be square and equal-sized");
    return Superoperator(static_cast<int>(left.rows()), kron(right.transpose(), left));
}

Superoperator kraus_map(const Matrix& k) {
    if (k.rows() != k.cols())
        throw std::invalid_argument("kraus_map: operator must be square");
    return Superoperator(static_cast<int>(k.rows()), kron(k.conjugate(), k));
}

Superoperator unitary_map(const Matrix& u) {
    return kraus_map(u);
}

Matrix apply_raw(const Superoperator& s, const Matrix& x) {
    require_dim(s, static_cast<int>(x.rows()), "apply");
    return unvec(s.mat() * vec(x), s.dim());
}

DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho) {
    const Matrix out = symmetrize(apply_raw(s, rho.mat()));
    const double tr = out.trace().real();
    if (std::abs(tr - 1.0) > 1e-6)
        throw std::runtime_error("apply: output trace " + fmt(tr) +
                                 " deviates from 1 beyond 1e-6");
    const Spectrum sp = eigh(out);
    RealVector w = sp.values;
    for (int i = 0; i < w.size(); ++i) {
        if (w(i) < eig_dust_floor)
            throw std::runtime_error("apply: output eigenvalue " + fmt(w(i)) +
                                     " below the clamping floor, map is not positive here");
        if (w(i) < 0.0) w(i) = 0.0;
    }
    w /= w.sum();
    const Matrix polished =
        sp.vectors * w.cast<Complex>().asDiagonal() * sp.vectors.adjoint();
    return DensityMatrix::trusted(symmetrize(polished));
}

Superoperator adjoint(const Superoperator& s) {
    return Superoperator(s.dim(), s.mat().adjoint());
}

Superoperator compose(const Superoperator& s2, const Superoperator& s1) {
    require_dim(s2, s1.dim(), "compose");
    return Superoperator(s1.dim(), s2.mat() * s1.mat());
}

Matrix choi_matrix(const Superoperator& s) {
    const int d = s.dim();
    Matrix j = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj) {
            const Matrix out = unvec(s.mat().col(static_cast<Eigen::Index>(jj) * d + i), d);
            j += kron(matrix_unit(d, i, jj), out);
        }
    return j;
}

CptpReport is_cptp(const Superoperator& s, double tol) {
    const Matrix j = choi_matrix(s);
    const Spectrum sp = eigh(symmetrize(j));
    CptpReport report;
    report.cp_residual = std::max(0.0, -sp.values.minCoeff());
    report.tp_residual =
        (partial_trace_second(j, s.dim(), s.dim()) - Matrix::Identity(s.dim(), s.dim())).norm();
    report.pass = report.cp_residual <= tol && report.tp_residual <= tol;
    s.cptp_checked = report;
    return report;
}

FixedPointResult fixed_point(const Superoperator& s, double tol) {
    const int d = s.dim();
    const Matrix& m = s.mat();
    Vector w = Vector::Ones(static_cast<Eigen::Index>(d) * d);
    w /= w.norm();

    const int cap = 100000;
    double step = 1.0;
    for (int iter = 0; iter < cap && step > 1e-12; ++iter) {
        Vector next = 0.5 * (m * w + w);
        const double len = next.norm();
        if (len < 1e-300)
            throw std::runtime_error("fixed_point: iteration collapsed to zero");
        next /= len;
        const Complex overlap = w.dot(next);
        if (std::abs(overlap) > 0.0) next *= std::conj(overlap) / std::abs(overlap);
        step = (next - w).norm();
        w = next;
    }

    const Complex rayleigh = w.dot(m * w);
    if (std::abs(rayleigh - Complex(1.0, 0.0)) > tol)
        throw std::runtime_error("fixed_point: no eigenvalue within " + fmt(tol) +
                                 " of 1, nearest Rayleigh quotient " + fmt(rayleigh.real()) +
                                 (rayleigh.imag() >= 0 ? "+" : "") + fmt(rayleigh.imag()) + "i");

    Matrix x = symmetrize(unvec(w, d));
    const double tr = x.trace().real();
    if (std::abs(tr) < 1e-12)
        throw std::runtime_error("fixed_point: fixed operator is traceless, not a state");
    x /= tr;

    const Spectrum sp = eigh(x);
    RealVector ev = sp.values;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < eig_dust_floor)
            throw std::runtime_error("fixed_point: fixed operator has eigenvalue " +
                                     fmt(ev(i)) + ", not a state");
        if (ev(i) < 0.0) ev(i) = 0.0;
    }
    ev /= ev.sum();
    const Matrix state = sp.vectors * ev.cast<Complex>().asDiagonal() * sp.vectors.adjoint();

    Eigen::ComplexEigenSolver<Matrix> es(m, false);
    int multiplicity = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - Complex(1.0, 0.0)) <= tol) ++multiplicity;
    if (multiplicity == 0) multiplicity = 1;  // power iteration already certified one

    return FixedPointResult{DensityMatrix::trusted(symmetrize(state)), multiplicity <= 1,
                            multiplicity};
}

Superoperator petz_recovery(const Superoperator& s, const DensityMatrix& sigma) {
    require_dim(s, sigma.dim(), "petz_recovery");
    const Spectrum ssig = full_rank_spectrum(sigma.mat(), "reference state");
    const Matrix image = symmetrize(apply_raw(s, sigma.mat()));
    const Spectrum simg = full_rank_spectrum(image, "image of the reference state");

    const Matrix root = spectral_power(ssig, [](double x) { return Complex(std::sqrt(x), 0.0); });
    const Matrix inv_root =
        spectral_power(simg, [](double x) { return Complex(1.0 / std::sqrt(x), 0.0); });

    const Matrix p = kron(root.transpose(), root) * s.mat().adjoint() *
                     kron(inv_root.transpose(), inv_root);
    return Superoperator(s.dim(), p);
}

Superoperator rotated_petz(const Superoperator& s, const DensityMatrix& sigma, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("rotated_petz: t must be finite");
    Superoperator petz = petz_recovery(s, sigma);
    if (t == 0.0) return petz;

    const Spectrum ssig = full_rank_spectrum(sigma.mat(), "reference state");
    const Matrix image = symmetrize(apply_raw(s, sigma.mat()));
    const Spectrum simg = full_rank_spectrum(image, "image of the reference state");

    const auto power_it = [](const Spectrum& sp, double tt) {
        return spectral_power(sp, [tt](double x) {
            return std::exp(Complex(0.0, tt * std::log(x)));
        });
    };

    const Matrix sig_plus = power_it(ssig, t);    // sigma^{it}
    const Matrix sig_minus = power_it(ssig, -t);  // sigma^{-it}
    const Matrix img_plus = power_it(simg, t);
    const Matrix img_minus = power_it(simg, -t);

    const Matrix outer = kron(sig_minus.transpose(), sig_plus);
    const Matrix inner = kron(img_plus.transpose(), img_minus);
    return Superoperator(s.dim(), outer * petz.mat() * inner);
}

RecoveryReport recovery_check(const Superoperator& s, const DensityMatrix& rho,
                              const DensityMatrix& sigma) {
    const Superoperator petz = petz_recovery(s, sigma);
    const DensityMatrix mapped = apply(s, rho);
    const RelEntropy before = relative_entropy(rho, sigma);
    const RelEntropy after = relative_entropy(mapped, apply(s, sigma));
    if (before.infinite || after.infinite)
        throw std::runtime_error("recovery_check: divergent relative entropy despite full-rank "
                                 "reference");
    const double d_drop = before.nats - after.nats;
    DensityMatrix recovered = apply(petz, mapped);
    return RecoveryReport{d_drop, std::move(recovered), d_drop < 1e-9};
}

Matrix partial_trace_first(const Matrix& joint, int d1, int d2) {
    Matrix out = Matrix::Zero(d2, d2);
    for (int k = 0; k < d1; ++k)
        out += joint.block(static_cast<Eigen::Index>(k) * d2, static_cast<Eigen::Index>(k) * d2,
                           d2, d2);
    return out;
}

Matrix partial_trace_second(const Matrix& joint, int d1, int d2) {
    Matrix out = Matrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j) {
            Complex acc(0.0, 0.0);
            for (int k = 0; k < d2; ++k)
                acc += joint(static_cast<Eigen::Index>(i) * d2 + k,
                             static_cast<Eigen::Index>(j) * d2 + k);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace petzlab
