#include "petzlab/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
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

Matrix expm(const Matrix& g) {
    Eigen::ComplexEigenSolver<Matrix> es(g);
    if (es.info() == Eigen::Success) {
        const Matrix& v = es.eigenvectors();
        const Eigen::JacobiSVD<Matrix> svd(v);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        if (smin > 0.0 && smax / smin < 1e8) {
            Vector ew(es.eigenvalues().size());
            for (int i = 0; i < ew.size(); ++i) ew(i) = std::exp(es.eigenvalues()(i));
            return es.eigenvectors() * ew.asDiagonal() * es.eigenvectors().inverse();
        }
    }

    // scaling and squaring with a plain Taylor series; the generator
    // matrices here are small, so simplicity beats Pade machinery
    const double nrm = g.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const Matrix m = g / std::exp2(squarings);
    Matrix term = Matrix::Identity(g.rows(), g.cols());
    Matrix sum = term;
    for (int k = 1; k <= 200; ++k) {
        term = (term * m) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-12) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

Spectrum full_rank_spectrum(const DensityMatrix& omega, const char* who) {
    const Spectrum s = eigh(omega.mat());
    const double smallest = s.values.minCoeff();
    if (smallest <= rank_tol)
        throw std::invalid_argument(std::string(who) +
                                    ": Omega is rank deficient, smallest eigenvalue " +
                                    fmt(smallest));
    return s;
}

// Shared core of the two detailed-balance checks: the inner product is
// Tr[w1 A^dag w2 B], and the residual is the worst asymmetry of the pairing
// with L^dag over all matrix-unit pairs.
double balance_residual(const Matrix& generator, const DensityMatrix& omega, const Matrix& w1,
                        const Matrix& w2) {
    const int d = omega.dim();
    if (generator.rows() != static_cast<Eigen::Index>(d) * d || generator.rows() != generator.cols())
        throw std::invalid_argument("detailed balance check: generator is " +
                                    std::to_string(generator.rows()) + "x" +
                                    std::to_string(generator.cols()) + ", state dimension is " +
                                    std::to_string(d));
    const Matrix ld = generator.adjoint();

    std::vector<Matrix> lhs(static_cast<size_t>(d) * d);  // w2 * L^dag(E_e) * w1
    std::vector<Matrix> rhs(static_cast<size_t>(d) * d);  // w1 * L^dag(E_e)^dag * w2
    for (int e = 0; e < d * d; ++e) {
        const int p = e % d;
        const int q = e / d;
        const Matrix t = unvec(ld * vec(matrix_unit(d, p, q)), d);
        lhs[static_cast<size_t>(e)] = w2 * t * w1;
        rhs[static_cast<size_t>(e)] = w1 * t.adjoint() * w2;
    }

    double worst = 0.0;
    for (int i = 0; i < d * d; ++i) {
        const int pi = i % d;
        const int qi = i / d;
        for (int j = 0; j < d * d; ++j) {
            const int rj = j % d;
            const int sj = j / d;
            const Complex a = lhs[static_cast<size_t>(j)](pi, qi);
            const Complex b = rhs[static_cast<size_t>(i)](sj, rj);
            worst = std::max(worst, std::abs(a - b));
        }
    }
    return worst;
}

struct BohrGroup {
    double omega;
    std::vector<std::pair<int, int>> pairs;  // (k, l) with E_l - E_k = omega
};

std::vector<BohrGroup> bohr_groups(const RealVector& energies, const char* who) {
    struct Entry {
        double w;
        int k, l;
    };
    std::vector<Entry> entries;
    const int d = static_cast<int>(energies.size());
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) entries.push_back({energies(l) - energies(k), k, l});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.w < b.w; });

    std::vector<BohrGroup> groups;
    for (const Entry& e : entries) {
        if (!groups.empty() && e.w - groups.back().omega <= 1e-10) {
            groups.back().pairs.emplace_back(e.k, e.l);
            continue;
        }
        if (!groups.empty() && e.w - groups.back().omega <= 1e-9)
            throw std::invalid_argument(std::string(who) + ": Bohr frequencies " +
                                        fmt(groups.back().omega) + " and " + fmt(e.w) +
                                        " collide inside the 1e-9 separation tolerance");
        groups.push_back(BohrGroup{e.w, {{e.k, e.l}}});
    }
    return groups;
}

}  // namespace

Matrix gkls_matrix(const std::vector<std::pair<double, Matrix>>& jumps) {
    if (jumps.empty()) throw std::invalid_argument("gkls_matrix: no jump operators");
    const Eigen::Index d = jumps.front().second.rows();
    const Matrix id = Matrix::Identity(d, d);
    Matrix gen = Matrix::Zero(d * d, d * d);
    for (const auto& [w, k] : jumps) {
        if (k.rows() != d || k.cols() != d)
            throw std::invalid_argument("gkls_matrix: jump operators must be square and "
                                        "equal-sized");
        const Matrix kk = k.adjoint() * k;
        gen += w * (kron(k.conjugate(), k) -
                    0.5 * (kron(id, kk) + kron(kk.transpose(), id)));
    }
    return gen;
}

Lindbladian::Lindbladian(Matrix dissipative, HermitianOperator h_eff,
                         std::optional<DensityMatrix> declared_fixed_point)
    : dissipative_(std::move(dissipative)),
      h_eff_(std::move(h_eff)),
      fixed_point_(std::move(declared_fixed_point)) {
    const int d = h_eff_.dim();
    const auto want = static_cast<Eigen::Index>(d) * d;
    if (dissipative_.rows() != want || dissipative_.cols() != want)
        throw std::invalid_argument("Lindbladian: generator must be " + std::to_string(want) +
                                    "x" + std::to_string(want) + " to match H_eff");
    if (fixed_point_ && fixed_point_->dim() != d)
        throw std::invalid_argument("Lindbladian: declared fixed point dimension mismatch");

    const double scale = std::max(1.0, dissipative_.cwiseAbs().maxCoeff());
    std::vector<Matrix> images(static_cast<size_t>(d) * d);
    double trace_res = 0.0;
    for (int e = 0; e < d * d; ++e) {
        const Matrix le = unvec(dissipative_ * vec(matrix_unit(d, e % d, e / d)), d);
        trace_res = std::max(trace_res, std::abs(le.trace()));
        images[static_cast<size_t>(e)] = le;
    }
    if (trace_res > 1e-10 * scale)
        throw std::invalid_argument("Lindbladian: generator does not annihilate traces, "
                                    "residual " + fmt(trace_res));

    double herm_res = 0.0;
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            const Matrix& of_unit = images[static_cast<size_t>(q * d + p)];      // L(|p><q|)
            const Matrix& of_dagger = images[static_cast<size_t>(p * d + q)];    // L(|q><p|)
            herm_res = std::max(herm_res,
                                (of_dagger - of_unit.adjoint()).cwiseAbs().maxCoeff());
        }
    if (herm_res > 1e-10 * scale)
        throw std::invalid_argument("Lindbladian: generator does not preserve Hermiticity, "
                                    "residual " + fmt(herm_res));

    if (fixed_point_) {
        const double fp_res = trace_norm(unvec(dissipative_ * vec(fixed_point_->mat()), d));
        if (fp_res > 1e-9)
            throw std::invalid_argument("Lindbladian: declared fixed point is not annihilated, "
                                        "|L(Omega)|_1 = " + fmt(fp_res));
        const Matrix comm = h_eff_.mat() * fixed_point_->mat() - fixed_point_->mat() * h_eff_.mat();
        if (comm.norm() > 1e-10)
            throw std::invalid_argument("Lindbladian: H_eff does not commute with the declared "
                                        "fixed point, residual " + fmt(comm.norm()));
    }
}

Matrix Lindbladian::theta() const {
    const int d = dim();
    const Matrix id = Matrix::Identity(d, d);
    return kron(h_eff_.mat().transpose(), id) - kron(id, h_eff_.mat());
}

bool Lindbladian::unitary_part_is_zero() const {
    return h_eff_.mat().cwiseAbs().maxCoeff() == 0.0;
}

std::function<double(double)> default_rate(double beta, double gamma0) {
    return [beta, gamma0](double w) { return w >= 0.0 ? gamma0 : gamma0 * std::exp(beta * w); };
}

DaviesModel make_davies(HermitianOperator h_s, double beta,
                        std::vector<HermitianOperator> coupling_ops, double gamma0) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("make_davies: beta must be finite and positive, got " +
                                    fmt(beta));
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0))
        throw std::invalid_argument("make_davies: gamma0 must be finite and positive, got " +
                                    fmt(gamma0));
    auto rate = default_rate(beta, gamma0);
    return DaviesModel{std::move(h_s), beta, std::move(coupling_ops), std::move(rate), gamma0};
}

namespace {

Lindbladian assemble_davies(const DaviesModel& model, bool enforce_kms, const char* who) {
    if (!(model.beta > 0.0) || !std::isfinite(model.beta))
        throw std::invalid_argument(std::string(who) + ": beta must be finite and positive, got " +
                                    fmt(model.beta));
    if (!model.rate_function)
        throw std::invalid_argument(std::string(who) + ": rate function is empty");
    const int d = model.h_s.dim();
    const Spectrum s = eigh(model.h_s);
    const std::vector<BohrGroup> groups = bohr_groups(s.values, who);

    if (enforce_kms) {
        for (const BohrGroup& g : groups) {
            if (g.omega <= 1e-10) continue;
            const double up = model.rate_function(g.omega);
            const double down = model.rate_function(-g.omega);
            if (up < 0.0 || down < 0.0)
                throw std::invalid_argument(std::string(who) +
                                            ": negative rate at Bohr frequency " + fmt(g.omega));
            const double want = std::exp(-model.beta * g.omega) * up;
            const double denom = std::max(std::abs(want), std::abs(down));
            if (denom > 0.0 && std::abs(down - want) > 1e-10 * denom)
                throw std::invalid_argument(
                    std::string(who) + ": rate function violates detailed balance at Bohr frequency " +
                    fmt(g.omega) + " (gamma(-w) = " + fmt(down) + ", expected " + fmt(want) + ")");
        }
    }

    Matrix gen = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
    for (const HermitianOperator& coupling : model.coupling_ops) {
        if (coupling.dim() != d)
            throw std::invalid_argument(std::string(who) +
                                        ": coupling operator dimension mismatch");
        const Matrix in_eigenbasis = s.vectors.adjoint() * coupling.mat() * s.vectors;
        for (const BohrGroup& g : groups) {
            Matrix mask = Matrix::Zero(d, d);
            for (const auto& [k, l] : g.pairs) mask(k, l) = in_eigenbasis(k, l);
            if (mask.cwiseAbs().maxCoeff() < 1e-14) continue;
            const double rate = model.rate_function(g.omega);
            if (rate < 0.0)
                throw std::invalid_argument(std::string(who) +
                                            ": negative rate at Bohr frequency " + fmt(g.omega));
            if (rate == 0.0) continue;
            const Matrix jump = s.vectors * mask * s.vectors.adjoint();
            gen += gkls_matrix({{rate, jump}});
        }
    }

    if (!enforce_kms) return Lindbladian(std::move(gen), model.h_s);
    return Lindbladian(std::move(gen), model.h_s, gibbs(model.h_s, model.beta));
}

}  // namespace

Lindbladian davies_generator(const DaviesModel& model) {
    return assemble_davies(model, true, "davies_generator");
}

Lindbladian davies_unchecked(const DaviesModel& model) {
    return assemble_davies(model, false, "davies_unchecked");
}

Eigen::Matrix2d qubit_davies(double q, double a, double t) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("qubit_davies: q must lie in (0,1), got " + fmt(q));
    if (!(a > 0.0)) throw std::invalid_argument("qubit_davies: rate must be positive, got " + fmt(a));
    if (!(t >= 0.0)) throw std::invalid_argument("qubit_davies: time must be nonnegative, got " + fmt(t));
    const double at = (1.0 - q) * (1.0 - std::exp(-a * t));
    const double up = at * q / (1.0 - q);
    Eigen::Matrix2d m;
    m(0, 0) = 1.0 - at;
    m(1, 0) = at;
    m(0, 1) = up;
    m(1, 1) = 1.0 - up;
    return m;
}

Superoperator evolve(const Lindbladian& lb, double t, bool include_unitary) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("evolve: time must be finite and nonnegative, got " + fmt(t));
    Matrix g = lb.dissipative();
    if (include_unitary) g += Complex(0.0, 1.0) * lb.theta();
    Matrix e = expm((t * g).eval());
    if (!e.allFinite())
        throw std::runtime_error("evolve: exponential overflowed to a non-finite matrix at t = " +
                                 fmt(t));
    return Superoperator(lb.dim(), std::move(e));
}

double qdb_residual(const Matrix& generator, const DensityMatrix& omega) {
    const Spectrum s = eigh(omega.mat());
    if (s.values.minCoeff() <= rank_tol)
        throw std::invalid_argument("check_qdb: Omega is rank deficient, smallest eigenvalue " +
                                    fmt(s.values.minCoeff()));
    Vector root(s.values.size());
    for (int i = 0; i < root.size(); ++i) root(i) = std::sqrt(s.values(i));
    const Matrix sq = s.vectors * root.asDiagonal() * s.vectors.adjoint();
    return balance_residual(generator, omega, sq, sq);
}

double qdb_alt_residual(const Matrix& generator, const DensityMatrix& omega) {
    const Spectrum s = eigh(omega.mat());
    if (s.values.minCoeff() <= rank_tol)
        throw std::invalid_argument("check_qdb_alt: Omega is rank deficient, smallest "
                                    "eigenvalue " + fmt(s.values.minCoeff()));
    return balance_residual(generator, omega, omega.mat(),
                            Matrix::Identity(omega.dim(), omega.dim()));
}

double check_qdb(const Lindbladian& lb, const DensityMatrix& omega) {
    return qdb_residual(lb.dissipative(), omega);
}

double check_qdb_alt(const Lindbladian& lb, const DensityMatrix& omega) {
    return qdb_alt_residual(lb.dissipative(), omega);
}

double check_ttsfp(const Lindbladian& lb, const DensityMatrix& omega,
                   const std::vector<double>& t_samples) {
    full_rank_spectrum(omega, "check_ttsfp");
    const int d = lb.dim();
    const Matrix& gen = lb.dissipative();
    double worst = 0.0;
    for (double t : t_samples) {
        const Matrix up = matfunc(omega.mat(),
                                  [t](double x) { return std::exp(Complex(0.0, t * std::log(x))); },
                                  "Omega^{it}");
        const Matrix um = up.adjoint();
        for (int e = 0; e < d * d; ++e) {
            const Matrix a = matrix_unit(d, e % d, e / d);
            const Matrix lhs = unvec(gen * vec(a), d);
            const Matrix inner = unvec(gen * vec((um * a * up).eval()), d);
            worst = std::max(worst, (lhs - up * inner * um).norm());
        }
    }
    return worst;
}

ModeDecomposition mode_decompose(const Matrix& a, const DensityMatrix& omega) {
    const int d = omega.dim();
    if (a.rows() != d || a.cols() != d)
        throw std::invalid_argument("mode_decompose: operator dimension mismatch");
    const Spectrum s = full_rank_spectrum(omega, "mode_decompose");

    struct Entry {
        double w;
        int k, l;
    };
    std::vector<Entry> entries;
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            entries.push_back({std::log(s.values(k)) - std::log(s.values(l)), k, l});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.w < y.w; });

    struct Group {
        double start;
        std::vector<Entry> members;
    };
    std::vector<Group> groups;
    for (const Entry& e : entries) {
        if (!groups.empty() && e.w - groups.back().start <= mode_tol)
            groups.back().members.push_back(e);
        else
            groups.push_back(Group{e.w, {e}});
    }

    const Matrix in_eigenbasis = s.vectors.adjoint() * a * s.vectors;
    ModeDecomposition dec;
    for (const Group& g : groups) {
        int off_diagonal = 0;
        double wsum = 0.0;
        Matrix mask = Matrix::Zero(d, d);
        for (const Entry& e : g.members) {
            mask(e.k, e.l) = in_eigenbasis(e.k, e.l);
            wsum += e.w;
            if (e.k != e.l) ++off_diagonal;
        }
        if (off_diagonal >= 1 && g.members.size() >= 2)
            dec.warnings.push_back("log-population ratios near " + fmt(g.start) +
                                   " collide within mode_tol; " +
                                   std::to_string(g.members.size()) +
                                   " index pairs merged into one mode");
        if (mask.cwiseAbs().maxCoeff() == 0.0) continue;
        dec.modes.push_back(Mode{wsum / static_cast<double>(g.members.size()),
                                 s.vectors * mask * s.vectors.adjoint()});
    }
    return dec;
}

double check_mode_preservation(const Lindbladian& lb, const DensityMatrix& omega) {
    const double symmetry = check_ttsfp(lb, omega, {0.5, 1.0, std::numbers::pi});
    if (symmetry > 1e-8)
        throw std::runtime_error(
            "check_mode_preservation: time-translation symmetry residual " + fmt(symmetry) +
            " exceeds 1e-8; mode preservation is only established under that symmetry");

    const int d = lb.dim();
    const Matrix& gen = lb.dissipative();
    double worst = 0.0;
    for (int e = 0; e < d * d; ++e) {
        const Matrix a = matrix_unit(d, e % d, e / d);
        const ModeDecomposition dec = mode_decompose(a, omega);
        const Matrix la = unvec(gen * vec(a), d);
        const ModeDecomposition dec_la = mode_decompose(la, omega);
        for (const Mode& m : dec.modes) {
            const Matrix mapped = unvec(gen * vec(m.component), d);
            Matrix target = Matrix::Zero(d, d);
            for (const Mode& n : dec_la.modes)
                if (std::abs(n.omega - m.omega) <= mode_tol) target = n.component;
            worst = std::max(worst, (mapped - target).norm());
        }
    }
    return worst;
}

double verify_self_recovery(const Lindbladian& lb, const DensityMatrix& omega, double t) {
    const double balance = check_qdb(lb, omega);
    if (balance >= 1e-8)
        throw std::runtime_error("verify_self_recovery: detailed-balance residual " +
                                 fmt(balance) + " exceeds 1e-8");
    const Superoperator forward = evolve(lb, t, false);
    const Superoperator recovered = petz_recovery(forward, omega);
    return (recovered.mat() - forward.mat()).cwiseAbs().maxCoeff();
}

double verify_unitary_reversal(const Lindbladian& lb, const DensityMatrix& omega, double t) {
    const double balance = check_qdb(lb, omega);
    if (balance >= 1e-8)
        throw std::runtime_error("verify_unitary_reversal: detailed-balance residual " +
                                 fmt(balance) + " exceeds 1e-8");
    const Matrix comm_h =
        lb.h_eff().mat() * omega.mat() - omega.mat() * lb.h_eff().mat();
    if (comm_h.norm() > 1e-10)
        throw std::runtime_error("verify_unitary_reversal: [H_eff, Omega] has norm " +
                                 fmt(comm_h.norm()) + ", above 1e-10");
    const Matrix th = lb.theta();
    const Matrix comm_gen = th * lb.dissipative() - lb.dissipative() * th;
    if (comm_gen.norm() > 1e-9)
        throw std::runtime_error(
            "verify_unitary_reversal: unitary and dissipative parts do not commute, residual " +
            fmt(comm_gen.norm()));

    const Matrix forward = expm((t * (Complex(0.0, 1.0) * th + lb.dissipative())).eval());
    const Matrix reversed = expm((t * (Complex(0.0, -1.0) * th + lb.dissipative())).eval());
    const Superoperator fwd(lb.dim(), forward);
    return (petz_recovery(fwd, omega).mat() - reversed).cwiseAbs().maxCoeff();
}

}  // namespace petzlab
