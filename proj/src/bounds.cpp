#include "petzlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

constexpr double inf = std::numeric_limits<double>::infinity();

void validate_params(const QubitFamilyParams& p, const char* who) {
    if (!(p.q > 0.0 && p.q < 1.0))
        throw std::invalid_argument(std::string(who) + ": q must lie in (0,1), got " + fmt(p.q));
    if (!(p.p0 > 0.0 && p.p0 < 1.0))
        throw std::invalid_argument(std::string(who) + ": p0 must lie in (0,1), got " +
                                    fmt(p.p0));
    if (!(p.a > 0.0))
        throw std::invalid_argument(std::string(who) + ": rate must be positive, got " +
                                    fmt(p.a));
}

const DensityMatrix& fixed_point_of(const Lindbladian& lb, const char* who) {
    if (!lb.declared_fixed_point())
        throw std::invalid_argument(std::string(who) + ": Lindbladian declares no fixed point");
    return *lb.declared_fixed_point();
}

void require_full_rank(const DensityMatrix& tau, const char* who) {
    const double smallest = eigh(tau.mat()).values.minCoeff();
    if (smallest <= rank_tol)
        throw std::invalid_argument(std::string(who) +
                                    ": reference state is rank deficient, smallest eigenvalue " +
                                    fmt(smallest));
}

double density(double t) { return (std::numbers::pi / 2.0) / (std::cosh(std::numbers::pi * t) + 1.0); }

}  // namespace

Lindbladian qubit_family_generator(const QubitFamilyParams& params) {
    validate_params(params, "qubit_family_generator");
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = std::log((1.0 - params.q) / params.q);
    Matrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const double gamma0 = std::max(params.q, 1.0 - params.q) * params.a;
    return davies_generator(
        make_davies(HermitianOperator(h), 1.0, {HermitianOperator(x)}, gamma0));
}

DensityMatrix qubit_family_initial(const QubitFamilyParams& params) {
    validate_params(params, "qubit_family_initial");
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = params.p0;
    rho(1, 1) = 1.0 - params.p0;
    return DensityMatrix::trusted(rho);
}

double entropy_production(const DensityMatrix& rho0, const DensityMatrix& rhot,
                          const DensityMatrix& tau) {
    if (rho0.dim() != tau.dim() || rhot.dim() != tau.dim())
        throw std::invalid_argument("entropy_production: dimension mismatch");
    require_full_rank(tau, "entropy_production");
    return relative_entropy(rho0, tau).nats - relative_entropy(rhot, tau).nats;
}

Lemma1Report lemma1_bound(const Lindbladian& lb, const DensityMatrix& rho0, double t) {
    const DensityMatrix& tau = fixed_point_of(lb, "lemma1_bound");
    require_full_rank(tau, "lemma1_bound");

    const Superoperator forward = evolve(lb, t, true);
    const DensityMatrix rho_t = apply(forward, rho0);
    const double lhs = entropy_production(rho0, rho_t, tau);

    const Superoperator recovery = petz_recovery(forward, tau);
    const DensityMatrix recovered = apply(recovery, rho_t);
    const RelEntropy rhs = relative_entropy(rho0, recovered);
    if (rhs.infinite) return Lemma1Report{lhs, inf, -inf, true};
    return Lemma1Report{lhs, rhs.nats, lhs - rhs.nats, false};
}

BoundScanResult theorem1_scan(const Lindbladian& lb, const DensityMatrix& rho0,
                              const std::vector<double>& t_grid,
                              const std::vector<double>& k_list, Exec exec) {
    const DensityMatrix& tau = fixed_point_of(lb, "theorem1_scan");
    require_full_rank(tau, "theorem1_scan");
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0))
            throw std::invalid_argument("theorem1_scan: times must be nonnegative, got " +
                                        fmt(t_grid[i]));
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw std::invalid_argument("theorem1_scan: time grid must be strictly ascending");
    }
    for (double k : k_list)
        if (!(k >= 0.0))
            throw std::invalid_argument("theorem1_scan: k must be nonnegative, got " + fmt(k));

    const auto nt = static_cast<std::ptrdiff_t>(t_grid.size());
    BoundScanResult out;
    out.t_grid = t_grid;
    out.k_list = k_list;
    out.lhs.resize(t_grid.size());
    out.d_to_fixed.resize(t_grid.size());
    out.rhs.assign(k_list.size(), std::vector<double>(t_grid.size()));
    out.saturated.assign(k_list.size(), std::vector<bool>(t_grid.size()));

    parallel_for(exec, nt, [&](std::ptrdiff_t i) {
        const double t = t_grid[static_cast<size_t>(i)];
        const DensityMatrix rho_t = apply(evolve(lb, t, true), rho0);
        const double lhs = entropy_production(rho0, rho_t, tau);
        out.lhs[static_cast<size_t>(i)] = lhs;
        out.d_to_fixed[static_cast<size_t>(i)] = relative_entropy(rho_t, tau).nats;
        for (size_t j = 0; j < k_list.size(); ++j) {
            const DensityMatrix rho_kt = apply(evolve(lb, k_list[j] * t, false), rho0);
            const RelEntropy r = relative_entropy(rho0, rho_kt);
            out.rhs[j][static_cast<size_t>(i)] = r.infinite ? inf : r.nats;
        }
    });
    // vector<bool> packs bits, so this stays outside the parallel region.
    for (size_t j = 0; j < k_list.size(); ++j)
        for (size_t i = 0; i < t_grid.size(); ++i)
            out.saturated[j][i] = std::abs(out.lhs[i] - out.rhs[j][i]) < 1e-10;
    return out;
}

std::vector<double> default_scan_grid(double gamma0) {
    if (!(gamma0 > 0.0))
        throw std::invalid_argument("default_scan_grid: gamma0 must be positive, got " +
                                    fmt(gamma0));
    std::vector<double> grid(60);
    const double lo = std::log(1e-3);
    const double hi = std::log(50.0);
    for (int i = 0; i < 60; ++i)
        grid[static_cast<size_t>(i)] = std::exp(lo + (hi - lo) * i / 59.0) / gamma0;
    return grid;
}

double g_function(double x, double k, const QubitFamilyParams& params) {
    validate_params(params, "g_function");
    if (!(x > 0.0 && x <= 1.0))
        throw std::invalid_argument("g_function: x must lie in (0,1], got " + fmt(x));
    if (!(k >= 0.0))
        throw std::invalid_argument("g_function: k must be nonnegative, got " + fmt(k));

    const double q = params.q;
    const double p0 = params.p0;
    const double pt = q + x * (p0 - q);
    const double xk = std::pow(x, k);
    const double operands[4] = {1.0 + x * (p0 - q) / q, 1.0 + x * (q - p0) / (1.0 - q),
                                1.0 + xk * (p0 - q) / q, 1.0 + xk * (q - p0) / (1.0 - q)};
    for (double o : operands)
        if (!(o > 0.0))
            throw std::domain_error("g_function: logarithm operand " + fmt(o) +
                                    " is not positive");
    return -pt * std::log(operands[0]) - (1.0 - pt) * std::log(operands[1]) +
           p0 * std::log(operands[2]) + (1.0 - p0) * std::log(operands[3]);
}

SpohnReport spohn_rate(const Lindbladian& lb, const DensityMatrix& rho) {
    const DensityMatrix& tau = fixed_point_of(lb, "spohn_rate");
    require_full_rank(tau, "spohn_rate");
    const int d = lb.dim();
    if (rho.dim() != d) throw std::invalid_argument("spohn_rate: state dimension mismatch");

    const Matrix lrho = symmetrize(unvec(lb.dissipative() * vec(rho.mat()), d));
    const Matrix log_tau =
        matfunc(tau.mat(), [](double v) { return Complex(std::log(v), 0.0); }, "log of the "
                                                                               "fixed point");

    const Spectrum s = eigh(rho.mat());
    Matrix projector = Matrix::Zero(d, d);
    Matrix log_rho = Matrix::Zero(d, d);
    bool deficient = false;
    for (int i = 0; i < d; ++i) {
        if (s.values(i) <= rank_tol) {
            deficient = true;
            continue;
        }
        const Matrix vv = s.vectors.col(i) * s.vectors.col(i).adjoint();
        projector += vv;
        log_rho += std::log(s.values(i)) * vv;
    }

    if (deficient) {
        const Matrix complement = Matrix::Identity(d, d) - projector;
        const double leak = (complement * lrho * complement).cwiseAbs().maxCoeff();
        if (leak > 1e-12 * std::max(1.0, lrho.cwiseAbs().maxCoeff()))
            return SpohnReport{inf, inf, 0.0, true};
    }

    const double first = ((lrho * (log_tau - log_rho)).trace()).real();
    const double second = ((lrho * projector).trace()).real();
    return SpohnReport{first + second, first, second, false};
}

InfinitesimalReport infinitesimal_rhs_limit(const Lindbladian& lb, const DensityMatrix& rho,
                                            const std::vector<double>& h_list) {
    InfinitesimalReport report{{}, 0.0, 0.0, false};
    report.quotients.reserve(h_list.size());
    for (double h : h_list) {
        if (!(h > 0.0))
            throw std::invalid_argument("infinitesimal_rhs_limit: step must be positive, got " +
                                        fmt(h));
        const DensityMatrix rho_2h = apply(evolve(lb, 2.0 * h, false), rho);
        const RelEntropy r = relative_entropy(rho, rho_2h);
        report.quotients.push_back(r.infinite ? inf : r.nats / h);
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    double top = 0.0;
    for (size_t i = 0; i < h_list.size(); ++i) {
        const double y = report.quotients[i];
        if (!std::isfinite(y)) {
            report.nonvanishing_limit = true;
            continue;
        }
        top = std::max(top, y);
        sx += h_list[i];
        sy += y;
        sxx += h_list[i] * h_list[i];
        sxy += h_list[i] * y;
        ++n;
    }
    if (n >= 2) {
        const double denom = n * sxx - sx * sx;
        report.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
        report.intercept = (sy - report.slope * sx) / n;
    } else if (n == 1) {
        report.intercept = sy;
    }
    if (top > 1e-10 && report.intercept > 0.1 * top) report.nonvanishing_limit = true;
    return report;
}

FidelityReport fidelity_bound(const Lindbladian& lb, const DensityMatrix& rho0, double t) {
    const DensityMatrix& tau = fixed_point_of(lb, "fidelity_bound");
    require_full_rank(tau, "fidelity_bound");
    const double balance = check_qdb(lb, tau);
    if (balance >= 1e-8)
        throw std::runtime_error("fidelity_bound: detailed-balance residual " + fmt(balance) +
                                 " exceeds 1e-8");
    const double symmetry = check_ttsfp(lb, tau, {0.5, 1.0, std::numbers::pi});
    if (symmetry >= 1e-8)
        throw std::runtime_error("fidelity_bound: time-translation symmetry residual " +
                                 fmt(symmetry) + " exceeds 1e-8");

    const DensityMatrix rho_t = apply(evolve(lb, t, true), rho0);
    const double lhs = entropy_production(rho0, rho_t, tau);
    const DensityMatrix rho_2t = apply(evolve(lb, 2.0 * t, false), rho0);
    const double rhs = -2.0 * std::log(fidelity(rho0, rho_2t));
    return FidelityReport{lhs, rhs};
}

UniversalReport universal_bound_integral(const Superoperator& s, const DensityMatrix& sigma,
                                         const DensityMatrix& rho, const QuadratureSpec& quad,
                                         Exec exec) {
    if (quad.nodes < 2)
        throw std::invalid_argument("universal_bound_integral: need at least 2 nodes");
    if (!(quad.t_max > 0.0))
        throw std::invalid_argument("universal_bound_integral: truncation must be positive");

    const DensityMatrix mapped_rho = apply(s, rho);
    const DensityMatrix mapped_sigma = apply(s, sigma);
    const RelEntropy before = relative_entropy(rho, sigma);
    const RelEntropy after = relative_entropy(mapped_rho, mapped_sigma);
    const double lhs = (before.infinite ? inf : before.nats) - (after.infinite ? inf : after.nats);

    const double dt = 2.0 * quad.t_max / (quad.nodes - 1);
    std::vector<double> integrand(static_cast<size_t>(quad.nodes));
    parallel_for(exec, quad.nodes, [&](std::ptrdiff_t i) {
        const double t = -quad.t_max + dt * static_cast<double>(i);
        const Superoperator recovery = rotated_petz(s, sigma, t);
        const DensityMatrix back = apply(recovery, mapped_rho);
        integrand[static_cast<size_t>(i)] = -2.0 * std::log(fidelity(rho, back));
    });

    double rhs = 0.0;
    double worst = 0.0;
    for (int i = 0; i < quad.nodes; ++i) {
        const double t = -quad.t_max + dt * i;
        const double w = (i == 0 || i == quad.nodes - 1) ? dt / 2.0 : dt;
        rhs += w * density(t) * integrand[static_cast<size_t>(i)];
        worst = std::max(worst, std::abs(integrand[static_cast<size_t>(i)]));
    }

    const double tail = 1.0 - std::tanh(std::numbers::pi * quad.t_max / 2.0);
    return UniversalReport{lhs, rhs, tail, tail * worst, quad};
}

double quadrature_normalization(const QuadratureSpec& quad) {
    if (quad.nodes < 2)
        throw std::invalid_argument("quadrature_normalization: need at least 2 nodes");
    const double dt = 2.0 * quad.t_max / (quad.nodes - 1);
    double mass = 0.0;
    for (int i = 0; i < quad.nodes; ++i) {
        const double t = -quad.t_max + dt * i;
        const double w = (i == 0 || i == quad.nodes - 1) ? dt / 2.0 : dt;
        mass += w * density(t);
    }
    return mass;
}

}  // namespace petzlab
