#include "petzlab/bathsim.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace petzlab {

namespace {

constexpr int joint_cap = 64;

Matrix evolution_unitary(const Matrix& h, double t) {
    return matfunc(h, [t](double e) { return std::exp(Complex(0.0, -t * e)); },
                   "joint evolution phase");
}

int system_dim(const BathModel& bath) { return bath.interaction.dim() / bath.levels; }

void check_system(const HermitianOperator& h_s, const BathModel& bath, const char* who) {
    if (h_s.dim() * bath.levels != bath.interaction.dim()) {
        std::ostringstream os;
        os << who << ": interaction acts on " << bath.interaction.dim()
           << " levels, expected " << h_s.dim() << " x " << bath.levels;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

BathModel make_bath(int levels, HermitianOperator h_b, double beta,
                    HermitianOperator interaction, double lambda) {
    if (levels < 1) throw std::invalid_argument("make_bath: need at least one bath level");
    if (h_b.dim() != levels)
        throw std::invalid_argument("make_bath: bath Hamiltonian dimension mismatch");
    if (!(beta > 0.0)) throw std::invalid_argument("make_bath: beta must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("make_bath: lambda must be nonnegative");
    if (interaction.dim() % levels != 0)
        throw std::invalid_argument(
            "make_bath: interaction dimension is not a multiple of the bath size");
    if (interaction.dim() / levels < 1)
        throw std::invalid_argument("make_bath: interaction leaves no room for the system");
    if (interaction.dim() > joint_cap) {
        std::ostringstream os;
        os << "make_bath: joint space of " << interaction.dim() << " levels exceeds the cap of "
           << joint_cap;
        throw std::invalid_argument(os.str());
    }
    return BathModel{levels, std::move(h_b), beta, std::move(interaction), lambda};
}

HermitianOperator harmonic_bath(int levels, double omega) {
    if (levels < 1)
        throw std::invalid_argument("harmonic_bath: need at least one bath level");
    Matrix h = Matrix::Zero(levels, levels);
    for (int k = 0; k < levels; ++k) h(k, k) = omega * k;
    return HermitianOperator(h);
}

HermitianOperator ladder_interaction(int d_s, int levels) {
    if (d_s < 2 || levels < 2)
        throw std::invalid_argument("ladder_interaction: both factors need two levels to hop");
    Matrix flip = Matrix::Zero(d_s, d_s);
    for (int k = 0; k + 1 < d_s; ++k) flip(k, k + 1) = flip(k + 1, k) = 1.0;
    Matrix hop = Matrix::Zero(levels, levels);
    for (int k = 0; k + 1 < levels; ++k) hop(k, k + 1) = hop(k + 1, k) = 1.0;
    const Matrix joint = kron(flip, hop);
    return HermitianOperator(joint / operator_norm(joint));
}

Matrix joint_hamiltonian(const HermitianOperator& h_s, const BathModel& bath) {
    check_system(h_s, bath, "joint_hamiltonian");
    const int d = h_s.dim();
    return kron(h_s.mat(), Matrix::Identity(bath.levels, bath.levels)) +
           kron(Matrix::Identity(d, d), bath.h_b.mat()) + bath.lambda * bath.interaction.mat();
}

DensityMatrix joint_state(const HermitianOperator& h_s, const BathModel& bath,
                          const DensityMatrix& rho_s, double t_tilde) {
    check_system(h_s, bath, "joint_state");
    if (rho_s.dim() != h_s.dim())
        throw std::invalid_argument("joint_state: system state dimension mismatch");
    if (!std::isfinite(t_tilde))
        throw std::invalid_argument("joint_state: time must be finite");
    const Matrix start = kron(rho_s.mat(), gibbs(bath.h_b, bath.beta).mat());
    const Matrix u = evolution_unitary(joint_hamiltonian(h_s, bath), t_tilde);
    return DensityMatrix::trusted(symmetrize(u * start * u.adjoint()));
}

DensityMatrix joint_evolve(const HermitianOperator& h_s, const BathModel& bath,
                           const DensityMatrix& rho_s, double t_tilde) {
    const DensityMatrix joint = joint_state(h_s, bath, rho_s, t_tilde);
    return DensityMatrix::trusted(
        symmetrize(partial_trace_second(joint.mat(), h_s.dim(), bath.levels)));
}

CorrelationReport correlation_bound_check(const HermitianOperator& h_s, const BathModel& bath,
                                          double alpha, double t_tilde) {
    check_system(h_s, bath, "correlation_bound_check");
    if (!(alpha > 0.0))
        throw std::invalid_argument("correlation_bound_check: alpha must be positive");
    if (!std::isfinite(t_tilde))
        throw std::invalid_argument("correlation_bound_check: time must be finite");

    // The decoupled evolution commutes with the Gibbs product it generates.
    if (bath.lambda == 0.0) return CorrelationReport{0.0, 0.0, true, 0.0, 0.0};

    const Matrix product =
        kron(gibbs(h_s, bath.beta).mat(), gibbs(bath.h_b, bath.beta).mat());
    const Matrix powered = matfunc(symmetrize(product),
                                   [alpha](double v) { return Complex(std::pow(v, alpha), 0.0); },
                                   "Gibbs product power");
    const Matrix u = evolution_unitary(joint_hamiltonian(h_s, bath), t_tilde);
    const double full = trace_norm(u * powered * u.adjoint() - powered);
    const double lhs = 0.5 * full;
    const double rhs = powered.trace().real() * bath.beta *
                       std::sqrt(bath.lambda * operator_norm(bath.interaction.mat()));
    const bool pass = lhs <= rhs * (1.0 + 1e-9) + 1e-12;
    return CorrelationReport{lhs, rhs, pass, full, 2.0 * rhs};
}

std::vector<double> davies_limit_probe(const HermitianOperator& h_s,
                                       const std::vector<BathModel>& family,
                                       const Lindbladian& lb, double t,
                                       const DensityMatrix& rho_s) {
    if (family.empty()) throw std::invalid_argument("davies_limit_probe: empty family");
    if (lb.dim() != h_s.dim() || rho_s.dim() != h_s.dim())
        throw std::invalid_argument("davies_limit_probe: system dimension mismatch");
    if (!(t >= 0.0)) throw std::invalid_argument("davies_limit_probe: time must be nonnegative");
    for (size_t i = 0; i < family.size(); ++i) {
        check_system(h_s, family[i], "davies_limit_probe");
        if (family[i].levels != family.front().levels)
            throw std::invalid_argument("davies_limit_probe: bath size changes across the family");
        if (i > 0 && !(family[i].lambda < family[i - 1].lambda))
            throw std::invalid_argument(
                "davies_limit_probe: family must come in strictly decreasing coupling order");
    }

    const DensityMatrix target = apply(evolve(lb, t, false), rho_s);
    std::vector<double> distances;
    distances.reserve(family.size());
    for (const BathModel& bath : family) {
        if (bath.lambda == 0.0) {
            distances.push_back(trace_norm(rho_s.mat() - target.mat()));
            continue;
        }
        const double t_tilde = t / (bath.lambda * bath.lambda);
        const DensityMatrix reduced = joint_evolve(h_s, bath, rho_s, t_tilde);
        const Matrix undo =
            matfunc(h_s, [t_tilde](double e) { return std::exp(Complex(0.0, t_tilde * e)); },
                    "interaction picture phase");
        distances.push_back(trace_norm(undo * reduced.mat() * undo.adjoint() - target.mat()));
    }
    return distances;
}

}  // namespace petzlab
