#pragma once

#include <cmath>
#include <cstdint>

#include "petzlab/numcore.hpp"

namespace petzlab {

// SplitMix64: the documented seedable generator behind every random ensemble
// in the library. Small state, full 64-bit period segments, and identical
// output on every platform, which is what the reproducibility contract needs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller; second member of each pair cached
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(6.283185307179586476925286766559 * u2);
        have_cached_ = true;
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

inline Matrix random_ginibre(int d, SplitMix64& rng) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    return g;
}

inline HermitianOperator random_hermitian(int d, SplitMix64& rng, double scale = 1.0) {
    return HermitianOperator(scale * symmetrize(random_ginibre(d, rng)));
}

// Full-rank random state: normalized Ginibre square mixed with the
// maximally mixed state, so the smallest eigenvalue stays well above dust.
inline DensityMatrix random_density(int d, SplitMix64& rng, double mix = 0.1) {
    const Matrix g = random_ginibre(d, rng);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    w = (1.0 - mix) * w + mix / d * Matrix::Identity(d, d);
    return DensityMatrix::trusted(symmetrize(w));
}

inline DensityMatrix random_pure(int d, SplitMix64& rng) {
    Vector psi(d);
    for (int i = 0; i < d; ++i) psi(i) = Complex(rng.normal(), rng.normal());
    psi.normalize();
    return DensityMatrix::trusted((psi * psi.adjoint()).eval());
}

inline Matrix random_unitary(int d, SplitMix64& rng) {
    Eigen::HouseholderQR<Matrix> qr(random_ginibre(d, rng));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

}  // namespace petzlab
