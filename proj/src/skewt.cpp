#include "ppursuit/skewt.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ppursuit {

Eigen::MatrixXd sample_skew_t(const SkewTParams& params, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    if (!(params.nu > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
    if (!params.xi.allFinite() || !params.omega.allFinite() || !params.alpha_slant.allFinite()) {
        throw std::invalid_argument("non-finite value in input");
    }
    if ((params.omega - params.omega.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("scale matrix must be symmetric");
    }
    if (params.omega(0, 0) <= 0.0 || params.omega(1, 1) <= 0.0) {
        throw std::invalid_argument("non-positive-definite scale matrix");
    }

    // Standardise to a correlation matrix, fold the slant into the
    // correlation vector of the latent gate coordinate, and extend to the
    // (2+1)-dimensional correlation matrix of (gate, z1, z2).
    const Eigen::Vector2d omega_sd(std::sqrt(params.omega(0, 0)), std::sqrt(params.omega(1, 1)));
    Eigen::Matrix2d corr;
    corr << 1.0, params.omega(0, 1) / (omega_sd[0] * omega_sd[1]),
            params.omega(1, 0) / (omega_sd[0] * omega_sd[1]), 1.0;
    const Eigen::Vector2d ca = corr * params.alpha_slant;
    const double quad = params.alpha_slant.dot(ca);
    const Eigen::Vector2d delta = ca / std::sqrt(1.0 + quad);

    Eigen::Matrix3d star;
    star << 1.0, delta[0], delta[1],
            delta[0], corr(0, 0), corr(0, 1),
            delta[1], corr(1, 0), corr(1, 1);
    const Eigen::LLT<Eigen::Matrix3d> llt(star);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("non-positive-definite scale matrix");
    }
    const Eigen::Matrix3d L = llt.matrixL();

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::chi_squared_distribution<double> chi2(params.nu);

    Eigen::MatrixXd sample(n, 2);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d u(gauss(gen), gauss(gen), gauss(gen));
        const Eigen::Vector3d v = L * u;
        const double flip = v[0] > 0.0 ? 1.0 : -1.0;  // reflect on the gate's sign
        const double tail = std::sqrt(params.nu / chi2(gen));
        for (int j = 0; j < 2; ++j) {
            sample(i, j) = params.xi[j] + omega_sd[j] * flip * v[j + 1] * tail;
        }
    }
    return sample;
}

}  // namespace ppursuit
