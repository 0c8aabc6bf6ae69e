#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace ppursuit {

/// Parameters of the bivariate skew-t law: location xi, positive-definite
/// scale matrix omega, slant vector alpha (0 gives the symmetric t), and
/// degrees of freedom nu > 0 (large nu approaches the skew-normal).
struct SkewTParams {
    Eigen::Vector2d xi = Eigen::Vector2d::Zero();
    Eigen::Matrix2d omega = Eigen::Matrix2d::Identity();
    Eigen::Vector2d alpha_slant = Eigen::Vector2d::Zero();
    double nu = 50.0;
};

/// Draws n rows from the skew-t law via the hidden-truncation construction:
/// a (2+1)-dimensional Gaussian with the slant folded into the correlation
/// with a latent gate coordinate, reflected on the gate's sign, rescaled by
/// sqrt(nu / chi^2_nu) per row, then shifted by xi. Deterministic in `seed`.
Eigen::MatrixXd sample_skew_t(const SkewTParams& params, int n, std::uint64_t seed);

}  // namespace ppursuit
