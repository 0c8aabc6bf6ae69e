#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ppursuit/skewt.hpp"

using namespace ppursuit;
using Catch::Approx;

namespace {

double sample_skewness(const Eigen::VectorXd& v) {
    const double m = v.mean();
    const double n = static_cast<double>(v.size());
    double s2 = 0.0, s3 = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double d = v[i] - m;
        s2 += d * d;
        s3 += d * d * d;
    }
    s2 /= n;
    s3 /= n;
    return s3 / std::pow(s2, 1.5);
}

double sample_corr(const Eigen::MatrixXd& X) {
    const Eigen::VectorXd a = X.col(0).array() - X.col(0).mean();
    const Eigen::VectorXd b = X.col(1).array() - X.col(1).mean();
    return a.dot(b) / std::sqrt(a.squaredNorm() * b.squaredNorm());
}

}  // namespace

TEST_CASE("sampler is deterministic in the seed and shaped n-by-2", "[skewt]") {
    SkewTParams params;
    params.alpha_slant << 1.0, 2.0;
    const Eigen::MatrixXd a = sample_skew_t(params, 200, 3);
    const Eigen::MatrixXd b = sample_skew_t(params, 200, 3);
    REQUIRE(a.rows() == 200);
    REQUIRE(a.cols() == 2);
    REQUIRE(a == b);
    const Eigen::MatrixXd c = sample_skew_t(params, 200, 4);
    REQUIRE(a != c);
    REQUIRE(sample_skew_t(params, 1, 3).rows() == 1);
}

TEST_CASE("zero slant gives symmetric margins", "[skewt]") {
    // With no slant and near-Gaussian tails, sample skewness at n = 1e5
    // stays within a few standard errors (sqrt(6/n) ~ 0.008) of zero.
    const SkewTParams params;  // identity scale, slant 0, nu = 50
    const Eigen::MatrixXd X = sample_skew_t(params, 100000, 42);
    REQUIRE(std::abs(sample_skewness(X.col(0))) < 0.05);
    REQUIRE(std::abs(sample_skewness(X.col(1))) < 0.05);
}

TEST_CASE("identity scale with zero slant gives uncorrelated margins", "[skewt]") {
    const SkewTParams params;
    const Eigen::MatrixXd X = sample_skew_t(params, 10000, 7);
    REQUIRE(std::abs(sample_corr(X)) < 0.05);
}

TEST_CASE("slant shifts the mean of the slanted margin only", "[skewt]") {
    // For identity scale and slant (a, 0), the first margin's mean tends to
    // delta * sqrt(2/pi) with delta = a / sqrt(1 + a^2); at a = 5 that is
    // 0.78239..., and nu = 500 keeps the heavy-tail correction below 0.0012.
    // The bound is three standard errors at n = 1e5 plus that correction.
    SkewTParams params;
    params.alpha_slant << 5.0, 0.0;
    params.nu = 500.0;
    const Eigen::MatrixXd X = sample_skew_t(params, 100000, 99);
    REQUIRE(std::abs(X.col(0).mean() - 0.78239018175542685) < 0.0059);
    REQUIRE(std::abs(X.col(1).mean()) < 0.012);
    REQUIRE(sample_skewness(X.col(0)) > 0.3);
}

TEST_CASE("off-diagonal scale induces correlation", "[skewt]") {
    SkewTParams params;
    params.omega << 1.0, 0.6, 0.6, 1.0;
    const Eigen::MatrixXd X = sample_skew_t(params, 20000, 11);
    REQUIRE(sample_corr(X) > 0.4);
}

TEST_CASE("opposite slants couple the margins through the hidden gate", "[skewt]") {
    // Slant (5, -5) pushes both margins off-center through the same latent
    // sign, producing positive cross-covariance ~0.31 even with identity scale.
    SkewTParams params;
    params.alpha_slant << 5.0, -5.0;
    params.nu = 500.0;
    const Eigen::MatrixXd X = sample_skew_t(params, 50000, 13);
    const Eigen::VectorXd a = X.col(0).array() - X.col(0).mean();
    const Eigen::VectorXd b = X.col(1).array() - X.col(1).mean();
    const double cov = a.dot(b) / (static_cast<double>(X.rows()) - 1.0);
    REQUIRE(cov > 0.1);
}

TEST_CASE("small degrees of freedom produce heavy tails", "[skewt]") {
    SkewTParams heavy;
    heavy.nu = 1.0;
    SkewTParams light;
    light.nu = 50.0;
    const double heavy_max = sample_skew_t(heavy, 100000, 5).array().abs().maxCoeff();
    const double light_max = sample_skew_t(light, 100000, 5).array().abs().maxCoeff();
    REQUIRE(heavy_max > 50.0);
    REQUIRE(light_max < 20.0);
}

TEST_CASE("location shifts every draw by xi", "[skewt]") {
    SkewTParams base;
    base.alpha_slant << 2.0, 1.0;
    base.nu = 8.0;
    SkewTParams shifted = base;
    shifted.xi << 10.0, -3.0;
    const Eigen::MatrixXd a = sample_skew_t(base, 500, 77);
    const Eigen::MatrixXd b = sample_skew_t(shifted, 500, 77);
    REQUIRE(((b.col(0) - a.col(0)).array() - 10.0).abs().maxCoeff() < 1e-12);
    REQUIRE(((b.col(1) - a.col(1)).array() + 3.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("invalid parameters are rejected", "[skewt]") {
    const SkewTParams good;
    REQUIRE_THROWS_WITH(sample_skew_t(good, 0, 1), "sample size must be positive");
    REQUIRE_THROWS_AS(sample_skew_t(good, -5, 1), std::invalid_argument);

    SkewTParams bad_nu;
    bad_nu.nu = 0.0;
    REQUIRE_THROWS_WITH(sample_skew_t(bad_nu, 10, 1), "degrees of freedom must be positive");
    bad_nu.nu = -3.0;
    REQUIRE_THROWS_AS(sample_skew_t(bad_nu, 10, 1), std::invalid_argument);

    SkewTParams asym;
    asym.omega << 1.0, 0.3, -0.3, 1.0;
    REQUIRE_THROWS_WITH(sample_skew_t(asym, 10, 1), "scale matrix must be symmetric");

    SkewTParams indefinite;
    indefinite.omega << 1.0, 2.0, 2.0, 1.0;  // symmetric but not positive definite
    REQUIRE_THROWS_WITH(sample_skew_t(indefinite, 10, 1), "non-positive-definite scale matrix");

    SkewTParams negdiag;
    negdiag.omega << -1.0, 0.0, 0.0, 1.0;
    REQUIRE_THROWS_AS(sample_skew_t(negdiag, 10, 1), std::invalid_argument);

    SkewTParams nonfinite;
    nonfinite.xi << std::nan(""), 0.0;
    REQUIRE_THROWS_WITH(sample_skew_t(nonfinite, 10, 1), "non-finite value in input");
}
