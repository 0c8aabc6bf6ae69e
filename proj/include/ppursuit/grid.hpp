#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ppursuit/indices.hpp"

namespace ppursuit {

/// A unit-norm projection direction. Reported directions are canonicalised:
/// the entry of largest absolute value is positive (first such entry on
/// ties), except that for the covariance/covariance_squared/correlation
/// kinds with a dependent series the sign is chosen so cov(X*w, y) >= 0.
using Direction = Eigen::VectorXd;

/// Controls for the plane-scanning direction search.
struct GridConfig {
    int n_angles = 90;      ///< angles evaluated per coordinate plane scan
    int max_sweeps = 25;    ///< full passes over all coordinates
    double shrink = 0.5;    ///< per-sweep contraction of the scan interval
    double tol = 1e-6;      ///< stop when a sweep moves w by less than this
};

/// In-place canonical sign: flips w so its largest-|entry| is positive.
void sign_normalize(Eigen::VectorXd& w);

/// Angle in radians between two directions (no sign folding).
double angle_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Maximises the index over unit directions by cyclic plane scans.
///
/// Starting from the best single coordinate axis, each sweep visits every
/// coordinate k and scans n_angles angles theta in [-Theta, Theta] over the
/// plane spanned by the current w and e_k, keeping the best candidate; the
/// interval half-width Theta starts at pi/2 and contracts by `shrink` per
/// sweep. Candidates are evaluated in canonical sign so the search is well
/// defined for sign-sensitive indices; ties keep the earlier candidate, and
/// the kept value never decreases. `seed` is reserved for future stochastic
/// refinements and is unused by the deterministic scan.
Direction optimize_direction(const Eigen::MatrixXd& X,
                             std::span<const double> y,
                             const IndexSpec& index,
                             const GridConfig& cfg = {},
                             std::uint64_t seed = 0);

/// Brute-force reference for p = 2: evaluates every angle in [0, pi) at the
/// given resolution (canonical sign, same objective as optimize_direction)
/// and returns the maximising direction. Intended as a test oracle.
Direction exhaustive_2d(const Eigen::MatrixXd& X,
                        std::span<const double> y,
                        const IndexSpec& index,
                        double resolution);

}  // namespace ppursuit
