#include "ppursuit/grid.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace ppursuit {

namespace {

void validate_inputs(const Eigen::MatrixXd& X, std::span<const double> y) {
    if (X.rows() < 3 || X.cols() < 1) {
        throw std::invalid_argument("need at least 3 rows and 1 column");
    }
    if (!X.allFinite()) {
        throw std::invalid_argument("non-finite value in input");
    }
    if (!y.empty() && static_cast<Eigen::Index>(y.size()) != X.rows()) {
        throw std::invalid_argument("series length mismatch");
    }
}

void validate_config(const GridConfig& cfg) {
    if (cfg.n_angles < 3) throw std::invalid_argument("n_angles must be at least 3");
    if (cfg.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
    if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0)) throw std::invalid_argument("shrink must lie in (0, 1)");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

std::optional<double> try_objective(const IndexSpec& index,
                                    std::span<const double> scores,
                                    std::span<const double> y) {
    try {
        return search_objective(index, scores, y);
    } catch (const degenerate_scale_error&) {
        return std::nullopt;  // constant projection: not an admissible candidate
    }
}

std::span<const double> as_span(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

bool is_covariance_like(IndexKind kind) {
    return kind == IndexKind::covariance || kind == IndexKind::covariance_squared ||
           kind == IndexKind::correlation;
}

// Directions positively correlated with y are reported for the second-order
// kinds, whose squared objective cannot distinguish w from -w.
void align_with_dependent(Eigen::VectorXd& w,
                          const Eigen::MatrixXd& X,
                          std::span<const double> y,
                          const IndexSpec& index) {
    if (y.empty() || !is_covariance_like(index.kind)) return;
    const Eigen::VectorXd scores = X * w;
    const double cov = product_comoment(as_span(scores), y, {1, 1}, false, index.trim);
    if (cov < 0.0) w = -w;
}

}  // namespace

void sign_normalize(Eigen::VectorXd& w) {
    Eigen::Index imax = 0;
    w.cwiseAbs().maxCoeff(&imax);
    if (w[imax] < 0.0) w = -w;
}

double angle_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double c = a.dot(b) / (a.norm() * b.norm());
    return std::acos(std::clamp(c, -1.0, 1.0));
}

Direction optimize_direction(const Eigen::MatrixXd& X,
                             std::span<const double> y,
                             const IndexSpec& index,
                             const GridConfig& cfg,
                             std::uint64_t /*seed*/) {
    validate_inputs(X, y);
    validate_config(cfg);

    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();

    // Start from the best coordinate axis (each axis is its own canonical
    // representative). Ties keep the lowest column.
    double value = 0.0;
    Eigen::Index best_axis = -1;
    for (Eigen::Index k = 0; k < p; ++k) {
        const Eigen::VectorXd col = X.col(k);
        const auto obj = try_objective(index, as_span(col), y);
        if (obj && (best_axis < 0 || *obj > value)) {
            best_axis = k;
            value = *obj;
        }
    }
    if (best_axis < 0) {
        throw std::runtime_error("no admissible direction");
    }

    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    w[best_axis] = 1.0;
    Eigen::VectorXd t_w = X.col(best_axis);
    Eigen::VectorXd cand(n), best_scores(n);

    double theta_max = std::numbers::pi / 2.0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        const Eigen::VectorXd w_start = w;
        for (Eigen::Index k = 0; k < p; ++k) {
            if (std::abs(w[k]) > 1.0 - 1e-12) continue;  // plane (w, e_k) is degenerate

            double best_val = value;
            double best_cos = 1.0, best_sin = 0.0, best_scale = 1.0;
            bool improved = false;
            for (int j = 0; j < cfg.n_angles; ++j) {
                const double theta = -theta_max + 2.0 * theta_max * j / (cfg.n_angles - 1);
                const double c = std::cos(theta), s = std::sin(theta);
                const double norm2 = 1.0 + 2.0 * c * s * w[k];
                if (norm2 < 1e-16) continue;
                const double inv_norm = 1.0 / std::sqrt(norm2);

                // Canonical sign of the candidate c*w + s*e_k (first largest
                // |entry| wins ties), folded into one scale factor.
                double max_abs = -1.0;
                double sign = 1.0;
                for (Eigen::Index i = 0; i < p; ++i) {
                    const double wi = c * w[i] + (i == k ? s : 0.0);
                    if (std::abs(wi) > max_abs) {
                        max_abs = std::abs(wi);
                        sign = wi < 0.0 ? -1.0 : 1.0;
                    }
                }
                const double scale = sign * inv_norm;

                cand = scale * (c * t_w + s * X.col(k));
                const auto obj = try_objective(index, as_span(cand), y);
                if (obj && *obj > best_val) {
                    best_val = *obj;
                    best_cos = c;
                    best_sin = s;
                    best_scale = scale;
                    best_scores = cand;
                    improved = true;
                }
            }
            if (improved) {
                Eigen::VectorXd w_new = best_cos * w;
                w_new[k] += best_sin;
                w = best_scale * w_new;
                w.normalize();
                t_w = X * w;
                value = best_val;
            }
        }
        theta_max *= cfg.shrink;
        if ((w - w_start).norm() < cfg.tol) break;
    }

    align_with_dependent(w, X, y, index);
    return w;
}

Direction exhaustive_2d(const Eigen::MatrixXd& X,
                        std::span<const double> y,
                        const IndexSpec& index,
                        double resolution) {
    validate_inputs(X, y);
    if (X.cols() != 2) {
        throw std::invalid_argument("exhaustive scan is defined for exactly 2 columns");
    }
    if (!(resolution > 0.0 && resolution < std::numbers::pi)) {
        throw std::invalid_argument("resolution must lie in (0, pi)");
    }

    Eigen::VectorXd cand(X.rows());
    Eigen::Vector2d best_w;
    double best_val = 0.0;
    bool found = false;
    for (double theta = 0.0; theta < std::numbers::pi; theta += resolution) {
        const double c = std::cos(theta), s = std::sin(theta);
        Eigen::Vector2d w(c, s);
        // Same canonical representative the plane scan evaluates.
        const double sign = (std::abs(c) >= std::abs(s) ? (c < 0.0 ? -1.0 : 1.0)
                                                        : (s < 0.0 ? -1.0 : 1.0));
        w *= sign;
        cand = sign * (c * X.col(0) + s * X.col(1));
        const auto obj = try_objective(index, as_span(cand), y);
        if (obj && (!found || *obj > best_val)) {
            best_val = *obj;
            best_w = w;
            found = true;
        }
    }
    if (!found) {
        throw std::runtime_error("no admissible direction");
    }
    Eigen::VectorXd w = best_w;
    align_with_dependent(w, X, y, index);
    return w;
}

}  // namespace ppursuit
