#include "ppursuit/pursuit.hpp"

#include <cmath>

namespace ppursuit {

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

Eigen::VectorXd column_center(const Eigen::MatrixXd& X, const TrimSpec& trim) {
    Eigen::VectorXd c(X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const Eigen::VectorXd col = X.col(j);
        c[j] = trimmed_mean(as_span(col), trim);
    }
    return c;
}

void validate_matrix(const DataMatrix& X, Eigen::Index min_rows) {
    if (X.values.rows() < min_rows || X.values.cols() < 1) {
        throw std::invalid_argument("need at least " + std::to_string(min_rows) +
                                    " rows and 1 column");
    }
    if (!X.values.allFinite()) {
        throw std::invalid_argument("non-finite value in input");
    }
    if (!X.column_names.empty() &&
        static_cast<Eigen::Index>(X.column_names.size()) != X.values.cols()) {
        throw std::invalid_argument("column name count mismatch");
    }
}

}  // namespace

PursuitModel fit(const DataMatrix& X,
                 std::span<const double> y,
                 const IndexSpec& index,
                 int h,
                 const GridConfig& cfg) {
    validate_matrix(X, 3);
    const Eigen::Index n = X.values.rows();
    const Eigen::Index p = X.values.cols();
    if (h < 1 || h > std::min(n, p)) {
        throw std::invalid_argument("component count must lie in [1, min(n, p)]");
    }
    if (requires_dependent(index.kind) && y.empty()) {
        throw std::invalid_argument("dependent series required");
    }
    if (!y.empty()) {
        if (static_cast<Eigen::Index>(y.size()) != n) {
            throw std::invalid_argument("series length mismatch");
        }
        for (double v : y) {
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in input");
        }
    }

    PursuitModel model;
    model.index = index;
    model.grid = cfg;
    model.has_y = !y.empty();
    model.column_names = X.column_names;
    model.x_center = column_center(X.values, index.trim);
    model.y_center = y.empty() ? 0.0 : trimmed_mean(y, index.trim);

    Eigen::VectorXd yc(n);
    if (!y.empty()) {
        for (Eigen::Index i = 0; i < n; ++i) yc[i] = y[i] - model.y_center;
    }
    const std::span<const double> yc_span = y.empty() ? std::span<const double>{} : as_span(yc);

    Eigen::MatrixXd E = X.values.rowwise() - model.x_center.transpose();
    const double e0_norm = E.norm();

    model.weights.resize(p, h);
    model.scores.resize(n, h);
    model.loadings.resize(p, h);
    model.gamma.resize(h);

    int fitted = 0;
    for (int i = 0; i < h; ++i) {
        Eigen::VectorXd w;
        try {
            w = optimize_direction(E, yc_span, index, cfg);
        } catch (const std::runtime_error&) {
            // No admissible direction left in the residual: degenerate stop.
            model.truncated = true;
            break;
        }
        const Eigen::VectorXd t = E * w;
        const double t2 = t.squaredNorm();
        if (std::sqrt(t2) <= 1e-12 * e0_norm) {
            model.truncated = true;
            break;
        }
        const Eigen::VectorXd load = E.transpose() * t / t2;
        model.weights.col(i) = w;
        model.scores.col(i) = t;
        model.loadings.col(i) = load;
        model.gamma[i] = y.empty() ? 0.0 : t.dot(yc) / t2;
        E.noalias() -= t * load.transpose();
        ++fitted;
    }
    if (fitted == 0) {
        throw std::runtime_error("no admissible direction");
    }
    model.components = fitted;
    model.weights.conservativeResize(p, fitted);
    model.scores.conservativeResize(n, fitted);
    model.loadings.conservativeResize(p, fitted);
    model.gamma.conservativeResize(fitted);
    return model;
}

Eigen::MatrixXd transform(const PursuitModel& model, const DataMatrix& X) {
    validate_matrix(X, 1);
    if (X.values.cols() != model.weights.rows()) {
        throw std::invalid_argument("column count mismatch with fitted model");
    }
    Eigen::MatrixXd E = X.values.rowwise() - model.x_center.transpose();
    Eigen::MatrixXd T(X.values.rows(), model.components);
    for (int i = 0; i < model.components; ++i) {
        const Eigen::VectorXd t = E * model.weights.col(i);
        T.col(i) = t;
        E.noalias() -= t * model.loadings.col(i).transpose();
    }
    return T;
}

std::vector<double> predict(const PursuitModel& model, const DataMatrix& X) {
    if (!model.has_y) {
        throw std::invalid_argument("unsupervised model has no prediction rule");
    }
    const Eigen::MatrixXd T = transform(model, X);
    const Eigen::VectorXd yhat =
        (T * model.gamma).array() + model.y_center;
    return {yhat.data(), yhat.data() + yhat.size()};
}

}  // namespace ppursuit
