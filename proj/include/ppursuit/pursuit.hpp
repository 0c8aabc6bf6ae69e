#pragma once

#include <string>
#include <vector>

#include "ppursuit/grid.hpp"

namespace ppursuit {

/// Numeric design matrix plus optional column names (one per column; an
/// empty vector means unnamed columns).
struct DataMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> column_names;
};

/// A fitted sequence of projection directions with deflation.
///
/// For component i: t_i = E_{i-1} * w_i, p_i = E_{i-1}^T t_i / |t_i|^2 and
/// E_i = E_{i-1} - t_i p_i^T, starting from the centered inputs E_0. The
/// inner regression coefficient gamma_i = t_i^T y / |t_i|^2 uses the score
/// orthogonality granted by deflation, so predictions are
/// y_center + sum_i gamma_i t_i.
struct PursuitModel {
    Eigen::MatrixXd weights;   ///< p x h direction matrix W
    Eigen::MatrixXd scores;    ///< n x h training scores T
    Eigen::MatrixXd loadings;  ///< p x h loading matrix P
    Eigen::VectorXd gamma;     ///< h inner regression coefficients
    Eigen::VectorXd x_center;  ///< column centers subtracted before fitting
    double y_center = 0.0;
    IndexSpec index{};
    GridConfig grid{};
    int components = 0;     ///< components actually fitted
    bool has_y = false;     ///< fitted with a dependent series
    bool truncated = false; ///< stopped early on a degenerate component
    std::vector<std::string> column_names;
};

/// Fits h components by repeated direction search and deflation. Pass an
/// empty y for unsupervised indices (variance). Stops early, flagging the
/// model, when a component's score norm falls below 1e-12 * |E_0|_F or no
/// admissible direction remains.
PursuitModel fit(const DataMatrix& X,
                 std::span<const double> y,
                 const IndexSpec& index,
                 int h,
                 const GridConfig& cfg = {});

/// Scores of new rows under the fitted directions (sequential deflation
/// with the stored loadings). Column count of X must match the fit.
Eigen::MatrixXd transform(const PursuitModel& model, const DataMatrix& X);

/// Predicted dependent values for new rows. Throws for models fitted
/// without a dependent series.
std::vector<double> predict(const PursuitModel& model, const DataMatrix& X);

}  // namespace ppursuit
