#pragma once

#include "ppursuit/ingest.hpp"
#include "ppursuit/pursuit.hpp"

namespace ppursuit {

/// Generalised betas of a returns panel: classical OLS betas next to the
/// first projection direction of the composite index truncated at each
/// requested co-moment order (2 keeps the covariance weight, 3 adds the
/// third-order weights, 4 keeps all six).
struct BetaReport {
    std::vector<std::string> symbols;
    std::string index_symbol;
    std::vector<double> classical_beta;
    std::vector<int> orders;                  ///< requested orders, ascending
    std::vector<Eigen::VectorXd> weights;     ///< one direction per order
};

/// Per-calendar-month refits of the order-truncated composite direction.
struct RollingReport {
    std::vector<std::string> symbols;
    std::string index_symbol;
    int order = 3;
    std::vector<std::string> window_labels;   ///< YYYY-MM, chronological
    std::vector<Eigen::VectorXd> weights;     ///< one direction per window
    std::vector<std::string> skipped_windows; ///< months with too few rows
    Eigen::VectorXd mean;                     ///< per-symbol mean over windows
    Eigen::VectorXd sd;                       ///< per-symbol sample sd
};

/// Zeroes the weights above `max_order` (2, 3 or 4).
CapiWeights truncate_weights(const CapiWeights& weights, int max_order);

BetaReport cmd_betas(const ReturnsPanel& panel,
                     const CapiWeights& weights,
                     const TrimSpec& trim,
                     const std::vector<int>& orders,
                     bool scaled = true,
                     const GridConfig& cfg = {});

RollingReport cmd_rolling(const ReturnsPanel& panel,
                          const CapiWeights& weights,
                          const TrimSpec& trim,
                          int order = 3,
                          bool scaled = true,
                          const GridConfig& cfg = {},
                          int min_rows = 15);

/// Human table (3 decimals), CSV and JSON renderings (full precision).
std::string beta_report_table(const BetaReport& report);
std::string beta_report_csv(const BetaReport& report);
std::string beta_report_json(const BetaReport& report);
std::string rolling_report_table(const RollingReport& report);
std::string rolling_report_csv(const RollingReport& report);
std::string rolling_report_json(const RollingReport& report);

}  // namespace ppursuit
