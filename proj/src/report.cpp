#include "ppursuit/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ppursuit {

namespace {

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::span<const double> as_span(const std::vector<double>& v) { return {v.data(), v.size()}; }

void validate_panel(const ReturnsPanel& panel) {
    if (panel.returns.rows() < 3 || panel.returns.cols() < 1) {
        throw std::invalid_argument("need at least 3 rows and 1 column");
    }
    if (panel.index_returns.size() != static_cast<std::size_t>(panel.returns.rows())) {
        throw std::invalid_argument("series length mismatch");
    }
    if (panel.symbols.size() != static_cast<std::size_t>(panel.returns.cols())) {
        throw std::invalid_argument("column name count mismatch");
    }
}

Eigen::VectorXd capi_direction(const Eigen::MatrixXd& X,
                               const std::vector<double>& y,
                               const CapiWeights& weights,
                               int order,
                               const TrimSpec& trim,
                               bool scaled,
                               const GridConfig& cfg) {
    IndexSpec index;
    index.kind = IndexKind::capi;
    index.capi_weights = truncate_weights(weights, order);
    index.scaled = scaled;
    index.trim = trim;
    return optimize_direction(X, as_span(y), index, cfg);
}

}  // namespace

CapiWeights truncate_weights(const CapiWeights& weights, int max_order) {
    if (max_order < 2 || max_order > 4) {
        throw std::invalid_argument("co-moment order must be 2, 3 or 4");
    }
    CapiWeights out = weights;
    for (std::size_t k = 0; k < kCapiOrders.size(); ++k) {
        if (kCapiOrders[k].a + kCapiOrders[k].b > max_order) out.omega[k] = 0.0;
    }
    return out;
}

BetaReport cmd_betas(const ReturnsPanel& panel,
                     const CapiWeights& weights,
                     const TrimSpec& trim,
                     const std::vector<int>& orders,
                     bool scaled,
                     const GridConfig& cfg) {
    validate_panel(panel);
    if (orders.empty()) throw std::invalid_argument("need at least one order");
    std::vector<int> sorted_orders = orders;
    std::sort(sorted_orders.begin(), sorted_orders.end());
    sorted_orders.erase(std::unique(sorted_orders.begin(), sorted_orders.end()), sorted_orders.end());

    BetaReport report;
    report.symbols = panel.symbols;
    report.index_symbol = panel.index_symbol;
    report.orders = sorted_orders;

    // Classical per-security betas: cov(r_j, m) / var(m), trim-free.
    const double var_m = product_comoment(as_span(panel.index_returns),
                                          as_span(panel.index_returns), {1, 1}, false);
    if (var_m <= 0.0) throw std::runtime_error("degenerate scale: index returns are constant");
    for (Eigen::Index j = 0; j < panel.returns.cols(); ++j) {
        const Eigen::VectorXd col = panel.returns.col(j);
        const double cov = product_comoment({col.data(), static_cast<std::size_t>(col.size())},
                                            as_span(panel.index_returns), {1, 1}, false);
        report.classical_beta.push_back(cov / var_m);
    }

    for (int order : sorted_orders) {
        report.weights.push_back(
            capi_direction(panel.returns, panel.index_returns, weights, order, trim, scaled, cfg));
    }
    return report;
}

RollingReport cmd_rolling(const ReturnsPanel& panel,
                          const CapiWeights& weights,
                          const TrimSpec& trim,
                          int order,
                          bool scaled,
                          const GridConfig& cfg,
                          int min_rows) {
    validate_panel(panel);
    if (panel.dates.size() != static_cast<std::size_t>(panel.returns.rows())) {
        throw std::invalid_argument("series length mismatch");
    }
    if (min_rows < 3) throw std::invalid_argument("window minimum must be at least 3");

    // Calendar-month partition, chronological (dates are sorted).
    std::vector<std::pair<std::string, std::vector<Eigen::Index>>> windows;
    for (std::size_t i = 0; i < panel.dates.size(); ++i) {
        const std::string label = panel.dates[i].month_label();
        if (windows.empty() || windows.back().first != label) {
            windows.push_back({label, {}});
        }
        windows.back().second.push_back(static_cast<Eigen::Index>(i));
    }

    RollingReport report;
    report.symbols = panel.symbols;
    report.index_symbol = panel.index_symbol;
    report.order = order;

    const Eigen::Index p = panel.returns.cols();
    for (const auto& [label, rows] : windows) {
        if (rows.size() < static_cast<std::size_t>(min_rows)) {
            report.skipped_windows.push_back(label);
            continue;
        }
        Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), p);
        std::vector<double> y(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            X.row(static_cast<Eigen::Index>(i)) = panel.returns.row(rows[i]);
            y[i] = panel.index_returns[static_cast<std::size_t>(rows[i])];
        }
        report.window_labels.push_back(label);
        report.weights.push_back(capi_direction(X, y, weights, order, trim, scaled, cfg));
    }
    if (report.weights.size() < 2) {
        throw std::runtime_error("fewer than 2 usable windows");
    }

    const auto n_win = static_cast<Eigen::Index>(report.weights.size());
    report.mean = Eigen::VectorXd::Zero(p);
    for (const Eigen::VectorXd& w : report.weights) report.mean += w;
    report.mean /= static_cast<double>(n_win);
    report.sd = Eigen::VectorXd::Zero(p);
    for (const Eigen::VectorXd& w : report.weights) {
        report.sd += (w - report.mean).cwiseAbs2();
    }
    report.sd = (report.sd / static_cast<double>(n_win - 1)).cwiseSqrt();
    return report;
}

// ===== Renderings =====

std::string beta_report_table(const BetaReport& report) {
    std::ostringstream out;
    out << "symbol        beta";
    for (int order : report.orders) out << "   order-" << order;
    out << '\n';
    for (std::size_t j = 0; j < report.symbols.size(); ++j) {
        char sym[32];
        std::snprintf(sym, sizeof(sym), "%-8s", report.symbols[j].c_str());
        out << sym << "  " << fmt3(report.classical_beta[j]);
        for (const Eigen::VectorXd& w : report.weights) {
            out << "    " << fmt3(w[static_cast<Eigen::Index>(j)]);
        }
        out << '\n';
    }
    return out.str();
}

std::string beta_report_csv(const BetaReport& report) {
    std::ostringstream out;
    out << "symbol,beta";
    for (int order : report.orders) out << ",order_" << order;
    out << '\n';
    for (std::size_t j = 0; j < report.symbols.size(); ++j) {
        out << report.symbols[j] << ',' << fmt_full(report.classical_beta[j]);
        for (const Eigen::VectorXd& w : report.weights) {
            out << ',' << fmt_full(w[static_cast<Eigen::Index>(j)]);
        }
        out << '\n';
    }
    return out.str();
}

std::string beta_report_json(const BetaReport& report) {
    nlohmann::json j;
    j["index"] = report.index_symbol;
    j["symbols"] = report.symbols;
    j["classical_beta"] = report.classical_beta;
    nlohmann::json by_order = nlohmann::json::object();
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
        std::vector<double> w(report.weights[i].data(),
                              report.weights[i].data() + report.weights[i].size());
        by_order["order_" + std::to_string(report.orders[i])] = w;
    }
    j["weights"] = by_order;
    return j.dump(2) + "\n";
}

std::string rolling_report_table(const RollingReport& report) {
    std::ostringstream out;
    out << "window  ";
    for (const std::string& s : report.symbols) {
        char sym[32];
        std::snprintf(sym, sizeof(sym), "  %8s", s.c_str());
        out << sym;
    }
    out << '\n';
    for (std::size_t i = 0; i < report.window_labels.size(); ++i) {
        out << report.window_labels[i];
        for (Eigen::Index jx = 0; jx < report.weights[i].size(); ++jx) {
            char cell[32];
            std::snprintf(cell, sizeof(cell), "  %8s", fmt3(report.weights[i][jx]).c_str());
            out << cell;
        }
        out << '\n';
    }
    out << "mean   ";
    for (Eigen::Index jx = 0; jx < report.mean.size(); ++jx) {
        char cell[32];
        std::snprintf(cell, sizeof(cell), "  %8s", fmt3(report.mean[jx]).c_str());
        out << cell;
    }
    out << "\nsd     ";
    for (Eigen::Index jx = 0; jx < report.sd.size(); ++jx) {
        char cell[32];
        std::snprintf(cell, sizeof(cell), "  %8s", fmt3(report.sd[jx]).c_str());
        out << cell;
    }
    out << '\n';
    if (!report.skipped_windows.empty()) {
        out << "skipped:";
        for (const std::string& s : report.skipped_windows) out << ' ' << s;
        out << '\n';
    }
    return out.str();
}

std::string rolling_report_csv(const RollingReport& report) {
    std::ostringstream out;
    out << "window";
    for (const std::string& s : report.symbols) out << ',' << s;
    out << '\n';
    for (std::size_t i = 0; i < report.window_labels.size(); ++i) {
        out << report.window_labels[i];
        for (Eigen::Index jx = 0; jx < report.weights[i].size(); ++jx) {
            out << ',' << fmt_full(report.weights[i][jx]);
        }
        out << '\n';
    }
    out << "mean";
    for (Eigen::Index jx = 0; jx < report.mean.size(); ++jx) out << ',' << fmt_full(report.mean[jx]);
    out << "\nsd";
    for (Eigen::Index jx = 0; jx < report.sd.size(); ++jx) out << ',' << fmt_full(report.sd[jx]);
    out << '\n';
    return out.str();
}

std::string rolling_report_json(const RollingReport& report) {
    nlohmann::json j;
    j["index"] = report.index_symbol;
    j["symbols"] = report.symbols;
    j["order"] = report.order;
    j["windows"] = report.window_labels;
    j["skipped_windows"] = report.skipped_windows;
    nlohmann::json w = nlohmann::json::array();
    for (const Eigen::VectorXd& row : report.weights) {
        w.push_back(std::vector<double>(row.data(), row.data() + row.size()));
    }
    j["weights"] = w;
    j["mean"] = std::vector<double>(report.mean.data(), report.mean.data() + report.mean.size());
    j["sd"] = std::vector<double>(report.sd.data(), report.sd.data() + report.sd.size());
    return j.dump(2) + "\n";
}

}  // namespace ppursuit
