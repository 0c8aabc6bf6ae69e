// Command-line front end: generalized betas, rolling-window weights, model
// fit/predict and the factor-recovery simulation, all on top of the
// projection-pursuit library.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ppursuit/ingest.hpp"
#include "ppursuit/model_io.hpp"
#include "ppursuit/report.hpp"
#include "ppursuit/simulation.hpp"

namespace {

using namespace ppursuit;

// Writes through a temp file + rename so readers never see partial output.
void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << text;
        if (!out.good()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

struct NumericTable {
    std::vector<std::string> columns;
    Eigen::MatrixXd values;
};

// Generic numeric CSV with a header; a leading "date" column is tolerated
// and ignored so exported panels can be fed back in directly.
NumericTable load_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");

    auto split = [](const std::string& text) {
        std::vector<std::string> cells;
        std::stringstream ss(text);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
            cells.push_back(cell);
        }
        if (!text.empty() && text.back() == ',') cells.emplace_back();
        return cells;
    };

    const std::vector<std::string> header = split(line);
    if (header.empty()) throw std::runtime_error(path + ": empty header");
    std::string first = header[0];
    std::transform(first.begin(), first.end(), first.begin(), ::tolower);
    const std::size_t start_col = (first == "date") ? 1 : 0;
    if (header.size() <= start_col) throw std::runtime_error(path + ": no numeric columns");

    NumericTable table;
    table.columns.assign(header.begin() + static_cast<std::ptrdiff_t>(start_col), header.end());
    std::vector<std::vector<double>> rows;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        ++data_row;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error(path + ": row " + std::to_string(data_row) + ": field count mismatch");
        }
        std::vector<double> row(table.columns.size());
        for (std::size_t j = start_col; j < cells.size(); ++j) {
            double v = 0.0;
            const std::string& cell = cells[j];
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw std::runtime_error(path + ": row " + std::to_string(data_row) +
                                         ": cannot parse " + header[j] + " '" + cell + "'");
            }
            row[j - start_col] = v;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    table.values.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(table.columns.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return table;
}

CapiWeights weights_from(const std::vector<double>& omega) {
    CapiWeights w;
    if (omega.empty()) return w;
    if (omega.size() != 6) throw CLI::ValidationError("--omega", "expected exactly 6 weights");
    std::copy(omega.begin(), omega.end(), w.omega.begin());
    return w;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projection-pursuit co-moment analysis"};
    app.require_subcommand(1);

    // ----- betas -----
    std::string b_panel, b_index_col, b_returns = "diff", b_format = "table", b_out;
    std::vector<double> b_omega;
    double b_trim = 0.0;
    std::vector<int> b_orders = {2, 3, 4};
    bool b_unscaled = false;
    auto* betas = app.add_subcommand("betas", "generalized betas of a returns panel");
    betas->add_option("--panel", b_panel, "wide price panel CSV")->required();
    betas->add_option("--index-col", b_index_col, "market/index column name")->required();
    betas->add_option("--omega", b_omega, "6 co-moment weights")->delimiter(',');
    betas->add_option("--trim", b_trim, "trim fraction in [0, 0.5)");
    betas->add_option("--orders", b_orders, "co-moment orders (subset of 2,3,4)")->delimiter(',');
    betas->add_option("--returns", b_returns, "simple|diff|log (default diff)");
    betas->add_flag("--unscaled", b_unscaled, "use unscaled co-moments");
    betas->add_option("--format", b_format, "table|csv|json");
    betas->add_option("--out", b_out, "output path (stdout when omitted)");

    // ----- rolling -----
    std::string r_panel, r_index_col, r_window = "monthly", r_returns = "diff", r_format = "table", r_out;
    std::vector<double> r_omega;
    double r_trim = 0.0;
    int r_order = 3, r_min_rows = 15;
    bool r_unscaled = false;
    auto* rolling = app.add_subcommand("rolling", "per-month composite weights");
    rolling->add_option("--panel", r_panel, "wide price panel CSV")->required();
    rolling->add_option("--index-col", r_index_col, "market/index column name")->required();
    rolling->add_option("--window", r_window, "window scheme (monthly)");
    rolling->add_option("--omega", r_omega, "6 co-moment weights")->delimiter(',');
    rolling->add_option("--trim", r_trim, "trim fraction in [0, 0.5)");
    rolling->add_option("--order", r_order, "co-moment order (2, 3 or 4)");
    rolling->add_option("--min-rows", r_min_rows, "minimum rows per window");
    rolling->add_option("--returns", r_returns, "simple|diff|log (default diff)");
    rolling->add_flag("--unscaled", r_unscaled, "use unscaled co-moments");
    rolling->add_option("--format", r_format, "table|csv|json");
    rolling->add_option("--out", r_out, "output path (stdout when omitted)");

    // ----- fit -----
    std::string f_x, f_y_col, f_index = "variance", f_model_out;
    int f_components = 1;
    GridConfig f_grid;
    auto* fit_cmd = app.add_subcommand("fit", "fit a projection-pursuit model");
    fit_cmd->add_option("--x", f_x, "numeric CSV of predictors")->required();
    fit_cmd->add_option("--y-col", f_y_col, "dependent column inside --x");
    fit_cmd->add_option("--index", f_index, "index spec, e.g. capi:1,0.5,0.5,0,0,0:trim=0.15:scaled");
    fit_cmd->add_option("--components", f_components, "number of components");
    fit_cmd->add_option("--grid-angles", f_grid.n_angles, "angles per plane scan");
    fit_cmd->add_option("--tol", f_grid.tol, "sweep convergence tolerance");
    fit_cmd->add_option("--model-out", f_model_out, "model JSON path")->required();

    // ----- predict -----
    std::string p_model, p_x, p_out;
    auto* predict_cmd = app.add_subcommand("predict", "predict with a fitted model");
    predict_cmd->add_option("--model", p_model, "model JSON path")->required();
    predict_cmd->add_option("--x", p_x, "numeric CSV of predictors")->required();
    predict_cmd->add_option("--out", p_out, "output CSV path (stdout when omitted)");

    // ----- simulate -----
    SimSetting s_setting;
    std::string s_contam = "none", s_out;
    std::uint64_t s_seed = 1;
    auto* simulate = app.add_subcommand("simulate", "factor-recovery study");
    simulate->add_option("--sigma-eps", s_setting.sigma_eps, "noise sd on X");
    simulate->add_option("--nu", s_setting.nu, "degrees of freedom");
    simulate->add_option("--phi", s_setting.phi, "contamination fraction (0 or 0.1)");
    simulate->add_option("--contam", s_contam, "none|latent|x");
    simulate->add_option("--omega-offdiag", s_setting.omega_offdiag, "latent correlation");
    simulate->add_option("--trim", s_setting.trim_alpha, "trim fraction in [0, 0.5)");
    simulate->add_option("--runs", s_setting.n_runs, "replicates");
    simulate->add_option("--n", s_setting.n, "sample size per replicate");
    simulate->add_option("--seed", s_seed, "master seed");
    simulate->add_option("--out", s_out, "output CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*betas) {
            const PricePanel prices = load_price_panel(b_panel);
            const ReturnsPanel panel =
                panel_to_returns(prices, b_index_col, return_method_from_string(b_returns));
            const BetaReport report = cmd_betas(panel, weights_from(b_omega),
                                                TrimSpec::of(b_trim), b_orders, !b_unscaled);
            std::string text;
            if (b_format == "table") text = beta_report_table(report);
            else if (b_format == "csv") text = beta_report_csv(report);
            else if (b_format == "json") text = beta_report_json(report);
            else throw std::invalid_argument("unknown format '" + b_format + "'");
            write_output(text, b_out);
        } else if (*rolling) {
            if (r_window != "monthly") {
                throw std::invalid_argument("unknown window scheme '" + r_window + "'");
            }
            const PricePanel prices = load_price_panel(r_panel);
            const ReturnsPanel panel =
                panel_to_returns(prices, r_index_col, return_method_from_string(r_returns));
            const RollingReport report =
                cmd_rolling(panel, weights_from(r_omega), TrimSpec::of(r_trim), r_order,
                            !r_unscaled, {}, r_min_rows);
            std::string text;
            if (r_format == "table") text = rolling_report_table(report);
            else if (r_format == "csv") text = rolling_report_csv(report);
            else if (r_format == "json") text = rolling_report_json(report);
            else throw std::invalid_argument("unknown format '" + r_format + "'");
            write_output(text, r_out);
        } else if (*fit_cmd) {
            const NumericTable table = load_numeric_csv(f_x);
            const IndexSpec index = parse_index_spec(f_index);
            DataMatrix X;
            std::vector<double> y;
            if (f_y_col.empty()) {
                X.values = table.values;
                X.column_names = table.columns;
            } else {
                const auto it = std::find(table.columns.begin(), table.columns.end(), f_y_col);
                if (it == table.columns.end()) {
                    throw std::invalid_argument("column '" + f_y_col + "' not found");
                }
                const auto y_pos = static_cast<Eigen::Index>(it - table.columns.begin());
                y.assign(table.values.col(y_pos).data(),
                         table.values.col(y_pos).data() + table.values.rows());
                X.values.resize(table.values.rows(), table.values.cols() - 1);
                Eigen::Index dst = 0;
                for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
                    if (j == y_pos) continue;
                    X.values.col(dst++) = table.values.col(j);
                    X.column_names.push_back(table.columns[static_cast<std::size_t>(j)]);
                }
            }
            const PursuitModel model =
                fit(X, {y.data(), y.size()}, index, f_components, f_grid);
            save_model(model, f_model_out);
        } else if (*predict_cmd) {
            const PursuitModel model = load_model(p_model);
            const NumericTable table = load_numeric_csv(p_x);
            DataMatrix X{table.values, table.columns};
            const std::vector<double> yhat = predict(model, X);
            std::string text = "prediction\n";
            for (double v : yhat) text += fmt_full(v) + "\n";
            write_output(text, p_out);
        } else if (*simulate) {
            s_setting.contam = contam_target_from_string(s_contam);
            const SimSummary summary = run_simulation(s_setting, s_seed);
            write_output(summary_csv_header() + "\n" + summary_csv_row(summary) + "\n", s_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
