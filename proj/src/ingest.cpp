#include "ppursuit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ppursuit {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.emplace_back(strip(std::string_view(line).substr(start)));
            break;
        }
        cells.emplace_back(strip(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

bool parse_number(std::string_view text, double& out) {
    text = strip(text);
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

int parse_int_strict(std::string_view text, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string("cannot parse ") + what);
    }
    return value;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

// ===== Date =====

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::string Date::month_label() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

Date Date::parse(std::string_view text) {
    text = strip(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw std::invalid_argument("cannot parse date '" + std::string(text) + "'");
    }
    Date d;
    d.year = parse_int_strict(text.substr(0, 4), "date");
    d.month = parse_int_strict(text.substr(5, 2), "date");
    d.day = parse_int_strict(text.substr(8, 2), "date");
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
        throw std::invalid_argument("date out of range '" + std::string(text) + "'");
    }
    return d;
}

// ===== Return methods =====

ReturnMethod return_method_from_string(std::string_view name) {
    if (name == "simple") return ReturnMethod::simple;
    if (name == "diff") return ReturnMethod::diff;
    if (name == "log") return ReturnMethod::log;
    throw std::invalid_argument("unknown return method '" + std::string(name) + "'");
}

std::string to_string(ReturnMethod method) {
    switch (method) {
        case ReturnMethod::simple: return "simple";
        case ReturnMethod::diff: return "diff";
        case ReturnMethod::log: return "log";
    }
    throw std::logic_error("unreachable return method");
}

// ===== OHLC ingestion =====

PriceSeries load_ohlc_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);

    const std::vector<std::pair<std::string, const char*>> wanted = {
        {"date", "Date"},           {"open", "Open"},   {"high", "High"},
        {"low", "Low"},             {"close", "Close"}, {"adj close", "Adj Close"},
        {"volume", "Volume"},
    };
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[lower(header[i])] = i;
    for (const auto& [key, name] : wanted) {
        if (!col.count(key)) {
            throw std::runtime_error(path + ": missing column '" + std::string(name) + "'");
        }
    }
    const std::size_t c_date = col["date"], c_open = col["open"], c_high = col["high"],
                      c_low = col["low"], c_close = col["close"], c_adj = col["adj close"];

    struct Row {
        Date date;
        double open, high, low, close, adj;
    };
    std::vector<Row> rows;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        ++data_row;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() < header.size()) {
            throw std::runtime_error(path + ": row " + std::to_string(data_row) + ": too few fields");
        }
        Row r;
        try {
            r.date = Date::parse(cells[c_date]);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": row " + std::to_string(data_row) +
                                     ": cannot parse Date '" + cells[c_date] + "'");
        }
        const std::pair<const char*, std::pair<std::size_t, double Row::*>> fields[] = {
            {"Open", {c_open, &Row::open}},   {"High", {c_high, &Row::high}},
            {"Low", {c_low, &Row::low}},      {"Close", {c_close, &Row::close}},
            {"Adj Close", {c_adj, &Row::adj}},
        };
        for (const auto& [name, spec] : fields) {
            double value = 0.0;
            if (!parse_number(cells[spec.first], value)) {
                throw std::runtime_error(path + ": row " + std::to_string(data_row) +
                                         ": cannot parse " + name + " '" + cells[spec.first] + "'");
            }
            if (value <= 0.0) {
                throw std::runtime_error(path + ": row " + std::to_string(data_row) +
                                         ": non-positive " + name);
            }
            r.*(spec.second) = value;
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw std::runtime_error(path + ": duplicate date " + rows[i].date.to_string());
        }
    }

    PriceSeries out;
    out.symbol = std::filesystem::path(path).stem().string();
    out.dates.reserve(rows.size());
    for (const Row& r : rows) {
        out.dates.push_back(r.date);
        out.open.push_back(r.open);
        out.high.push_back(r.high);
        out.low.push_back(r.low);
        out.close.push_back(r.close);
        out.adj_close.push_back(r.adj);
    }
    return out;
}

// ===== Return computation =====

namespace {

std::vector<double> prices_to_returns(const std::vector<double>& prices, ReturnMethod method) {
    if (prices.size() < 2) throw std::invalid_argument("need at least 2 prices");
    std::vector<double> out(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        const double prev = prices[i - 1], cur = prices[i];
        switch (method) {
            case ReturnMethod::simple:
                if (prev == 0.0) throw std::invalid_argument("zero price in simple return");
                out[i - 1] = cur / prev - 1.0;
                break;
            case ReturnMethod::diff:
                out[i - 1] = cur - prev;
                break;
            case ReturnMethod::log:
                if (prev <= 0.0 || cur <= 0.0) {
                    throw std::invalid_argument("non-positive price in log return");
                }
                out[i - 1] = std::log(cur / prev);
                break;
        }
    }
    return out;
}

const std::vector<double>& price_field(const PriceSeries& s, PriceField field) {
    return field == PriceField::adj_close ? s.adj_close : s.close;
}

}  // namespace

std::vector<double> to_returns(const PriceSeries& prices, ReturnMethod method, PriceField field) {
    return prices_to_returns(price_field(prices, field), method);
}

ReturnsPanel align(const std::vector<PriceSeries>& securities,
                   const PriceSeries& market,
                   ReturnMethod method,
                   PriceField field) {
    if (securities.empty()) throw std::invalid_argument("empty input");
    std::set<std::string> seen;
    for (const PriceSeries& s : securities) {
        if (!seen.insert(s.symbol).second) {
            throw std::invalid_argument("duplicate symbol '" + s.symbol + "'");
        }
    }
    if (seen.count(market.symbol)) {
        throw std::invalid_argument("duplicate symbol '" + market.symbol + "'");
    }

    // Intersection of all date sets, kept in chronological order.
    std::vector<Date> common(market.dates);
    for (const PriceSeries& s : securities) {
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), s.dates.begin(), s.dates.end(),
                              std::back_inserter(next));
        common.swap(next);
    }
    if (common.size() < 3) throw std::runtime_error("fewer than 3 common dates after alignment");

    auto joined_prices = [&](const PriceSeries& s) {
        const std::vector<double>& px = price_field(s, field);
        std::vector<double> out;
        out.reserve(common.size());
        std::size_t pos = 0;
        for (const Date& d : common) {
            while (s.dates[pos] < d) ++pos;
            out.push_back(px[pos]);
        }
        return out;
    };

    ReturnsPanel panel;
    panel.dates.assign(common.begin() + 1, common.end());
    panel.index_symbol = market.symbol;
    panel.index_returns = prices_to_returns(joined_prices(market), method);
    panel.returns.resize(static_cast<Eigen::Index>(common.size() - 1),
                         static_cast<Eigen::Index>(securities.size()));
    for (std::size_t j = 0; j < securities.size(); ++j) {
        panel.symbols.push_back(securities[j].symbol);
        const std::vector<double> r = prices_to_returns(joined_prices(securities[j]), method);
        for (std::size_t i = 0; i < r.size(); ++i) {
            panel.returns(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[i];
        }
    }
    return panel;
}

// ===== Wide panels =====

PricePanel load_price_panel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2 || lower(header[0]) != "date") {
        throw std::runtime_error(path + ": first column must be Date");
    }

    PricePanel panel;
    panel.columns.assign(header.begin() + 1, header.end());
    std::vector<std::vector<double>> rows;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        ++data_row;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error(path + ": row " + std::to_string(data_row) + ": field count mismatch");
        }
        try {
            panel.dates.push_back(Date::parse(cells[0]));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": row " + std::to_string(data_row) +
                                     ": cannot parse Date '" + cells[0] + "'");
        }
        std::vector<double> row(header.size() - 1);
        for (std::size_t j = 1; j < cells.size(); ++j) {
            if (!parse_number(cells[j], row[j - 1])) {
                throw std::runtime_error(path + ": row " + std::to_string(data_row) +
                                         ": cannot parse " + header[j] + " '" + cells[j] + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    for (std::size_t i = 1; i < panel.dates.size(); ++i) {
        if (!(panel.dates[i - 1] < panel.dates[i])) {
            throw std::runtime_error(path + ": dates must be strictly increasing");
        }
    }
    panel.prices.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(panel.columns.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            panel.prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return panel;
}

ReturnsPanel panel_to_returns(const PricePanel& panel,
                              const std::string& index_column,
                              ReturnMethod method) {
    const auto it = std::find(panel.columns.begin(), panel.columns.end(), index_column);
    if (it == panel.columns.end()) {
        throw std::invalid_argument("index column '" + index_column + "' not found");
    }
    if (panel.dates.size() < 3) throw std::runtime_error("fewer than 3 rows in panel");
    const std::size_t index_pos = static_cast<std::size_t>(it - panel.columns.begin());

    ReturnsPanel out;
    out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
    out.index_symbol = index_column;
    const std::size_t n_sym = panel.columns.size() - 1;
    out.returns.resize(static_cast<Eigen::Index>(panel.dates.size() - 1),
                       static_cast<Eigen::Index>(n_sym));
    std::size_t dst = 0;
    for (std::size_t j = 0; j < panel.columns.size(); ++j) {
        std::vector<double> col(panel.prices.col(static_cast<Eigen::Index>(j)).data(),
                                panel.prices.col(static_cast<Eigen::Index>(j)).data() + panel.prices.rows());
        std::vector<double> r = prices_to_returns(col, method);
        if (j == index_pos) {
            out.index_returns = std::move(r);
        } else {
            out.symbols.push_back(panel.columns[j]);
            for (std::size_t i = 0; i < r.size(); ++i) {
                out.returns(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(dst)) = r[i];
            }
            ++dst;
        }
    }
    return out;
}

std::string returns_panel_csv(const ReturnsPanel& panel) {
    std::ostringstream out;
    out << "Date";
    for (const std::string& s : panel.symbols) out << ',' << s;
    if (!panel.index_returns.empty()) out << ',' << panel.index_symbol;
    out << '\n';
    for (Eigen::Index i = 0; i < panel.returns.rows(); ++i) {
        out << panel.dates[static_cast<std::size_t>(i)].to_string();
        for (Eigen::Index j = 0; j < panel.returns.cols(); ++j) {
            out << ',' << fmt_full(panel.returns(i, j));
        }
        if (!panel.index_returns.empty()) {
            out << ',' << fmt_full(panel.index_returns[static_cast<std::size_t>(i)]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ppursuit
