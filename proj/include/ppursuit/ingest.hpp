#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ppursuit {

/// Calendar date; comparisons are chronological.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
    std::string to_string() const;        ///< YYYY-MM-DD
    std::string month_label() const;      ///< YYYY-MM
    static Date parse(std::string_view text);
};

/// Daily price history of one symbol; all vectors share the dates' length
/// and dates are strictly increasing.
struct PriceSeries {
    std::string symbol;
    std::vector<Date> dates;
    std::vector<double> open, high, low, close, adj_close;
};

enum class ReturnMethod { simple, diff, log };
enum class PriceField { adj_close, close };

ReturnMethod return_method_from_string(std::string_view name);
std::string to_string(ReturnMethod method);

/// Aligned return matrix: row i holds the returns realised on dates[i],
/// one column per security, plus the market/index return series y.
struct ReturnsPanel {
    std::vector<Date> dates;
    std::vector<std::string> symbols;
    Eigen::MatrixXd returns;   ///< n x p security returns
    std::vector<double> index_returns;
    std::string index_symbol;
};

/// Parses a daily OHLC CSV export (header Date, Open, High, Low, Close,
/// Adj Close, Volume in any order, case-insensitive). Rows are sorted by
/// date; duplicate dates, non-positive prices or unparseable fields are
/// reported with their data row number. The symbol defaults to the file's
/// stem.
PriceSeries load_ohlc_csv(const std::string& path);

/// Period returns of one series: simple P_t/P_{t-1} - 1, diff P_t - P_{t-1}
/// or log ln(P_t / P_{t-1}); length is one less than the price count.
std::vector<double> to_returns(const PriceSeries& prices,
                               ReturnMethod method,
                               PriceField field = PriceField::adj_close);

/// Inner-joins all series (securities and market) on dates, then converts
/// the joined prices to returns. Throws when fewer than 3 common dates
/// remain or symbols collide.
ReturnsPanel align(const std::vector<PriceSeries>& securities,
                   const PriceSeries& market,
                   ReturnMethod method,
                   PriceField field = PriceField::adj_close);

/// Wide price panel: date column plus one numeric column per symbol.
struct PricePanel {
    std::vector<Date> dates;
    std::vector<std::string> columns;
    Eigen::MatrixXd prices;
};

/// Parses a wide panel CSV (first header cell a date column, remaining
/// cells symbol names; every data cell numeric, dates strictly increasing).
PricePanel load_price_panel(const std::string& path);

/// Converts a price panel to a returns panel, splitting off `index_column`
/// as the market series.
ReturnsPanel panel_to_returns(const PricePanel& panel,
                              const std::string& index_column,
                              ReturnMethod method);

/// CSV text of the panel: date, one column per symbol, index last.
std::string returns_panel_csv(const ReturnsPanel& panel);

}  // namespace ppursuit
