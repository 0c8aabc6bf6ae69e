#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ppursuit {

/// A univariate sample. Ops below expect finite entries and throw otherwise.
using Series = std::vector<double>;

/// Thrown when a scale estimate is numerically zero and a scaled quantity
/// would divide by it. Callers that probe many candidate projections catch
/// this specific type to skip degenerate candidates.
class degenerate_scale_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Symmetric trimming rule. When enabled, k = floor(n * alpha / 2)
/// observations are removed from each tail (of the sorted values) before
/// averaging. alpha = 0 reproduces the untrimmed estimate bit-for-bit.
struct TrimSpec {
    bool enabled = false;
    double alpha = 0.0;

    static TrimSpec none() { return {}; }
    static TrimSpec of(double alpha) { return {alpha > 0.0, alpha}; }
};

/// Exponent pair (a, b) of a product co-moment m_ab = mean(u^a * v^b) on
/// centered series. Total order a + b ranges from 2 (covariance) to 4.
struct ComomentOrder {
    int a = 1;
    int b = 1;
};

/// Mean of x after removing floor(n * alpha / 2) smallest and largest
/// entries. With trimming disabled (or k = 0) this is the plain mean over
/// the original element order.
double trimmed_mean(std::span<const double> x, const TrimSpec& trim);

/// Root of the (optionally trimmed) mean of squared deviations from the
/// (optionally trimmed) mean; population flavour, divisor n. Throws
/// degenerate_scale_error when the result is below 1e-12 * max|x|.
double scale_estimate(std::span<const double> x, const TrimSpec& trim);

/// Small-sample consistency factor n / ((n - 1) * (n - 2)) applied to the
/// sum form of the (2,1) co-moment when requested.
double consistency_factor(std::size_t n);

/// Product co-moment of order (a, b): the (optionally trimmed) mean of
/// cu^a * cv^b where cu, cv are u and v centered by their (optionally
/// trimmed) means. With scaled = true the result is divided by
/// sigma_u^a * sigma_v^b. The opt-in consistency flag rescales the (2,1)
/// co-moment's sum form by consistency_factor(n); it is ignored for other
/// orders and whenever trimming is active.
double product_comoment(std::span<const double> u,
                        std::span<const double> v,
                        const ComomentOrder& order,
                        bool scaled,
                        const TrimSpec& trim = {},
                        bool consistency = false);

}  // namespace ppursuit
