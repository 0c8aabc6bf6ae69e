#include "ppursuit/comoments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppursuit {

namespace {

// ===== Validation helpers =====

void require_nonempty(std::span<const double> x) {
    if (x.empty()) {
        throw std::invalid_argument("empty input");
    }
}

void require_finite(std::span<const double> x) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("non-finite value in input");
        }
    }
}

void require_trim(const TrimSpec& trim) {
    if (trim.enabled && (trim.alpha < 0.0 || trim.alpha >= 0.5)) {
        throw std::invalid_argument("trim fraction must lie in [0, 0.5)");
    }
}

std::size_t tail_count(std::size_t n, const TrimSpec& trim) {
    if (!trim.enabled || trim.alpha <= 0.0) return 0;
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * trim.alpha / 2.0));
}

double plain_mean(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc / static_cast<double>(x.size());
}

// Mean of the order statistics with ranks [k, n - k). Selection instead of a
// full sort; ties at the cut points keep the same retained multiset either
// way, so the value matches the sorted definition.
double trimmed_mean_impl(std::span<const double> x, std::size_t k) {
    if (k == 0) return plain_mean(x);
    const std::size_t n = x.size();
    std::vector<double> buf(x.begin(), x.end());
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
    auto mid_first = buf.begin() + static_cast<std::ptrdiff_t>(k);
    auto mid_last = buf.begin() + static_cast<std::ptrdiff_t>(n - k);
    if (mid_last != buf.end()) {
        std::nth_element(mid_first, mid_last, buf.end());
    }
    double acc = 0.0;
    for (auto it = mid_first; it != mid_last; ++it) acc += *it;
    return acc / static_cast<double>(n - 2 * k);
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

// Scale of an already-centered series; threshold is relative to the largest
// magnitude of the ORIGINAL series so an all-constant input is degenerate no
// matter how large the constant.
double scale_of_centered(std::span<const double> centered, std::size_t k, double max_abs_original) {
    std::vector<double> sq(centered.size());
    for (std::size_t i = 0; i < centered.size(); ++i) sq[i] = centered[i] * centered[i];
    const double sigma = std::sqrt(trimmed_mean_impl(sq, k));
    if (sigma <= 1e-12 * max_abs_original) {
        throw degenerate_scale_error("degenerate scale: series is (nearly) constant");
    }
    return sigma;
}

double int_pow(double v, int e) {
    switch (e) {
        case 0: return 1.0;
        case 1: return v;
        case 2: return v * v;
        case 3: return v * v * v;
        default: return std::pow(v, e);
    }
}

}  // namespace

// ===== Public operations =====

double trimmed_mean(std::span<const double> x, const TrimSpec& trim) {
    require_nonempty(x);
    require_finite(x);
    require_trim(trim);
    return trimmed_mean_impl(x, tail_count(x.size(), trim));
}

double scale_estimate(std::span<const double> x, const TrimSpec& trim) {
    require_nonempty(x);
    require_finite(x);
    require_trim(trim);
    const std::size_t k = tail_count(x.size(), trim);
    const double center = trimmed_mean_impl(x, k);
    std::vector<double> centered(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) centered[i] = x[i] - center;
    return scale_of_centered(centered, k, max_abs(x));
}

double consistency_factor(std::size_t n) {
    if (n < 3) {
        throw std::invalid_argument("consistency factor needs n >= 3");
    }
    const double nd = static_cast<double>(n);
    return nd / ((nd - 1.0) * (nd - 2.0));
}

double product_comoment(std::span<const double> u,
                        std::span<const double> v,
                        const ComomentOrder& order,
                        bool scaled,
                        const TrimSpec& trim,
                        bool consistency) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("series length mismatch");
    }
    if (u.size() < 3) {
        throw std::invalid_argument("need at least 3 observations");
    }
    if (order.a < 1 || order.b < 1 || order.a + order.b < 2 || order.a + order.b > 4) {
        throw std::invalid_argument("co-moment order out of range");
    }
    require_finite(u);
    require_finite(v);
    require_trim(trim);

    const std::size_t n = u.size();
    const std::size_t k = tail_count(n, trim);

    const double mu_u = trimmed_mean_impl(u, k);
    const double mu_v = trimmed_mean_impl(v, k);
    std::vector<double> cu(n), cv(n), prod(n);
    for (std::size_t i = 0; i < n; ++i) {
        cu[i] = u[i] - mu_u;
        cv[i] = v[i] - mu_v;
        prod[i] = int_pow(cu[i], order.a) * int_pow(cv[i], order.b);
    }

    double m = trimmed_mean_impl(prod, k);

    if (consistency && order.a == 2 && order.b == 1 && k == 0) {
        // Rescale the sum form: m is Sum/n, the adjusted estimate is c * Sum.
        m *= static_cast<double>(n) * consistency_factor(n);
    }

    if (scaled) {
        const double su = scale_of_centered(cu, k, max_abs(u));
        const double sv = scale_of_centered(cv, k, max_abs(v));
        m /= int_pow(su, order.a) * int_pow(sv, order.b);
    }
    return m;
}

}  // namespace ppursuit
