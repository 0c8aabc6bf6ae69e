#pragma once

#include <array>
#include <string>
#include <string_view>

#include "ppursuit/comoments.hpp"

namespace ppursuit {

/// Projection index families. The second-order kinds come in unscaled
/// (covariance), squared (covariance_squared) and scaled (correlation)
/// flavours; cosk*/coku* are the four third/fourth order cross moments and
/// capi is their weighted combination.
enum class IndexKind {
    variance,
    covariance,
    covariance_squared,
    correlation,
    cosk1,  // order (2,1)
    cosk2,  // order (1,2)
    coku1,  // order (3,1)
    coku2,  // order (2,2)
    coku3,  // order (1,3)
    capi,
};

/// Canonical order of the six co-moment terms entering the composite index:
/// (1,1), (2,1), (1,2), (3,1), (2,2), (1,3).
inline constexpr std::array<ComomentOrder, 6> kCapiOrders = {{
    {1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}, {1, 3},
}};

/// Weights on the six co-moment terms, in kCapiOrders order. The default is
/// the market-analysis vector: full weight on covariance, half weight on the
/// third-order terms, small negative weight on the fourth-order terms.
struct CapiWeights {
    std::array<double, 6> omega = {1.0, 0.5, 0.5, -0.03, -0.03, -0.03};
};

/// A fully specified projection index. `scaled` selects the normalised
/// ("acute") variant of the cosk*/coku*/capi kinds; variance and covariance
/// are unscaled by definition and correlation is scaled by definition, so
/// the flag is ignored for those kinds. `trim` drives every internal mean
/// and scale estimate, giving the robust variant of any kind.
struct IndexSpec {
    IndexKind kind = IndexKind::variance;
    CapiWeights capi_weights{};
    bool scaled = true;
    TrimSpec trim{};
};

/// True for every kind except variance (those need a dependent series y).
bool requires_dependent(IndexKind kind);

/// Value of the index for projected scores u (and dependent series y; pass
/// an empty span for the variance index). Throws std::invalid_argument when
/// y is required but absent, and degenerate_scale_error when a scaled kind
/// meets a constant series.
double evaluate(const IndexSpec& index,
                std::span<const double> scores,
                std::span<const double> y = {});

/// The quantity the direction search maximises. Equals evaluate() except for
/// the covariance and correlation kinds, whose square is maximised (their
/// optima are defined up to sign; the squared objective makes the search
/// sign-free and a separate convention fixes the reported sign).
double search_objective(const IndexSpec& index,
                        std::span<const double> scores,
                        std::span<const double> y = {});

/// Textual form: kind[:w1,w2,w3,w4,w5,w6][:trim=alpha][:scaled|unscaled],
/// e.g. "capi:1,0.5,0.5,-0.03,-0.03,-0.03:trim=0.15:scaled". Segments after
/// the kind may appear in any order; weights are only valid for capi.
IndexSpec parse_index_spec(std::string_view text);
std::string format_index_spec(const IndexSpec& index);

std::string to_string(IndexKind kind);
IndexKind index_kind_from_string(std::string_view name);

}  // namespace ppursuit
