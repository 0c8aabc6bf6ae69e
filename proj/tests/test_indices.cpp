#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ppursuit/indices.hpp"
#include "support/test_data.hpp"

using namespace ppursuit;
using testdata::as_span;
using testdata::frozen_u;
using testdata::frozen_v;
using Catch::Approx;

namespace {

IndexSpec capi_spec(const std::array<double, 6>& omega, bool scaled, double alpha = 0.0) {
    IndexSpec spec;
    spec.kind = IndexKind::capi;
    spec.capi_weights.omega = omega;
    spec.scaled = scaled;
    spec.trim = TrimSpec::of(alpha);
    return spec;
}

}  // namespace

TEST_CASE("requires_dependent", "[indices]") {
    REQUIRE_FALSE(requires_dependent(IndexKind::variance));
    for (IndexKind kind : {IndexKind::covariance, IndexKind::covariance_squared,
                           IndexKind::correlation, IndexKind::cosk1, IndexKind::cosk2,
                           IndexKind::coku1, IndexKind::coku2, IndexKind::coku3,
                           IndexKind::capi}) {
        REQUIRE(requires_dependent(kind));
    }
}

TEST_CASE("evaluate of elementary kinds", "[indices]") {
    const std::vector<double> u = frozen_u();
    const std::vector<double> v = frozen_v();

    SECTION("variance equals the unscaled (1,1) self co-moment") {
        IndexSpec spec;
        spec.kind = IndexKind::variance;
        REQUIRE(evaluate(spec, as_span(u)) ==
                product_comoment(as_span(u), as_span(u), {1, 1}, false));
    }
    SECTION("self-correlation is 1") {
        IndexSpec spec;
        spec.kind = IndexKind::correlation;
        REQUIRE(evaluate(spec, as_span(u), as_span(u)) == Approx(1.0).epsilon(1e-14));
    }
    SECTION("covariance_squared is the square of covariance") {
        IndexSpec cov, cov2;
        cov.kind = IndexKind::covariance;
        cov2.kind = IndexKind::covariance_squared;
        const double c = evaluate(cov, as_span(u), as_span(v));
        REQUIRE(evaluate(cov2, as_span(u), as_span(v)) == c * c);
    }
    SECTION("third and fourth order kinds defer to product_comoment") {
        IndexSpec spec;
        spec.kind = IndexKind::cosk1;
        spec.scaled = true;
        REQUIRE(evaluate(spec, as_span(u), as_span(v)) ==
                product_comoment(as_span(u), as_span(v), {2, 1}, true));
        spec.kind = IndexKind::coku2;
        spec.scaled = false;
        REQUIRE(evaluate(spec, as_span(u), as_span(v)) ==
                product_comoment(as_span(u), as_span(v), {2, 2}, false));
    }
}

TEST_CASE("composite index values", "[indices]") {
    const std::vector<double> u = frozen_u();
    const std::vector<double> v = frozen_v();

    SECTION("covariance-only weights reduce to plain covariance") {
        const IndexSpec spec = capi_spec({1, 0, 0, 0, 0, 0}, false);
        REQUIRE(evaluate(spec, as_span(u), as_span(v)) ==
                product_comoment(as_span(u), as_span(v), {1, 1}, false));
    }
    SECTION("default weights, scaled, frozen value") {
        const IndexSpec spec = capi_spec(CapiWeights{}.omega, true);
        REQUIRE(evaluate(spec, as_span(u), as_span(v)) ==
                Approx(-0.023967844892048073).epsilon(1e-11));
    }
    SECTION("default weights, scaled, trim 0.15, frozen value") {
        const IndexSpec spec = capi_spec(CapiWeights{}.omega, true, 0.15);
        REQUIRE(evaluate(spec, as_span(u), as_span(v)) ==
                Approx(0.046153583285005254).epsilon(1e-11));
    }
    SECTION("third-order prefix weights, unscaled, frozen value") {
        const IndexSpec spec = capi_spec({1, 0.5, 0.5, 0, 0, 0}, false);
        REQUIRE(evaluate(spec, as_span(u), as_span(v)) ==
                Approx(-19.487000000000002).epsilon(1e-12));
    }
    SECTION("four-point example, default weights, scaled") {
        const std::vector<double> scores = {-1, 0, 1, 2};
        const std::vector<double> y = {0, 1, -1, 2};
        const IndexSpec spec = capi_spec(CapiWeights{}.omega, true);
        REQUIRE(evaluate(spec, as_span(scores), as_span(y)) ==
                Approx(0.85865631459994929).epsilon(1e-11));
    }
}

TEST_CASE("composite index is additive across per-order terms", "[indices]") {
    const std::vector<double> u = frozen_u();
    const std::vector<double> v = frozen_v();
    const std::array<double, 6> omega = {0.8, -0.4, 0.25, 0.06, -0.02, 0.01};
    for (double alpha : {0.0, 0.15}) {
        const double full = evaluate(capi_spec(omega, true, alpha), as_span(u), as_span(v));
        double sum = 0.0;
        for (std::size_t k = 0; k < 6; ++k) {
            std::array<double, 6> unit{};
            unit[k] = omega[k];
            sum += evaluate(capi_spec(unit, true, alpha), as_span(u), as_span(v));
        }
        REQUIRE(full == Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("scaled composite index is invariant to positive rescaling", "[indices]") {
    const std::vector<double> u = frozen_u();
    const std::vector<double> v = frozen_v();
    std::vector<double> cu(u.size()), dv(v.size());
    const double c = 7.5, d = 0.003;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cu[i] = c * u[i];
        dv[i] = d * v[i];
    }
    const IndexSpec spec = capi_spec(CapiWeights{}.omega, true);
    const double base = evaluate(spec, as_span(u), as_span(v));
    REQUIRE(evaluate(spec, as_span(cu), as_span(dv)) == Approx(base).epsilon(1e-10));
}

TEST_CASE("zero-weight terms are skipped without evaluation", "[indices]") {
    // Inputs of magnitude 1e100 overflow the fourth-order products to
    // infinity; 0 * inf would poison the sum with NaN, so a finite result
    // proves the zero-weight terms were never computed.
    const std::vector<double> u = frozen_u();
    const std::vector<double> v = frozen_v();
    std::vector<double> hu(u.size()), hv(v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        hu[i] = u[i] * 1e100;
        hv[i] = v[i] * 1e100;
    }
    const IndexSpec spec = capi_spec({1, 0, 0, 0, 0, 0}, true);
    const double value = evaluate(spec, as_span(hu), as_span(hv));
    REQUIRE(std::isfinite(value));
    REQUIRE(value == Approx(evaluate(spec, as_span(u), as_span(v))).epsilon(1e-10));
}

TEST_CASE("search_objective squares only the signed second-order kinds", "[indices]") {
    const std::vector<double> u = frozen_u();
    const std::vector<double> v = frozen_v();
    IndexSpec spec;
    for (IndexKind kind : {IndexKind::covariance, IndexKind::correlation}) {
        spec.kind = kind;
        const double value = evaluate(spec, as_span(u), as_span(v));
        REQUIRE(search_objective(spec, as_span(u), as_span(v)) == value * value);
    }
    for (IndexKind kind : {IndexKind::covariance_squared, IndexKind::cosk1, IndexKind::coku3}) {
        spec.kind = kind;
        REQUIRE(search_objective(spec, as_span(u), as_span(v)) ==
                evaluate(spec, as_span(u), as_span(v)));
    }
    spec = capi_spec(CapiWeights{}.omega, true);
    REQUIRE(search_objective(spec, as_span(u), as_span(v)) ==
            evaluate(spec, as_span(u), as_span(v)));
    spec.kind = IndexKind::variance;
    REQUIRE(search_objective(spec, as_span(u)) == evaluate(spec, as_span(u)));
}

TEST_CASE("evaluate input validation", "[indices]") {
    const std::vector<double> u = frozen_u();
    const std::vector<double> shorter(u.begin(), u.begin() + 10);
    IndexSpec spec;
    spec.kind = IndexKind::covariance;
    REQUIRE_THROWS_WITH(evaluate(spec, as_span(u)), "dependent series required");
    REQUIRE_THROWS_AS(evaluate(spec, as_span(u), as_span(shorter)), std::invalid_argument);

    const std::vector<double> constant(u.size(), 1.0);
    spec.kind = IndexKind::correlation;
    REQUIRE_THROWS_AS(evaluate(spec, as_span(u), as_span(constant)), degenerate_scale_error);

    IndexSpec zero = capi_spec({0, 0, 0, 0, 0, 0}, true);
    REQUIRE_THROWS_AS(evaluate(zero, as_span(u), as_span(u)), std::invalid_argument);
}

TEST_CASE("index kind names round-trip", "[indices]") {
    for (IndexKind kind : {IndexKind::variance, IndexKind::covariance,
                           IndexKind::covariance_squared, IndexKind::correlation,
                           IndexKind::cosk1, IndexKind::cosk2, IndexKind::coku1,
                           IndexKind::coku2, IndexKind::coku3, IndexKind::capi}) {
        REQUIRE(index_kind_from_string(to_string(kind)) == kind);
    }
    REQUIRE_THROWS_AS(index_kind_from_string("skewness"), std::invalid_argument);
}

TEST_CASE("index text form round-trips", "[indices]") {
    SECTION("full composite spec round-trips") {
        const std::string text = "capi:1,0.5,0.5,-0.03,-0.03,-0.03:trim=0.15:scaled";
        const IndexSpec spec = parse_index_spec(text);
        REQUIRE(spec.kind == IndexKind::capi);
        REQUIRE(spec.capi_weights.omega ==
                std::array<double, 6>{1, 0.5, 0.5, -0.03, -0.03, -0.03});
        REQUIRE(spec.trim.enabled);
        REQUIRE(spec.trim.alpha == 0.15);
        REQUIRE(spec.scaled);
        REQUIRE(format_index_spec(spec) == text);
    }
    SECTION("segments may appear in any order") {
        const IndexSpec a = parse_index_spec("capi:trim=0.1:unscaled:1,0,0,0,0,0");
        REQUIRE_FALSE(a.scaled);
        REQUIRE(a.trim.alpha == 0.1);
        REQUIRE(a.capi_weights.omega[0] == 1.0);
    }
    SECTION("defaults") {
        const IndexSpec spec = parse_index_spec("cosk1");
        REQUIRE(spec.kind == IndexKind::cosk1);
        REQUIRE(spec.scaled);
        REQUIRE_FALSE(spec.trim.enabled);
        REQUIRE(format_index_spec(spec) == "cosk1:scaled");
    }
    SECTION("plain kinds format canonically") {
        IndexSpec spec;
        spec.kind = IndexKind::variance;
        REQUIRE(format_index_spec(spec) == "variance:scaled");
        spec.scaled = false;
        spec.trim = TrimSpec::of(0.2);
        REQUIRE(format_index_spec(spec) == "variance:trim=0.2:unscaled");
        REQUIRE(parse_index_spec(format_index_spec(spec)).trim.alpha == 0.2);
    }
    SECTION("rejects malformed text") {
        REQUIRE_THROWS_AS(parse_index_spec(""), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("sharpe"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("variance:1,0,0,0,0,0"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("capi:1,0,0,0,0"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("capi:1,0,0,0,0,0,0"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("capi:0,0,0,0,0,0"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("cosk1:trim=0.5"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("cosk1:trim=-0.1"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("cosk1:robust"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_index_spec("capi:1,x,0,0,0,0"), std::invalid_argument);
    }
}
