#include "ppursuit/indices.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace ppursuit {

namespace {

const char* kKindNames[] = {
    "variance", "covariance", "covariance_squared", "correlation",
    "cosk1",    "cosk2",      "coku1",              "coku2",
    "coku3",    "capi",
};

double parse_double(std::string_view text, const char* what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void require_some_weight(const CapiWeights& w) {
    for (double x : w.omega) {
        if (x != 0.0) return;
    }
    throw std::invalid_argument("composite index needs at least one nonzero weight");
}

}  // namespace

bool requires_dependent(IndexKind kind) {
    return kind != IndexKind::variance;
}

double evaluate(const IndexSpec& index,
                std::span<const double> scores,
                std::span<const double> y) {
    if (requires_dependent(index.kind)) {
        if (y.empty()) {
            throw std::invalid_argument("dependent series required");
        }
        if (y.size() != scores.size()) {
            throw std::invalid_argument("series length mismatch");
        }
    }
    const TrimSpec& trim = index.trim;
    switch (index.kind) {
        case IndexKind::variance:
            return product_comoment(scores, scores, {1, 1}, false, trim);
        case IndexKind::covariance:
            return product_comoment(scores, y, {1, 1}, false, trim);
        case IndexKind::covariance_squared: {
            const double c = product_comoment(scores, y, {1, 1}, false, trim);
            return c * c;
        }
        case IndexKind::correlation:
            return product_comoment(scores, y, {1, 1}, true, trim);
        case IndexKind::cosk1:
            return product_comoment(scores, y, {2, 1}, index.scaled, trim);
        case IndexKind::cosk2:
            return product_comoment(scores, y, {1, 2}, index.scaled, trim);
        case IndexKind::coku1:
            return product_comoment(scores, y, {3, 1}, index.scaled, trim);
        case IndexKind::coku2:
            return product_comoment(scores, y, {2, 2}, index.scaled, trim);
        case IndexKind::coku3:
            return product_comoment(scores, y, {1, 3}, index.scaled, trim);
        case IndexKind::capi: {
            require_some_weight(index.capi_weights);
            double acc = 0.0;
            for (std::size_t k = 0; k < kCapiOrders.size(); ++k) {
                const double w = index.capi_weights.omega[k];
                if (w == 0.0) continue;  // zero-weight terms are never evaluated
                acc += w * product_comoment(scores, y, kCapiOrders[k], index.scaled, trim);
            }
            return acc;
        }
    }
    throw std::logic_error("unreachable index kind");
}

double search_objective(const IndexSpec& index,
                        std::span<const double> scores,
                        std::span<const double> y) {
    const double v = evaluate(index, scores, y);
    if (index.kind == IndexKind::covariance || index.kind == IndexKind::correlation) {
        return v * v;
    }
    return v;
}

std::string to_string(IndexKind kind) {
    return kKindNames[static_cast<int>(kind)];
}

IndexKind index_kind_from_string(std::string_view name) {
    for (int i = 0; i < 10; ++i) {
        if (name == kKindNames[i]) return static_cast<IndexKind>(i);
    }
    throw std::invalid_argument("unknown index kind '" + std::string(name) + "'");
}

IndexSpec parse_index_spec(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty index string");
    }
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(':', pos);
        if (next == std::string_view::npos) {
            parts.push_back(text.substr(pos));
            break;
        }
        parts.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }

    IndexSpec spec;
    spec.kind = index_kind_from_string(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::string_view part = parts[i];
        if (part == "scaled") {
            spec.scaled = true;
        } else if (part == "unscaled") {
            spec.scaled = false;
        } else if (part.starts_with("trim=")) {
            const double alpha = parse_double(part.substr(5), "trim fraction");
            if (alpha < 0.0 || alpha >= 0.5) {
                throw std::invalid_argument("trim fraction must lie in [0, 0.5)");
            }
            spec.trim = TrimSpec::of(alpha);
        } else if (part.find(',') != std::string_view::npos) {
            if (spec.kind != IndexKind::capi) {
                throw std::invalid_argument("weights are only valid for the capi kind");
            }
            std::array<double, 6> w{};
            std::size_t idx = 0, start = 0;
            const std::string body(part);
            while (start <= body.size()) {
                const std::size_t comma = body.find(',', start);
                const std::string_view tok =
                    std::string_view(body).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (idx >= 6) throw std::invalid_argument("expected exactly 6 weights");
                w[idx++] = parse_double(tok, "weight");
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            if (idx != 6) throw std::invalid_argument("expected exactly 6 weights");
            spec.capi_weights.omega = w;
        } else {
            throw std::invalid_argument("unrecognised index segment '" + std::string(part) + "'");
        }
    }
    if (spec.kind == IndexKind::capi) {
        require_some_weight(spec.capi_weights);
    }
    return spec;
}

std::string format_index_spec(const IndexSpec& index) {
    std::string out = to_string(index.kind);
    if (index.kind == IndexKind::capi) {
        out += ':';
        for (std::size_t k = 0; k < 6; ++k) {
            if (k) out += ',';
            out += format_double(index.capi_weights.omega[k]);
        }
    }
    if (index.trim.enabled) {
        out += ":trim=" + format_double(index.trim.alpha);
    }
    out += index.scaled ? ":scaled" : ":unscaled";
    return out;
}

}  // namespace ppursuit
