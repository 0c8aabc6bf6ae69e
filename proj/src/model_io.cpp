#include "ppursuit/model_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace ppursuit {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    const auto nrows = static_cast<Eigen::Index>(j.size());
    const auto ncols = nrows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Eigen::MatrixXd m(nrows, ncols);
    for (Eigen::Index i = 0; i < nrows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != ncols) {
            throw std::invalid_argument("ragged matrix in model file");
        }
        for (Eigen::Index jx = 0; jx < ncols; ++jx) m(i, jx) = j[i][jx].get<double>();
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

}  // namespace

std::string model_to_json(const PursuitModel& model) {
    json j;
    j["format"] = "ppursuit-model";
    j["version"] = 1;
    j["weights"] = matrix_to_json(model.weights);
    j["loadings"] = matrix_to_json(model.loadings);
    j["gamma"] = vector_to_json(model.gamma);
    j["x_center"] = vector_to_json(model.x_center);
    j["y_center"] = model.y_center;
    j["components"] = model.components;
    j["has_y"] = model.has_y;
    j["truncated"] = model.truncated;
    j["column_names"] = model.column_names;
    j["index"] = {
        {"kind", to_string(model.index.kind)},
        {"weights", model.index.capi_weights.omega},
        {"scaled", model.index.scaled},
        {"trim_enabled", model.index.trim.enabled},
        {"trim_alpha", model.index.trim.alpha},
    };
    j["grid"] = {
        {"n_angles", model.grid.n_angles},
        {"max_sweeps", model.grid.max_sweeps},
        {"shrink", model.grid.shrink},
        {"tol", model.grid.tol},
    };
    return j.dump(2) + "\n";
}

PursuitModel model_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("format", "") != "ppursuit-model") {
        throw std::invalid_argument("not a model file");
    }
    PursuitModel m;
    m.weights = matrix_from_json(j.at("weights"));
    m.loadings = matrix_from_json(j.at("loadings"));
    m.gamma = vector_from_json(j.at("gamma"));
    m.x_center = vector_from_json(j.at("x_center"));
    m.y_center = j.at("y_center").get<double>();
    m.components = j.at("components").get<int>();
    m.has_y = j.at("has_y").get<bool>();
    m.truncated = j.at("truncated").get<bool>();
    m.column_names = j.at("column_names").get<std::vector<std::string>>();
    const json& ix = j.at("index");
    m.index.kind = index_kind_from_string(ix.at("kind").get<std::string>());
    m.index.capi_weights.omega = ix.at("weights").get<std::array<double, 6>>();
    m.index.scaled = ix.at("scaled").get<bool>();
    m.index.trim.enabled = ix.at("trim_enabled").get<bool>();
    m.index.trim.alpha = ix.at("trim_alpha").get<double>();
    const json& g = j.at("grid");
    m.grid.n_angles = g.at("n_angles").get<int>();
    m.grid.max_sweeps = g.at("max_sweeps").get<int>();
    m.grid.shrink = g.at("shrink").get<double>();
    m.grid.tol = g.at("tol").get<double>();
    return m;
}

void save_model(const PursuitModel& model, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << model_to_json(model);
        if (!out.good()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);  // atomic publish
}

PursuitModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json(text);
}

}  // namespace ppursuit
