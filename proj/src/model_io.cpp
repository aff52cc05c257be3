#include "hcoint/model_io.hpp"

#include <fstream>

#include "hcoint/error.hpp"

namespace hcoint {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Schema, "model file: " + what); }

Index positive_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1)
        schema(std::string("'") + key + "' must be a positive integer");
    return static_cast<Index>(j[key].get<long long>());
}

double number(const nlohmann::json& j) {
    if (!j.is_number()) schema("matrix entries must be numbers");
    return j.get<double>();
}

}  // namespace

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols) {
    if (!j.is_array()) schema("matrix must be an array");
    Matrix m(rows, cols);
    if (j.size() == static_cast<std::size_t>(rows * cols) && (j.empty() || !j.front().is_array())) {
        for (Index i = 0; i < rows * cols; ++i) m(i / cols, i % cols) = number(j[static_cast<std::size_t>(i)]);
        return m;
    }
    if (j.size() != static_cast<std::size_t>(rows)) schema("matrix has the wrong number of rows");
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) schema("matrix row has the wrong length");
        for (Index c = 0; c < cols; ++c) m(i, c) = number(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

ModelSpec model_from_json(const nlohmann::json& j) {
    if (!j.is_object()) schema("top level must be an object");
    const Index p = positive_int(j, "p");
    const Index k = positive_int(j, "k");
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].size() != static_cast<std::size_t>(k))
        schema("'coeffs' must list k matrices");
    std::vector<Matrix> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(matrix_from_json(c, p, p));
    Matrix cov = Matrix::Identity(p, p);
    if (j.contains("noise_cov")) cov = matrix_from_json(j["noise_cov"], p, p);

    RankPolicy policy;
    RootOptions roots;
    if (j.contains("policy")) {
        const auto& pj = j["policy"];
        if (!pj.is_object()) schema("'policy' must be an object");
        for (const auto& [key, val] : pj.items()) {
            if (!val.is_number()) schema("policy value '" + key + "' must be a number");
            const double x = val.get<double>();
            if (key == "rel_tol") policy.rel_tol = x;
            else if (key == "abs_floor") policy.abs_floor = x;
            else if (key == "unit_tol") roots.unit_tol = x;
            else if (key == "stability_margin") roots.stability_margin = x;
            else if (key == "cluster_radius") roots.cluster_radius = x;
            else schema("unknown policy key '" + key + "'");
        }
        policy.validate();
        if (!(roots.unit_tol > 0 && roots.stability_margin > 0 && roots.cluster_radius > 0))
            throw Error(ErrorCode::InvalidArgument, "root tolerances must be positive");
    }
    return {ArModel(std::move(coeffs), std::move(cov)), policy, roots};
}

nlohmann::ordered_json model_to_json(const ModelSpec& spec) {
    nlohmann::ordered_json j;
    j["p"] = spec.model.dim();
    j["k"] = spec.model.order();
    j["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& c : spec.model.coeffs()) j["coeffs"].push_back(matrix_to_json(c));
    j["noise_cov"] = matrix_to_json(spec.model.noise_cov());
    j["policy"] = {{"rel_tol", spec.policy.rel_tol},
                   {"abs_floor", spec.policy.abs_floor},
                   {"unit_tol", spec.roots.unit_tol},
                   {"stability_margin", spec.roots.stability_margin},
                   {"cluster_radius", spec.roots.cluster_radius}};
    return j;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Schema, "cannot open model file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Schema, "model file is not valid JSON: " + std::string(e.what()));
    }
    return model_from_json(j);
}

}  // namespace hcoint
