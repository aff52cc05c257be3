#pragma once

#include <string>

#include "hcoint/ar_model.hpp"
#include <json.hpp>

namespace hcoint {

/// Contents of a model file: the AR model plus optional numerical policy overrides.
struct ModelSpec {
    ArModel model;
    RankPolicy policy;
    RootOptions roots;
};

/**
 * Reads {p, k, coeffs, noise_cov?, policy?}. coeffs holds k matrices, each
 * either nested rows or a flat row-major list of p*p numbers. Throws
 * Error(Schema) on malformed documents and Error(InvalidArgument) when the
 * model itself is invalid.
 */
[[nodiscard]] ModelSpec model_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::ordered_json model_to_json(const ModelSpec& spec);
[[nodiscard]] ModelSpec load_model(const std::string& path);

[[nodiscard]] nlohmann::ordered_json matrix_to_json(const Matrix& m);
[[nodiscard]] Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols);

}  // namespace hcoint
