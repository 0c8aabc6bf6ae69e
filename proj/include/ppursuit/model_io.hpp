#pragma once

#include <string>

#include "ppursuit/pursuit.hpp"

namespace ppursuit {

/// JSON text of a fitted model. Doubles use shortest-round-trip encoding,
/// so load_model(save) reproduces every field exactly.
std::string model_to_json(const PursuitModel& model);
PursuitModel model_from_json(const std::string& text);

void save_model(const PursuitModel& model, const std::string& path);
PursuitModel load_model(const std::string& path);

}  // namespace ppursuit
