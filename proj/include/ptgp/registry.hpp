#pragma once

#include <map>
#include <string>
#include <vector>

#include "ptgp/ptsystem.hpp"

namespace ptgp {

using ModelParams = std::map<std::string, double>;

struct ModelInfo {
  std::string name;
  std::string description;
  ModelParams defaults;
};

const std::vector<ModelInfo>& model_catalog();

// Builds a registered model. Unknown names or parameter keys raise
// InvalidArgument.
PTSystem make_model(const std::string& name, const ModelParams& params);

}  // namespace ptgp
