#include "ptgp/registry.hpp"

#include <cmath>

#include "ptgp/errors.hpp"
#include "ptgp/spin_model.hpp"
#include "ptgp/twolevel.hpp"

namespace ptgp {

const std::vector<ModelInfo>& model_catalog() {
  static const std::vector<ModelInfo> catalog = {
      {"two-level-pt", "epsilon + (a n^r + i b n^theta) . sigma with metric 1 - (b/a) n^phi . sigma",
       {{"a", 3.0}, {"b", std::sqrt(5.0)}, {"epsilon", 0.0}}},
      {"hermitian-spin-half", "epsilon + a n^r . sigma (spin 1/2 in a magnetic field)",
       {{"a", 1.0}, {"epsilon", 0.0}}},
      {"spin-j-pt", "epsilon + 2 (a n^r + i b n^theta) . J with metric exp(-2 eta n^phi . J)",
       {{"a", 3.0}, {"b", std::sqrt(5.0)}, {"epsilon", 0.0}, {"spin", 1.0}}},
  };
  return catalog;
}

PTSystem make_model(const std::string& name, const ModelParams& params) {
  const ModelInfo* info = nullptr;
  for (const auto& m : model_catalog()) {
    if (m.name == name) info = &m;
  }
  if (!info) throw Error(ErrorCode::InvalidArgument, "unknown model '" + name + "'");

  ModelParams p = info->defaults;
  for (const auto& [key, value] : params) {
    if (!p.count(key)) throw Error(ErrorCode::InvalidArgument, "model '" + name + "' has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' is not finite");
    p[key] = value;
  }

  if (name == "two-level-pt") return twolevel::make_system(p["a"], p["b"], p["epsilon"]);
  if (name == "hermitian-spin-half") return twolevel::make_system(p["a"], 0.0, p["epsilon"]);
  return spin::make_system(p["a"], p["b"], p["epsilon"], p["spin"]);
}

}  // namespace ptgp
