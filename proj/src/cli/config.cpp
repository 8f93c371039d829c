#include "ptgp/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ptgp/angles.hpp"
#include "ptgp/errors.hpp"

namespace ptgp::cli {

namespace {

using Setter = std::function<void(RunConfig&, const std::string&)>;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  const std::string v = boost::trim_copy(text);
  try {
    if constexpr (std::is_same_v<T, bool>) {
      const std::string l = boost::to_lower_copy(v);
      if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
      if (l == "false" || l == "0" || l == "no" || l == "off") return false;
      fail(key + ": expected a boolean, got '" + v + "'");
    } else if constexpr (std::is_same_v<T, std::size_t>) {
      if (!v.empty() && v.front() == '-') fail(key + ": expected a non-negative integer, got '" + v + "'");
      return boost::lexical_cast<std::size_t>(v);
    } else {
      const double d = boost::lexical_cast<double>(v);
      if (!std::isfinite(d)) fail(key + ": value is not finite");
      return d;
    }
  } catch (const boost::bad_lexical_cast&) {
    fail(key + ": cannot parse '" + v + "'");
  }
}

template <typename T>
Setter assign(T RunConfig::*section, auto field) {
  return [section, field](RunConfig& cfg, const std::string& value) {
    auto& target = cfg.*section.*field;
    using V = std::decay_t<decltype(target)>;
    if constexpr (std::is_same_v<V, std::string>) {
      target = boost::trim_copy(value);
    } else {
      target = parse_value<V>("value", value);
    }
  };
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(" \t,"), boost::token_compress_on);
  std::vector<double> out;
  for (const auto& p : parts) {
    if (!p.empty()) out.push_back(parse_value<double>("list", p));
  }
  return out;
}

std::vector<ParameterPoint> parse_vertices(const std::string& text) {
  std::vector<std::string> items;
  boost::split(items, text, boost::is_any_of(";"));
  std::vector<ParameterPoint> out;
  for (const auto& item : items) {
    if (boost::trim_copy(item).empty()) continue;
    out.push_back({parse_list(item)});
  }
  return out;
}

const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"path",
       {{"type", assign(&RunConfig::path, &PathConfig::type)},
        {"theta", assign(&RunConfig::path, &PathConfig::theta)},
        {"samples", assign(&RunConfig::path, &PathConfig::samples)},
        {"tau", assign(&RunConfig::path, &PathConfig::tau)},
        {"vertices", [](RunConfig& c, const std::string& v) { c.path.vertices = parse_vertices(v); }}}},
      {"scan",
       {{"beta_min", assign(&RunConfig::scan, &ScanConfig::beta_min)},
        {"beta_max", assign(&RunConfig::scan, &ScanConfig::beta_max)},
        {"beta_steps", assign(&RunConfig::scan, &ScanConfig::beta_steps)},
        {"theta_min", assign(&RunConfig::scan, &ScanConfig::theta_min)},
        {"theta_max", assign(&RunConfig::scan, &ScanConfig::theta_max)},
        {"theta_steps", assign(&RunConfig::scan, &ScanConfig::theta_steps)},
        {"log_beta", assign(&RunConfig::scan, &ScanConfig::log_beta)}}},
      {"output",
       {{"format", assign(&RunConfig::output, &OutputConfig::format)},
        {"path", assign(&RunConfig::output, &OutputConfig::path)}}},
      {"tolerances",
       {{"eig_residual", assign(&RunConfig::tolerances, &Tolerances::eig_residual)},
        {"hermitian", assign(&RunConfig::tolerances, &Tolerances::hermitian)},
        {"positive_definite", assign(&RunConfig::tolerances, &Tolerances::positive_definite)},
        {"max_condition", assign(&RunConfig::tolerances, &Tolerances::max_condition)},
        {"degeneracy", assign(&RunConfig::tolerances, &Tolerances::degeneracy)},
        {"broken_pt", assign(&RunConfig::tolerances, &Tolerances::broken_pt)},
        {"level_match", assign(&RunConfig::tolerances, &Tolerances::level_match)},
        {"zero_overlap", assign(&RunConfig::tolerances, &Tolerances::zero_overlap)},
        {"proper_residual", assign(&RunConfig::tolerances, &Tolerances::proper_residual)},
        {"step_coarse", assign(&RunConfig::tolerances, &Tolerances::step_coarse)},
        {"imaginary_leak", assign(&RunConfig::tolerances, &Tolerances::imaginary_leak)},
        {"adiabatic_leak", assign(&RunConfig::tolerances, &Tolerances::adiabatic_leak)},
        {"critical_amplitude", assign(&RunConfig::tolerances, &Tolerances::critical_amplitude)},
        {"regime_critical", assign(&RunConfig::tolerances, &Tolerances::regime_critical)}}},
      {"oracle",
       {{"ramp_factors", [](RunConfig& c, const std::string& v) { c.oracle.ramp_factors = parse_list(v); }},
        {"level", assign(&RunConfig::oracle, &OracleConfig::level)},
        {"samples", assign(&RunConfig::oracle, &OracleConfig::samples)},
        {"theta", assign(&RunConfig::oracle, &OracleConfig::theta)},
        {"ramp", assign(&RunConfig::oracle, &OracleConfig::ramp)}}},
  };
  return table;
}

void apply(RunConfig& cfg, const std::string& section, const std::string& key, const std::string& value) {
  if (section == "model") {
    if (key == "name") {
      cfg.model.name = boost::trim_copy(value);
    } else {
      cfg.model.params[key] = parse_value<double>("model." + key, value);
    }
    return;
  }
  auto sec = setters().find(section);
  if (sec == setters().end()) fail("unknown section [" + section + "]");
  auto it = sec->second.find(key);
  if (it == sec->second.end()) fail("unknown key '" + key + "' in [" + section + "]");
  try {
    it->second(cfg, value);
  } catch (const Error& e) {
    fail(section + "." + key + ": " + e.what());
  }
}

RunConfig finish(RunConfig cfg, const std::vector<std::string>& overrides) {
  for (std::string o : overrides) {
    while (!o.empty() && o.front() == '-') o.erase(o.begin());
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      fail("override '" + o + "' is not of the form section.key=value");
    }
    apply(cfg, o.substr(0, dot), o.substr(dot + 1, eq - dot - 1), o.substr(eq + 1));
  }
  validate(cfg);
  return cfg;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::vector<std::string>& overrides) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(std::string("malformed configuration: ") + e.what());
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) fail("key '" + section + "' outside of any section");
    for (const auto& [key, value] : body) apply(cfg, section, key, value.data());
  }
  return finish(std::move(cfg), overrides);
}

RunConfig load_config(const std::string& file, const std::vector<std::string>& overrides) {
  std::ifstream in(file);
  if (!in) fail("cannot open configuration file '" + file + "'");
  return parse_config(in, overrides);
}

RunConfig default_config(const std::vector<std::string>& overrides) { return finish(RunConfig{}, overrides); }

void validate(const RunConfig& cfg) {
  try {
    make_model(cfg.model.name, cfg.model.params);
  } catch (const Error& e) {
    fail(std::string("[model] ") + e.what());
  }
  const auto& p = cfg.path;
  if (p.type != "latitude" && p.type != "custom-polyline") fail("path.type must be latitude or custom-polyline");
  if (p.samples < 64) fail("path.samples must be at least 64");
  if (!(p.tau > 0.0)) fail("path.tau must be positive");
  if (p.type == "custom-polyline" && p.vertices.size() < 2) fail("path.vertices needs at least two points");
  for (const auto& v : p.vertices) {
    if (v.size() != 2) fail("path.vertices entries must be 'theta phi'");
  }

  const auto& s = cfg.scan;
  if (!(s.beta_min > 0.0) || !(s.beta_max >= s.beta_min) || s.beta_max > kMaxBeta) {
    fail("scan beta range must satisfy 0 < beta_min <= beta_max <= 1e4");
  }
  if (s.beta_steps == 0 || s.theta_steps == 0) fail("scan steps must be positive");
  if (!(s.theta_max >= s.theta_min)) fail("scan.theta_max must not be below scan.theta_min");

  if (cfg.output.format != "csv" && cfg.output.format != "json") fail("output.format must be csv or json");

  const auto& o = cfg.oracle;
  if (o.ramp_factors.empty()) fail("oracle.ramp_factors is empty");
  for (double r : o.ramp_factors) {
    if (!(r > 0.0)) fail("oracle.ramp_factors must be positive");
  }
  if (!(o.ramp > 0.0)) fail("oracle.ramp must be positive");
  if (o.samples < 64) fail("oracle.samples must be at least 64");
}

std::vector<double> beta_grid(const ScanConfig& scan) {
  std::vector<double> out;
  const std::size_t n = scan.beta_steps;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(scan.log_beta ? scan.beta_min * std::pow(scan.beta_max / scan.beta_min, f)
                                : scan.beta_min + f * (scan.beta_max - scan.beta_min));
  }
  if (n > 1) out.back() = scan.beta_max;
  return out;
}

std::vector<double> theta_grid(const ScanConfig& scan) {
  std::vector<double> out;
  const std::size_t n = scan.theta_steps;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(scan.theta_min + f * (scan.theta_max - scan.theta_min));
  }
  if (n > 1) out.back() = scan.theta_max;
  return out;
}

LoopPath build_path(const RunConfig& cfg) {
  if (cfg.path.type == "custom-polyline") {
    return LoopPath::polyline(cfg.path.vertices, cfg.path.samples, cfg.path.tau, {0.0, kTwoPi});
  }
  return LoopPath::latitude(cfg.path.theta, cfg.path.samples, cfg.path.tau);
}

PathFamily latitude_family(const RunConfig& cfg) {
  const std::size_t samples = cfg.path.samples;
  const double tau = cfg.path.tau;
  return [samples, tau](double theta) { return LoopPath::latitude(theta, samples, tau); };
}

}  // namespace ptgp::cli
