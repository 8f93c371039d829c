#include "ptgp/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "ptgp/angles.hpp"
#include "ptgp/errors.hpp"
#include "ptgp/parallel.hpp"

namespace ptgp {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !(beta <= kMaxBeta)) {
    std::ostringstream os;
    os << "inverse temperature " << beta << " outside (0, " << kMaxBeta << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

std::vector<double> real_energies(const BiorthogonalSpectrum& s) {
  std::vector<double> e;
  e.reserve(s.size());
  for (const auto& v : s.energies) e.push_back(v.real());
  return e;
}

std::size_t extreme_level(const std::vector<double>& energies, bool top) {
  auto it = top ? std::max_element(energies.begin(), energies.end())
                : std::min_element(energies.begin(), energies.end());
  return static_cast<std::size_t>(it - energies.begin());
}

// |amplitude| / sum |terms|.
double relative_amplitude(const IGPReport& r) {
  const double top = *std::max_element(r.effective_log_weights.begin(), r.effective_log_weights.end());
  double total = 0.0;
  for (double lw : r.effective_log_weights) total += std::exp(lw - top);
  return std::abs(r.amplitude) / (std::exp(top) * total);
}

}  // namespace

ComplexMatrix ThermalState::density() const {
  const Eigen::Index n = spectrum.right.empty() ? 0 : spectrum.right.front().size();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < spectrum.size(); ++k) rho += weights[k] * spectrum.right[k] * spectrum.left[k].adjoint();
  return rho;
}

std::vector<double> boltzmann_log_weights(const std::vector<double>& energies, double beta) {
  if (energies.empty()) throw Error(ErrorCode::InvalidArgument, "no energies");
  const double lowest = *std::min_element(energies.begin(), energies.end());
  std::vector<double> lw;
  lw.reserve(energies.size());
  double z = 0.0;
  for (double e : energies) {
    lw.push_back(-beta * (e - lowest));
    z += std::exp(lw.back());
  }
  const double log_z = std::log(z);
  for (double& v : lw) v -= log_z;
  return lw;
}

ThermalState thermal_state(const PTSystem& sys, const ParameterPoint& p, double beta, const Tolerances& tol) {
  require_beta(beta);
  ThermalState st;
  st.beta = beta;
  st.spectrum = spectrum_at(sys, p, tol);
  st.log_weights = boltzmann_log_weights(real_energies(st.spectrum), beta);
  for (double lw : st.log_weights) st.weights.push_back(std::exp(lw));
  return st;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::EffectivePositiveT: return "positive";
    case Regime::EffectiveNegativeT: return "negative";
    case Regime::Critical: return "critical";
  }
  return "unknown";
}

IGPReport igp_from_phases(const std::vector<double>& energies, const std::vector<Complex>& theta1, double beta,
                          const Tolerances& tol) {
  require_beta(beta);
  if (energies.size() != theta1.size()) throw Error(ErrorCode::DimensionMismatch, "one phase per level required");
  const auto lw = boltzmann_log_weights(energies, beta);

  IGPReport r;
  for (std::size_t n = 0; n < lw.size(); ++n) r.effective_log_weights.push_back(lw[n] - theta1[n].imag());
  const double top = *std::max_element(r.effective_log_weights.begin(), r.effective_log_weights.end());

  Complex scaled = 0.0;
  double total = 0.0;
  for (std::size_t n = 0; n < lw.size(); ++n) {
    const double w = std::exp(r.effective_log_weights[n] - top);
    r.effective_weights.push_back(w);
    scaled += w * std::exp(kI * theta1[n].real());
    total += w;
  }
  for (double& w : r.effective_weights) w /= total;
  r.amplitude = std::exp(top) * scaled;
  r.theta_g = wrap_2pi(std::arg(r.amplitude));
  r.critical = std::abs(scaled) < tol.critical_amplitude * total;

  const std::size_t hi = extreme_level(energies, true), lo = extreme_level(energies, false);
  const double gap = r.effective_log_weights[hi] - r.effective_log_weights[lo];
  if (r.critical || hi == lo || std::abs(gap) <= tol.regime_critical) {
    r.regime = Regime::Critical;
  } else {
    r.regime = gap > 0.0 ? Regime::EffectiveNegativeT : Regime::EffectivePositiveT;
  }
  return r;
}

IGPReport igp_loop(const PTSystem& sys, const LoopPath& path, double beta, const Tolerances& tol,
                   const WilsonOptions& opts) {
  require_beta(beta);
  if (!path.closed()) throw Error(ErrorCode::InvalidArgument, "igp_loop needs a closed path");
  auto spectra = spectrum_along(sys, path, tol);
  std::vector<Complex> theta;
  for (std::size_t n = 0; n < spectra.front().size(); ++n) {
    theta.push_back(theta1_from_spectra(spectra, n, true, tol, opts).theta);
  }
  return igp_from_phases(real_energies(spectra.front()), theta, beta, tol);
}

IGPReport igp_open(const PTSystem& sys, const LoopPath& path, double beta, const Tolerances& tol,
                   const WilsonOptions& opts) {
  require_beta(beta);
  if (path.samples() == 1) {
    auto spec = spectrum_at(sys, path.points().front(), tol);
    return igp_from_phases(real_energies(spec), std::vector<Complex>(spec.size(), Complex(0.0, 0.0)), beta, tol);
  }
  auto spectra = spectrum_along(sys, path, tol);
  std::vector<Complex> theta;
  for (std::size_t n = 0; n < spectra.front().size(); ++n) {
    const auto partial = partial_theta1(spectra, n, opts, tol.zero_overlap);
    const Complex nu = spectra.front().left[n].dot(spectra.back().right[n]);
    theta.push_back(partial.back() - kI * std::log(nu));
  }
  return igp_from_phases(real_energies(spectra.front()), theta, beta, tol);
}

Regime regime_classify(const PTSystem& sys, const LoopPath& path, double beta, const Tolerances& tol,
                       const WilsonOptions& opts) {
  if (sys.dim() != 2) {
    throw Error(ErrorCode::NotTwoLevel, "regime classification is defined for two-level systems only");
  }
  return igp_loop(sys, path, beta, tol, opts).regime;
}

FamilyPhases family_phases(const PTSystem& sys, const PathFamily& family, const std::vector<double>& params,
                           const ScanOptions& opts) {
  FamilyPhases out;
  out.params = params;
  out.energies.resize(params.size());
  out.theta1.resize(params.size());
  parallel_for(params.size(), opts.threads, [&](std::size_t i) {
    const LoopPath path = family(params[i]);
    auto spectra = spectrum_along(sys, path, opts.tol);
    out.energies[i] = real_energies(spectra.front());
    for (std::size_t n = 0; n < spectra.front().size(); ++n) {
      out.theta1[i].push_back(theta1_from_spectra(spectra, n, true, opts.tol, opts.wilson).theta);
    }
  });
  return out;
}

namespace {

struct LevelData {
  std::vector<double> energies;
  std::vector<Complex> theta1;
};

class PhaseCache {
 public:
  PhaseCache(const PTSystem& sys, const PathFamily& family, const ScanOptions& opts)
      : sys_(sys), family_(family), opts_(opts) {}

  void insert(double param, LevelData data) { cache_[param] = std::move(data); }

  const LevelData& at(double param) {
    auto it = cache_.find(param);
    if (it != cache_.end()) return it->second;
    const LoopPath path = family_(param);
    auto spectra = spectrum_along(sys_, path, opts_.tol);
    LevelData d;
    d.energies = real_energies(spectra.front());
    for (std::size_t n = 0; n < spectra.front().size(); ++n) {
      d.theta1.push_back(theta1_from_spectra(spectra, n, true, opts_.tol, opts_.wilson).theta);
    }
    return cache_.emplace(param, std::move(d)).first->second;
  }

  IGPReport igp(double param, double beta) {
    const LevelData& d = at(param);
    return igp_from_phases(d.energies, d.theta1, beta, opts_.tol);
  }

 private:
  const PTSystem& sys_;
  const PathFamily& family_;
  const ScanOptions& opts_;
  std::map<double, LevelData> cache_;
};

struct Cell {
  double p0, p1, b0, b1;
};

// Net number of 2pi turns of theta_G around the cell boundary.
int winding(PhaseCache& cache, const Cell& c) {
  const double g[4] = {cache.igp(c.p0, c.b0).theta_g, cache.igp(c.p1, c.b0).theta_g,
                       cache.igp(c.p1, c.b1).theta_g, cache.igp(c.p0, c.b1).theta_g};
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += wrap_pi(g[(k + 1) % 4] - g[k]);
  return static_cast<int>(std::lround(sum / kTwoPi));
}

double corner_amplitude(PhaseCache& cache, const Cell& c) {
  double best = std::numeric_limits<double>::infinity();
  for (double p : {c.p0, c.p1}) {
    for (double b : {c.b0, c.b1}) best = std::min(best, relative_amplitude(cache.igp(p, b)));
  }
  return best;
}

Cell refine(PhaseCache& cache, Cell c, double tol) {
  while (std::max(c.p1 - c.p0, c.b1 - c.b0) > tol) {
    const double pm = c.p1 - c.p0 > tol ? 0.5 * (c.p0 + c.p1) : c.p1;
    const double bm = c.b1 - c.b0 > tol ? 0.5 * (c.b0 + c.b1) : c.b1;
    std::vector<Cell> kids;
    for (auto [pa, pb] : {std::pair{c.p0, pm}, std::pair{pm, c.p1}}) {
      if (pa == pb) continue;
      for (auto [ba, bb] : {std::pair{c.b0, bm}, std::pair{bm, c.b1}}) {
        if (ba == bb) continue;
        kids.push_back({pa, pb, ba, bb});
      }
    }
    const Cell* pick = nullptr;
    for (const auto& k : kids) {
      if (winding(cache, k) != 0) {
        pick = &k;
        break;
      }
    }
    if (!pick) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& k : kids) {
        const double a = corner_amplitude(cache, k);
        if (a < best) {
          best = a;
          pick = &k;
        }
      }
    }
    c = *pick;
  }
  return c;
}

}  // namespace

std::vector<CriticalPoint> critical_scan(const PTSystem& sys, const PathFamily& family,
                                         const std::vector<double>& beta_grid,
                                         const std::vector<double>& param_grid, const ScanOptions& opts) {
  if (beta_grid.size() < 2 || param_grid.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "critical scan needs at least a 2 x 2 grid");
  }
  for (double b : beta_grid) require_beta(b);
  for (std::size_t i = 1; i < param_grid.size(); ++i) {
    if (!(param_grid[i] > param_grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "parameter grid must increase");
  }
  for (std::size_t j = 1; j < beta_grid.size(); ++j) {
    if (!(beta_grid[j] > beta_grid[j - 1])) throw Error(ErrorCode::InvalidArgument, "beta grid must increase");
  }

  const FamilyPhases fp = family_phases(sys, family, param_grid, opts);
  PhaseCache cache(sys, family, opts);
  for (std::size_t i = 0; i < param_grid.size(); ++i) cache.insert(param_grid[i], {fp.energies[i], fp.theta1[i]});

  const std::size_t np = param_grid.size(), nb = beta_grid.size();
  std::vector<std::vector<double>> g(np, std::vector<double>(nb));
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nb; ++j) g[i][j] = cache.igp(param_grid[i], beta_grid[j]).theta_g;
  }

  std::vector<CriticalPoint> found;
  for (std::size_t i = 0; i + 1 < np; ++i) {
    for (std::size_t j = 0; j + 1 < nb; ++j) {
      const Cell cell{param_grid[i], param_grid[i + 1], beta_grid[j], beta_grid[j + 1]};
      const double ring[4] = {g[i][j], g[i + 1][j], g[i + 1][j + 1], g[i][j + 1]};
      double sum = 0.0;
      bool edge_jump = false;
      for (int k = 0; k < 4; ++k) {
        const double d = wrap_pi(ring[(k + 1) % 4] - ring[k]);
        sum += d;
        edge_jump = edge_jump || std::abs(d) > opts.jump_threshold;
      }
      if (std::lround(sum / kTwoPi) == 0 && !edge_jump) continue;

      const Cell small = refine(cache, cell, opts.refine_tol);
      const double param = 0.5 * (small.p0 + small.p1);
      const double beta = 0.5 * (small.b0 + small.b1);
      const double amp = relative_amplitude(cache.igp(param, beta));
      if (!(amp < opts.amplitude_dip)) continue;

      bool duplicate = false;
      for (const auto& f : found) {
        if (std::abs(f.param - param) < 1e-3 && std::abs(f.beta - beta) < 1e-3) duplicate = true;
      }
      if (duplicate) continue;

      CriticalPoint cp;
      cp.param = param;
      cp.beta = beta;
      cp.amplitude = amp;
      const double lo = std::max(beta - opts.jump_probe, std::min(beta, 1e-12));
      cp.jump = angle_distance(cache.igp(param, beta + opts.jump_probe).theta_g, cache.igp(param, lo).theta_g);

      // Follow Re theta1 continuously from the first grid parameter.
      const std::size_t levels = fp.theta1.front().size();
      cp.level_phases.resize(levels);
      for (std::size_t n = 0; n < levels; ++n) {
        double value = wrap_2pi(fp.theta1[0][n].real());
        double prev = value;
        auto step = [&](double next) {
          value += wrap_pi(next - prev);
          prev = next;
        };
        for (std::size_t k = 1; k < np && param_grid[k] <= param; ++k) step(fp.theta1[k][n].real());
        step(cache.at(param).theta1[n].real());
        cp.level_phases[n] = value;
      }
      found.push_back(cp);
    }
  }
  std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.param != b.param ? a.param < b.param : a.beta < b.beta;
  });
  return found;
}

}  // namespace ptgp
