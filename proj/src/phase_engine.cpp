#include "ptgp/phase_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptgp/angles.hpp"
#include "ptgp/errors.hpp"

namespace ptgp {

namespace {

struct LinkState {
  bool two_sided;
  double zero_overlap;
  double min_overlap = std::numeric_limits<double>::infinity();
};

// log of the transport factor from sample a to sample b.
Complex link(const ComplexVector& ra, const ComplexVector& la, const ComplexVector& rb,
             const ComplexVector& lb, LinkState& st) {
  const Complex forward = la.dot(rb);
  const double mag = std::abs(forward);
  st.min_overlap = std::min(st.min_overlap, mag);
  if (!(mag >= st.zero_overlap)) {
    std::ostringstream os;
    os << "consecutive overlap " << mag << " below " << st.zero_overlap
       << " (grid too coarse or levels crossing)";
    throw Error(ErrorCode::ZeroOverlap, os.str());
  }
  if (!st.two_sided) return std::log(forward);
  const Complex backward = lb.dot(ra);
  if (!(std::abs(backward) >= st.zero_overlap)) {
    throw Error(ErrorCode::ZeroOverlap, "reverse overlap vanishes");
  }
  // 1/2 [log f - log b] written so that the square-root branch is taken on the
  // gauge-invariant product f b, which stays close to 1.
  return std::log(forward) - 0.5 * std::log(forward * backward);
}

Complex extrapolate(Complex fine, Complex coarse) {
  const Complex diff(wrap_pi(fine.real() - coarse.real()), fine.imag() - coarse.imag());
  return fine + diff / 3.0;
}

WilsonPhase reduce(Complex raw, double min_overlap) {
  WilsonPhase out;
  out.branch = static_cast<long>(std::floor(raw.real() / kTwoPi));
  double re = raw.real() - kTwoPi * static_cast<double>(out.branch);
  if (re >= kTwoPi) {
    re -= kTwoPi;
    ++out.branch;
  } else if (re < 0.0) {
    re += kTwoPi;
    --out.branch;
  }
  out.theta = Complex(re, raw.imag());
  out.min_overlap = min_overlap;
  return out;
}

// Central three-point derivative of samples f at index k (one-sided at the ends).
template <typename T>
T derivative(const std::vector<T>& f, const std::vector<double>& ts, std::size_t k) {
  const std::size_t n = f.size();
  if (k == 0) {
    const double h1 = ts[1] - ts[0], h2 = ts[2] - ts[1];
    return T(((h1 + h2) / (h1 * h2)) * (f[1] - f[0]) - (h1 / (h2 * (h1 + h2))) * (f[2] - f[0]));
  }
  if (k == n - 1) {
    const double h1 = ts[n - 2] - ts[n - 3], h2 = ts[n - 1] - ts[n - 2];
    return T((h2 / (h1 * (h1 + h2))) * (f[n - 3] - f[n - 1]) - ((h1 + h2) / (h1 * h2)) * (f[n - 2] - f[n - 1]));
  }
  const double hm = ts[k] - ts[k - 1], hp = ts[k + 1] - ts[k];
  return T((hm / (hp * (hm + hp))) * (f[k + 1] - f[k]) + (hp / (hm * (hm + hp))) * (f[k] - f[k - 1]));
}

void require_level(const std::vector<BiorthogonalSpectrum>& spectra, std::size_t level) {
  if (spectra.empty()) throw Error(ErrorCode::InvalidArgument, "no spectra supplied");
  if (level >= spectra.front().size()) {
    std::ostringstream os;
    os << "level " << level << " out of range (system has " << spectra.front().size() << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

void require_closed(const LoopPath& path) {
  if (!path.closed()) throw Error(ErrorCode::InvalidArgument, "loop phase needs a closed path");
}

std::vector<ComplexVector> normalised_hermitian_states(const std::vector<BiorthogonalSpectrum>& spectra,
                                                       const ProperMapPath& pmap, std::size_t level,
                                                       bool single_valued) {
  const std::size_t n = spectra.size();
  if (pmap.s_proper_inv.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "proper map and spectra have different lengths");
  }
  std::vector<ComplexVector> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexVector& psi = (single_valued && k == n - 1) ? spectra.front().right[level]
                                                             : spectra[k].right[level];
    ComplexVector v = pmap.s_proper_inv[k] * psi;
    out.push_back(v / v.norm());
  }
  return out;
}

}  // namespace

double WilsonPhase::unwrapped_real() const { return theta.real() + kTwoPi * static_cast<double>(branch); }

WilsonPhase wilson_phase(const std::vector<ComplexVector>& right, const std::vector<ComplexVector>& left,
                         bool closed, const WilsonOptions& opts, double zero_overlap) {
  if (right.size() != left.size() || right.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "right and left state lists must match");
  }
  const std::size_t last = right.size() - 1;
  LinkState st{opts.two_sided, zero_overlap};

  auto chain = [&](std::size_t stride) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k + stride <= last; k += stride) {
      sum += link(right[k], left[k], right[k + stride], left[k + stride], st);
    }
    if (closed && last > 0) sum += link(right[last], left[last], right.front(), left.front(), st);
    return kI * sum;
  };

  Complex theta = chain(1);
  if (opts.richardson && last >= 4 && last % 2 == 0) theta = extrapolate(theta, chain(2));
  return reduce(theta, st.min_overlap);
}

std::vector<ComplexVector> right_states(const std::vector<BiorthogonalSpectrum>& spectra, std::size_t level) {
  require_level(spectra, level);
  std::vector<ComplexVector> out;
  out.reserve(spectra.size());
  for (const auto& s : spectra) out.push_back(s.right[level]);
  return out;
}

std::vector<ComplexVector> left_states(const std::vector<BiorthogonalSpectrum>& spectra, std::size_t level) {
  require_level(spectra, level);
  std::vector<ComplexVector> out;
  out.reserve(spectra.size());
  for (const auto& s : spectra) out.push_back(s.left[level]);
  return out;
}

WilsonPhase theta1_from_spectra(const std::vector<BiorthogonalSpectrum>& spectra, std::size_t level,
                                bool closed, const Tolerances& tol, const WilsonOptions& opts) {
  return wilson_phase(right_states(spectra, level), left_states(spectra, level), closed, opts,
                      tol.zero_overlap);
}

WilsonPhase theta1_loop(const PTSystem& sys, const LoopPath& path, std::size_t level, const Tolerances& tol,
                        const WilsonOptions& opts) {
  require_closed(path);
  return theta1_from_spectra(spectrum_along(sys, path, tol), level, true, tol, opts);
}

Theta2Result theta2_loop(const std::vector<BiorthogonalSpectrum>& spectra, const ProperMapPath& pmap,
                         std::size_t level, const Tolerances& tol, const WilsonOptions& opts) {
  require_level(spectra, level);
  auto states = normalised_hermitian_states(spectra, pmap, level, true);
  auto w = wilson_phase(states, states, false, opts, tol.zero_overlap);
  Theta2Result out;
  out.theta = w.theta.real();
  out.branch = w.branch;
  out.imaginary_residual = w.theta.imag();
  if (std::abs(out.imaginary_residual) > tol.imaginary_leak) {
    std::ostringstream os;
    os << "theta2 has imaginary part " << out.imaginary_residual << "; the similarity map is not proper";
    throw Error(ErrorCode::ImaginaryLeak, os.str());
  }
  return out;
}

Theta2Result theta2_loop(const PTSystem& sys, const LoopPath& path, std::size_t level, const Tolerances& tol,
                         const WilsonOptions& opts) {
  require_closed(path);
  auto spectra = spectrum_along(sys, path, tol);
  auto pmap = proper_map_along(sys, path, tol);
  return theta2_loop(spectra, pmap, level, tol, opts);
}

double berry_w_formula(const PTSystem& sys, const LoopPath& path, std::size_t level, const Tolerances& tol) {
  require_closed(path);
  if (!path.uniform()) throw Error(ErrorCode::InvalidArgument, "Berry form needs a uniform time grid");
  const std::size_t m = path.intervals();
  if (m < 5) throw Error(ErrorCode::InvalidArgument, "Berry form needs at least 5 intervals");
  auto spectra = spectrum_along(sys, path, tol);
  require_level(spectra, level);

  // Fix the phase of the component that stays furthest from zero.
  const Eigen::Index dim = spectra.front().right[level].size();
  Eigen::Index anchor = 0;
  double best = -1.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) lowest = std::min(lowest, std::abs(spectra[k].right[level](j)));
    if (lowest > best) {
      best = lowest;
      anchor = j;
    }
  }
  std::vector<ComplexVector> psi(m);
  std::vector<ComplexMatrix> w(m);
  for (std::size_t k = 0; k < m; ++k) {
    const ComplexVector& v = spectra[k].right[level];
    psi[k] = v * (std::conj(v(anchor)) / std::abs(v(anchor)));
    w[k] = sys.metric(path.points()[k]);
  }

  const double h = path.duration() / static_cast<double>(m);
  auto at = [m](std::size_t k, long off) { return static_cast<std::size_t>((static_cast<long>(k + m) + off) % static_cast<long>(m)); };
  Complex sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const ComplexVector dpsi =
        (-psi[at(k, 2)] + 8.0 * psi[at(k, 1)] - 8.0 * psi[at(k, -1)] + psi[at(k, -2)]) / (12.0 * h);
    const ComplexMatrix dw = (-w[at(k, 2)] + 8.0 * w[at(k, 1)] - 8.0 * w[at(k, -1)] + w[at(k, -2)]) / (12.0 * h);
    sum += psi[k].dot(w[k] * dpsi) + 0.5 * psi[k].dot(dw * psi[k]);
  }
  const Complex theta = kI * h * sum;
  return wrap_2pi(theta.real());
}

DynamicPhases dynamic_phases(const std::vector<BiorthogonalSpectrum>& spectra, const ProperMapPath& pmap,
                             std::size_t level) {
  require_level(spectra, level);
  const auto& ts = pmap.path.times();
  const std::size_t n = spectra.size();
  if (ts.size() != n) throw Error(ErrorCode::DimensionMismatch, "proper map and spectra have different lengths");

  DynamicPhases out;
  double energy_integral = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    energy_integral +=
        0.5 * (ts[k + 1] - ts[k]) * (spectra[k].energies[level].real() + spectra[k + 1].energies[level].real());
  }
  out.theta_dyn_0 = -energy_integral;

  Complex c = 0.0;
  if (n >= 3) {
    auto states = normalised_hermitian_states(spectra, pmap, level, false);
    std::vector<Complex> integrand(n);
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexMatrix ds = derivative(pmap.s_proper, ts, k);
      integrand[k] = states[k].dot(pmap.s_proper_inv[k] * ds * states[k]);
    }
    for (std::size_t k = 0; k + 1 < n; ++k) c += 0.5 * (ts[k + 1] - ts[k]) * (integrand[k] + integrand[k + 1]);
  }
  out.correction = kI * c;
  out.theta_dyn_tilde = out.theta_dyn_0 - out.correction;
  return out;
}

DynamicPhases dynamic_phases(const PTSystem& sys, const LoopPath& path, std::size_t level, const Tolerances& tol) {
  auto spectra = spectrum_along(sys, path, tol);
  auto pmap = proper_map_along(sys, path, tol);
  return dynamic_phases(spectra, pmap, level);
}

std::vector<PhaseReport> phase_reports(const PTSystem& sys, const LoopPath& path, const Tolerances& tol,
                                       const WilsonOptions& opts) {
  require_closed(path);
  auto spectra = spectrum_along(sys, path, tol);
  auto pmap = proper_map_along(sys, path, tol);
  std::vector<PhaseReport> out;
  for (std::size_t n = 0; n < spectra.front().size(); ++n) {
    PhaseReport r;
    r.level = n;
    auto t1 = theta1_from_spectra(spectra, n, true, tol, opts);
    r.theta1 = t1.theta;
    r.branch = t1.branch;
    auto t2 = theta2_loop(spectra, pmap, n, tol, opts);
    r.theta2 = t2.theta;
    r.theta2_imaginary = t2.imaginary_residual;
    r.theta_berry = berry_w_formula(sys, path, n, tol);
    auto dyn = dynamic_phases(spectra, pmap, n);
    r.theta_dyn_tilde = dyn.theta_dyn_tilde;
    r.theta_dyn_0 = dyn.theta_dyn_0;
    r.correction = dyn.correction;
    r.residual_eq24 = angle_distance(r.theta2, r.theta_berry);
    r.residual_eq25 = std::hypot(wrap_pi(r.theta1.real() - r.theta2 - r.correction.real()),
                                 r.theta1.imag() - r.correction.imag());
    out.push_back(r);
  }
  return out;
}

std::vector<Complex> partial_theta1(const std::vector<BiorthogonalSpectrum>& spectra, std::size_t level,
                                    const WilsonOptions& opts, double zero_overlap) {
  require_level(spectra, level);
  const std::size_t n = spectra.size();
  LinkState st{opts.two_sided, zero_overlap};
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  Complex fine = 0.0, coarse = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const auto& a = spectra[k - 1];
    const auto& b = spectra[k];
    fine += kI * link(a.right[level], a.left[level], b.right[level], b.left[level], st);
    out[k] = fine;
    if (opts.richardson && k % 2 == 0) {
      const auto& c = spectra[k - 2];
      coarse += kI * link(c.right[level], c.left[level], b.right[level], b.left[level], st);
      if (k >= 4) out[k] = extrapolate(fine, coarse);
    }
  }
  return out;
}

OracleResult evolve_oracle(const PTSystem& sys, const LoopPath& path, std::size_t level, double ramp_factor,
                           const Tolerances& tol, const OracleOptions& opts) {
  if (!(ramp_factor > 0.0) || !std::isfinite(ramp_factor)) {
    throw Error(ErrorCode::InvalidArgument, "ramp factor must be positive");
  }
  auto spectra = spectrum_along(sys, path, tol);
  require_level(spectra, level);
  auto pmap = proper_map_along(sys, path, tol);

  const double t0 = path.times().front();
  const double duration = path.duration();
  const std::size_t steps = std::max<std::size_t>(
      path.intervals(), static_cast<std::size_t>(std::llround(ramp_factor * static_cast<double>(path.intervals() * opts.substeps))));
  const double dt = ramp_factor * duration / static_cast<double>(steps);
  const double delta = 1e-3 * duration / static_cast<double>(path.intervals());

  // Effective generator at physical time t (path time t0 + t / ramp).
  auto h_eff = [&](double t) {
    const double s = t0 + t / ramp_factor;
    const ParameterPoint p = path.at_extended(s);
    const ComplexMatrix w = sys.metric(p);
    const ComplexMatrix dw =
        (sys.metric(path.at_extended(s + delta)) - sys.metric(path.at_extended(s - delta))) / (2.0 * delta * ramp_factor);
    return ComplexMatrix(sys.hamiltonian(p) - 0.5 * kI * num::inverse(w, tol.max_condition) * dw);
  };

  // Integrate in the frame rotating with the level energy (linear between
  // samples); the removed phase is added back exactly at the end.
  const auto& ts = path.times();
  auto energy = [&](double t) {
    const double s = std::min(t0 + t / ramp_factor, ts.back());
    const std::size_t hi = std::min<std::size_t>(
        ts.size() - 1, static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), s) - ts.begin()));
    const std::size_t lo = hi - 1;
    const double w = (s - ts[lo]) / (ts[hi] - ts[lo]);
    const Complex a = spectra[lo].energies[level], b = spectra[hi].energies[level];
    return a + w * (b - a);
  };
  const Eigen::Index dim = spectra.front().right[level].size();
  auto generator = [&](double t) {
    return ComplexMatrix(h_eff(t) - energy(t) * ComplexMatrix::Identity(dim, dim));
  };
  Complex frame_phase = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    frame_phase -= 0.5 * ramp_factor * (ts[k + 1] - ts[k]) * (spectra[k].energies[level] + spectra[k + 1].energies[level]);
  }

  ComplexVector psi = spectra.front().right[level];
  ComplexMatrix g_now = generator(0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = dt * static_cast<double>(k);
    const ComplexMatrix g_mid = generator(t + 0.5 * dt);
    const ComplexMatrix g_next = generator(t + dt);
    const ComplexVector k1 = -kI * (g_now * psi);
    const ComplexVector k2 = -kI * (g_mid * (psi + 0.5 * dt * k1));
    const ComplexVector k3 = -kI * (g_mid * (psi + 0.5 * dt * k2));
    const ComplexVector k4 = -kI * (g_next * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    g_now = g_next;
  }
  psi *= std::exp(kI * frame_phase);

  OracleResult out;
  out.ramp_factor = ramp_factor;
  out.phi_total = -kI * std::log(spectra.front().left[level].dot(psi));

  const auto& end = spectra.back();
  double total = 0.0, leak = 0.0;
  for (std::size_t m = 0; m < end.size(); ++m) {
    const double pop = std::norm(end.left[m].dot(psi));
    total += pop;
    if (m != level) leak += pop;
  }
  out.leaked = total > 0.0 ? leak / total : 1.0;

  auto dyn = dynamic_phases(spectra, pmap, level);
  const auto partial = partial_theta1(spectra, level, WilsonOptions{}, tol.zero_overlap);
  const Complex nu = spectra.front().left[level].dot(end.right[level]);
  out.predicted = ramp_factor * dyn.theta_dyn_0 - dyn.correction + partial.back() - kI * std::log(nu);
  // Report phi_total on the branch of the prediction.
  out.phi_total.real(out.predicted.real() + wrap_pi(out.phi_total.real() - out.predicted.real()));
  out.error = std::hypot(wrap_pi(out.phi_total.real() - out.predicted.real()),
                         out.phi_total.imag() - out.predicted.imag());
  out.breakdown = out.leaked > tol.adiabatic_leak;
  if (out.breakdown && opts.throw_on_breakdown) {
    std::ostringstream os;
    os << "adiabaticity breakdown: leaked population " << out.leaked << " exceeds " << tol.adiabatic_leak;
    throw Error(ErrorCode::AdiabaticityBreakdown, os.str());
  }
  return out;
}

double parallel_transport_residual(const PTSystem& sys, const LoopPath& path, bool include_prefactor,
                                   const Tolerances& tol) {
  auto spectra = spectrum_along(sys, path, tol);
  const std::size_t n = spectra.size();
  const auto& ts = path.times();
  double worst = 0.0;
  for (std::size_t level = 0; level < spectra.front().size(); ++level) {
    std::vector<Complex> theta(n, Complex(0.0, 0.0));
    if (include_prefactor) theta = partial_theta1(spectra, level, WilsonOptions{true, false}, tol.zero_overlap);
    std::vector<ComplexVector> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = std::exp(kI * theta[k]) * spectra[k].right[level];
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const ComplexVector df = derivative(f, ts, k);
      const Complex value = spectra[k].left[level].dot(df) * std::exp(-kI * theta[k]);
      worst = std::max(worst, std::abs(value));
    }
  }
  return worst;
}

}  // namespace ptgp
