#pragma once

#include <cstddef>
#include <vector>

namespace ptgp {

// A point R = (R_1, ..., R_k) of the parameter manifold.
struct ParameterPoint {
  std::vector<double> coords;

  std::size_t size() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
};

// A discretised curve R(t) through parameter space. Times are strictly
// increasing. Coordinates may be declared periodic (period > 0), in which case
// samples keep the unwrapped value so that interpolation stays continuous and
// closure is tested modulo the period.
class LoopPath {
 public:
  LoopPath(std::vector<ParameterPoint> points, std::vector<double> times, bool closed,
           std::vector<double> periods = {});

  // Circle of latitude on the (theta, phi) sphere: phi sweeps [0, 2pi] uniformly
  // over [0, tau] with `intervals` steps (intervals + 1 samples).
  static LoopPath latitude(double theta, std::size_t intervals, double tau = 6.283185307179586);

  // Piecewise-linear curve through the vertices, `intervals` uniform time steps
  // distributed proportionally to segment length. Closed when the last vertex
  // equals the first modulo periods.
  static LoopPath polyline(const std::vector<ParameterPoint>& vertices, std::size_t intervals,
                           double tau, std::vector<double> periods = {});

  // Every sample equal to `point`.
  static LoopPath constant(const ParameterPoint& point, std::size_t intervals, double tau,
                           bool closed = true);

  const std::vector<ParameterPoint>& points() const { return points_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& periods() const { return periods_; }
  bool closed() const { return closed_; }
  std::size_t samples() const { return points_.size(); }
  std::size_t intervals() const { return points_.size() - 1; }
  double duration() const { return times_.back() - times_.front(); }
  bool uniform(double rel_tol = 1e-9) const;

  // Linear interpolation in the (unwrapped) coordinates; clamped to [t0, t_end].
  ParameterPoint at(double t) const;
  // Same, but continues the first/last segment linearly outside [t0, t_end].
  ParameterPoint at_extended(double t) const;

  // Samples 0..k as an open path.
  LoopPath prefix(std::size_t k) const;
  // Same points, times multiplied by `factor`.
  LoopPath time_scaled(double factor) const;
  // Every `stride`-th sample (the last sample must be on the stride).
  LoopPath subsampled(std::size_t stride) const;

 private:
  std::vector<ParameterPoint> points_;
  std::vector<double> times_;
  std::vector<double> periods_;
  bool closed_;
};

bool same_point(const ParameterPoint& a, const ParameterPoint& b, const std::vector<double>& periods,
                double tol = 1e-14);

}  // namespace ptgp
