#include "ptgp/path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptgp/errors.hpp"

namespace ptgp {

bool same_point(const ParameterPoint& a, const ParameterPoint& b, const std::vector<double>& periods,
                double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    const double period = i < periods.size() ? periods[i] : 0.0;
    if (period > 0.0) d -= period * std::round(d / period);
    if (std::abs(d) > tol * std::max(1.0, std::abs(a[i]))) return false;
  }
  return true;
}

LoopPath::LoopPath(std::vector<ParameterPoint> points, std::vector<double> times, bool closed,
                   std::vector<double> periods)
    : points_(std::move(points)), times_(std::move(times)), periods_(std::move(periods)),
      closed_(closed) {
  if (points_.empty() || points_.size() != times_.size()) {
    throw Error(ErrorCode::InvalidArgument, "path needs matching, non-empty points and times");
  }
  const std::size_t dim = points_.front().size();
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (points_[k].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "path points have inconsistent dimension");
    }
    for (double c : points_[k].coords) {
      if (!std::isfinite(c)) throw Error(ErrorCode::NonFinite, "path coordinate is not finite");
    }
    if (!std::isfinite(times_[k])) throw Error(ErrorCode::NonFinite, "path time is not finite");
    if (k > 0 && !(times_[k] > times_[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "path times must be strictly increasing");
    }
  }
  if (closed_ && !same_point(points_.front(), points_.back(), periods_)) {
    throw Error(ErrorCode::InvalidArgument, "closed path must end where it starts");
  }
}

LoopPath LoopPath::latitude(double theta, std::size_t intervals, double tau) {
  if (intervals < 2) throw Error(ErrorCode::InvalidArgument, "latitude loop needs >= 2 intervals");
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "loop duration must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<ParameterPoint> points;
  std::vector<double> times;
  points.reserve(intervals + 1);
  times.reserve(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(intervals);
    points.push_back({{theta, two_pi * frac}});
    times.push_back(tau * frac);
  }
  return LoopPath(std::move(points), std::move(times), true, {0.0, two_pi});
}

LoopPath LoopPath::polyline(const std::vector<ParameterPoint>& vertices, std::size_t intervals,
                            double tau, std::vector<double> periods) {
  if (vertices.size() < 2) throw Error(ErrorCode::InvalidArgument, "polyline needs >= 2 vertices");
  if (intervals < vertices.size() - 1) {
    throw Error(ErrorCode::InvalidArgument, "polyline needs at least one interval per segment");
  }
  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    double len = 0.0;
    for (std::size_t c = 0; c < vertices[i].size(); ++c) {
      const double d = vertices[i][c] - vertices[i - 1][c];
      len += d * d;
    }
    cumulative.push_back(cumulative.back() + std::sqrt(len));
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidArgument, "polyline has zero length");

  std::vector<ParameterPoint> points;
  std::vector<double> times;
  std::size_t seg = 0;
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(intervals);
    const double s = frac * total;
    while (seg + 2 < vertices.size() && s > cumulative[seg + 1]) ++seg;
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    const double w = seg_len > 0.0 ? std::clamp((s - cumulative[seg]) / seg_len, 0.0, 1.0) : 0.0;
    ParameterPoint p;
    for (std::size_t c = 0; c < vertices[seg].size(); ++c) {
      p.coords.push_back((1.0 - w) * vertices[seg][c] + w * vertices[seg + 1][c]);
    }
    if (k == intervals) p = vertices.back();
    points.push_back(std::move(p));
    times.push_back(tau * frac);
  }
  const bool closed = same_point(vertices.front(), vertices.back(), periods);
  return LoopPath(std::move(points), std::move(times), closed, std::move(periods));
}

LoopPath LoopPath::constant(const ParameterPoint& point, std::size_t intervals, double tau,
                            bool closed) {
  if (intervals < 1) throw Error(ErrorCode::InvalidArgument, "constant path needs >= 1 interval");
  std::vector<ParameterPoint> points(intervals + 1, point);
  std::vector<double> times;
  for (std::size_t k = 0; k <= intervals; ++k) {
    times.push_back(tau * static_cast<double>(k) / static_cast<double>(intervals));
  }
  return LoopPath(std::move(points), std::move(times), closed);
}

bool LoopPath::uniform(double rel_tol) const {
  if (times_.size() < 3) return true;
  const double h = duration() / static_cast<double>(intervals());
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (std::abs((times_[k] - times_[k - 1]) - h) > rel_tol * h) return false;
  }
  return true;
}

ParameterPoint LoopPath::at(double t) const {
  if (t <= times_.front()) return points_.front();
  if (t >= times_.back()) return points_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
  ParameterPoint p;
  p.coords.resize(points_[lo].size());
  for (std::size_t c = 0; c < p.coords.size(); ++c) {
    p.coords[c] = points_[lo][c] + w * (points_[hi][c] - points_[lo][c]);
  }
  return p;
}

ParameterPoint LoopPath::at_extended(double t) const {
  if (points_.size() < 2) return points_.front();
  std::size_t lo = 0;
  if (t >= times_.back()) {
    lo = times_.size() - 2;
  } else if (t > times_.front()) {
    lo = static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin()) - 1;
  }
  const std::size_t hi = lo + 1;
  const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
  ParameterPoint p;
  p.coords.resize(points_[lo].size());
  for (std::size_t c = 0; c < p.coords.size(); ++c) {
    p.coords[c] = points_[lo][c] + w * (points_[hi][c] - points_[lo][c]);
  }
  return p;
}

LoopPath LoopPath::prefix(std::size_t k) const {
  if (k >= points_.size()) throw Error(ErrorCode::InvalidArgument, "prefix index out of range");
  std::vector<ParameterPoint> pts(points_.begin(), points_.begin() + static_cast<long>(k) + 1);
  std::vector<double> ts(times_.begin(), times_.begin() + static_cast<long>(k) + 1);
  return LoopPath(std::move(pts), std::move(ts), false, periods_);
}

LoopPath LoopPath::time_scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "time scale must be positive");
  std::vector<double> ts = times_;
  for (double& t : ts) t *= factor;
  return LoopPath(points_, std::move(ts), closed_, periods_);
}

LoopPath LoopPath::subsampled(std::size_t stride) const {
  if (stride == 0 || intervals() % stride != 0) {
    throw Error(ErrorCode::InvalidArgument, "stride must divide the number of intervals");
  }
  std::vector<ParameterPoint> pts;
  std::vector<double> ts;
  for (std::size_t k = 0; k < points_.size(); k += stride) {
    pts.push_back(points_[k]);
    ts.push_back(times_[k]);
  }
  return LoopPath(std::move(pts), std::move(ts), closed_, periods_);
}

}  // namespace ptgp
