#include "contologic/pl_map.hpp"

#include <algorithm>

namespace contologic {

std::string to_string(Interpolation mode) {
  switch (mode) {
    case Interpolation::StepLeft: return "step-left-continuous";
    case Interpolation::StepRight: return "step-right-continuous";
    case Interpolation::Linear: return "linear";
  }
  return "?";
}

PLMap::PLMap(std::vector<Breakpoint> points, Interpolation mode)
    : points_(std::move(points)), mode_(mode) {
  if (points_.empty()) throw Error("PLMap needs at least one breakpoint");
  if (points_.front().x != 0) throw Error("PLMap domain must start at 0");
  if (points_.back().x != 1) throw Error("PLMap domain must end at 1");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!truth::in_unit_interval(p.x) || !truth::in_unit_interval(p.y))
      throw Error("PLMap breakpoint outside [0,1]");
    if (i > 0) {
      if (p.x <= points_[i - 1].x) throw Error("PLMap breakpoints must be strictly increasing in x");
      if (p.y < points_[i - 1].y) throw Error("PLMap must be nondecreasing");
    }
  }
}

PLMap PLMap::zero() { return PLMap({{0, 0}, {1, 0}}, Interpolation::Linear); }

PLMap PLMap::identity() { return PLMap({{0, 0}, {1, 1}}, Interpolation::Linear); }

PLMap PLMap::lipschitz(const Rational& constant) {
  if (constant < 0) throw Error("negative Lipschitz constant");
  PLMap out = [&] {
    if (constant <= 1) return PLMap({{0, 0}, {1, constant}}, Interpolation::Linear);
    Rational knee = Rational(1) / constant;
    return PLMap({{0, 0}, {knee, 1}, {1, 1}}, Interpolation::Linear);
  }();
  out.lipschitz_ = constant;
  return out;
}

Rational PLMap::operator()(const Rational& t) const {
  if (t <= points_.front().x) return points_.front().y;
  if (t >= points_.back().x) return points_.back().y;
  // first breakpoint with x >= t
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const Breakpoint& b, const Rational& v) { return b.x < v; });
  switch (mode_) {
    case Interpolation::StepLeft:
      return it->y;
    case Interpolation::StepRight:
      if (it->x == t) return it->y;
      return std::prev(it)->y;
    case Interpolation::Linear: {
      if (it->x == t) return it->y;
      const auto& hi = *it;
      const auto& lo = *std::prev(it);
      return lo.y + (hi.y - lo.y) * (t - lo.x) / (hi.x - lo.x);
    }
  }
  return 0;
}

PLMap PLMap::with_mode(Interpolation mode) const {
  PLMap out = *this;
  out.mode_ = mode;
  if (mode != Interpolation::Linear) out.lipschitz_.reset();
  return out;
}

}  // namespace contologic
