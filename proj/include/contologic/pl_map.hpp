#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contologic/rational.hpp"

namespace contologic {

/// How a PLMap fills in between breakpoints.
///  - StepLeft:  value at t is y_i for the smallest x_i >= t (left-continuous).
///  - StepRight: value at t is y_i for the largest x_i <= t (right-continuous).
///  - Linear:    linear interpolation between neighbouring breakpoints.
enum class Interpolation { StepLeft, StepRight, Linear };

std::string to_string(Interpolation mode);

struct Breakpoint {
  Rational x;
  Rational y;
  bool operator==(const Breakpoint&) const = default;
};

/// Nondecreasing piecewise map [0,1] -> [0,1] given by rational breakpoints.
/// Used for continuity moduli and for the monotone reparametrisations of
/// the metric repair pipeline.
class PLMap {
public:
  PLMap() : PLMap(zero()) {}
  PLMap(std::vector<Breakpoint> points, Interpolation mode);

  static PLMap zero();
  static PLMap identity();
  /// t -> min(1, L t).
  static PLMap lipschitz(const Rational& constant);

  Rational operator()(const Rational& t) const;

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  Interpolation mode() const { return mode_; }
  /// Set when the map was built by lipschitz().
  const std::optional<Rational>& lipschitz_constant() const { return lipschitz_; }

  /// Same breakpoints, different interpolation.
  PLMap with_mode(Interpolation mode) const;

  bool operator==(const PLMap& other) const {
    return points_ == other.points_ && mode_ == other.mode_;
  }

private:
  std::vector<Breakpoint> points_;
  Interpolation mode_;
  std::optional<Rational> lipschitz_;
};

}  // namespace contologic
