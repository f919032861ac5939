#pragma once

#include <span>
#include <vector>

namespace fracheat {

/// Uniform partition of [0, T] into `steps` intervals, nodes t_i = i*T/steps.
class TimeGrid {
 public:
  TimeGrid(double horizon, int steps);

  double horizon() const { return horizon_; }
  int steps() const { return steps_; }
  double dt() const { return horizon_ / steps_; }
  double node(int i) const { return horizon_ * i / steps_; }

  /// Grid index of time t; throws std::invalid_argument if t is off-grid.
  int index_of(double t) const;

  std::vector<double> nodes() const;

 private:
  double horizon_;
  int steps_;
};

/// Uniform symmetric grid on [-L, L] that always contains 0 as a node.
/// An even requested point count is bumped to the next odd value, since a
/// uniform grid with both endpoints and an even count cannot contain 0.
class SpaceGrid {
 public:
  SpaceGrid(double half_width, int points);

  double half_width() const { return half_width_; }
  int points() const { return points_; }
  double dx() const { return 2.0 * half_width_ / (points_ - 1); }
  double node(int k) const { return -half_width_ + dx() * k; }
  int center_index() const { return (points_ - 1) / 2; }

  std::vector<double> nodes() const;

 private:
  double half_width_;
  int points_;
};

/// Composite trapezoid weights; sums to 2L.
std::vector<double> quad_weights(const SpaceGrid& grid);

/// Discrete L2(R) norm of one field row: sqrt(sum w_k v_k^2).
double l2_norm(std::span<const double> row, const SpaceGrid& grid);

/// Same, for the difference of two rows (avoids a temporary).
double l2_norm_diff(std::span<const double> a, std::span<const double> b,
                    const SpaceGrid& grid);

}  // namespace fracheat
