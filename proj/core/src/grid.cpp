#include "fracheat/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

TimeGrid::TimeGrid(double horizon, int steps) : horizon_(horizon), steps_(steps) {
  if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be > 0");
  if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
}

int TimeGrid::index_of(double t) const {
  double pos = t / dt();
  int i = static_cast<int>(std::lround(pos));
  if (i < 0 || i > steps_ || std::abs(pos - i) > 1e-9 * steps_)
    throw std::invalid_argument("TimeGrid: time is not a grid node");
  return i;
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> out(steps_ + 1);
  for (int i = 0; i <= steps_; ++i) out[i] = node(i);
  return out;
}

SpaceGrid::SpaceGrid(double half_width, int points) : half_width_(half_width), points_(points) {
  if (!(half_width > 0.0)) throw std::invalid_argument("SpaceGrid: half_width must be > 0");
  if (points < 2) throw std::invalid_argument("SpaceGrid: points must be >= 2");
  if (points_ % 2 == 0) ++points_;  // keep 0 exactly on the grid
}

std::vector<double> SpaceGrid::nodes() const {
  std::vector<double> out(points_);
  for (int k = 0; k < points_; ++k) out[k] = node(k);
  return out;
}

std::vector<double> quad_weights(const SpaceGrid& grid) {
  const int m = grid.points();
  std::vector<double> w(m, grid.dx());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double l2_norm(std::span<const double> row, const SpaceGrid& grid) {
  if (static_cast<int>(row.size()) != grid.points())
    throw std::invalid_argument("l2_norm: row length does not match grid");
  const double h = grid.dx();
  double acc = 0.5 * row[0] * row[0];
  for (std::size_t k = 1; k + 1 < row.size(); ++k) acc += row[k] * row[k];
  acc += 0.5 * row[row.size() - 1] * row[row.size() - 1];
  return std::sqrt(acc * h);
}

double l2_norm_diff(std::span<const double> a, std::span<const double> b,
                    const SpaceGrid& grid) {
  if (a.size() != b.size() || static_cast<int>(a.size()) != grid.points())
    throw std::invalid_argument("l2_norm_diff: row length does not match grid");
  const double h = grid.dx();
  auto sq = [](double v) { return v * v; };
  double acc = 0.5 * sq(a[0] - b[0]);
  for (std::size_t k = 1; k + 1 < a.size(); ++k) acc += sq(a[k] - b[k]);
  acc += 0.5 * sq(a[a.size() - 1] - b[a.size() - 1]);
  return std::sqrt(acc * h);
}

}  // namespace fracheat
