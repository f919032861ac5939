#pragma once

#include <span>
#include <vector>

#include "fracheat/grid.hpp"

namespace fracheat {

/// Real values u(t_i, x_k) on the product grid, row-major in time.
/// Row 0 is the initial condition and is identically zero for solution
/// candidates.
class SpaceTimeField {
 public:
  SpaceTimeField(TimeGrid tg, SpaceGrid sg);

  const TimeGrid& time_grid() const { return tg_; }
  const SpaceGrid& space_grid() const { return sg_; }

  double& at(int it, int ix) { return v_[static_cast<std::size_t>(it) * sg_.points() + ix]; }
  double at(int it, int ix) const { return v_[static_cast<std::size_t>(it) * sg_.points() + ix]; }

  std::span<double> row(int it) {
    return {v_.data() + static_cast<std::size_t>(it) * sg_.points(),
            static_cast<std::size_t>(sg_.points())};
  }
  std::span<const double> row(int it) const {
    return {v_.data() + static_cast<std::size_t>(it) * sg_.points(),
            static_cast<std::size_t>(sg_.points())};
  }

  /// Throws std::runtime_error if any entry is non-finite.
  void check_finite() const;

  bool row_zero(int it) const;

  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

 private:
  TimeGrid tg_;
  SpaceGrid sg_;
  std::vector<double> v_;
};

}  // namespace fracheat
