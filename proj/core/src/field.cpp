#include "fracheat/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

SpaceTimeField::SpaceTimeField(TimeGrid tg, SpaceGrid sg)
    : tg_(tg), sg_(sg),
      v_(static_cast<std::size_t>(tg.steps() + 1) * sg.points(), 0.0) {}

void SpaceTimeField::check_finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) throw std::runtime_error("SpaceTimeField: non-finite value");
}

bool SpaceTimeField::row_zero(int it) const {
  for (double x : row(it))
    if (x != 0.0) return false;
  return true;
}

}  // namespace fracheat
