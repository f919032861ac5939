#pragma once

#include <functional>

namespace fracheat {

/// Global worker count for parallel_for. 1 = serial.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, n). Work items must be independent; each writes
/// only its own output slot, so results do not depend on the schedule.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace fracheat
