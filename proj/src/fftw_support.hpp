#pragma once

#include <mutex>

namespace pfc::detail {

// FFTW's planner is global and not thread-safe; every plan creation and
// destruction in the library holds this lock.
std::mutex &fftw_planner_mutex();

} // namespace pfc::detail
