#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace idd {

// Serial is the reference path kept for testing; Parallel uses OpenMP.
enum class Exec { Serial, Parallel };

// Thread budget: IDD_WAVES_THREADS if set and positive, otherwise the
// OpenMP default.
int thread_budget();

// Runs body(i) for i in [0, n). Results must be written by index so that the
// output order never depends on scheduling. The first exception thrown by any
// iteration is rethrown after the loop completes.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec);

}  // namespace idd
