// Runtime toggle between serial and OpenMP execution for the data-parallel
// kernels (per-degree cohomology ranks, Hom-complex homology, grid sweeps).
// All parallel work is on exact rationals with disjoint outputs, so results
// are bit-identical across schedules; tests assert serial == parallel.

#pragma once

#include <functional>

namespace twistcat {

enum class ExecMode { Serial, Parallel };

// Process-wide mode used by kernels that don't take an explicit mode.
// Defaults to Parallel when built with OpenMP, Serial otherwise.
ExecMode exec_mode();
void set_exec_mode(ExecMode m);

// True when compiled with OpenMP support.
bool openmp_enabled();
// Worker count the Parallel mode would use (1 without OpenMP).
int worker_count();

// Run body(i) for i in [0, n), serial or OpenMP-parallel by mode.  Bodies
// must write to disjoint slots.
void for_each_index(int n, ExecMode mode, const std::function<void(int)>& body);
inline void for_each_index(int n, const std::function<void(int)>& body) {
    for_each_index(n, exec_mode(), body);
}

} // namespace twistcat
