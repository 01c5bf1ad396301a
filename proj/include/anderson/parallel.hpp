#pragma once

#include <functional>

namespace anderson::par {

// Worker count resolution: explicit request > ANDERSON_LEVELS_WORKERS env
// var > hardware concurrency.
int env_workers();
int resolve_workers(int requested);

// Runs body(i) for i in [0, count). Work stealing across `workers` OpenMP
// threads; the body must write only to its own index slot. Exceptions are
// captured and rethrown (first one wins) after the region joins.
//
// Reductions over per-index results happen after this returns, serially and
// in index order, so outputs are identical for every worker count.
void for_each_index(int count, int workers, const std::function<void(int)>& body);

// Serial reference implementation of the same contract.
void for_each_index_serial(int count, const std::function<void(int)>& body);

}  // namespace anderson::par
