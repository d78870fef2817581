#pragma once

#include <cstdint>
#include <functional>

namespace brnr::parallel {

// Bounded fork-join helper. Work items are pure and indexed; results are
// written to caller-owned slots, so the outcome is identical for any thread
// count. set_threads(0) selects the hardware default.
void set_threads(int n);
int threads();

// Runs fn(i) for i in [0, count) across the configured worker count.
// fn must not touch shared mutable state except its own slot.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

}  // namespace brnr::parallel
