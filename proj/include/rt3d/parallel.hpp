#pragma once

#include <cmath>
#include <functional>

namespace rt3d {

/// requested <= 0 selects the hardware thread count (at least 1).
int resolve_thread_count(int requested);

/// Runs fn(chunk) for chunk = 0 .. n_chunks-1 on the given number of worker
/// threads. Chunk identity, not scheduling, decides what each call computes,
/// so results written per chunk are independent of the worker count. The
/// first exception thrown by any chunk is rethrown on the calling thread.
void parallel_for_chunks(int n_chunks, int threads, const std::function<void(int)>& fn);

/// Neumaier compensated accumulator; adding the same values in the same
/// order always reproduces the same bits.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double result() const { return sum + comp; }
};

}  // namespace rt3d
