#include <atomic>

#include <omp.h>

#include "edm/parallel.hpp"

namespace edm
{

namespace
{
std::atomic<int> g_workers{0};
}

int max_workers() { return omp_get_max_threads(); }

int num_workers()
{
    const int n = g_workers.load(std::memory_order_relaxed);
    return n > 0 ? n : max_workers();
}

void set_num_workers(int n)
{
    g_workers.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

} // namespace edm
