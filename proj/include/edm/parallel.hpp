#pragma once

namespace edm
{

// Hardware concurrency as seen by the OpenMP runtime.
int max_workers();

// Worker count used by the parallel kernels. Defaults to max_workers().
int num_workers();

// Values < 1 reset to max_workers().
void set_num_workers(int n);

// Restores the previous worker count on destruction.
class WorkerScope
{
public:
    explicit WorkerScope(int n) : saved_(num_workers()) { set_num_workers(n); }
    ~WorkerScope() { set_num_workers(saved_); }

    WorkerScope(const WorkerScope &) = delete;
    WorkerScope &operator=(const WorkerScope &) = delete;

private:
    int saved_;
};

} // namespace edm
