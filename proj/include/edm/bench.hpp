#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace edm
{

enum class BenchKind { Knn, Lookup };

BenchKind parse_bench_kind(std::string_view name);

struct BenchConfig {
    BenchKind kind = BenchKind::Knn;
    std::size_t L = 10000;
    // Number of targets for the lookup benchmark.
    std::size_t N = 1000;
    int E_min = 1;
    int E_max = 20;
    int tau = 1;
    std::uint64_t seed = 42;
    // Lifts the L, N <= 10^4 desk-scale bound.
    bool allow_large = false;

    void validate() const;
};

struct BenchRow {
    int E;
    std::string phase;
    double seconds;
};

// Times the k-NN kernels (phases "distance" and "topk") or the lookup kernel
// (phase "lookup") on uniform noise for each E in [E_min, E_max].
std::vector<BenchRow> run_bench(const BenchConfig &cfg);

void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows);

} // namespace edm
