#include <chrono>
#include <ostream>
#include <string>

#include "edm/bench.hpp"
#include "edm/embedding.hpp"
#include "edm/knn.hpp"
#include "edm/simplex.hpp"
#include "edm/synthetic.hpp"

namespace edm
{

namespace
{

constexpr std::size_t kDeskLimit = 10000;

using Clock = std::chrono::steady_clock;

template <typename F>
double time_it(F &&f)
{
    const auto start = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

BenchKind parse_bench_kind(std::string_view name)
{
    if (name == "knn") return BenchKind::Knn;
    if (name == "lookup") return BenchKind::Lookup;
    throw std::invalid_argument("unknown benchmark kind '" + std::string(name) +
                                "' (expected knn or lookup)");
}

void BenchConfig::validate() const
{
    if (E_min < 1 || E_max < E_min) {
        throw std::invalid_argument("invalid E range [" + std::to_string(E_min) +
                                    ", " + std::to_string(E_max) + "]");
    }
    if (tau < 1) throw std::invalid_argument("tau must be greater than zero");
    if (N < 1) throw std::invalid_argument("N must be at least 1");
    if (!allow_large && (L > kDeskLimit || N > kDeskLimit)) {
        throw std::invalid_argument(
            "benchmark size exceeds the desk-scale bound L, N <= 10000; "
            "pass --allow-large to override");
    }
    valid_count(L, {E_max, tau});
}

std::vector<BenchRow> run_bench(const BenchConfig &cfg)
{
    cfg.validate();

    const auto library = gen_synthetic(SyntheticKind::UniformNoise, cfg.L,
                                       cfg.seed)[0];
    std::vector<BenchRow> rows;

    if (cfg.kind == BenchKind::Knn) {
        for (int E = cfg.E_min; E <= cfg.E_max; E++) {
            const EmbeddingSpec spec{E, cfg.tau};
            DistanceMatrix D;
            const double t_dist = time_it([&] { D = pairwise_distances(library, spec); });
            const double t_topk = time_it([&] {
                const auto topk = partial_sort_topk(D, static_cast<std::size_t>(E) + 1);
                const auto w = normalize_to_weights(topk.distances, topk.k);
                (void)w;
            });
            rows.push_back({E, "distance", t_dist});
            rows.push_back({E, "topk", t_topk});
        }
        return rows;
    }

    // Lookup: N noise targets sharing the library's time base.
    std::vector<TimeSeries> targets;
    targets.reserve(cfg.N);
    for (std::size_t i = 0; i < cfg.N; i++) {
        targets.push_back(
            gen_synthetic(SyntheticKind::UniformNoise, cfg.L, cfg.seed + 1 + i)[0]);
    }

    for (int E = cfg.E_min; E <= cfg.E_max; E++) {
        const auto table = build_knn_table(library, {E, cfg.tau});
        const double t = time_it([&] {
            const auto out = lookup_batch(table, targets, true);
            (void)out;
        });
        rows.push_back({E, "lookup", t});
    }
    return rows;
}

void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows)
{
    out << "E,phase,seconds\n";
    for (const auto &r : rows) {
        out << r.E << ',' << r.phase << ',' << r.seconds << '\n';
    }
}

} // namespace edm
