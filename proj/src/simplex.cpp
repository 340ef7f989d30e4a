#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "edm/embedding.hpp"
#include "edm/parallel.hpp"
#include "edm/simplex.hpp"
#include "edm/stats.hpp"

namespace edm
{

namespace
{

// Time points per lookup task.
constexpr std::size_t kTimeBlock = 2048;
// Largest neighbor count with a fixed-size (unrolled) kernel.
constexpr std::size_t kMaxUnrolled = 21;

using BlockKernel = void (*)(const NeighborTable &table, const double *y,
                             std::size_t j0, std::size_t j1, double *predicted,
                             PearsonAccumulator &acc);

// y is the target already aligned so that y[j] is the observation paired with
// embedded point j. K == 0 means the neighbor count is read at run time.
template <std::size_t K>
void lookup_block(const NeighborTable &table, const double *y, std::size_t j0,
                  std::size_t j1, double *predicted, PearsonAccumulator &acc)
{
    const std::size_t k = K == 0 ? table.k : K;
    const std::uint32_t *indices = table.indices.data();
    const double *weights = table.weights.data();

    for (std::size_t j = j0; j < j1; j++) {
        const std::uint32_t *idx = indices + j * k;
        const double *w = weights + j * k;

        double p = 0.0;
        if constexpr (K == 0) {
            for (std::size_t m = 0; m < k; m++) p += w[m] * y[idx[m]];
        } else {
            [&]<std::size_t... M>(std::index_sequence<M...>) {
                ((p += w[M] * y[idx[M]]), ...);
            }(std::make_index_sequence<K>{});
        }

        if (predicted != nullptr) predicted[j] = p;
        acc.push(y[j], p);
    }
}

template <std::size_t... K>
constexpr auto make_kernel_table(std::index_sequence<K...>)
{
    return std::array<BlockKernel, sizeof...(K)>{&lookup_block<K>...};
}

// Entry 0 is the generic kernel.
constexpr auto kKernels =
    make_kernel_table(std::make_index_sequence<kMaxUnrolled + 1>{});

BlockKernel select_kernel(std::size_t k)
{
    return k <= kMaxUnrolled ? kKernels[k] : kKernels[0];
}

} // namespace

std::vector<PredictionOutput>
lookup_batch(const NeighborTable &table,
             std::span<const std::span<const double>> targets,
             bool want_predictions, int Tp)
{
    if (Tp < 0) {
        throw std::invalid_argument("Tp must be non-negative");
    }
    if (table.k == 0 || table.indices.size() != table.n * table.k ||
        table.weights.size() != table.n * table.k) {
        throw std::invalid_argument("malformed neighbor table");
    }

    const std::size_t n = table.n;
    const std::size_t offset = table.spec.shift() + static_cast<std::size_t>(Tp);
    const std::size_t n_targets = targets.size();

    for (std::size_t t = 0; t < n_targets; t++) {
        if (targets[t].size() < n + offset) {
            throw std::invalid_argument(
                "target " + std::to_string(t) + " has length " +
                std::to_string(targets[t].size()) + ", lookup needs at least " +
                std::to_string(n + offset));
        }
    }

    std::vector<PredictionOutput> out(n_targets);
    if (n_targets == 0 || n == 0) return out;

    if (want_predictions) {
        for (auto &o : out) o.predicted.resize(n);
    }

    // Contiguous staging of the aligned target windows for the indirect
    // gathers below.
    std::vector<double> staged(n_targets * n);
    const std::size_t n_blocks = (n + kTimeBlock - 1) / kTimeBlock;
    const std::size_t n_tasks = n_targets * n_blocks;
    std::vector<PearsonAccumulator> partial(n_tasks);
    const BlockKernel kernel = select_kernel(table.k);

#pragma omp parallel num_threads(num_workers())
    {
#pragma omp for schedule(static)
        for (std::size_t t = 0; t < n_targets; t++) {
            std::copy_n(targets[t].data() + offset, n, staged.data() + t * n);
        }

#pragma omp for schedule(dynamic)
        for (std::size_t task = 0; task < n_tasks; task++) {
            const std::size_t t = task / n_blocks;
            const std::size_t b = task % n_blocks;
            const std::size_t j0 = b * kTimeBlock;
            const std::size_t j1 = std::min(n, j0 + kTimeBlock);
            double *pred = want_predictions ? out[t].predicted.data() : nullptr;
            kernel(table, staged.data() + t * n, j0, j1, pred, partial[task]);
        }
    }

    for (std::size_t t = 0; t < n_targets; t++) {
        PearsonAccumulator acc;
        for (std::size_t b = 0; b < n_blocks; b++) {
            acc.merge(partial[t * n_blocks + b]);
        }
        out[t].rho = acc.correlation();
    }

    return out;
}

std::vector<PredictionOutput> lookup_batch(const NeighborTable &table,
                                           std::span<const TimeSeries> targets,
                                           bool want_predictions, int Tp)
{
    std::vector<std::span<const double>> views;
    views.reserve(targets.size());
    for (const auto &t : targets) views.push_back(t.values());
    return lookup_batch(table, views, want_predictions, Tp);
}

std::optional<double> simplex_self_predict(const TimeSeries &x,
                                           const EmbeddingSpec &spec, int Tp)
{
    if (Tp < 1) {
        throw std::invalid_argument("Tp must be at least 1 for self-prediction");
    }
    const auto horizon = static_cast<std::size_t>(Tp);
    if (x.size() <= horizon) {
        throw SeriesTooShort("series of length " + std::to_string(x.size()) +
                             " is too short for Tp=" + std::to_string(Tp));
    }

    // Library points whose future Tp steps ahead is observed.
    const auto library = x.values().first(x.size() - horizon);
    const auto table = build_knn_table(library, spec);

    const std::span<const double> target = x.values();
    return lookup_batch(table, std::span(&target, 1), false, Tp).front().rho;
}

OptimalEmbedding optimal_embedding(const TimeSeries &x, int E_max, int tau,
                                   int Tp)
{
    if (E_max < 1) {
        throw std::invalid_argument("E_max must be greater than zero");
    }
    if (tau < 1) {
        throw std::invalid_argument("tau must be greater than zero");
    }
    if (Tp < 1) {
        throw std::invalid_argument("Tp must be at least 1");
    }
    if (x.size() <= static_cast<std::size_t>(Tp)) {
        throw SeriesTooShort("series too short for Tp=" + std::to_string(Tp));
    }
    // Fail before the sweep if the largest E does not fit.
    valid_count(x.size() - static_cast<std::size_t>(Tp), {E_max, tau});

    OptimalEmbedding result;
    result.rho_by_E.resize(E_max);

    std::optional<double> best;
    for (int E = 1; E <= E_max; E++) {
        const auto rho = simplex_self_predict(x, {E, tau}, Tp);
        result.rho_by_E[E - 1] = rho;
        if (rho && (!best || *rho > *best)) {
            best = rho;
            result.E_star = E;
        }
    }

    if (!best) {
        throw std::domain_error("series '" + x.name() +
                                "' has no defined self-prediction skill "
                                "(zero variance)");
    }
    return result;
}

} // namespace edm
