#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "edm/embedding.hpp"
#include "edm/knn.hpp"
#include "edm/parallel.hpp"

namespace edm
{

namespace
{

// Rows per tile; each tile's delay coordinates are copied to a local buffer.
constexpr std::size_t kRowTile = 32;
// Columns per block, sized so the E shifted column windows stay in L1/L2.
constexpr std::size_t kColBlock = 2048;
// Heaps scanning one row in interleaved column order.
constexpr std::size_t kLanes = 4;

} // namespace

namespace detail
{

BoundedMaxHeap::BoundedMaxHeap(std::size_t capacity) : capacity_(capacity)
{
    heap_.reserve(capacity + 1);
}

void BoundedMaxHeap::push(double dist, std::uint32_t index)
{
    const Entry e{dist, index};
    if (heap_.size() < capacity_) {
        heap_.push_back(e);
        std::push_heap(heap_.begin(), heap_.end(), entry_less);
    } else if (capacity_ > 0 && entry_less(e, heap_.front())) {
        std::pop_heap(heap_.begin(), heap_.end(), entry_less);
        heap_.back() = e;
        std::push_heap(heap_.begin(), heap_.end(), entry_less);
    }
}

} // namespace detail

DistanceMatrix pairwise_distances(std::span<const double> x,
                                  const EmbeddingSpec &spec)
{
    const std::size_t n = valid_count(x.size(), spec);
    const std::size_t E = static_cast<std::size_t>(spec.E);
    const std::size_t tau = static_cast<std::size_t>(spec.tau);
    const double *xs = x.data();

    DistanceMatrix D(n);
    const std::size_t n_tiles = (n + kRowTile - 1) / kRowTile;

#pragma omp parallel num_threads(num_workers())
    {
        std::vector<double> coords(kRowTile * E);

#pragma omp for schedule(dynamic)
        for (std::size_t tile = 0; tile < n_tiles; tile++) {
            const std::size_t i0 = tile * kRowTile;
            const std::size_t i1 = std::min(n, i0 + kRowTile);

            for (std::size_t i = i0; i < i1; i++) {
                for (std::size_t k = 0; k < E; k++) {
                    coords[(i - i0) * E + k] = xs[i + k * tau];
                }
            }

            for (std::size_t j0 = 0; j0 < n; j0 += kColBlock) {
                const std::size_t j1 = std::min(n, j0 + kColBlock);

                for (std::size_t i = i0; i < i1; i++) {
                    double *row = &D(i, 0);
                    const double *c = &coords[(i - i0) * E];

                    for (std::size_t k = 0; k < E; k++) {
                        const double ck = c[k];
                        const double *xk = xs + k * tau;
#pragma omp simd
                        for (std::size_t j = j0; j < j1; j++) {
                            const double diff = ck - xk[j];
                            row[j] += diff * diff;
                        }
                    }
                }
            }
        }
    }

    return D;
}

TopK partial_sort_topk(const DistanceMatrix &D, std::size_t k)
{
    const std::size_t n = D.n();
    if (k < 1 || n < 1 || k > n - 1) {
        throw std::invalid_argument("k must be in [1, n - 1] (k=" +
                                    std::to_string(k) + ", n=" +
                                    std::to_string(n) + ")");
    }

    TopK out;
    out.n = n;
    out.k = k;
    out.distances.resize(n * k);
    out.indices.resize(n * k);

#pragma omp parallel num_threads(num_workers())
    {
        std::vector<detail::BoundedMaxHeap> lanes(kLanes,
                                                  detail::BoundedMaxHeap(k));
        std::vector<detail::BoundedMaxHeap::Entry> merged;
        merged.reserve(kLanes * k);

#pragma omp for schedule(static)
        for (std::size_t i = 0; i < n; i++) {
            const auto row = D.row(i);

            for (auto &h : lanes) h.clear();
            for (std::size_t j = 0; j < n; j++) {
                if (j == i) continue;
                lanes[j % kLanes].push(row[j], static_cast<std::uint32_t>(j));
            }

            merged.clear();
            for (const auto &h : lanes) {
                merged.insert(merged.end(), h.entries().begin(),
                              h.entries().end());
            }
            std::partial_sort(merged.begin(), merged.begin() + k, merged.end(),
                              detail::entry_less);

            for (std::size_t m = 0; m < k; m++) {
                out.distances[i * k + m] = merged[m].dist;
                out.indices[i * k + m] = merged[m].index;
            }
        }
    }

    return out;
}

std::vector<double> normalize_to_weights(std::span<const double> sq_distances,
                                         std::size_t k)
{
    if (k == 0 || sq_distances.size() % k != 0) {
        throw std::invalid_argument("distance count is not a multiple of k");
    }
    const std::size_t rows = sq_distances.size() / k;
    std::vector<double> w(sq_distances.size());

#pragma omp parallel for schedule(static) num_threads(num_workers())
    for (std::size_t i = 0; i < rows; i++) {
        const double *sq = sq_distances.data() + i * k;
        double *wi = w.data() + i * k;

        double dmin = 0.0;
        for (std::size_t m = 0; m < k; m++) {
            const double d = std::sqrt(sq[m]);
            wi[m] = d;
            if (dmin == 0.0 && d > 0.0) dmin = d;
        }

        if (dmin == 0.0) {
            std::fill(wi, wi + k, 1.0 / static_cast<double>(k));
            continue;
        }

        // Floored so far neighbors keep a positive weight instead of
        // underflowing to zero.
        double sum = 0.0;
        for (std::size_t m = 0; m < k; m++) {
            wi[m] = std::max(std::exp(-wi[m] / dmin),
                             std::numeric_limits<double>::min());
            sum += wi[m];
        }
        for (std::size_t m = 0; m < k; m++) {
            wi[m] /= sum;
        }
    }

    return w;
}

NeighborTable build_knn_table(std::span<const double> x,
                              const EmbeddingSpec &spec, std::size_t k)
{
    if (k == 0) k = static_cast<std::size_t>(spec.E) + 1;

    const auto D = pairwise_distances(x, spec);
    auto topk = partial_sort_topk(D, k);

    NeighborTable table;
    table.spec = spec;
    table.n = topk.n;
    table.k = topk.k;
    table.weights = normalize_to_weights(topk.distances, k);
    table.indices = std::move(topk.indices);
    return table;
}

} // namespace edm
