#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edm/types.hpp"

namespace edm
{

// Dense n x n matrix of squared Euclidean distances between embedded points,
// row-major.
class DistanceMatrix
{
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t n() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * n_ + j];
    }
    double &operator()(std::size_t i, std::size_t j)
    {
        return data_[i * n_ + j];
    }

    std::span<const double> row(std::size_t i) const
    {
        return {data_.data() + i * n_, n_};
    }
    std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Top-k squared distances and neighbor indices, row-major n x k.
struct TopK {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> distances;
    std::vector<std::uint32_t> indices;

    std::span<const double> distance_row(std::size_t i) const
    {
        return {distances.data() + i * k, k};
    }
    std::span<const std::uint32_t> index_row(std::size_t i) const
    {
        return {indices.data() + i * k, k};
    }
};

// Precomputed simplex lookup table of one library embedding. Row i holds the
// k nearest neighbors of embedded point i (self excluded), nearest first,
// and their normalized exponential weights.
struct NeighborTable {
    EmbeddingSpec spec;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> indices;
    std::vector<double> weights;

    std::span<const std::uint32_t> index_row(std::size_t i) const
    {
        return {indices.data() + i * k, k};
    }
    std::span<const double> weight_row(std::size_t i) const
    {
        return {weights.data() + i * k, k};
    }
};

// Fused embedding + squared distance kernel. Entry (i, j) is
// sum_{k<E} (x[i + k tau] - x[j + k tau])^2; the embedding is never
// materialized. Rows are processed in cache-sized tiles in parallel.
DistanceMatrix pairwise_distances(std::span<const double> x,
                                  const EmbeddingSpec &spec);
inline DistanceMatrix pairwise_distances(const TimeSeries &x,
                                         const EmbeddingSpec &spec)
{
    return pairwise_distances(x.values(), spec);
}

// Per row, the k smallest off-diagonal entries in ascending order, ties
// broken by smaller column index. Each row is scanned by a fixed set of lanes
// that each keep a bounded max-heap of capacity k; the lanes are merged by a
// single reducer. Throws std::invalid_argument unless 1 <= k <= n - 1.
TopK partial_sort_topk(const DistanceMatrix &D, std::size_t k);

// Exponential simplex weights from ascending squared distances:
// w_i = exp(-d_i / d_min) normalized per row, with d = sqrt(squared).
// When d_min is zero the smallest positive distance in the row stands in for
// it; a row of all-zero distances gets uniform weights. Unnormalized weights
// are floored at the smallest normal double so none underflows to zero.
std::vector<double> normalize_to_weights(std::span<const double> sq_distances,
                                         std::size_t k);

// pairwise_distances -> partial_sort_topk -> normalize_to_weights.
// k = 0 selects the simplex default E + 1.
NeighborTable build_knn_table(std::span<const double> x,
                              const EmbeddingSpec &spec, std::size_t k = 0);
inline NeighborTable build_knn_table(const TimeSeries &x,
                                     const EmbeddingSpec &spec, std::size_t k = 0)
{
    return build_knn_table(x.values(), spec, k);
}

namespace detail
{
// Bounded max-heap on (distance, index) keeping the k lexicographically
// smallest entries pushed into it.
class BoundedMaxHeap
{
public:
    struct Entry {
        double dist;
        std::uint32_t index;
    };

    explicit BoundedMaxHeap(std::size_t capacity);

    void push(double dist, std::uint32_t index);
    std::size_t size() const { return heap_.size(); }
    std::span<const Entry> entries() const { return heap_; }
    void clear() { heap_.clear(); }

private:
    std::size_t capacity_;
    std::vector<Entry> heap_;
};

inline bool entry_less(const BoundedMaxHeap::Entry &a,
                       const BoundedMaxHeap::Entry &b)
{
    return a.dist < b.dist || (a.dist == b.dist && a.index < b.index);
}
} // namespace detail

} // namespace edm
