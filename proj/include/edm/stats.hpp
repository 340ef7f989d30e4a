#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace edm
{

// Single-pass co-moment aggregate for Pearson's correlation. Partial
// aggregates over disjoint ranges can be merged in any grouping.
class PearsonAccumulator
{
public:
    void push(double a, double b)
    {
        n_ += 1;
        const double inv_n = 1.0 / static_cast<double>(n_);
        const double da = a - mean_a_;
        const double db = b - mean_b_;
        mean_a_ += da * inv_n;
        mean_b_ += db * inv_n;
        // Deltas against the old and updated means.
        m2_a_ += da * (a - mean_a_);
        m2_b_ += db * (b - mean_b_);
        c_ab_ += da * (b - mean_b_);
    }

    void merge(const PearsonAccumulator &other);

    std::size_t count() const { return n_; }
    double mean_a() const { return mean_a_; }
    double mean_b() const { return mean_b_; }

    // Undefined (nullopt) when either input has zero variance or fewer than
    // two samples have been pushed.
    std::optional<double> correlation() const;

private:
    std::size_t n_ = 0;
    double mean_a_ = 0.0;
    double mean_b_ = 0.0;
    double m2_a_ = 0.0;
    double m2_b_ = 0.0;
    double c_ab_ = 0.0;
};

// Streaming Pearson correlation over fixed-size blocks reduced in parallel.
// Block partials are merged in block order so the result does not depend on
// the worker count. Throws std::invalid_argument on length mismatch or when
// fewer than two samples are given; returns nullopt on zero variance.
std::optional<double> pearson_stream(std::span<const double> a,
                                     std::span<const double> b);

} // namespace edm
