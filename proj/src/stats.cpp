#include <algorithm>
#include <cmath>
#include <vector>

#include "edm/parallel.hpp"
#include "edm/stats.hpp"

namespace edm
{

namespace
{
constexpr std::size_t kBlock = 4096;
}

void PearsonAccumulator::merge(const PearsonAccumulator &other)
{
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }

    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double da = other.mean_a_ - mean_a_;
    const double db = other.mean_b_ - mean_b_;
    const double f = na * nb / n;

    m2_a_ += other.m2_a_ + da * da * f;
    m2_b_ += other.m2_b_ + db * db * f;
    c_ab_ += other.c_ab_ + da * db * f;
    mean_a_ += da * nb / n;
    mean_b_ += db * nb / n;
    n_ += other.n_;
}

std::optional<double> PearsonAccumulator::correlation() const
{
    if (n_ < 2 || !(m2_a_ > 0.0) || !(m2_b_ > 0.0)) return std::nullopt;
    const double r = c_ab_ / std::sqrt(m2_a_ * m2_b_);
    if (!std::isfinite(r)) return std::nullopt;
    return std::clamp(r, -1.0, 1.0);
}

std::optional<double> pearson_stream(std::span<const double> a,
                                     std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("pearson_stream: length mismatch");
    }
    if (a.size() < 2) {
        throw std::invalid_argument("pearson_stream: need at least 2 samples");
    }

    const std::size_t n_blocks = (a.size() + kBlock - 1) / kBlock;
    std::vector<PearsonAccumulator> partial(n_blocks);

#pragma omp parallel for schedule(static) num_threads(num_workers())
    for (std::size_t blk = 0; blk < n_blocks; blk++) {
        const std::size_t end = std::min(a.size(), (blk + 1) * kBlock);
        for (std::size_t i = blk * kBlock; i < end; i++) {
            partial[blk].push(a[i], b[i]);
        }
    }

    PearsonAccumulator total;
    for (const auto &p : partial) total.merge(p);
    return total.correlation();
}

} // namespace edm
