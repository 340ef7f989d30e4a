#include <cmath>
#include <set>
#include <string>

#include "edm/embedding.hpp"

namespace edm
{

TimeSeries::TimeSeries(std::vector<double> values, std::string name)
    : values_(std::move(values)), name_(std::move(name))
{
    if (values_.empty()) {
        throw std::invalid_argument("time series must not be empty");
    }
    for (std::size_t i = 0; i < values_.size(); i++) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("time series '" + name_ +
                                        "' has a non-finite value at index " +
                                        std::to_string(i));
        }
    }
}

void EmbeddingSpec::validate(int e_max) const
{
    if (E < 1 || E > e_max) {
        throw std::invalid_argument("E must be in [1, " + std::to_string(e_max) +
                                    "], got " + std::to_string(E));
    }
    if (tau < 1) {
        throw std::invalid_argument("tau must be greater than zero");
    }
}

Dataset::Dataset(std::vector<TimeSeries> series) : series_(std::move(series))
{
    if (series_.empty()) {
        throw std::invalid_argument("dataset must hold at least one series");
    }
    std::set<std::string> seen;
    for (const auto &ts : series_) {
        if (ts.size() != series_.front().size()) {
            throw std::invalid_argument("series '" + ts.name() +
                                        "' has length " +
                                        std::to_string(ts.size()) + ", expected " +
                                        std::to_string(series_.front().size()));
        }
        if (!seen.insert(ts.name()).second) {
            throw std::invalid_argument("duplicate series name '" + ts.name() +
                                        "'");
        }
    }
}

std::vector<std::string> Dataset::names() const
{
    std::vector<std::string> out;
    out.reserve(series_.size());
    for (const auto &ts : series_) out.push_back(ts.name());
    return out;
}

std::size_t valid_count(std::size_t L, const EmbeddingSpec &spec)
{
    if (spec.E < 1 || spec.tau < 1) {
        throw std::invalid_argument("E and tau must be positive");
    }
    const std::size_t shift = spec.shift();
    const std::size_t needed = static_cast<std::size_t>(spec.E) + 2;
    if (L < shift || L - shift < needed) {
        throw SeriesTooShort("series of length " + std::to_string(L) +
                             " is too short for E=" + std::to_string(spec.E) +
                             ", tau=" + std::to_string(spec.tau) +
                             " (need at least " + std::to_string(shift + needed) +
                             " samples)");
    }
    return L - shift;
}

std::vector<double> embedded_point(const TimeSeries &x,
                                   const EmbeddingSpec &spec, std::size_t i)
{
    if (spec.E < 1 || spec.tau < 1) {
        throw std::invalid_argument("E and tau must be positive");
    }
    const std::size_t shift = spec.shift();
    if (x.size() <= shift || i >= x.size() - shift) {
        throw std::out_of_range("embedded point index " + std::to_string(i) +
                                " out of range");
    }
    std::vector<double> p(spec.E);
    for (int k = 0; k < spec.E; k++) {
        p[k] = x[i + static_cast<std::size_t>(k) * spec.tau];
    }
    return p;
}

} // namespace edm
