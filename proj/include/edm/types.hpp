#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edm
{

// Raised when a series has too few points for the requested embedding.
class SeriesTooShort : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

inline constexpr int kDefaultEMax = 20;

// One uniformly sampled scalar observation sequence. Values are checked to be
// finite on construction.
class TimeSeries
{
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> values, std::string name = {});

    std::span<const double> values() const { return values_; }
    const std::string &name() const { return name_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    const double *data() const { return values_.data(); }

private:
    std::vector<double> values_;
    std::string name_;
};

// Delay-embedding parameters: dimension E and lag tau (in samples).
struct EmbeddingSpec {
    int E = 1;
    int tau = 1;

    // Throws std::invalid_argument unless 1 <= E <= e_max and tau >= 1.
    void validate(int e_max = kDefaultEMax) const;

    // Span of one delay vector in samples, (E - 1) * tau.
    std::size_t shift() const
    {
        return static_cast<std::size_t>(E - 1) * static_cast<std::size_t>(tau);
    }

    friend bool operator==(const EmbeddingSpec &, const EmbeddingSpec &) = default;
};

// Named collection of equal-length series.
class Dataset
{
public:
    Dataset() = default;
    explicit Dataset(std::vector<TimeSeries> series);

    const std::vector<TimeSeries> &series() const { return series_; }
    const TimeSeries &operator[](std::size_t i) const { return series_[i]; }
    std::size_t size() const { return series_.size(); }
    std::size_t length() const
    {
        return series_.empty() ? 0 : series_.front().size();
    }
    std::vector<std::string> names() const;

private:
    std::vector<TimeSeries> series_;
};

} // namespace edm
