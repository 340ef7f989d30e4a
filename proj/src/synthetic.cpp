#include <cmath>
#include <random>
#include <string>

#include "edm/synthetic.hpp"

namespace edm
{

namespace
{

// U[0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64 &rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

void check_params(const SyntheticParams &params,
                  std::initializer_list<std::string_view> allowed)
{
    for (const auto &[key, value] : params) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) {
            throw std::invalid_argument("unknown parameter '" + key + "'");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("parameter '" + key + "' must be finite");
        }
    }
}

double param_or(const SyntheticParams &params, const std::string &key,
                double fallback)
{
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void check_rate(double r, const char *name)
{
    if (!(r > 0.0 && r <= 4.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in (0, 4]");
    }
}

void check_state(double v, const char *name)
{
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

} // namespace

SyntheticKind parse_synthetic_kind(std::string_view name)
{
    if (name == "uniform-noise") return SyntheticKind::UniformNoise;
    if (name == "logistic-map") return SyntheticKind::LogisticMap;
    if (name == "coupled-logistic") return SyntheticKind::CoupledLogistic;
    throw std::invalid_argument("unknown synthetic kind '" + std::string(name) +
                                "'");
}

Dataset gen_synthetic(SyntheticKind kind, std::size_t L, std::uint64_t seed,
                      const SyntheticParams &params)
{
    if (L < 1) {
        throw std::invalid_argument("synthetic length must be at least 1");
    }

    std::mt19937_64 rng(seed);

    switch (kind) {
    case SyntheticKind::UniformNoise: {
        check_params(params, {});
        std::vector<double> v(L);
        for (auto &x : v) x = uniform01(rng);
        return Dataset({TimeSeries(std::move(v), "noise")});
    }
    case SyntheticKind::LogisticMap: {
        check_params(params, {"r", "v0"});
        const double r = param_or(params, "r", 3.8);
        check_rate(r, "r");
        const double v0 = params.contains("v0") ? params.at("v0")
                                                : uniform(rng, 0.1, 0.9);
        check_state(v0, "v0");

        std::vector<double> v(L);
        v[0] = v0;
        for (std::size_t t = 1; t < L; t++) {
            v[t] = r * v[t - 1] * (1.0 - v[t - 1]);
        }
        return Dataset({TimeSeries(std::move(v), "logistic")});
    }
    case SyntheticKind::CoupledLogistic: {
        check_params(params, {"beta", "rd", "rs", "d0", "s0"});
        const double beta = param_or(params, "beta", 0.0);
        const double rd = param_or(params, "rd", 3.8);
        const double rs = param_or(params, "rs", 3.5);
        check_rate(rd, "rd");
        check_rate(rs, "rs");
        if (beta < 0.0) {
            throw std::invalid_argument("beta must be non-negative");
        }
        // Draw both initial states so the stream does not depend on which
        // of them were overridden.
        const double d_draw = uniform(rng, 0.1, 0.9);
        const double s_draw = uniform(rng, 0.1, 0.9);
        const double d0 = param_or(params, "d0", d_draw);
        const double s0 = param_or(params, "s0", s_draw);
        check_state(d0, "d0");
        check_state(s0, "s0");

        std::vector<double> d(L), s(L);
        d[0] = d0;
        s[0] = s0;
        for (std::size_t t = 1; t < L; t++) {
            d[t] = d[t - 1] * (rd - rd * d[t - 1]);
            s[t] = s[t - 1] * (rs - rs * s[t - 1] - beta * d[t - 1]);
            if (!(s[t] >= 0.0 && s[t] <= 1.0)) {
                throw std::invalid_argument(
                    "coupling strength drives the response out of [0, 1]");
            }
        }
        return Dataset({TimeSeries(std::move(d), "driver"),
                        TimeSeries(std::move(s), "response")});
    }
    }
    throw std::invalid_argument("unknown synthetic kind");
}

} // namespace edm
