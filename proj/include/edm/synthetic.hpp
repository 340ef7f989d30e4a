#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "edm/types.hpp"

namespace edm
{

enum class SyntheticKind { UniformNoise, LogisticMap, CoupledLogistic };

SyntheticKind parse_synthetic_kind(std::string_view name);

using SyntheticParams = std::map<std::string, double>;

// Deterministic synthetic series.
//
// All randomness comes from std::mt19937_64 seeded with `seed`; uniform
// doubles are formed from the top 53 bits of each draw, so the streams are
// identical on every conforming platform.
//
//   uniform-noise     one series "noise" of i.i.d. U[0, 1) samples.
//   logistic-map      one series "logistic", v <- r v (1 - v).
//                     params: r (default 3.8, must lie in (0, 4]),
//                             v0 (default drawn from U[0.1, 0.9)).
//   coupled-logistic  two series, "driver" and "response". The driver is an
//                     autonomous logistic map; the response is forced by it:
//                       d <- d (rd - rd d)
//                       s <- s (rs - rs s - beta d)
//                     params: beta (default 0), rd (3.8), rs (3.5), d0, s0.
//
// Unknown parameter names are rejected.
Dataset gen_synthetic(SyntheticKind kind, std::size_t L, std::uint64_t seed,
                      const SyntheticParams &params = {});

} // namespace edm
