#pragma once

#include <cstddef>
#include <vector>

#include "edm/types.hpp"

namespace edm
{

// Number of delay vectors that fit in a series of length L:
// L - (E - 1) * tau. Throws SeriesTooShort when fewer than E + 2 points
// remain, since a simplex of E + 1 neighbors excluding self cannot be formed.
std::size_t valid_count(std::size_t L, const EmbeddingSpec &spec);

// Coordinates of embedded point i: (x[i], x[i + tau], ..., x[i + (E-1)tau]).
// This is the conventional backward delay vector at time i + (E-1)tau with
// its coordinates reversed. Distances are unaffected by the ordering.
std::vector<double> embedded_point(const TimeSeries &x,
                                   const EmbeddingSpec &spec, std::size_t i);

} // namespace edm
