#pragma once

#include <optional>
#include <span>
#include <vector>

#include "edm/knn.hpp"
#include "edm/types.hpp"

namespace edm
{

struct PredictionOutput {
    // Pearson skill; nullopt marks an undefined skill (zero variance).
    std::optional<double> rho;
    // Predicted values over the target's valid range, only when requested.
    std::vector<double> predicted;
};

struct OptimalEmbedding {
    int E_star = 1;
    // rho_by_E[E - 1] is the self-prediction skill at dimension E.
    std::vector<std::optional<double>> rho_by_E;
};

// Simplex lookup of many targets through one neighbor table. Targets share
// the library's time base: embedded point j corresponds to target time
// j + (E - 1) tau + Tp, and its prediction is the weighted sum of the target
// at the neighbors' corresponding times. Each target must hold at least
// table.n + (E - 1) tau + Tp samples.
//
// With want_predictions unset no prediction series is stored; the skill is
// accumulated on the fly.
std::vector<PredictionOutput>
lookup_batch(const NeighborTable &table,
             std::span<const std::span<const double>> targets,
             bool want_predictions, int Tp = 0);

std::vector<PredictionOutput> lookup_batch(const NeighborTable &table,
                                           std::span<const TimeSeries> targets,
                                           bool want_predictions, int Tp = 0);

// Forecast skill of x from its own reconstruction, Tp steps ahead. The last
// Tp samples are dropped from the library so that every neighbor has a
// known future. Throws SeriesTooShort when fewer than E + 2 points remain.
std::optional<double> simplex_self_predict(const TimeSeries &x,
                                           const EmbeddingSpec &spec,
                                           int Tp = 1);

// Self-prediction sweep over E = 1..E_max; E_star is the argmax with ties
// going to the smaller E. Throws std::domain_error if no E yields a defined
// skill (e.g. a constant series).
OptimalEmbedding optimal_embedding(const TimeSeries &x, int E_max = kDefaultEMax,
                                   int tau = 1, int Tp = 1);

} // namespace edm
