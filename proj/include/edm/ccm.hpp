#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edm/simplex.hpp"
#include "edm/types.hpp"

namespace edm
{

struct CcmConfig {
    int E_max = kDefaultEMax;
    int tau = 1;
    // Horizon of the self-prediction used to pick each series' E_star.
    int Tp_search = 1;
    bool emit_predictions = false;
    // Precomputed E_star per series; skips the search when set.
    std::optional<std::vector<int>> optimal_E;

    void validate() const;
};

// rho(lib, tgt): skill of predicting target tgt from library lib's
// reconstructed manifold. nullopt marks an undefined entry.
class SkillMatrix
{
public:
    SkillMatrix() = default;
    explicit SkillMatrix(std::vector<std::string> names);

    std::size_t n() const { return names_.size(); }
    const std::vector<std::string> &names() const { return names_; }

    const std::optional<double> &operator()(std::size_t lib, std::size_t tgt) const
    {
        return rho_[lib * n() + tgt];
    }
    std::optional<double> &operator()(std::size_t lib, std::size_t tgt)
    {
        return rho_[lib * n() + tgt];
    }

private:
    std::vector<std::string> names_;
    std::vector<std::optional<double>> rho_;
};

struct CcmStats {
    std::size_t table_builds = 0;
    std::size_t libraries = 0;
    std::size_t distinct_E = 0;
    double seconds_optimal_E = 0.0;
    double seconds_table = 0.0;
    double seconds_lookup = 0.0;
};

struct CrossMapPrediction {
    std::size_t library;
    std::size_t target;
    // Index of the first predicted sample in the target series.
    std::size_t first_time;
    std::vector<double> predicted;
};

struct CcmResult {
    SkillMatrix skill;
    // E_star per series; nullopt for series with undefined self-prediction.
    std::vector<std::optional<int>> optimal_E;
    CcmStats stats;
    // Filled only with CcmConfig::emit_predictions.
    std::vector<CrossMapPrediction> predictions;
};

// Partition of series indices keyed by E_star, indices ascending per group.
std::map<int, std::vector<std::size_t>>
group_by_optimal_E(const std::vector<OptimalEmbedding> &embeddings);

// Pairwise cross mapping over a dataset. For each library series, one
// neighbor table is built per distinct E_star and every target in that group
// is looked up through it (Tp = 0). Series with zero variance get undefined
// rows and columns.
CcmResult ccm_pairwise(const Dataset &data, const CcmConfig &cfg = {});

} // namespace edm
