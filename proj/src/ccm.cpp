#include <algorithm>
#include <chrono>
#include <string>

#include "edm/ccm.hpp"
#include "edm/embedding.hpp"
#include "edm/knn.hpp"

namespace edm
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_constant(const TimeSeries &ts)
{
    const auto v = ts.values();
    return std::all_of(v.begin(), v.end(),
                       [first = v.front()](double x) { return x == first; });
}

std::map<int, std::vector<std::size_t>>
group_indices(const std::vector<std::optional<int>> &E_star)
{
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < E_star.size(); i++) {
        if (E_star[i]) groups[*E_star[i]].push_back(i);
    }
    return groups;
}

} // namespace

void CcmConfig::validate() const
{
    if (E_max < 1) {
        throw std::invalid_argument("E_max must be greater than zero");
    }
    if (tau < 1) {
        throw std::invalid_argument("tau must be greater than zero");
    }
    if (Tp_search < 1) {
        throw std::invalid_argument("Tp must be at least 1");
    }
    if (optimal_E) {
        for (int E : *optimal_E) {
            if (E < 1 || E > E_max) {
                throw std::invalid_argument(
                    "precomputed E_star " + std::to_string(E) +
                    " outside [1, " + std::to_string(E_max) + "]");
            }
        }
    }
}

SkillMatrix::SkillMatrix(std::vector<std::string> names)
    : names_(std::move(names)), rho_(names_.size() * names_.size())
{
}

std::map<int, std::vector<std::size_t>>
group_by_optimal_E(const std::vector<OptimalEmbedding> &embeddings)
{
    std::vector<std::optional<int>> E_star;
    E_star.reserve(embeddings.size());
    for (const auto &e : embeddings) E_star.emplace_back(e.E_star);
    return group_indices(E_star);
}

CcmResult ccm_pairwise(const Dataset &data, const CcmConfig &cfg)
{
    cfg.validate();
    const std::size_t N = data.size();
    const std::size_t L = data.length();

    if (cfg.optimal_E && cfg.optimal_E->size() != N) {
        throw std::invalid_argument("precomputed E_star count " +
                                    std::to_string(cfg.optimal_E->size()) +
                                    " does not match " + std::to_string(N) +
                                    " series");
    }
    if (cfg.optimal_E) {
        const int E_hi = *std::max_element(cfg.optimal_E->begin(),
                                           cfg.optimal_E->end());
        valid_count(L, {E_hi, cfg.tau});
    } else {
        if (L <= static_cast<std::size_t>(cfg.Tp_search)) {
            throw SeriesTooShort("series too short for Tp=" +
                                 std::to_string(cfg.Tp_search));
        }
        valid_count(L - static_cast<std::size_t>(cfg.Tp_search),
                    {cfg.E_max, cfg.tau});
    }

    CcmResult result;
    result.skill = SkillMatrix(data.names());
    result.optimal_E.resize(N);

    std::vector<bool> degenerate(N);
    for (std::size_t i = 0; i < N; i++) degenerate[i] = is_constant(data[i]);

    auto start = Clock::now();
    for (std::size_t i = 0; i < N; i++) {
        if (degenerate[i]) continue;
        if (cfg.optimal_E) {
            result.optimal_E[i] = (*cfg.optimal_E)[i];
        } else {
            try {
                result.optimal_E[i] =
                    optimal_embedding(data[i], cfg.E_max, cfg.tau, cfg.Tp_search)
                        .E_star;
            } catch (const SeriesTooShort &) {
                throw;
            } catch (const std::domain_error &) {
                // No defined self-prediction skill at any E: the column stays
                // undefined.
            }
        }
    }
    result.stats.seconds_optimal_E = seconds_since(start);

    const auto groups = group_indices(result.optimal_E);
    result.stats.distinct_E = groups.size();

    for (std::size_t lib = 0; lib < N; lib++) {
        if (degenerate[lib]) continue;
        result.stats.libraries++;

        for (const auto &[E, members] : groups) {
            const EmbeddingSpec spec{E, cfg.tau};

            start = Clock::now();
            const auto table = build_knn_table(data[lib], spec);
            result.stats.seconds_table += seconds_since(start);
            result.stats.table_builds++;

            std::vector<std::span<const double>> targets;
            targets.reserve(members.size());
            for (auto tgt : members) targets.push_back(data[tgt].values());

            start = Clock::now();
            auto outputs =
                lookup_batch(table, targets, cfg.emit_predictions, 0);
            result.stats.seconds_lookup += seconds_since(start);

            for (std::size_t m = 0; m < members.size(); m++) {
                result.skill(lib, members[m]) = outputs[m].rho;
                if (cfg.emit_predictions) {
                    result.predictions.push_back(
                        {lib, members[m], spec.shift(),
                         std::move(outputs[m].predicted)});
                }
            }
        }
    }

    return result;
}

} // namespace edm
