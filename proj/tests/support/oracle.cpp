#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oracle.hpp"

namespace edm::oracle
{

namespace
{

std::vector<std::vector<double>> materialize(std::span<const double> x,
                                             const EmbeddingSpec &spec)
{
    const std::size_t shift = static_cast<std::size_t>(spec.E - 1) * spec.tau;
    if (x.size() < shift + spec.E + 2) {
        throw std::domain_error("series too short");
    }
    std::vector<std::vector<double>> points(x.size() - shift);
    for (std::size_t i = 0; i < points.size(); i++) {
        for (int c = 0; c < spec.E; c++) {
            points[i].push_back(x[i + static_cast<std::size_t>(c) * spec.tau]);
        }
    }
    return points;
}

} // namespace

std::vector<double> weight_law(std::span<const double> sq)
{
    std::vector<double> d(sq.size());
    for (std::size_t i = 0; i < sq.size(); i++) d[i] = std::sqrt(sq[i]);

    double dmin = 0.0;
    for (double v : d) {
        if (v > 0.0 && (dmin == 0.0 || v < dmin)) dmin = v;
    }

    std::vector<double> w(sq.size());
    if (dmin == 0.0) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
        return w;
    }
    for (std::size_t i = 0; i < d.size(); i++) w[i] = std::exp(-d[i] / dmin);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto &v : w) v /= total;
    return w;
}

NeighborTable oracle_knn(std::span<const double> x, const EmbeddingSpec &spec,
                         std::size_t k)
{
    if (spec.E < 1 || spec.tau < 1) throw std::invalid_argument("bad spec");
    if (k == 0) k = static_cast<std::size_t>(spec.E) + 1;

    const auto points = materialize(x, spec);
    const std::size_t n = points.size();
    if (k > n - 1) throw std::invalid_argument("k out of range");

    NeighborTable table;
    table.spec = spec;
    table.n = n;
    table.k = k;

    std::vector<std::pair<double, std::uint32_t>> row;
    for (std::size_t i = 0; i < n; i++) {
        row.clear();
        for (std::size_t j = 0; j < n; j++) {
            if (j == i) continue;
            double s = 0.0;
            for (int c = 0; c < spec.E; c++) {
                const double diff = points[i][c] - points[j][c];
                s += diff * diff;
            }
            row.emplace_back(s, static_cast<std::uint32_t>(j));
        }
        std::sort(row.begin(), row.end());

        std::vector<double> sq;
        for (std::size_t m = 0; m < k; m++) {
            table.indices.push_back(row[m].second);
            sq.push_back(row[m].first);
        }
        const auto w = weight_law(sq);
        table.weights.insert(table.weights.end(), w.begin(), w.end());
    }
    return table;
}

std::optional<double> two_pass_pearson(std::span<const double> a,
                                       std::span<const double> b)
{
    if (a.size() != b.size() || a.size() < 2) {
        throw std::invalid_argument("bad pearson input");
    }
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); i++) {
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
        sab += (a[i] - ma) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

std::vector<double> lookup(const NeighborTable &table, std::span<const double> y,
                           int Tp)
{
    const std::size_t offset =
        static_cast<std::size_t>(table.spec.E - 1) * table.spec.tau + Tp;
    std::vector<double> pred(table.n, 0.0);
    for (std::size_t j = 0; j < table.n; j++) {
        for (std::size_t m = 0; m < table.k; m++) {
            pred[j] += table.weights[j * table.k + m] *
                       y[table.indices[j * table.k + m] + offset];
        }
    }
    return pred;
}

std::optional<double> cross_map_skill(std::span<const double> library,
                                      std::span<const double> target,
                                      const EmbeddingSpec &spec)
{
    const auto table = oracle_knn(library, spec);
    const auto pred = lookup(table, target, 0);
    const std::size_t shift = static_cast<std::size_t>(spec.E - 1) * spec.tau;
    return two_pass_pearson(target.subspan(shift, table.n), pred);
}

std::optional<double> self_predict(std::span<const double> x,
                                   const EmbeddingSpec &spec, int Tp)
{
    const auto table = oracle_knn(x.first(x.size() - Tp), spec);
    const auto pred = lookup(table, x, Tp);
    const std::size_t shift = static_cast<std::size_t>(spec.E - 1) * spec.tau;
    return two_pass_pearson(x.subspan(shift + Tp, table.n), pred);
}

std::optional<int> optimal_E(std::span<const double> x, int E_max, int tau,
                             int Tp)
{
    std::optional<int> best_E;
    double best = 0.0;
    for (int E = 1; E <= E_max; E++) {
        const auto rho = self_predict(x, {E, tau}, Tp);
        if (rho && (!best_E || *rho > best)) {
            best = *rho;
            best_E = E;
        }
    }
    return best_E;
}

std::vector<std::optional<double>>
ccm_matrix(const Dataset &data, int E_max, int tau, int Tp,
           const std::vector<std::optional<int>> *E_star)
{
    const std::size_t N = data.size();
    std::vector<std::optional<int>> E(N);
    for (std::size_t i = 0; i < N; i++) {
        E[i] = E_star ? (*E_star)[i] : optimal_E(data[i].values(), E_max, tau, Tp);
    }

    std::vector<std::optional<double>> rho(N * N);
    for (std::size_t lib = 0; lib < N; lib++) {
        for (std::size_t tgt = 0; tgt < N; tgt++) {
            const auto lv = data[lib].values();
            const bool constant_lib =
                std::all_of(lv.begin(), lv.end(),
                            [&](double v) { return v == lv.front(); });
            if (!E[tgt] || constant_lib) continue;
            rho[lib * N + tgt] = cross_map_skill(data[lib].values(),
                                                 data[tgt].values(),
                                                 {*E[tgt], tau});
        }
    }
    return rho;
}

} // namespace edm::oracle
