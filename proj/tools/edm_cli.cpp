#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "edm/bench.hpp"
#include "edm/ccm.hpp"
#include "edm/io.hpp"
#include "edm/parallel.hpp"

namespace
{

enum ExitCode { kOk = 0, kUsage = 2, kIo = 3, kData = 4, kInternal = 5 };

struct Options {
    std::string input;
    std::string output;
    std::string manifest;
    int emax = edm::kDefaultEMax;
    int tau = 1;
    int tp = 1;
    int workers = 0;
    bool emit_predictions = false;

    std::string bench;
    std::size_t length = 10000;
    std::size_t count = 1000;
    int emin = 1;
    std::uint64_t seed = 42;
    bool allow_large = false;
};

// Flag wins over EDM_WORKERS; both default to all cores.
int resolve_workers(const Options &opt)
{
    if (opt.workers > 0) return opt.workers;
    if (const char *env = std::getenv("EDM_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception &) {
        }
        throw std::invalid_argument(std::string("EDM_WORKERS must be a positive integer, got '") +
                                    env + "'");
    }
    return 0;
}

int run_ccm(const Options &opt)
{
    if (opt.input.empty() || opt.output.empty()) {
        throw std::invalid_argument("--input and --output are required");
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto data = edm::load_csv(opt.input);

    edm::CcmConfig cfg;
    cfg.E_max = opt.emax;
    cfg.tau = opt.tau;
    cfg.Tp_search = opt.tp;
    cfg.emit_predictions = opt.emit_predictions;

    const auto result = edm::ccm_pairwise(data, cfg);
    edm::write_skill_matrix(result.skill, opt.output);

    if (opt.emit_predictions) {
        const auto path = opt.output + ".predictions.csv";
        std::ofstream out(path);
        if (!out) throw edm::IoError("cannot open '" + path + "' for writing");
        edm::write_predictions(out, result);
    }

    if (!opt.manifest.empty()) {
        nlohmann::json optimal_E = nlohmann::json::array();
        for (const auto &e : result.optimal_E) {
            optimal_E.push_back(e ? nlohmann::json(*e) : nlohmann::json());
        }
        const nlohmann::json manifest = {
            {"input", opt.input},
            {"output", opt.output},
            {"config",
             {{"emax", cfg.E_max},
              {"tau", cfg.tau},
              {"tp", cfg.Tp_search},
              {"workers", edm::num_workers()},
              {"emit_predictions", cfg.emit_predictions}}},
            {"series", data.size()},
            {"length", data.length()},
            {"libraries", result.stats.libraries},
            {"targets", data.size()},
            {"distinct_E", result.stats.distinct_E},
            {"table_builds", result.stats.table_builds},
            {"optimal_E", optimal_E},
            {"seconds",
             {{"optimal_E", result.stats.seconds_optimal_E},
              {"table_build", result.stats.seconds_table},
              {"lookup", result.stats.seconds_lookup},
              {"total", std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count()}}},
        };
        std::ofstream out(opt.manifest);
        if (!out) {
            throw edm::IoError("cannot open '" + opt.manifest + "' for writing");
        }
        out << manifest.dump(2) << '\n';
    }
    return kOk;
}

int run_bench(const Options &opt)
{
    edm::BenchConfig cfg;
    cfg.kind = edm::parse_bench_kind(opt.bench);
    cfg.L = opt.length;
    cfg.N = opt.count;
    cfg.E_min = opt.emin;
    cfg.E_max = opt.emax;
    cfg.tau = opt.tau;
    cfg.seed = opt.seed;
    cfg.allow_large = opt.allow_large;

    const auto rows = edm::run_bench(cfg);
    if (opt.output.empty() || opt.output == "-") {
        edm::write_bench_csv(std::cout, rows);
    } else {
        std::ofstream out(opt.output);
        if (!out) throw edm::IoError("cannot open '" + opt.output + "' for writing");
        edm::write_bench_csv(out, rows);
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Pairwise convergent cross mapping and k-NN kernel benchmarks"};
    Options opt;

    app.add_option("-i,--input", opt.input, "CSV dataset, one column per series");
    app.add_option("-o,--output", opt.output,
                   "Skill matrix CSV (or benchmark CSV, '-' for stdout)");
    app.add_option("--manifest", opt.manifest, "Write a JSON run manifest");
    app.add_option("--emax", opt.emax, "Largest embedding dimension")
        ->check(CLI::PositiveNumber);
    app.add_option("--tau", opt.tau, "Time lag in samples")->check(CLI::PositiveNumber);
    app.add_option("--tp", opt.tp, "Horizon of the optimal-E search")
        ->check(CLI::PositiveNumber);
    app.add_option("--workers", opt.workers,
                   "Worker threads (default: EDM_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--emit-predictions", opt.emit_predictions,
                 "Also write <output>.predictions.csv");

    app.add_option("--bench", opt.bench, "Run a kernel benchmark: knn or lookup")
        ->check(CLI::IsMember({"knn", "lookup"}));
    app.add_option("--length", opt.length, "Benchmark series length");
    app.add_option("--count", opt.count, "Benchmark target count (lookup)");
    app.add_option("--emin", opt.emin, "Smallest benchmark embedding dimension")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Benchmark data seed");
    app.add_flag("--allow-large", opt.allow_large,
                 "Allow benchmark sizes above 10000");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        edm::set_num_workers(resolve_workers(opt));
        return opt.bench.empty() ? run_ccm(opt) : run_bench(opt);
    } catch (const edm::IoError &e) {
        std::cerr << "edm: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "edm: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error &e) {
        std::cerr << "edm: " << e.what() << '\n';
        return kData;
    } catch (const std::exception &e) {
        std::cerr << "edm: " << e.what() << '\n';
        return kInternal;
    }
}
