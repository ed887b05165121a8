#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "softkm/core.hpp"
#include "softkm/metrics.hpp"

namespace softkm {

enum class SolverKind { Global, Am, Mvskm };

std::string to_string(SolverKind s);
SolverKind parse_solver(const std::string& name);

struct RunConfig {
    SolverKind solver = SolverKind::Global;
    int k = 2;
    double lambda = 0.0;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;
    double rel_obj_tol = 1e-8;
    int max_iters = 0;  // 0 selects the solver default
    std::filesystem::path input_path;
    std::filesystem::path output_dir;

    /// Throws InvalidInput on k < 1, empty paths, negative lambda or epsilon <= 0.
    void validate() const;
};

struct RunResult {
    double objective = 0.0;
    int iterations = 0;
    double runtime_ms = 0.0;
    std::string solver;
    int k = 0;
    std::uint64_t seed = 0;
    double lambda = 0.0;
    double epsilon = 0.0;
    std::vector<double> objective_trace;

    /// Throws InvalidInput if objective < 0 or runtime_ms < 0.
    void validate() const;
};

/// Deterministic fields only; runtime lives in timing.json.
nlohmann::ordered_json to_json(const RunResult& r);
RunResult run_result_from_json(const nlohmann::json& j);

struct SolveOutput {
    Solution solution;
    RunResult result;
};

/// Runs one solver on in-memory data. No files are touched.
SolveOutput solve(const DataMatrix& x, const RunConfig& config);

/// Loads the input, solves, and writes membership.csv, prototypes.csv,
/// result.json, timing.json and (for 2-D data) plotdata.csv into output_dir.
RunResult run(const RunConfig& config);

struct BenchRow {
    std::string solver;
    std::uint64_t seed = 0;
    double lambda = 0.0;
    double objective = 0.0;
    double acc = 0.0;
    double nmi = 0.0;
    double purity = 0.0;
};

/// One row per config, scored against `truth`. All configs must share the input.
std::vector<BenchRow> bench(const std::vector<RunConfig>& configs, const LabelVector& truth);
std::vector<BenchRow> bench(const DataMatrix& x, const std::vector<RunConfig>& configs,
                            const LabelVector& truth);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_table(const std::vector<BenchRow>& rows);

/// Expands a bench description into run configs. Keys: input, k, solvers,
/// seeds, lambdas, epsilon, tol, max_iters, out. Deterministic solvers get a
/// single config regardless of the seed list.
std::vector<RunConfig> expand_bench_spec(const nlohmann::json& spec,
                                         const std::filesystem::path& base_dir = {});

/// Seeded pair of isotropic Gaussian blobs in the unit square, `n` points in
/// total, first half labelled 0 and second half 1. Returned as 2 x n.
std::pair<Matrix, LabelVector> two_gaussians(int n, std::uint64_t seed);

}  // namespace softkm
