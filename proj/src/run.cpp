#include "softkm/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "softkm/error.hpp"
#include "softkm/io.hpp"
#include "softkm/mvskm.hpp"
#include "softkm/skm_am.hpp"
#include "softkm/skm_global.hpp"

namespace softkm {

std::string to_string(SolverKind s) {
    switch (s) {
        case SolverKind::Global: return "global";
        case SolverKind::Am: return "am";
        case SolverKind::Mvskm: return "mvskm";
    }
    return "unknown";
}

SolverKind parse_solver(const std::string& name) {
    if (name == "global") return SolverKind::Global;
    if (name == "am") return SolverKind::Am;
    if (name == "mvskm") return SolverKind::Mvskm;
    throw InvalidInput("unknown solver '" + name + "' (expected global, am or mvskm)");
}

void RunConfig::validate() const {
    if (k < 1) throw InvalidInput("k must be >= 1");
    if (input_path.empty()) throw InvalidInput("input path is empty");
    if (output_dir.empty()) throw InvalidInput("output directory is empty");
    if (solver == SolverKind::Mvskm && !(lambda >= 0.0)) {
        throw InvalidInput("mvskm requires lambda >= 0");
    }
    if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be > 0");
    if (!(rel_obj_tol > 0.0)) throw InvalidInput("tolerance must be > 0");
    if (max_iters < 0) throw InvalidInput("max-iters must be >= 0");
}

void RunResult::validate() const {
    if (!(objective >= 0.0)) throw InvalidInput("result objective must be >= 0");
    if (!(runtime_ms >= 0.0)) throw InvalidInput("result runtime must be >= 0");
    if (k < 1) throw InvalidInput("result k must be >= 1");
    parse_solver(solver);
}

nlohmann::ordered_json to_json(const RunResult& r) {
    nlohmann::ordered_json j;
    j["solver"] = r.solver;
    j["k"] = r.k;
    j["seed"] = r.seed;
    j["lambda"] = r.lambda;
    j["epsilon"] = r.epsilon;
    j["objective"] = r.objective;
    j["iterations"] = r.iterations;
    j["objective_trace"] = r.objective_trace;
    return j;
}

RunResult run_result_from_json(const nlohmann::json& j) {
    RunResult r;
    try {
        r.solver = j.at("solver").get<std::string>();
        r.k = j.at("k").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.lambda = j.at("lambda").get<double>();
        r.epsilon = j.at("epsilon").get<double>();
        r.objective = j.at("objective").get<double>();
        r.iterations = j.at("iterations").get<int>();
        r.objective_trace = j.at("objective_trace").get<std::vector<double>>();
        if (j.contains("runtime_ms")) r.runtime_ms = j.at("runtime_ms").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed result: ") + e.what());
    }
    r.validate();
    return r;
}

SolveOutput solve(const DataMatrix& x, const RunConfig& config) {
    if (config.k < 1) throw InvalidInput("k must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    SolveOutput out;
    RunResult& r = out.result;
    r.solver = to_string(config.solver);
    r.k = config.k;
    r.epsilon = config.epsilon;
    switch (config.solver) {
        case SolverKind::Global: {
            auto [sol, gf] = solve_global(x, config.k);
            out.solution = std::move(sol);
            r.objective_trace = {out.solution.objective};
            break;
        }
        case SolverKind::Am: {
            AmOptions opts;
            opts.seed = config.seed;
            opts.rel_obj_tol = config.rel_obj_tol;
            if (config.max_iters > 0) opts.max_outer_iters = config.max_iters;
            auto res = solve_am(x, config.k, opts);
            out.solution = std::move(res.solution);
            r.iterations = res.iterations;
            r.objective_trace = std::move(res.trace);
            r.seed = config.seed;
            break;
        }
        case SolverKind::Mvskm: {
            MvskmOptions opts;
            opts.lambda = config.lambda;
            opts.epsilon = config.epsilon;
            opts.seed = config.seed;
            opts.rel_obj_tol = config.rel_obj_tol;
            if (config.max_iters > 0) opts.max_outer_iters = config.max_iters;
            auto res = solve_mvskm(x, config.k, opts);
            out.solution = std::move(res.solution);
            r.iterations = res.state.iterations;
            r.objective_trace = std::move(res.state.objective_trace);
            r.seed = config.seed;
            r.lambda = config.lambda;
            break;
        }
    }
    r.objective = out.solution.objective;
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw Error("cannot write " + path.string());
}

void write_plotdata(const std::filesystem::path& path, const DataMatrix& x, const Solution& sol) {
    const LabelVector labels = hard_assign(sol.membership);
    std::string text = "x,y,label,is_prototype\n";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        text += format_real(x.values()(0, i)) + ',' + format_real(x.values()(1, i)) + ',' +
                std::to_string(labels[static_cast<std::size_t>(i)]) + ",0\n";
    }
    for (Eigen::Index j = 0; j < sol.prototypes.cols(); ++j) {
        text += format_real(sol.prototypes(0, j)) + ',' + format_real(sol.prototypes(1, j)) +
                ',' + std::to_string(j) + ",1\n";
    }
    write_text(path, text);
}

}  // namespace

RunResult run(const RunConfig& config) {
    config.validate();
    const Dataset ds = load_csv(config.input_path);
    SolveOutput out = solve(ds.data, config);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
        throw Error("cannot create " + config.output_dir.string() + ": " + ec.message());
    }
    save_matrix_csv(config.output_dir / "membership.csv", out.solution.membership);
    save_matrix_csv(config.output_dir / "prototypes.csv", out.solution.prototypes.transpose());
    write_text(config.output_dir / "result.json", to_json(out.result).dump(2) + "\n");
    nlohmann::ordered_json timing;
    timing["runtime_ms"] = out.result.runtime_ms;
    write_text(config.output_dir / "timing.json", timing.dump(2) + "\n");
    if (ds.data.dim() == 2) {
        write_plotdata(config.output_dir / "plotdata.csv", ds.data, out.solution);
    }
    return out.result;
}

std::vector<BenchRow> bench(const DataMatrix& x, const std::vector<RunConfig>& configs,
                            const LabelVector& truth) {
    if (static_cast<Eigen::Index>(truth.size()) != x.size()) {
        throw InvalidInput("truth labels do not match the number of samples");
    }
    std::vector<BenchRow> rows;
    rows.reserve(configs.size());
    for (const RunConfig& c : configs) {
        const SolveOutput out = solve(x, c);
        const LabelVector pred = hard_assign(out.solution.membership);
        rows.push_back(BenchRow{out.result.solver, out.result.seed, out.result.lambda,
                                out.result.objective, accuracy(pred, truth), nmi(pred, truth),
                                purity(pred, truth)});
    }
    return rows;
}

std::vector<BenchRow> bench(const std::vector<RunConfig>& configs, const LabelVector& truth) {
    if (configs.empty()) return {};
    const auto& input = configs.front().input_path;
    for (const RunConfig& c : configs) {
        if (c.input_path != input) throw InvalidInput("bench configs must share one input");
    }
    const Dataset ds = load_csv(input);
    return bench(ds.data, configs, truth);
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string text = "solver,seed,lambda,objective,acc,nmi,purity\n";
    for (const BenchRow& r : rows) {
        text += r.solver + ',' + std::to_string(r.seed) + ',' + format_real(r.lambda) + ',' +
                format_real(r.objective) + ',' + format_real(r.acc) + ',' + format_real(r.nmi) +
                ',' + format_real(r.purity) + '\n';
    }
    return text;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "solver" << std::right << std::setw(8) << "seed"
        << std::setw(10) << "lambda" << std::setw(16) << "objective" << std::setw(9) << "ACC"
        << std::setw(9) << "NMI" << std::setw(9) << "Purity" << '\n';
    out << std::fixed;
    for (const BenchRow& r : rows) {
        out << std::left << std::setw(8) << r.solver << std::right << std::setw(8) << r.seed
            << std::setw(10) << std::setprecision(4) << r.lambda << std::setw(16)
            << std::setprecision(6) << r.objective << std::setw(9) << std::setprecision(4)
            << r.acc << std::setw(9) << r.nmi << std::setw(9) << r.purity << '\n';
    }
    return out.str();
}

std::vector<RunConfig> expand_bench_spec(const nlohmann::json& spec,
                                         const std::filesystem::path& base_dir) {
    std::vector<RunConfig> configs;
    try {
        RunConfig base;
        std::filesystem::path input = spec.at("input").get<std::string>();
        base.input_path = input.is_absolute() ? input : base_dir / input;
        base.k = spec.at("k").get<int>();
        base.epsilon = spec.value("epsilon", 1e-8);
        base.rel_obj_tol = spec.value("tol", 1e-8);
        base.max_iters = spec.value("max_iters", 0);
        std::filesystem::path out = spec.value("out", std::string("bench_out"));
        base.output_dir = out.is_absolute() ? out : base_dir / out;

        const auto solvers = spec.value("solvers", std::vector<std::string>{"global", "am", "mvskm"});
        const auto seeds = spec.value("seeds", std::vector<std::uint64_t>{0});
        const auto lambdas = spec.value("lambdas", std::vector<double>{1.0});
        for (const std::string& name : solvers) {
            RunConfig c = base;
            c.solver = parse_solver(name);
            if (c.solver == SolverKind::Global) {
                configs.push_back(c);
                continue;
            }
            for (std::uint64_t seed : seeds) {
                c.seed = seed;
                if (c.solver == SolverKind::Am) {
                    configs.push_back(c);
                    continue;
                }
                for (double lambda : lambdas) {
                    c.lambda = lambda;
                    configs.push_back(c);
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed bench spec: ") + e.what());
    }
    for (const RunConfig& c : configs) c.validate();
    return configs;
}

std::pair<Matrix, LabelVector> two_gaussians(int n, std::uint64_t seed) {
    if (n < 2) throw InvalidInput("two_gaussians needs n >= 2");
    std::mt19937_64 rng(seed);
    // Box-Muller on 53-bit uniforms keeps the stream identical across standard libraries.
    auto uniform = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    auto normal = [&]() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    const double centers[2][2] = {{0.30, 0.30}, {0.70, 0.70}};
    const double spread = 0.10;
    Matrix x(2, n);
    std::vector<int> labels(static_cast<std::size_t>(n));
    const int first = n / 2;
    for (int i = 0; i < n; ++i) {
        const int c = i < first ? 0 : 1;
        x(0, i) = centers[c][0] + spread * normal();
        x(1, i) = centers[c][1] + spread * normal();
        labels[static_cast<std::size_t>(i)] = c;
    }
    return {std::move(x), LabelVector(std::move(labels))};
}

}  // namespace softkm
