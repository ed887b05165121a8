// Command-line front end. Exit codes: 0 success, 2 invalid input,
// 3 numerical failure, 1 anything else (I/O, internal).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "softkm/error.hpp"
#include "softkm/io.hpp"
#include "softkm/metrics.hpp"
#include "softkm/run.hpp"
#include "softkm/theory.hpp"

namespace fs = std::filesystem;
using namespace softkm;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct SolveArgs {
    std::string input;
    std::string out;
    int k = 0;
    double lambda = 0.0;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int max_iters = 0;
};

struct CheckArgs {
    std::string input;
    int k = 0;
    double tau = 1e-10;
};

int do_solve(SolverKind kind, const SolveArgs& a) {
    RunConfig c;
    c.solver = kind;
    c.k = a.k;
    c.lambda = a.lambda;
    c.epsilon = a.epsilon;
    c.seed = a.seed;
    c.rel_obj_tol = a.tol;
    c.max_iters = a.max_iters;
    c.input_path = a.input;
    c.output_dir = a.out;
    const RunResult r = run(c);
    std::cout << to_string(kind) << ": objective=" << format_real(r.objective)
              << " iterations=" << r.iterations << " out=" << a.out << '\n';
    return 0;
}

int do_check_skmable(const CheckArgs& a) {
    const Dataset ds = load_csv(a.input);
    const bool ok = is_skmable(ds.data, a.k, a.tau);
    std::cout << (ok ? "true" : "false") << " rank=" << numerical_rank(ds.data.centered(), a.tau)
              << '\n';
    return 0;
}

int do_check_tilsdable(const CheckArgs& a) {
    const KernelMatrix k(load_matrix_csv(a.input));
    const bool ok = is_ti_lsdable(k, a.k, a.tau);
    std::cout << (ok ? "true" : "false")
              << " rank=" << numerical_rank(double_center(k.matrix()), a.tau) << '\n';
    return 0;
}

int do_eval(const std::string& pred_path, const std::string& truth_path) {
    // One column is a label file; wider files are memberships, hard-assigned.
    const Matrix raw = load_matrix_csv(pred_path);
    const LabelVector pred = raw.cols() == 1 ? load_labels_csv(pred_path) : hard_assign(raw);
    // Truth is a label file or a dataset with a label column.
    const LabelVector truth = [&] {
        if (load_matrix_csv(truth_path).cols() == 1) return load_labels_csv(truth_path);
        const Dataset ds = load_csv(truth_path);
        if (!ds.labels) throw InvalidInput(truth_path + ": no label column");
        return *ds.labels;
    }();
    std::cout << "acc=" << format_real(accuracy(pred, truth))
              << " nmi=" << format_real(nmi(pred, truth))
              << " purity=" << format_real(purity(pred, truth)) << '\n';
    return 0;
}

int do_bench(const std::string& spec_path) {
    std::ifstream in(spec_path);
    if (!in) throw InvalidInput("cannot open " + spec_path);
    nlohmann::json spec;
    try {
        spec = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(spec_path + ": " + e.what());
    }
    const auto configs = expand_bench_spec(spec, fs::path(spec_path).parent_path());
    if (configs.empty()) throw InvalidInput("bench spec expands to no runs");
    const Dataset ds = load_csv(configs.front().input_path);
    if (!ds.labels) {
        throw InvalidInput(configs.front().input_path.string() + ": bench needs a label column");
    }
    const auto rows = bench(ds.data, configs, *ds.labels);

    const fs::path out = configs.front().output_dir;
    fs::create_directories(out);
    std::ofstream csv(out / "bench.csv", std::ios::binary | std::ios::trunc);
    csv << bench_csv(rows);
    if (!csv) throw Error("cannot write " + (out / "bench.csv").string());
    std::cout << bench_table(rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soft k-means clustering"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto add_solve = [&](const char* name, const char* help, bool mv) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--input", solve_args.input, "CSV, one sample per row")->required();
        sub->add_option("--k", solve_args.k, "number of clusters")->required();
        sub->add_option("--out", solve_args.out, "output directory")->required();
        if (mv) {
            sub->add_option("--lambda", solve_args.lambda, "volume weight");
            sub->add_option("--epsilon", solve_args.epsilon, "log-volume smoothing");
        }
        sub->add_option("--seed", solve_args.seed, "initialization seed");
        sub->add_option("--tol", solve_args.tol, "relative objective tolerance");
        sub->add_option("--max-iters", solve_args.max_iters, "outer iteration cap (0 = default)");
        return sub;
    };
    auto* global = add_solve("solve-global", "closed-form global solution", false);
    auto* am = add_solve("solve-am", "alternating minimization", false);
    auto* mvskm = add_solve("solve-mvskm", "minimal-volume soft k-means", true);

    CheckArgs check_args;
    auto add_check = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--input", check_args.input)->required();
        sub->add_option("--k", check_args.k)->required();
        sub->add_option("--tau", check_args.tau, "relative rank threshold");
        return sub;
    };
    auto* skmable = add_check("check-skmable", "exact factorization test on a data CSV");
    auto* tilsdable = add_check("check-tilsdable", "decomposability test on a kernel CSV (n x n)");

    std::string pred, truth;
    auto* eval = app.add_subcommand("eval", "score predicted labels or memberships");
    eval->add_option("--pred", pred)->required();
    eval->add_option("--truth", truth)->required();

    std::string spec;
    auto* bench_cmd = app.add_subcommand("bench", "solver comparison from a JSON spec");
    bench_cmd->add_option("--spec", spec)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*global) return do_solve(SolverKind::Global, solve_args);
        if (*am) return do_solve(SolverKind::Am, solve_args);
        if (*mvskm) return do_solve(SolverKind::Mvskm, solve_args);
        if (*skmable) return do_check_skmable(check_args);
        if (*tilsdable) return do_check_tilsdable(check_args);
        if (*eval) return do_eval(pred, truth);
        if (*bench_cmd) return do_bench(spec);
    } catch (const InvalidInput& e) {
        std::cerr << "softkm: invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NumericalFailure& e) {
        std::cerr << "softkm: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "softkm: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
