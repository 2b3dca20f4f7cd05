#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "uaroot/centrality.hpp"
#include "uaroot/experiments.hpp"
#include "uaroot/flows.hpp"
#include "uaroot/growth.hpp"
#include "uaroot/random_limits.hpp"

namespace {

using namespace uaroot;

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::int64_t trials = 10'000;
    std::int32_t workers = 0;
    std::string out;
    std::string format = "csv";
};

std::ostream& open_output(const GlobalOptions& opts, std::ofstream& file) {
    if (opts.out.empty() || opts.out == "-") return std::cout;
    file.open(opts.out);
    if (!file) throw std::runtime_error("cannot open output file: " + opts.out);
    return file;
}

int emit_table(const TrialTable& table, const GlobalOptions& opts) {
    std::ofstream file;
    auto& os = open_output(opts, file);
    if (opts.format == "json")
        table.write_json(os);
    else
        table.write_csv(os);
    return table.all_passed() ? 0 : 1;
}

Model parse_model(const std::string& name) {
    if (name == "ua" || name == "UA") return Model::kUa;
    if (name == "regular" || name == "ua-regular" || name == "UA_regular")
        return Model::kUaRegular;
    throw CLI::ValidationError("--model", "unknown model: " + name);
}

TrialTable load_error_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    TrialTable table;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        fields.resize(14);
        TrialRow parsed;
        parsed.experiment = fields[0];
        parsed.model = fields[1];
        parsed.statistic = fields[7];
        if (!fields[3].empty()) parsed.n = std::stoll(fields[3]);
        if (!fields[4].empty()) parsed.k = std::stoll(fields[4]);
        if (!fields[8].empty()) parsed.value = std::stod(fields[8]);
        table.rows.push_back(std::move(parsed));
    }
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root finding in uniform attachment trees: simulators, centrality "
                 "ranking, and bound-certification experiments"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--seed", global.seed, "master seed");
    app.add_option("--trials", global.trials, "Monte Carlo trials");
    app.add_option("--workers", global.workers, "worker threads (0 = all cores)");
    app.add_option("--out", global.out, "output path (default stdout)");
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.set_config("--config", "", "key-value config file");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "grow one tree and print its serialization");
    std::string sim_model = "ua";
    std::int32_t sim_d = 2;
    std::int64_t sim_n = 1000;
    simulate->add_option("--model", sim_model, "ua | regular");
    simulate->add_option("--d", sim_d, "regular model branching parameter (>= 2)");
    simulate->add_option("--n", sim_n, "growth steps");

    // rank
    auto* rank = app.add_subcommand("rank", "rank root candidates of a serialized tree");
    std::string rank_tree;
    std::int64_t rank_k = 10;
    std::string rank_method = "phi";
    rank->add_option("--tree", rank_tree, "tree file (\"-\" = stdin)")->required();
    rank->add_option("--k", rank_k, "number of candidates");
    rank->add_option("--method", rank_method, "phi | max-subtree")
        ->check(CLI::IsMember({"phi", "max-subtree"}));

    // experiment subcommands share model/n/K/x/y/m options
    std::string exp_model = "ua";
    std::int32_t exp_d = 2;
    std::vector<std::int64_t> exp_n = {1000};
    std::vector<std::int64_t> exp_k = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<double> exp_x = {2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<double> exp_y = {1, 2, 4};
    std::vector<std::int64_t> exp_m = {5, 8};
    double exp_epsilon = 0.3;
    double exp_calibrated_c = 0.0;
    auto add_experiment_options = [&](CLI::App* sub) {
        sub->add_option("--model", exp_model, "ua | regular");
        sub->add_option("--d", exp_d, "regular model branching parameter");
        sub->add_option("--n", exp_n, "growth-step grid");
        return sub;
    };
    auto* error_curve = add_experiment_options(
        app.add_subcommand("error-curve", "empirical P(root not in A_K)"));
    error_curve->add_option("--K", exp_k, "output-size grid");
    auto* phi_tail =
        add_experiment_options(app.add_subcommand("phi-tail", "competitive ratio tail"));
    phi_tail->add_option("--x", exp_x, "tail thresholds");
    auto* weight_tail = add_experiment_options(
        app.add_subcommand("weight-tail", "heavy-subtree weight/height tail"));
    weight_tail->add_option("--m", exp_m, "weight (UA) or height (regular) thresholds");
    weight_tail->add_option("--epsilon", exp_epsilon, "subtree mass fraction");
    auto* nx_tail = add_experiment_options(
        app.add_subcommand("nx-tail", "random flow count tail vs 2 e^-y"));
    nx_tail->add_option("--x", exp_x, "flow thresholds");
    nx_tail->add_option("--y", exp_y, "exceedance multipliers");
    nx_tail->add_option("--calibrated-c", exp_calibrated_c,
                        "override the frozen calibration constant");

    // flow-count
    auto* flow_count =
        app.add_subcommand("flow-count", "exact N_x(gamma) with the partition-based bound");
    double fc_alpha = 0.0;
    std::int32_t fc_d = 0;
    double fc_x = 4.0;
    flow_count->add_option("--alpha", fc_alpha, "geometric decay in (1, 2]");
    flow_count->add_option("--dary", fc_d, "use alpha = d^(1/(d-1))");
    flow_count->add_option("--x", fc_x, "threshold (>= 1)")->required();

    // dist-check
    auto* dist_check =
        app.add_subcommand("dist-check", "distributional identity suite (one row per test)");
    std::int64_t dist_samples = 100'000;

    dist_check->add_option("--samples", dist_samples, "sample count for the heavy checks");

    // fit-scaling
    auto* fit_cmd = add_experiment_options(
        app.add_subcommand("fit-scaling", "fit log K against sqrt(log 1/error)"));
    std::string fit_in;
    fit_cmd->add_option("--K", exp_k, "output-size grid");
    fit_cmd->add_option("--in", fit_in, "existing error-curve CSV (otherwise run one)");

    // allow the shared flags (--seed, --out, ...) after the subcommand name
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        auto make_config = [&] {
            ExperimentConfig config;
            config.model = parse_model(exp_model);
            config.d = exp_d;
            config.n_grid = exp_n;
            config.k_grid = exp_k;
            config.x_grid = exp_x;
            config.y_grid = exp_y;
            config.m_grid = exp_m;
            config.epsilon = exp_epsilon;
            config.trials = global.trials;
            config.seed = global.seed;
            config.workers = global.workers;
            config.nx_calibrated_c = exp_calibrated_c;
            return config;
        };

        if (simulate->parsed()) {
            GrowthConfig config{parse_model(sim_model), sim_d, sim_n, global.seed};
            const PlaneTree tree = grow(config);
            std::ofstream file;
            auto& os = open_output(global, file);
            tree.save(os);
            return 0;
        }
        if (rank->parsed()) {
            PlaneTree tree = [&] {
                if (rank_tree == "-") return PlaneTree::load(std::cin);
                std::ifstream in(rank_tree);
                if (!in) throw std::runtime_error("cannot open " + rank_tree);
                return PlaneTree::load(in);
            }();
            CentralityOptions options;
            const auto report = build_report(tree, options);
            const auto method =
                rank_method == "phi" ? RootMethod::kPhi : RootMethod::kMaxSubtree;
            const auto top = select_roots(tree, rank_k, method, options);
            nlohmann::json out;
            out["n"] = tree.size();
            out["method"] = rank_method;
            out["log_phi"] = report.log_phi;
            out["top"] = nlohmann::json::array();
            for (const NodeId v : top) {
                nlohmann::json entry;
                entry["id"] = v;
                entry["log_ratio"] = report.log_ratio[static_cast<std::size_t>(v)];
                entry["word"] = format_word(tree.word_of(v));
                out["top"].push_back(std::move(entry));
            }
            std::ofstream file;
            auto& os = open_output(global, file);
            os << out.dump(2) << '\n';
            return 0;
        }
        if (error_curve->parsed()) return emit_table(run_error_curve(make_config()), global);
        if (phi_tail->parsed()) return emit_table(run_phi_tail(make_config()), global);
        if (weight_tail->parsed()) return emit_table(run_weight_tail(make_config()), global);
        if (nx_tail->parsed()) return emit_table(run_nx_tail(make_config()), global);
        if (flow_count->parsed()) {
            if ((fc_alpha > 0.0) == (fc_d > 0))
                throw CLI::ValidationError("flow-count", "give exactly one of --alpha / --dary");
            const double alpha =
                fc_alpha > 0.0
                    ? fc_alpha
                    : std::pow(static_cast<double>(fc_d), 1.0 / static_cast<double>(fc_d - 1));
            const auto cert = certified_nx_bound(alpha, fc_x);
            nlohmann::json out;
            out["x"] = cert.x;
            out["alpha"] = cert.alpha;
            out["exact_count"] = cert.exact_count;
            out["n"] = cert.n;
            out["log_bound"] = cert.log_bound;
            out["bound"] = std::exp(cert.log_bound);
            out["pass"] = cert.pass;
            std::ofstream file;
            auto& os = open_output(global, file);
            os << out.dump(2) << '\n';
            return cert.pass ? 0 : 1;
        }
        if (dist_check->parsed()) {
            DistSuiteConfig config;
            config.samples = dist_samples;
            config.seed = global.seed;
            config.workers = global.workers;
            return emit_table(run_dist_suite(config), global);
        }
        if (fit_cmd->parsed()) {
            const auto config = make_config();
            TrialTable curve =
                fit_in.empty() ? run_error_curve(config) : load_error_curve_csv(fit_in);
            const std::int64_t n = config.n_grid.back();
            const auto fit = fit_scaling(curve, n);
            TrialTable out = scaling_fit_rows(fit, config, n);
            curve.append(out);
            return emit_table(curve, global);
        }
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
