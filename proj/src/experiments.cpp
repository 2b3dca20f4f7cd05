#include "uaroot/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "uaroot/centrality.hpp"
#include "uaroot/random_limits.hpp"
#include "uaroot/stats.hpp"

namespace uaroot {

std::int32_t resolve_workers(std::int32_t requested) {
    if (requested > 0) return requested;
    const auto hw = static_cast<std::int32_t>(std::thread::hardware_concurrency());
    return hw > 0 ? hw : 1;
}

void parallel_blocks(std::int64_t count, std::int32_t workers,
                     const std::function<void(std::int64_t, std::int64_t, std::int32_t)>& fn) {
    const std::int32_t used = std::max<std::int32_t>(
        1, std::min<std::int64_t>(resolve_workers(workers), count > 0 ? count : 1));
    if (used == 1) {
        fn(0, count, 0);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(used));
    const std::int64_t chunk = (count + used - 1) / used;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::int32_t w = 0; w < used; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(count, begin + chunk);
        threads.emplace_back([&, begin, end, w] {
            try {
                if (begin < end) fn(begin, end, w);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

std::string model_name(Model model) { return model == Model::kUa ? "UA" : "UA_regular"; }

std::optional<std::int32_t> model_d(const ExperimentConfig& config) {
    if (config.model == Model::kUaRegular) return config.d;
    return std::nullopt;
}

std::int64_t node_count_for(Model model, std::int32_t d, std::int64_t n) {
    return model == Model::kUa ? n : d * n + 2;
}

double nx_threshold_constant(const ExperimentConfig& config) {
    if (config.nx_calibrated_c > 0.0) return config.nx_calibrated_c;
    return config.model == Model::kUa ? kNxCalibratedCUa : kNxCalibratedCRegular;
}

}  // namespace

TrialTable run_error_curve(const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_error_curve: trials must be >= 1");
    if (config.n_grid.empty() || config.k_grid.empty())
        throw std::invalid_argument("run_error_curve: empty grid");
    const std::int32_t workers = resolve_workers(config.workers);
    TrialTable table;
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        const std::int64_t n = config.n_grid[ni];
        LogTable logs(node_count_for(config.model, config.d, n));
        CentralityOptions opts;
        opts.log_table = &logs;
        const std::uint64_t stream = derive_seed(config.seed, ni);

        std::vector<std::vector<std::int64_t>> local(
            static_cast<std::size_t>(workers),
            std::vector<std::int64_t>(config.k_grid.size(), 0));
        parallel_blocks(config.trials, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t w) {
                            GrowthConfig grow_config{config.model, config.d, n, 0};
                            for (std::int64_t trial = begin; trial < end; ++trial) {
                                grow_config.seed = derive_seed(stream, static_cast<std::uint64_t>(trial));
                                const PlaneTree tree = grow(grow_config);
                                const auto lr = log_phi_profile(tree, &logs);
                                const std::int64_t rank = root_rank(tree, lr, opts);
                                auto& counts = local[static_cast<std::size_t>(w)];
                                for (std::size_t ki = 0; ki < config.k_grid.size(); ++ki)
                                    if (rank > config.k_grid[ki]) ++counts[ki];
                            }
                        });
        for (std::size_t ki = 0; ki < config.k_grid.size(); ++ki) {
            std::int64_t failures = 0;
            for (const auto& counts : local) failures += counts[ki];
            const double rate = static_cast<double>(failures) / static_cast<double>(config.trials);
            const auto ci = wilson_interval(failures, config.trials);
            TrialRow row;
            row.experiment = "error-curve";
            row.model = model_name(config.model);
            row.d = model_d(config);
            row.n = n;
            row.k = config.k_grid[ki];
            row.statistic = "root_miss_rate";
            row.value = rate;
            row.stderr_value = 0.5 * (ci.high - ci.low);
            row.trials = config.trials;
            row.seed = config.seed;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

TrialTable run_phi_tail(const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_phi_tail: trials must be >= 1");
    const std::int32_t workers = resolve_workers(config.workers);
    TrialTable table;
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        const std::int64_t n = config.n_grid[ni];
        LogTable logs(node_count_for(config.model, config.d, n));
        const std::uint64_t stream = derive_seed(config.seed, ni);
        std::vector<double> log_phis(static_cast<std::size_t>(config.trials), 0.0);
        parallel_blocks(config.trials, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t) {
                            GrowthConfig grow_config{config.model, config.d, n, 0};
                            for (std::int64_t trial = begin; trial < end; ++trial) {
                                grow_config.seed = derive_seed(stream, static_cast<std::uint64_t>(trial));
                                const PlaneTree tree = grow(grow_config);
                                log_phis[static_cast<std::size_t>(trial)] =
                                    central_path_and_phi(tree, &logs).second;
                            }
                        });
        std::vector<double> fit_x, fit_y;
        for (const double x : config.x_grid) {
            const double threshold = std::log(x);
            std::int64_t hits = 0;
            for (const double value : log_phis)
                if (value >= threshold) ++hits;
            const double rate = static_cast<double>(hits) / static_cast<double>(config.trials);
            TrialRow row;
            row.experiment = "phi-tail";
            row.model = model_name(config.model);
            row.d = model_d(config);
            row.n = n;
            row.x = x;
            row.statistic = "phi_tail_probability";
            row.value = rate;
            row.stderr_value =
                std::sqrt(rate * (1.0 - rate) / static_cast<double>(config.trials));
            row.trials = config.trials;
            row.seed = config.seed;
            table.rows.push_back(std::move(row));
            if (hits > 0 && x > 1.0) {
                fit_x.push_back(std::log(x));
                fit_y.push_back(std::log(rate));
            }
        }
        if (fit_x.size() >= 2) {
            const auto fit = linear_fit(fit_x, fit_y);
            TrialRow row;
            row.experiment = "phi-tail";
            row.model = model_name(config.model);
            row.d = model_d(config);
            row.n = n;
            row.statistic = "phi_tail_loglog_slope";
            row.value = fit.slope;
            row.pass = fit.slope < 0.0;
            row.trials = config.trials;
            row.seed = config.seed;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

TrialTable run_weight_tail(const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_weight_tail: trials must be >= 1");
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
        throw std::invalid_argument("run_weight_tail: epsilon must lie in (0, 1)");
    const std::int32_t workers = resolve_workers(config.workers);
    const bool regular = config.model == Model::kUaRegular;
    TrialTable table;
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        const std::int64_t n = config.n_grid[ni];
        const std::uint64_t stream = derive_seed(config.seed, ni);
        // One scan per tree: the largest weight (resp. height) among nodes
        // holding at least epsilon * n of the mass decides every m at once.
        std::vector<std::int64_t> heaviest(static_cast<std::size_t>(config.trials), -1);
        parallel_blocks(config.trials, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t) {
                            GrowthConfig grow_config{config.model, config.d, n, 0};
                            for (std::int64_t trial = begin; trial < end; ++trial) {
                                grow_config.seed = derive_seed(stream, static_cast<std::uint64_t>(trial));
                                const PlaneTree tree = grow(grow_config);
                                const auto& sizes = tree.subtree_sizes();
                                std::int64_t best = -1;
                                if (regular) {
                                    const auto depth = tree.depths();
                                    for (std::int64_t v = 0; v < tree.size(); ++v)
                                        if (static_cast<double>(sizes[static_cast<std::size_t>(v)]) >=
                                            config.epsilon * static_cast<double>(n))
                                            best = std::max<std::int64_t>(
                                                best, depth[static_cast<std::size_t>(v)]);
                                } else {
                                    const auto weight = tree.weights();
                                    for (std::int64_t v = 0; v < tree.size(); ++v)
                                        if (static_cast<double>(sizes[static_cast<std::size_t>(v)]) >=
                                            config.epsilon * static_cast<double>(n))
                                            best = std::max<std::int64_t>(
                                                best, weight[static_cast<std::size_t>(v)]);
                                }
                                heaviest[static_cast<std::size_t>(trial)] = best;
                            }
                        });
        for (const std::int64_t m : config.m_grid) {
            std::int64_t hits = 0;
            for (const std::int64_t best : heaviest)
                if (best >= m) ++hits;
            const double rate = static_cast<double>(hits) / static_cast<double>(config.trials);
            const double bound =
                regular ? 1.5 * (config.d + 1) * std::pow(config.epsilon, -2.0) *
                              std::pow(2.0 / 3.0, static_cast<double>(m))
                        : std::pow(config.epsilon, -2.0) *
                              std::pow(2.0 / 3.0, static_cast<double>(m - 1));
            TrialRow row;
            row.experiment = "weight-tail";
            row.model = model_name(config.model);
            row.d = model_d(config);
            row.n = n;
            row.k = m;  // the weight/height threshold
            row.x = config.epsilon;
            row.statistic = regular ? "height_tail_probability" : "weight_tail_probability";
            row.value = rate;
            row.stderr_value =
                std::sqrt(rate * (1.0 - rate) / static_cast<double>(config.trials));
            row.bound = bound;
            row.pass = rate <= bound;
            row.trials = config.trials;
            row.seed = config.seed;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

TrialTable run_nx_tail(const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_nx_tail: trials must be >= 1");
    const std::int32_t workers = resolve_workers(config.workers);
    const double c = nx_threshold_constant(config);
    TrialTable table;
    for (std::size_t xi = 0; xi < config.x_grid.size(); ++xi) {
        const double x = config.x_grid[xi];
        const double threshold_base = std::exp(c + c * std::sqrt(std::log(x)));
        const std::uint64_t stream = derive_seed(config.seed, xi);
        std::vector<std::vector<std::int64_t>> local(
            static_cast<std::size_t>(workers),
            std::vector<std::int64_t>(config.y_grid.size(), 0));
        parallel_blocks(config.trials, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t w) {
                            for (std::int64_t trial = begin; trial < end; ++trial) {
                                const auto sample = enumerate_ex_random_flow(
                                    config.model, config.d, x,
                                    derive_seed(stream, static_cast<std::uint64_t>(trial)));
                                auto& counts = local[static_cast<std::size_t>(w)];
                                for (std::size_t yi = 0; yi < config.y_grid.size(); ++yi)
                                    if (static_cast<double>(sample.count) >=
                                        config.y_grid[yi] * threshold_base)
                                        ++counts[yi];
                            }
                        });
        for (std::size_t yi = 0; yi < config.y_grid.size(); ++yi) {
            std::int64_t hits = 0;
            for (const auto& counts : local) hits += counts[yi];
            const double rate = static_cast<double>(hits) / static_cast<double>(config.trials);
            const double bound = 2.0 * std::exp(-config.y_grid[yi]);
            TrialRow row;
            row.experiment = "nx-tail";
            row.model = model_name(config.model);
            row.d = model_d(config);
            row.x = x;
            row.y = config.y_grid[yi];
            row.statistic = "nx_exceedance";
            row.value = rate;
            row.stderr_value =
                std::sqrt(rate * (1.0 - rate) / static_cast<double>(config.trials));
            row.bound = bound;
            row.pass = rate <= bound;
            row.trials = config.trials;
            row.seed = config.seed;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

ScalingFit fit_scaling(const std::vector<std::pair<std::int64_t, double>>& k_error_pairs) {
    std::vector<std::pair<std::int64_t, double>> pairs(k_error_pairs);
    std::sort(pairs.begin(), pairs.end());
    ScalingFit fit;
    double best = 2.0;
    for (const auto& [k, error] : pairs) {
        if (error <= 0.0 || error >= best) continue;
        best = error;
        fit.k_values.push_back(k);
        fit.errors.push_back(error);
    }
    if (fit.k_values.size() < 4)
        throw std::invalid_argument(
            "fit_scaling: need at least four K values reaching distinct error levels");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < fit.k_values.size(); ++i) {
        xs.push_back(std::sqrt(std::log(1.0 / fit.errors[i])));
        ys.push_back(std::log(static_cast<double>(fit.k_values[i])));
    }
    const auto line = linear_fit(xs, ys);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    return fit;
}

ScalingFit fit_scaling(const TrialTable& error_table, std::int64_t n) {
    std::vector<std::pair<std::int64_t, double>> pairs;
    for (const auto& row : error_table.rows)
        if (row.statistic == "root_miss_rate" && row.n && *row.n == n && row.k && row.value)
            pairs.emplace_back(*row.k, *row.value);
    if (pairs.empty()) throw std::invalid_argument("fit_scaling: no error rows for requested n");
    return fit_scaling(pairs);
}

TrialTable scaling_fit_rows(const ScalingFit& fit, const ExperimentConfig& config,
                            std::int64_t n) {
    TrialTable table;
    auto make_row = [&](const std::string& statistic, double value,
                        std::optional<bool> pass) {
        TrialRow row;
        row.experiment = "fit-scaling";
        row.model = model_name(config.model);
        row.d = model_d(config);
        row.n = n;
        row.statistic = statistic;
        row.value = value;
        row.pass = pass;
        row.trials = config.trials;
        row.seed = config.seed;
        table.rows.push_back(std::move(row));
    };
    make_row("scaling_slope", fit.slope, fit.slope > 0.0);
    make_row("scaling_intercept", fit.intercept, std::nullopt);
    make_row("scaling_r_squared", fit.r_squared, std::nullopt);
    return table;
}

}  // namespace uaroot
