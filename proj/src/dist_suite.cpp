#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "uaroot/centrality.hpp"
#include "uaroot/experiments.hpp"
#include "uaroot/random_limits.hpp"
#include "uaroot/stats.hpp"

namespace uaroot {

namespace {

struct RowBuilder {
    TrialTable* table;
    std::uint64_t seed;

    TrialRow& add(const std::string& statistic, double value, std::optional<double> bound,
                  std::optional<bool> pass, std::int64_t trials,
                  const std::string& model = std::string(),
                  std::optional<std::int32_t> d = std::nullopt) {
        TrialRow row;
        row.experiment = "dist-check";
        row.model = model;
        row.d = d;
        row.statistic = statistic;
        row.value = value;
        row.bound = bound;
        row.pass = pass;
        row.trials = trials;
        row.seed = seed;
        table->rows.push_back(std::move(row));
        return table->rows.back();
    }
};

// Fills out[i] = fn(rng seeded for index i); deterministic under any worker count.
std::vector<double> parallel_sample(std::int64_t count, std::int32_t workers,
                                    std::uint64_t stream,
                                    const std::function<double(Rng&)>& fn) {
    std::vector<double> out(static_cast<std::size_t>(count));
    parallel_blocks(count, workers, [&](std::int64_t begin, std::int64_t end, std::int32_t) {
        for (std::int64_t i = begin; i < end; ++i) {
            Rng rng(derive_seed(stream, static_cast<std::uint64_t>(i)));
            out[static_cast<std::size_t>(i)] = fn(rng);
        }
    });
    return out;
}

double geometric_pmf(double p, std::int64_t i) {
    return p * std::pow(1.0 - p, static_cast<double>(i - 1));
}

}  // namespace

TrialTable run_dist_suite(const DistSuiteConfig& config) {
    if (config.samples < 100) throw std::invalid_argument("run_dist_suite: samples too small");
    const std::int32_t workers = resolve_workers(config.workers);
    TrialTable table;
    RowBuilder rows{&table, config.seed};
    std::uint64_t salt = 0;
    auto stream = [&] { return derive_seed(config.seed, ++salt); };

    // Stick-breaking vs Polya urn, d = 3: two independent constructions of the
    // Dir_3(1/2) marginal Beta(1/2, 1).
    {
        const std::int32_t d = 3;
        const auto stick = parallel_sample(config.samples, workers, stream(), [d](Rng& rng) {
            return stick_break_dirichlet(d, rng).components[0];
        });
        const std::uint64_t urn_stream = stream();
        std::vector<double> urn(static_cast<std::size_t>(config.samples));
        parallel_blocks(config.samples, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                const auto state = polya_urn(
                                    {1, 1, 1}, d - 1, config.urn_draws,
                                    derive_seed(urn_stream, static_cast<std::uint64_t>(i)));
                                urn[static_cast<std::size_t>(i)] =
                                    static_cast<double>(state.counts[0]) /
                                    static_cast<double>(state.total());
                            }
                        });
        const double ks = ks_distance_two_sample(stick, urn);
        rows.add("stick_vs_urn_ks", ks, config.ks_threshold, ks < config.ks_threshold,
                 config.samples, "UA_regular", d);
    }

    // Stick-breaking vs gamma-normalized symmetric Dirichlet, d = 5.
    {
        const std::int32_t d = 5;
        const auto stick = parallel_sample(config.samples, workers, stream(), [d](Rng& rng) {
            return stick_break_dirichlet(d, rng).components[0];
        });
        const auto direct = parallel_sample(config.samples, workers, stream(), [d](Rng& rng) {
            return sample_dirichlet_sym(d, 1.0 / (d - 1), rng)[0];
        });
        const double ks = ks_distance_two_sample(stick, direct);
        rows.add("stick_vs_dirichlet_ks", ks, config.ks_threshold_fine,
                 ks < config.ks_threshold_fine, config.samples, "UA_regular", d);
    }

    // Symmetric Dirichlet moments.
    {
        const auto comp = parallel_sample(config.samples, workers, stream(), [](Rng& rng) {
            return sample_dirichlet_sym(3, 0.5, rng)[0];
        });
        RunningMoments m;
        for (const double v : comp) m.add(v);
        const double target = 1.0 / 3.0;
        const double dev = std::abs(m.mean - target);
        rows.add("dirichlet_mean_k3", m.mean, target,
                 dev <= config.sigmas * m.stderr_mean(), config.samples);
    }
    {
        const auto comp = parallel_sample(config.samples, workers, stream(), [](Rng& rng) {
            const double v = sample_dirichlet_sym(4, 1.0 / 3.0, rng)[0];
            return v * v;
        });
        RunningMoments m;
        for (const double v : comp) m.add(v);
        const double target = 1.0 / 7.0;  // (alpha+1)/(k(k alpha+1))
        rows.add("dirichlet_second_moment_k4", m.mean, target,
                 std::abs(m.mean - target) <= config.sigmas * m.stderr_mean(), config.samples);
    }

    // Simulated subtree ratios in the regular model at height 2: Beta moments.
    {
        const std::int32_t d = 2;
        const std::uint64_t sim_stream = stream();
        std::vector<double> ratios(static_cast<std::size_t>(config.sim_trials),
                                   std::numeric_limits<double>::quiet_NaN());
        parallel_blocks(config.sim_trials, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                const PlaneTree tree = grow_ua_regular(
                                    d, config.sim_n,
                                    derive_seed(sim_stream, static_cast<std::uint64_t>(i)));
                                const NodeId child = tree.find_word(Word{1});
                                const NodeId grandchild = tree.find_word(Word{1, 1});
                                if (child == kNoNode || grandchild == kNoNode) continue;
                                ratios[static_cast<std::size_t>(i)] =
                                    static_cast<double>(tree.subtree_size(grandchild)) /
                                    static_cast<double>(tree.subtree_size(child));
                            }
                        });
        RunningMoments mean, second;
        for (const double r : ratios) {
            if (std::isnan(r)) continue;
            mean.add(r);
            second.add(r * r);
        }
        const double mean_target = 1.0 / d;
        const double second_target = 1.0 / (2.0 * d - 1.0);
        rows.add("subtree_ratio_mean", mean.mean, mean_target,
                 std::abs(mean.mean - mean_target) <= config.sigmas * mean.stderr_mean(),
                 mean.count, "UA_regular", d);
        rows.add("subtree_ratio_second_moment", second.mean, second_target,
                 std::abs(second.mean - second_target) <= config.sigmas * second.stderr_mean(),
                 second.count, "UA_regular", d);
    }

    // |theta_1 T_n| / (n-1) in the UA model is uniform in the limit.
    {
        const std::uint64_t sim_stream = stream();
        std::vector<double> fractions(static_cast<std::size_t>(config.sim_trials));
        parallel_blocks(config.sim_trials, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                const PlaneTree tree = grow_ua(
                                    config.sim_n,
                                    derive_seed(sim_stream, static_cast<std::uint64_t>(i)));
                                fractions[static_cast<std::size_t>(i)] =
                                    static_cast<double>(tree.subtree_size(1)) /
                                    static_cast<double>(config.sim_n - 1);
                            }
                        });
        const double ks = ks_distance_uniform01(fractions);
        rows.add("u1_uniform_ks", ks, config.ks_threshold, ks < config.ks_threshold,
                 config.sim_trials, "UA");
    }

    // Two-colour urn fraction is uniform in the long run.
    {
        const std::uint64_t urn_stream = stream();
        std::vector<double> fractions(static_cast<std::size_t>(config.urn_uniform_replicas));
        parallel_blocks(config.urn_uniform_replicas, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                const auto state = polya_urn(
                                    {1, 1}, 1, config.urn_uniform_draws,
                                    derive_seed(urn_stream, static_cast<std::uint64_t>(i)));
                                fractions[static_cast<std::size_t>(i)] =
                                    static_cast<double>(state.counts[0]) /
                                    static_cast<double>(state.total());
                            }
                        });
        const double ks = ks_distance_uniform01(fractions);
        rows.add("urn_fraction_uniform_ks", ks, config.ks_threshold, ks < config.ks_threshold,
                 config.urn_uniform_replicas);
    }

    // E[(1-V)^(-1/2)] for the per-step maxima.
    {
        const auto draws =
            parallel_sample(config.v_moment_samples, workers, stream(), [](Rng& rng) {
                const double v = sample_limit_step_max(Model::kUa, 2, rng);
                return 1.0 / std::sqrt(1.0 - v);
            });
        RunningMoments m;
        for (const double v : draws) m.add(v);
        const double target = 2.0 * std::sqrt(2.0);
        rows.add("inv_sqrt_moment_ua", m.mean, target,
                 std::abs(m.mean - target) <= 0.01 * target, config.v_moment_samples, "UA");
    }
    for (std::int32_t d = 2; d <= 10; ++d) {
        const auto draws = parallel_sample(config.samples, workers, stream(), [d](Rng& rng) {
            const double v = sample_limit_step_max(Model::kUaRegular, d, rng);
            return 1.0 / std::sqrt(1.0 - v);
        });
        RunningMoments m;
        for (const double v : draws) m.add(v);
        const double bound = 7.0 * std::sqrt(2.0);
        rows.add("inv_sqrt_moment_regular", m.mean, bound, m.mean <= bound, config.samples,
                 "UA_regular", d);
    }

    // Beta conditional tails: closed forms and the full grid.
    {
        const double uniform_case = beta_conditional_tail(1.0, 1.0);
        rows.add("beta_tail_uniform_case", uniform_case, 2.0 / 17.0,
                 std::abs(uniform_case - 2.0 / 17.0) <= 1e-6, 0);
        const double linear_case = beta_conditional_tail(2.0, 1.0);
        rows.add("beta_tail_linear_case", linear_case, 4.0 / 289.0,
                 std::abs(linear_case - 4.0 / 289.0) <= 1e-6, 0);
        double grid_max = 0.0;
        for (std::int32_t ai = 0; ai <= 10; ++ai)
            for (std::int32_t bi = 1; bi <= 20; ++bi)
                grid_max = std::max(
                    grid_max, beta_conditional_tail(1.0 + 0.1 * ai, 0.05 * bi));
        rows.add("beta_tail_grid_max", grid_max, 0.5, grid_max <= 0.5, 231);
    }

    // Rearrangement of uniform sticks: exact per-draw inequality, Uniform[1/2,1]
    // companions, vanishing cross-correlation.
    {
        const std::uint64_t re_stream = stream();
        const std::size_t count = static_cast<std::size_t>(config.samples);
        std::vector<double> v1(count), v2(count), v3(count);
        std::vector<std::int64_t> violation_counts(static_cast<std::size_t>(workers), 0);
        parallel_blocks(config.samples, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t w) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                Rng rng(derive_seed(re_stream, static_cast<std::uint64_t>(i)));
                                std::vector<double> us;
                                bool has_pivot = false;
                                while (us.size() < 12 || !has_pivot) {
                                    us.push_back(rng.u01());
                                    has_pivot = has_pivot || us.back() > 0.5;
                                }
                                try {
                                    const auto re = rearrange_uniform(us, us.size());
                                    v1[static_cast<std::size_t>(i)] = re.companions[0];
                                    v2[static_cast<std::size_t>(i)] = re.companions[1];
                                    v3[static_cast<std::size_t>(i)] = re.companions[2];
                                } catch (const std::logic_error&) {
                                    ++violation_counts[static_cast<std::size_t>(w)];
                                }
                            }
                        });
        std::int64_t violations = 0;
        for (const auto v : violation_counts) violations += v;
        rows.add("rearrange_uniform_violations", static_cast<double>(violations), 0.0,
                 violations == 0, config.samples);
        auto to_unit = [](std::vector<double> values) {
            for (auto& v : values) v = 2.0 * (v - 0.5);
            return values;
        };
        const double ks = ks_distance_uniform01(to_unit(v1));
        rows.add("rearrange_v1_ks", ks, config.ks_threshold_fine, ks < config.ks_threshold_fine,
                 config.samples);
        const double corr = std::max({std::abs(pearson_correlation(v1, v2)),
                                      std::abs(pearson_correlation(v1, v3)),
                                      std::abs(pearson_correlation(v2, v3))});
        rows.add("rearrange_v_corr_max", corr, config.ks_threshold_fine,
                 corr < config.ks_threshold_fine, config.samples);
    }

    // Dirichlet rearrangement with W in {16/17, 1}.
    {
        const std::int32_t d = 6;
        const DirichletRearranger rearranger(d);
        const std::uint64_t re_stream = stream();
        std::vector<std::int64_t> violation_counts(static_cast<std::size_t>(workers), 0);
        std::vector<std::int64_t> w16_counts(static_cast<std::size_t>(workers), 0);
        std::vector<std::int64_t> w_totals(static_cast<std::size_t>(workers), 0);
        parallel_blocks(config.samples, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t w) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                Rng rng(derive_seed(re_stream, static_cast<std::uint64_t>(i)));
                                try {
                                    const auto sample = rearranger.sample(rng);
                                    for (const double companion :
                                         sample.rearrangement.companions) {
                                        ++w_totals[static_cast<std::size_t>(w)];
                                        if (companion < 1.0)
                                            ++w16_counts[static_cast<std::size_t>(w)];
                                    }
                                } catch (const std::logic_error&) {
                                    ++violation_counts[static_cast<std::size_t>(w)];
                                }
                            }
                        });
        std::int64_t violations = 0, w16 = 0, total = 0;
        for (std::size_t w = 0; w < violation_counts.size(); ++w) {
            violations += violation_counts[w];
            w16 += w16_counts[w];
            total += w_totals[w];
        }
        rows.add("rearrange_dirichlet_violations", static_cast<double>(violations), 0.0,
                 violations == 0, config.samples, "UA_regular", d);
        const double freq = static_cast<double>(w16) / static_cast<double>(total);
        const double sigma = std::sqrt(0.25 / static_cast<double>(total));
        rows.add("w16_marginal_freq", freq, 0.5,
                 std::abs(freq - 0.5) <= config.sigmas * sigma, total, "UA_regular", d);
    }

    // Q-flow domination over the explored horizon, exact per node.
    {
        const std::uint64_t q_stream = stream();
        std::vector<std::int64_t> violation_counts(static_cast<std::size_t>(workers), 0);
        std::vector<std::int64_t> node_counts(static_cast<std::size_t>(workers), 0);
        parallel_blocks(config.samples, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t w) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                const auto outcome = check_q_domination(
                                    derive_seed(q_stream, static_cast<std::uint64_t>(i)), 2, 5);
                                violation_counts[static_cast<std::size_t>(w)] +=
                                    outcome.violations;
                                node_counts[static_cast<std::size_t>(w)] +=
                                    outcome.nodes_checked;
                            }
                        });
        std::int64_t violations = 0, nodes = 0;
        for (std::size_t w = 0; w < violation_counts.size(); ++w) {
            violations += violation_counts[w];
            nodes += node_counts[w];
        }
        rows.add("q_domination_violations", static_cast<double>(violations), 0.0,
                 violations == 0, nodes, "UA");
    }

    // Z law: generation sizes of the Geometric(1/2) branching process.
    for (std::int32_t r = 1; r <= 3; ++r) {
        const std::uint64_t z_stream = stream();
        const double p = std::pow(2.0, -r);
        // bucket 1..B-1 plus a merged tail, keeping expected counts >= 5
        std::int64_t max_bucket = 1;
        while (geometric_pmf(p, max_bucket + 1) * static_cast<double>(config.samples) >= 5.0)
            ++max_bucket;
        std::vector<std::vector<double>> local(
            static_cast<std::size_t>(workers),
            std::vector<double>(static_cast<std::size_t>(max_bucket) + 1, 0.0));
        parallel_blocks(config.samples, workers,
                        [&](std::int64_t begin, std::int64_t end, std::int32_t w) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                Rng rng(derive_seed(z_stream, static_cast<std::uint64_t>(i)));
                                const std::int64_t z = geometric_branching_generation(r, rng);
                                const std::int64_t cell = std::min<std::int64_t>(z, max_bucket + 1);
                                ++local[static_cast<std::size_t>(w)]
                                       [static_cast<std::size_t>(cell - 1)];
                            }
                        });
        std::vector<double> observed(static_cast<std::size_t>(max_bucket) + 1, 0.0);
        for (const auto& cells : local)
            for (std::size_t c = 0; c < cells.size(); ++c) observed[c] += cells[c];
        std::vector<double> expected(observed.size(), 0.0);
        double head = 0.0;
        for (std::int64_t cell = 1; cell <= max_bucket; ++cell) {
            expected[static_cast<std::size_t>(cell - 1)] =
                geometric_pmf(p, cell) * static_cast<double>(config.samples);
            head += geometric_pmf(p, cell);
        }
        expected.back() = (1.0 - head) * static_cast<double>(config.samples);
        const double pvalue = chi_square_gof_pvalue(observed, expected);
        rows.add("geometric_z_chi2_r" + std::to_string(r), pvalue, config.chi_p_threshold,
                 pvalue > config.chi_p_threshold, config.samples);
    }

    // Flow consistency: sibling masses telescope to the parent value.
    {
        const std::uint64_t f_stream = stream();
        double worst = 0.0;
        for (std::int64_t i = 0; i < 100; ++i) {
            Rng rng(derive_seed(f_stream, static_cast<std::uint64_t>(i)));
            double remaining = 1.0;
            double sum = 0.0;
            for (std::int32_t j = 0; j < 200; ++j) {
                const double u = rng.u01();
                sum += remaining * u;
                remaining *= 1.0 - u;
            }
            worst = std::max(worst, std::abs(1.0 - sum));
        }
        rows.add("flow_consistency_residual", worst, 1e-6, worst <= 1e-6, 100, "UA");
    }

    return table;
}

}  // namespace uaroot
