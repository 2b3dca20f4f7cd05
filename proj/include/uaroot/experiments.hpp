#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "uaroot/growth.hpp"
#include "uaroot/table.hpp"

namespace uaroot {

// Calibration constants for the random-flow count bound
// B(x) = exp(c + c sqrt(log x)). Fitted once on a dedicated calibration run
// (see tools/calibrate in the README) and frozen here; they are reported next
// to the results, not claimed to be universal.
inline constexpr double kNxCalibratedCUa = 0.70;
inline constexpr double kNxCalibratedCRegular = 0.65;

struct ExperimentConfig {
    Model model = Model::kUa;
    std::int32_t d = 2;
    std::vector<std::int64_t> n_grid = {1000};
    std::vector<std::int64_t> k_grid = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<double> x_grid = {2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<double> y_grid = {1, 2, 4};
    std::vector<std::int64_t> m_grid = {5, 8};
    double epsilon = 0.3;
    std::int64_t trials = 10'000;
    std::uint64_t seed = 1;
    std::int32_t workers = 0;  // 0 = hardware concurrency
    double nx_calibrated_c = 0.0;  // 0 = per-model frozen default
};

// Runs fn(begin, end, worker) over contiguous blocks of [0, count). Results
// must be written to per-index slots or per-worker accumulators so the output
// does not depend on the number of workers.
void parallel_blocks(std::int64_t count, std::int32_t workers,
                     const std::function<void(std::int64_t, std::int64_t, std::int32_t)>& fn);

std::int32_t resolve_workers(std::int32_t requested);

// Empirical P(root not in A_K) over the (n, K) grid, all K evaluated on shared
// trees through the root's rank. stderr carries the Wilson 95% half-width.
TrialTable run_error_curve(const ExperimentConfig& config);

// Tail of the competitive ratio: P(Phi(T_n) >= x) over the x grid plus the
// fitted log-log slope row per n.
TrialTable run_phi_tail(const ExperimentConfig& config);

// P(exists u with weight >= m (UA) resp. height >= m (regular) and subtree
// size >= epsilon * n), next to the evaluated union-bound value.
TrialTable run_weight_tail(const ExperimentConfig& config);

// P(N_x(P) >= y B(x)) against 2 e^-y with the frozen calibration constant.
TrialTable run_nx_tail(const ExperimentConfig& config);

struct DistSuiteConfig {
    std::int64_t samples = 100'000;          // rearrangements, stick-breaking, KS pairs
    std::int64_t v_moment_samples = 1'000'000;  // (1-V)^(-1/2) moment draws
    std::int64_t sim_trials = 10'000;        // grown-tree checks
    std::int64_t sim_n = 5'000;
    std::int64_t urn_draws = 2'000;          // per stick-vs-urn replica
    std::int64_t urn_uniform_replicas = 10'000;
    std::int64_t urn_uniform_draws = 100'000;
    double ks_threshold = 0.02;
    double ks_threshold_fine = 0.01;
    double chi_p_threshold = 0.001;
    double sigmas = 3.0;
    std::uint64_t seed = 1;
    std::int32_t workers = 0;
};

// Every statistical identity of the limit-object layer as one pass/fail row.
TrialTable run_dist_suite(const DistSuiteConfig& config);

struct ScalingFit {
    double slope = 0.0;      // coefficient of sqrt(log 1/eps)
    double intercept = 0.0;  // log of the leading constant
    double r_squared = 0.0;
    // kept points: smallest K reaching each achieved error level
    std::vector<std::int64_t> k_values;
    std::vector<double> errors;
};

// For each achieved error level, takes the smallest K with error <= eps and
// regresses log K on sqrt(log 1/eps). Needs at least four distinct levels.
ScalingFit fit_scaling(const std::vector<std::pair<std::int64_t, double>>& k_error_pairs);

// Convenience: pulls (K, error) pairs for one n from an error-curve table.
ScalingFit fit_scaling(const TrialTable& error_table, std::int64_t n);

TrialTable scaling_fit_rows(const ScalingFit& fit, const ExperimentConfig& config,
                            std::int64_t n);

}  // namespace uaroot
