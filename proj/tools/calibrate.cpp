// Calibration of the N_x tail threshold constant: finds the smallest c such
// that the empirical exceedance P(N_x >= y exp(c + c sqrt(log x))) stays below
// 0.7 * 2 e^-y on a dedicated calibration stream, for x in {10, 100} and
// y in {1, 2, 4}. The chosen values are frozen in experiments.hpp; rerun this
// tool to reproduce them.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <vector>

#include "uaroot/experiments.hpp"
#include "uaroot/random_limits.hpp"

using namespace uaroot;

namespace {

constexpr std::uint64_t kCalibrationSeed = 0xCA11B2A7E5EEDULL;

double max_margin_ratio(const std::vector<std::vector<std::int64_t>>& counts,
                        const std::vector<double>& xs, const std::vector<double>& ys,
                        std::int64_t trials, double c) {
    double worst = 0.0;
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        const double base = std::exp(c + c * std::sqrt(std::log(xs[xi])));
        for (std::size_t yi = 0; yi < ys.size(); ++yi) {
            std::int64_t hits = 0;
            for (const std::int64_t count : counts[xi])
                if (static_cast<double>(count) >= ys[yi] * base) ++hits;
            const double rate = static_cast<double>(hits) / static_cast<double>(trials);
            worst = std::max(worst, rate / (2.0 * std::exp(-ys[yi])));
        }
    }
    return worst;
}

}  // namespace

int main() {
    const std::vector<double> xs = {10.0, 100.0};
    const std::vector<double> ys = {1.0, 2.0, 4.0};
    const std::int64_t trials = 10'000;

    for (const Model model : {Model::kUa, Model::kUaRegular}) {
        const std::int32_t d = 3;
        std::vector<std::vector<std::int64_t>> counts(xs.size());
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            counts[xi].reserve(static_cast<std::size_t>(trials));
            const std::uint64_t stream =
                derive_seed(kCalibrationSeed, (model == Model::kUa ? 0 : 100) + xi);
            for (std::int64_t trial = 0; trial < trials; ++trial)
                counts[xi].push_back(enumerate_ex_random_flow(
                                         model, d, xs[xi],
                                         derive_seed(stream, static_cast<std::uint64_t>(trial)))
                                         .count);
        }
        double chosen = 0.0;
        for (double c = 0.05; c <= 4.0; c += 0.05) {
            if (max_margin_ratio(counts, xs, ys, trials, c) <= 0.7) {
                chosen = c;
                break;
            }
        }
        std::cout << (model == Model::kUa ? "UA" : "UA_regular(3)") << ": c = " << chosen
                  << "  (margin ratio "
                  << max_margin_ratio(counts, xs, ys, trials, chosen) << ")\n";
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            double mean = 0.0;
            std::int64_t peak = 0;
            for (const auto count : counts[xi]) {
                mean += static_cast<double>(count);
                peak = std::max(peak, count);
            }
            std::cout << "  x = " << xs[xi] << ": mean N = " << mean / trials
                      << ", max N = " << peak << "\n";
        }
    }
    return 0;
}
