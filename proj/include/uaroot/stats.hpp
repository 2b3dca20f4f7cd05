#pragma once

#include <cstdint>
#include <vector>

namespace uaroot {

// Sup distance between the empirical CDF of `samples` and the Uniform[0,1] CDF.
double ks_distance_uniform01(std::vector<double> samples);

// Two-sample Kolmogorov-Smirnov sup distance.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

// Upper tail of the chi-square distribution with `dof` degrees of freedom,
// i.e. the p-value of an observed statistic.
double chi_square_pvalue(double statistic, double dof);

// Pearson chi-square goodness-of-fit p-value; cells with small expected counts
// should already be merged by the caller.
double chi_square_gof_pvalue(const std::vector<double>& observed,
                             const std::vector<double>& expected);

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval (z = 1.96) for a binomial proportion.
Interval wilson_interval(std::int64_t successes, std::int64_t trials);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

struct RunningMoments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double value) {
        ++count;
        const double delta = value - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (value - mean);
    }
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
    double stderr_mean() const;

    void merge(const RunningMoments& other);
};

}  // namespace uaroot
