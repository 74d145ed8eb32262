#pragma once

#include <span>
#include <string>
#include <vector>

namespace rpp {

//! Shortest decimal text that parses back to the same double.
std::string format_double(double v);

//! Fixed-order pairwise (cascade) summation; deterministic for a given input.
double pairwise_sum(std::span<double const> values);

double mean(std::span<double const> values);
//! Unbiased sample standard deviation (n - 1 denominator); 0 when n < 2.
double sample_std(std::span<double const> values);
double median(std::vector<double> values);

//! Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

//! Upper alpha quantile of the F distribution with (df1, df2) degrees of freedom.
double f_quantile(double df1, double df2, double prob);

}  // namespace rpp
