#include "rpp/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <charconv>
#include <cmath>

namespace rpp {

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double pairwise_sum(std::span<double const> values)
{
    if (values.size() <= 8) {
        double s = 0;
        for (double v : values)
            s += v;
        return s;
    }
    std::size_t const half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(std::span<double const> values)
{
    if (values.empty())
        return 0.0;
    return pairwise_sum(values) / static_cast<double>(values.size());
}

double sample_std(std::span<double const> values)
{
    if (values.size() < 2)
        return 0.0;
    double const m = mean(values);
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        sq[i] = (values[i] - m) * (values[i] - m);
    return std::sqrt(pairwise_sum(sq) / static_cast<double>(values.size() - 1));
}

double median(std::vector<double> values)
{
    if (values.empty())
        return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t const n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double ks_statistic(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double const na = static_cast<double>(a.size());
    double const nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double dmax = 0;
    while (i < a.size() && j < b.size()) {
        double const x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        dmax = std::max(dmax, std::abs(i / na - j / nb));
    }
    return dmax;
}

double f_quantile(double df1, double df2, double prob)
{
    return boost::math::quantile(boost::math::fisher_f(df1, df2), prob);
}

}  // namespace rpp
