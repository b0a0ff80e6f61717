#include "cqgen/stats.hpp"

#include <cmath>

#include "cqgen/error.hpp"

namespace cqgen {
namespace stats {

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw Error(ErrorCode::too_few_values,
                    "sample_std needs at least 2 values, got " + std::to_string(values.size()));
    }
    double mean = 0.0;
    for (double x : values) mean += x;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double x : values) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

namespace {

constexpr double kBetaTolerance = 1e-10;
constexpr int kBetaMaxIterations = 300;
constexpr double kTiny = 1e-300;

// Modified Lentz continued fraction for the incomplete beta function.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kBetaTolerance) return h;
    }
    throw Error(ErrorCode::no_convergence,
                "incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "incomplete_beta requires a > 0 and b > 0");
    }
    if (x < 0.0 || x > 1.0 || !std::isfinite(x)) {
        throw Error(ErrorCode::invalid_argument, "incomplete_beta requires x in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_distribution_upper_tail(double f, int df1, int df2) {
    if (df1 < 1 || df2 < 1) {
        throw Error(ErrorCode::invalid_argument, "degrees of freedom must be >= 1");
    }
    if (!(f >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "F statistic must be non-negative");
    }
    const double d1 = static_cast<double>(df1);
    const double d2 = static_cast<double>(df2);
    const double x = d2 / (d2 + d1 * f);
    return incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

AnovaResult one_way_anova(const FactorGroups& data) {
    if (data.groups.size() < 2) {
        throw Error(ErrorCode::too_few_groups,
                    "ANOVA needs at least 2 groups, got " + std::to_string(data.groups.size()));
    }
    std::size_t total_n = 0;
    double total_sum = 0.0;
    for (const auto& [level, values] : data.groups) {
        if (values.size() < 2) {
            throw Error(ErrorCode::too_few_values,
                        "group '" + level + "' has fewer than 2 observations");
        }
        for (double x : values) {
            if (!std::isfinite(x)) {
                throw Error(ErrorCode::invalid_argument,
                            "non-finite observation in group '" + level + "'");
            }
            total_sum += x;
        }
        total_n += values.size();
    }

    AnovaResult result;
    result.grand_mean = total_sum / static_cast<double>(total_n);
    result.df_between = static_cast<int>(data.groups.size()) - 1;
    result.df_within = static_cast<int>(total_n) - static_cast<int>(data.groups.size());

    for (const auto& [level, values] : data.groups) {
        double mean = 0.0;
        for (double x : values) mean += x;
        mean /= static_cast<double>(values.size());
        result.group_means[level] = mean;
        result.ss_between +=
            static_cast<double>(values.size()) * (mean - result.grand_mean) * (mean - result.grand_mean);
        for (double x : values) {
            result.ss_within += (x - mean) * (x - mean);
        }
    }

    if (result.ss_within <= 0.0) {
        throw Error(ErrorCode::degenerate_data,
                    "zero within-group variance; F statistic is undefined");
    }
    const double ms_between = result.ss_between / result.df_between;
    const double ms_within = result.ss_within / result.df_within;
    result.f_statistic = ms_between / ms_within;
    result.p_value = f_distribution_upper_tail(result.f_statistic, result.df_between,
                                               result.df_within);
    return result;
}

}  // namespace stats
}  // namespace cqgen
