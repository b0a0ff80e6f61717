#pragma once

#include <map>
#include <string>
#include <vector>

namespace cqgen {
namespace stats {

/// Observations grouped by the level of a single factor, e.g.
/// "n_paper" -> {"1": [...], "2": [...]}.
struct FactorGroups {
    std::string factor_name;
    std::map<std::string, std::vector<double>> groups;
};

struct AnovaResult {
    double f_statistic = 0.0;
    double p_value = 1.0;
    int df_between = 0;
    int df_within = 0;
    std::map<std::string, double> group_means;
    double grand_mean = 0.0;
    double ss_between = 0.0;
    double ss_within = 0.0;
};

/// Sample standard deviation sqrt(sum((x - mean)^2) / (n - 1)).
/// Throws TooFewValues for fewer than two observations.
double sample_std(const std::vector<double>& values);

/// One-way ANOVA over unequal or equal group sizes.
/// F = (SSB / df_between) / (SSW / df_within); the p-value is the upper tail
/// of the F distribution, computed through the regularized incomplete beta
/// function. Requires >= 2 groups with >= 2 finite observations each
/// (TooFewGroups / TooFewValues) and nonzero within-group variance
/// (DegenerateData).
AnovaResult one_way_anova(const FactorGroups& data);

/// Regularized incomplete beta I_x(a, b), continued-fraction expansion with
/// the symmetry switch at x = (a+1)/(a+b+2). Converges to 1e-10 within 300
/// iterations or throws NoConvergence.
double incomplete_beta(double a, double b, double x);

/// Upper tail P(F' > f) of the F distribution with (df1, df2) degrees of
/// freedom: I_{df2/(df2 + df1 f)}(df2/2, df1/2).
double f_distribution_upper_tail(double f, int df1, int df2);

}  // namespace stats
}  // namespace cqgen
