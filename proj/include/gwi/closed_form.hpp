#pragma once

#include "gwi/fixed_point.hpp"
#include "gwi/recursion.hpp"

namespace gwi {

struct ClosedFormTerms {
    double zeta = 0;
    double vartheta = 0;
    double main_geometric = 0;
    double main_linear = 0;
    double log_value = 0;
};

struct ClosedFormOptions {
    // replace x0 by its explicit under (lower bound) or over (upper bound) approximant
    bool explicit_x0 = false;
};

// generic closed form of a_n = c + d a_{n-1} + K1 kappa^{n-1} + K2 nu^{n-1}, a_0 = 0
struct LinearRecursion {
    double c = 0, d = 0, K1 = 0, kappa = 0, K2 = 0, nu = 0;
    double value(int n) const;
    double partial_sum(int n) const;
    double run(int n) const;
    double run_sum(int n) const;
    // value(n) - value(n-1) from the increment recursion
    double step(int n) const;
};

// (x^n - y^n) / (x - y) with the removable singularity at x = y
double power_quotient(double x, double y, int n);

ClosedFormTerms closed_form_lower_terms(const CoefficientPair& pair, int omega0, int n, ClosedFormOptions opt = {});
ClosedFormTerms closed_form_upper_terms(const CoefficientPair& pair, int omega0, int n, ClosedFormOptions opt = {});

// the pair driving each closed form (exact pair on NI/SP1)
CoefficientPair closed_form_lower_pair(const ParamSet& params, double lambda);
CoefficientPair closed_form_upper_pair(const ParamSet& params, double lambda);

double closed_form_log_lower(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt = {});
double closed_form_log_upper(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt = {});

// the linearized a-recursions behind the two closed forms
LinearRecursion closed_form_lower_recursion(const CoefficientPair& pair, ClosedFormOptions opt = {});
LinearRecursion closed_form_upper_recursion(const CoefficientPair& pair, ClosedFormOptions opt = {});

// log C_n - log C_{n-1}, resolvable even where the values have settled
double closed_form_log_lower_step(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt = {});
double closed_form_log_upper_step(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt = {});

// (p/q)(x0 + beta_lambda) - alpha_lambda
double closed_form_slope_limit(const CoefficientPair& pair);

}  // namespace gwi
