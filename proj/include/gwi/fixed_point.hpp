#pragma once

namespace gwi {

struct FixedPointResult {
    double x0;
    double x0_under;
    double x0_over;
    double d_T;
    double d_S;
    double gamma_cap;
    double residual;
    // the over-approximant stays below q - beta_lambda (needed by the explicit upper variant)
    bool over_admissible;
};

// unique negative root of q e^x - beta_lambda = x, requires 0 < q < beta_lambda
FixedPointResult solve_fixed_point(double q, double beta_lambda);
// same root, with a1 = q - beta_lambda supplied directly to avoid cancellation when q is close to beta_lambda
FixedPointResult solve_fixed_point_a1(double q, double a1);

double fixed_point_under(double q, double beta_lambda);
double fixed_point_over(double q, double beta_lambda);

}  // namespace gwi
