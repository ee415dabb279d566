#pragma once

#include <string>
#include <vector>

#include "gwi/model.hpp"

namespace gwi {

struct SDEParams {
    double eta = 0;
    double kappa_A = 0;
    double kappa_H = 0;
    double sigma = 1;
    double x0_tilde = 1;
};

struct LimitScalars {
    double kappa_lambda;
    double Lambda_lambda;
};

struct LogPair {
    double log_lower;
    double log_upper;
};

void validate(const SDEParams& s);
LimitScalars limit_scalars(const SDEParams& s, double lambda);

long long minimal_admissible_m(const SDEParams& s);
ParamSet approx_params(const SDEParams& s, long long m);

// floor(sigma^2 m t) with a small upward nudge against floating-point misses
long long diffusion_horizon(const SDEParams& s, double t, long long m);

LogPair prelimit_log_bounds(const SDEParams& s, double lambda, double t, long long m, long long x0_count);
LogPair limit_log_bounds(const SDEParams& s, double lambda, double t);

struct LimitCorrections {
    double L1, L2, U1, U2;
};
LimitCorrections limit_corrections(const SDEParams& s, double lambda, double t);

double limit_entropy(const SDEParams& s, double t);

struct ScalingCheck {
    std::string name;
    double measured;
    double target;
};

// the m -> infinity scaling limits of the approximating recursion quantities
std::vector<ScalingCheck> scaling_checks(const SDEParams& s, double lambda, long long m, double t);

}  // namespace gwi
