#pragma once

#include <cstdint>
#include <string>

#include "gwi/decision.hpp"
#include "gwi/model.hpp"

namespace gwi {

struct TruncationPolicy {
    double tail_budget = 1e-9;
    long long max_state = 5000;
    long long max_atoms = 20000000;
};

// H lies in [value, value + error_bound]
struct EnumResult {
    double log_value;
    double value;
    double error_bound;
    long long max_state_used;
};

EnumResult enum_log_hellinger(const ParamSet& params, double lambda, int omega0, int n, TruncationPolicy policy = {});

// plain double sum over (X_1, X_2) in [0, cutoff]^2, independent of the dynamic program
double naive_hellinger_n2(const ParamSet& params, double lambda, int omega0, int cutoff = 200);

struct MCResult {
    double estimate;
    double log_estimate;
    double std_error;
    long long reps;
    std::uint64_t seed;
    std::string rng;
};

MCResult mc_log_hellinger(const ParamSet& params, double lambda, int omega0, int n, long long reps,
                          std::uint64_t seed);

// risk lies in [risk, risk + error_bound]
struct RiskResult {
    double risk;
    double error_bound;
    long long atoms;
};

RiskResult enum_bayes_risk(const ParamSet& params, int omega0, int n, const DecisionConfig& cfg,
                           TruncationPolicy policy = {});

// minimal type II error lies in [type2 - error_bound, type2]
struct NPResult {
    double type2;
    double error_bound;
    long long atoms;
};

NPResult enum_np_type2(const ParamSet& params, int omega0, int n, double level, TruncationPolicy policy = {});

// relative entropy lies in [value, value + error_bound]
struct EntropyEnumResult {
    double value;
    double error_bound;
};

EntropyEnumResult enum_relative_entropy(const ParamSet& params, int omega0, int n, TruncationPolicy policy = {});

// smallest Y with P(Poisson(mean) > Y) <= eps
long long poisson_cutoff(double mean, double eps);
double poisson_upper_tail(double mean, long long y);
double poisson_log_pmf(double mean, long long y);

}  // namespace gwi
