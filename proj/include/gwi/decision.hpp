#pragma once

#include <optional>
#include <string>

#include "gwi/model.hpp"

namespace gwi {

struct Divergences {
    double power_div;
    double renyi_div;
};

Divergences divergence_from_log_hellinger(double log_H, double lambda);

// nullopt means the question is open for this constellation
struct DistinguishabilityVerdict {
    std::optional<bool> contiguous_A_to_H;
    std::optional<bool> contiguous_H_to_A;
    std::optional<bool> entirely_separated;
};

DistinguishabilityVerdict distinguishability(const ParamSet& params);

struct DecisionConfig {
    double loss_A = 1;
    double loss_H = 1;
    double prior_H = 0.5;
    double level = 0.05;

    double Lambda_A() const { return (1 - prior_H) * loss_A; }
    double Lambda_H() const { return prior_H * loss_H; }
};

void validate(const DecisionConfig& cfg);

struct BayesBounds {
    double lower = 0;
    double upper = 0;
    double log_H_lower = 0;
    double log_H_upper = 0;
    double lambda = 0.5;
    std::string method;
};

BayesBounds bayes_risk_bounds(const ParamSet& params, double lambda, int omega0, int n, const DecisionConfig& cfg);

// smallest upper bound over the grid 0.01, 0.02, ..., 0.99
BayesBounds bayes_risk_upper_grid(const ParamSet& params, int omega0, int n, const DecisionConfig& cfg);

struct NPBound {
    double bound = 1;
    double log_H = 0;
    std::string method;
};

NPBound np_type2_bound(const ParamSet& params, double lambda, int omega0, int n, const DecisionConfig& cfg);

}  // namespace gwi
