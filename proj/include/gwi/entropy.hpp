#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwi/model.hpp"

namespace gwi {

struct EntropyComponents {
    std::optional<double> tan_at_ystar;  // only on SP3d
    double best_tan = 0;
    double best_sec = 0;
    double horizontal = 0;
    double tan_infinity = 0;
    double sec_zero = 0;
};

struct EntropyReport {
    std::optional<double> exact;
    std::optional<double> upper;
    std::optional<double> lower;
    std::optional<double> simplified_lower;
    EntropyComponents components;
    double y_best = 0;
    long long k_best = 0;
    long long z_star = 0;
    // SP3d: derivative of the tangent component at y*, and whether it vanishes
    std::optional<double> ystar_derivative;
    bool degenerate = false;
    CaseTag tag = CaseTag::NI;
    std::vector<std::string> notes;
};

// the roles of A and H exchanged, for the reverse divergence
ParamSet swapped(const ParamSet& p);

// beta_A (log(beta_A/beta_H) - 1) + beta_H
double entropy_rate_coefficient(double beta_A, double beta_H);

// sum_{k<n} (E_A[X_k] + alpha_A/beta_A), the weight multiplying every entropy rate
double entropy_time_weight(const ParamSet& p, int omega0, int n, std::vector<std::string>* notes = nullptr);

double exact_entropy(const ParamSet& p, int omega0, int n);
double entropy_upper(const ParamSet& p, int omega0, int n);

double entropy_tangent_component(const ParamSet& p, int omega0, int n, double y);
double entropy_tangent_infinity(const ParamSet& p, int omega0, int n);
double entropy_tangent_derivative(const ParamSet& p, int omega0, int n, double y);
double entropy_secant_component(const ParamSet& p, int omega0, int n, long long k);
double entropy_horizontal_component(const ParamSet& p, int n, long long* z_star = nullptr);

EntropyReport entropy_lower(const ParamSet& p, int omega0, int n);

// dispatch: exact on NI/SP1, bounds elsewhere
EntropyReport entropy_report(const ParamSet& p, int omega0, int n);

}  // namespace gwi
