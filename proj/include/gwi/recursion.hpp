#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwi/model.hpp"

namespace gwi {

enum class PairRole { Exact, Lower, Upper, Asymptote, Horizontal };

const char* to_string(PairRole r);
PairRole role_from_string(const std::string& s);

// Linear bound r + s x of phi_lambda on the lattice, stored both as (p, q) and as
// (b1, a1) = (p - alpha_lambda, q - beta_lambda) evaluated without cancellation.
struct CoefficientPair {
    double p = 0;
    double q = 0;
    double b1 = 0;
    double a1 = 0;
    PairRole role = PairRole::Upper;
    std::string method;
};

struct RecursionTrace {
    std::vector<double> a;
    std::vector<double> b;
};

RecursionTrace run_recursion(double p, double q, const ParamSet& params, double lambda, int n);
RecursionTrace run_recursion(const CoefficientPair& pair, int n);

CoefficientPair select_coeffs(const ParamSet& params, double lambda, PairRole role);

// every upper construction applicable on the case (used for the pointwise minimum)
std::vector<CoefficientPair> upper_candidates(const ParamSet& params, double lambda);

// checks r + s x >= phi(x) on x = 0, 1, 2, ... (finite check, see implementation)
bool dominates_on_lattice(const ParamSet& params, double lambda, const CoefficientPair& pair,
                          double tol = 1e-12);

// log of exp{a_n omega0 + sum_{k<=n} b_k} for k = 0..n
std::vector<double> pair_log_series(const CoefficientPair& pair, int omega0, int n);
double pair_log_bound(const CoefficientPair& pair, int omega0, int n);

double exact_log_hellinger(const ParamSet& params, double lambda, int omega0, int n);

// increments log_k - log_{k-1}, k = 1..n (index 0 unused), computed without
// differencing the values; they stay resolvable after the values settle in double precision
std::vector<double> pair_log_steps(const CoefficientPair& pair, int omega0, int n);
std::vector<double> exact_log_hellinger_steps(const ParamSet& params, double lambda, int omega0, int n);

struct LogBoundReport {
    double log_lower = 0;
    double log_upper = 0;
    std::optional<double> log_exact;
    std::string method;
    CaseTag tag = CaseTag::NI;
    std::vector<std::string> notes;
};

struct LogBoundSeries {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::string> upper_method;
    std::vector<std::string> notes;
    CaseTag tag = CaseTag::NI;
};

double sp3d_delta(const ParamSet& params, double lambda);

LogBoundSeries recursive_log_bound_series(const ParamSet& params, double lambda, int omega0, int n);
LogBoundReport recursive_log_bounds(const ParamSet& params, double lambda, int omega0, int n);

// exact value on NI/SP1, recursive bounds elsewhere
LogBoundReport hellinger_report(const ParamSet& params, double lambda, int omega0, int n);

}  // namespace gwi
