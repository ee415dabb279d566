#pragma once

#include <optional>
#include <string>

#include "gwi/error.hpp"

namespace gwi {

struct ParamSet {
    double beta_A = 0;
    double beta_H = 0;
    double alpha_A = 0;
    double alpha_H = 0;

    double gamma() const { return alpha_H * beta_A - alpha_A * beta_H; }
    double f_A(double x) const { return alpha_A + beta_A * x; }
    double f_H(double x) const { return alpha_H + beta_H * x; }
    bool no_immigration() const { return alpha_A == 0.0 && alpha_H == 0.0; }
};

enum class CaseTag { NI, SP1, SP2, SP3a, SP3b, SP3c, SP3d, SP4 };

const char* to_string(CaseTag c);
CaseTag case_from_string(const std::string& s);

struct LambdaWeights {
    double beta_lambda;
    double alpha_lambda;
};

struct ClassifyOptions {
    double tol = 1e-12;
};

struct Classification {
    CaseTag tag;
    std::optional<double> x_star;
    double phi_prime_zero = 0;
    // set when a tolerance-based test (ratio, integer, sign) was decided inside the tolerance band
    bool near_tie = false;
};

struct PhiValues {
    double phi;
    double phi_prime;
    double phi_double_prime;
};

void validate(const ParamSet& p);
void validate_lambda(double lambda);

LambdaWeights weights(const ParamSet& p, double lambda);

Classification classify_detail(const ParamSet& p, double lambda, ClassifyOptions opt = {});
CaseTag classify(const ParamSet& p, double lambda);

// varphi_lambda(x) = f_A(x)^lambda f_H(x)^(1-lambda), with varphi(0) = 0 on NI
double varphi(const ParamSet& p, double lambda, double x);
double phi(const ParamSet& p, double lambda, double x);
PhiValues phi_eval(const ParamSet& p, double lambda, double x);

// argmax of phi over (0, inf), or 0 when phi is nonincreasing from the origin
double phi_argmax(const ParamSet& p, double lambda);
// integer maximiser of phi (smallest one on ties) and the max value
struct LatticeMax {
    long long z;
    double value;
};
LatticeMax phi_lattice_max(const ParamSet& p, double lambda);

double concavity_gap(double x, double y, double z, double lambda);

// expm1(lambda u) - lambda expm1(u), accurate for small |u|; equals t^lambda - 1 - lambda (t - 1) at t = e^u
double weighted_gap(double lambda, double u);

}  // namespace gwi
