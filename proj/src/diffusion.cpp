#include "gwi/diffusion.hpp"

#include <cmath>

#include "gwi/closed_form.hpp"
#include "gwi/recursion.hpp"

namespace gwi {

void validate(const SDEParams& s) {
    if (!(s.sigma > 0) || !std::isfinite(s.sigma)) throw Error(ErrorCode::InvalidParams, "sigma must be positive");
    if (!(s.x0_tilde > 0)) throw Error(ErrorCode::InvalidParams, "initial SDE value must be positive");
    if (!(s.eta >= 0) || !(s.kappa_A >= 0) || !(s.kappa_H >= 0))
        throw Error(ErrorCode::InvalidParams, "eta, kappa_A, kappa_H must be nonnegative");
    if (s.kappa_A == s.kappa_H) throw Error(ErrorCode::InvalidParams, "kappa_A must differ from kappa_H");
}

LimitScalars limit_scalars(const SDEParams& s, double lambda) {
    validate(s);
    validate_lambda(lambda);
    double k = lambda * s.kappa_A + (1 - lambda) * s.kappa_H;
    double L = std::sqrt(lambda * s.kappa_A * s.kappa_A + (1 - lambda) * s.kappa_H * s.kappa_H);
    return {k, L};
}

long long minimal_admissible_m(const SDEParams& s) {
    double r = std::max(s.kappa_A, s.kappa_H) / (s.sigma * s.sigma);
    return static_cast<long long>(std::floor(r)) + 1;
}

ParamSet approx_params(const SDEParams& s, long long m) {
    validate(s);
    long long mmin = minimal_admissible_m(s);
    if (m < mmin)
        throw Error(ErrorCode::InadmissibleM,
                    "m = " + std::to_string(m) + " is inadmissible; minimal admissible m is " + std::to_string(mmin));
    double s2 = s.sigma * s.sigma;
    ParamSet p;
    p.beta_A = 1 - s.kappa_A / (s2 * double(m));
    p.beta_H = 1 - s.kappa_H / (s2 * double(m));
    p.alpha_A = p.beta_A * s.eta / s2;
    p.alpha_H = p.beta_H * s.eta / s2;
    return p;
}

long long diffusion_horizon(const SDEParams& s, double t, long long m) {
    if (t < 0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
    return static_cast<long long>(std::floor(s.sigma * s.sigma * double(m) * t + 1e-9));
}

LogPair prelimit_log_bounds(const SDEParams& s, double lambda, double t, long long m, long long x0_count) {
    if (x0_count < 1) throw Error(ErrorCode::InvalidArgument, "initial population must be positive");
    ParamSet p = approx_params(s, m);
    validate_lambda(lambda);
    long long n = diffusion_horizon(s, t, m);
    if (n == 0) return {0.0, 0.0};
    if (n > 2000000000LL) throw Error(ErrorCode::InvalidArgument, "horizon too large");
    auto c = select_coeffs(p, lambda, PairRole::Exact);
    int ni = static_cast<int>(n);
    int w = static_cast<int>(x0_count);
    return {closed_form_lower_terms(c, w, ni).log_value, closed_form_upper_terms(c, w, ni).log_value};
}

LimitCorrections limit_corrections(const SDEParams& s, double lambda, double t) {
    auto ls = limit_scalars(s, lambda);
    double k = ls.kappa_lambda, L = ls.Lambda_lambda, s2 = s.sigma * s.sigma;
    double eL = std::exp(-L * t), eM = std::exp(-0.5 * (L + k) * t), e3 = std::exp(-0.5 * (3 * L + k) * t);
    double g = L - k;
    LimitCorrections c{};
    c.L1 = g * g / (2 * s2 * L) * eL * (1 - eL);
    c.L2 = 0.25 * (g / L) * (g / L) * (1 - eL) * (1 - eL);
    c.U1 = g * g / s2 * ((eM - eL) / g - eM * (1 - eL) / (2 * L));
    c.U2 = g * g / L * ((1 - e3) / (3 * L + k) + (eL - eM) / g);
    return c;
}

LogPair limit_log_bounds(const SDEParams& s, double lambda, double t) {
    if (t < 0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
    auto ls = limit_scalars(s, lambda);
    double k = ls.kappa_lambda, L = ls.Lambda_lambda, s2 = s.sigma * s.sigma, X = s.x0_tilde;
    auto c = limit_corrections(s, lambda, t);
    double g = L - k;
    double lower = -(g / s2) * (X - s.eta / L) * (-std::expm1(-L * t)) - s.eta / s2 * g * t + c.L1 * X +
                   s.eta / s2 * c.L2;
    double upper = -(g / s2) * (X - s.eta / (0.5 * (L + k))) * (-std::expm1(-0.5 * (L + k) * t)) -
                   s.eta / s2 * g * t - c.U1 * X - s.eta / s2 * c.U2;
    return {lower, upper};
}

double limit_entropy(const SDEParams& s, double t) {
    validate(s);
    if (t < 0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
    double s2 = s.sigma * s.sigma, X = s.x0_tilde;
    if (s.kappa_A > 0) {
        double kA = s.kappa_A, d = kA - s.kappa_H;
        return d * d / (2 * s2 * kA) * ((X - s.eta / kA) * (-std::expm1(-kA * t)) + s.eta * t);
    }
    return s.kappa_H * s.kappa_H / (2 * s2) * (s.eta / 2 * t * t + X * t);
}

std::vector<ScalingCheck> scaling_checks(const SDEParams& s, double lambda, long long m, double t) {
    auto ls = limit_scalars(s, lambda);
    double k = ls.kappa_lambda, L = ls.Lambda_lambda, s2 = s.sigma * s.sigma;
    ParamSet p = approx_params(s, m);
    auto c = select_coeffs(p, lambda, PairRole::Exact);
    auto fp = solve_fixed_point_a1(c.q, c.a1);
    double md = double(m);
    double log_q = lambda * std::log(p.beta_A) + (1 - lambda) * std::log(p.beta_H);
    double one_minus_dT = -std::expm1(log_q + fp.x0);
    double one_minus_dS = c.a1 / fp.x0;
    return {
        {"m(1-q)", md * -std::expm1(log_q), k / s2},
        {"m^2 a1", md * md * c.a1, -(L * L - k * k) / (2 * s2 * s2)},
        {"m x0", md * fp.x0, -(L - k) / s2},
        {"m(1-dT)", md * one_minus_dT, L / s2},
        {"m(1-dS)", md * one_minus_dS, (L + k) / (2 * s2)},
        {"dT^(s2 m t)", std::exp(s2 * md * t * std::log1p(-one_minus_dT)), std::exp(-L * t)},
    };
}

}  // namespace gwi
