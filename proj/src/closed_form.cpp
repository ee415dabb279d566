#include "gwi/closed_form.hpp"

#include <cmath>

namespace gwi {

namespace {

// 1 - d^n for 0 < d
double one_minus_pow(double d, int n) { return -std::expm1(double(n) * std::log(d)); }

// (p/q) beta_lambda - alpha_lambda, written through the cancellation-free gaps
double offset(const CoefficientPair& c) { return c.b1 - c.p / c.q * c.a1; }

struct Linearization {
    double x0, dT, dS, G;
};

Linearization linearize(const CoefficientPair& c, double x0_choice(const FixedPointResult&)) {
    auto fp = solve_fixed_point_a1(c.q, c.a1);
    double x0 = x0_choice(fp);
    Linearization L{};
    L.x0 = x0;
    L.dT = c.q * std::exp(x0);
    L.dS = (x0 - c.a1) / x0;
    L.G = 0.5 * L.dT * x0 * x0;
    return L;
}

}  // namespace

double power_quotient(double x, double y, int n) {
    if (n <= 0) return 0.0;
    double scale = std::max(std::abs(x), std::abs(y));
    if (std::abs(x - y) <= 1e-10 * scale) {
        double m = 0.5 * (x + y);
        return n * std::pow(m, n - 1);
    }
    return (std::pow(x, n) - std::pow(y, n)) / (x - y);
}

double LinearRecursion::value(int n) const {
    double v = c * one_minus_pow(d, n) / (1 - d);
    if (K1 != 0) v += K1 * power_quotient(d, kappa, n);
    if (K2 != 0) v += K2 * power_quotient(d, nu, n);
    return v;
}

double LinearRecursion::partial_sum(int n) const {
    double geo_d = d * one_minus_pow(d, n) / (1 - d);
    double s = c * n / (1 - d) - c / (1 - d) * geo_d;
    if (K1 != 0) s += K1 * (geo_d - kappa * (1 - std::pow(kappa, n)) / (1 - kappa)) / (d - kappa);
    if (K2 != 0) s += K2 * (geo_d - nu * (1 - std::pow(nu, n)) / (1 - nu)) / (d - nu);
    return s;
}

double LinearRecursion::run(int n) const {
    double a = 0;
    for (int k = 1; k <= n; ++k) a = c + d * a + K1 * std::pow(kappa, k - 1) + K2 * std::pow(nu, k - 1);
    return a;
}

double LinearRecursion::run_sum(int n) const {
    double a = 0, s = 0;
    for (int k = 1; k <= n; ++k) {
        a = c + d * a + K1 * std::pow(kappa, k - 1) + K2 * std::pow(nu, k - 1);
        s += a;
    }
    return s;
}

double LinearRecursion::step(int n) const {
    if (n <= 0) return 0.0;
    double v = std::pow(d, n - 1) * (c + K1 + K2);
    if (n == 1) return v;
    if (K1 != 0) v += K1 * (kappa - 1) * power_quotient(d, kappa, n - 1);
    if (K2 != 0) v += K2 * (nu - 1) * power_quotient(d, nu, n - 1);
    return v;
}

LinearRecursion closed_form_lower_recursion(const CoefficientPair& c, ClosedFormOptions opt) {
    if (c.a1 == 0) return {};
    auto L = linearize(c, opt.explicit_x0 ? +[](const FixedPointResult& f) { return f.x0_under; }
                                          : +[](const FixedPointResult& f) { return f.x0; });
    return {L.x0 * (1 - L.dT), L.dT, L.G, L.dT * L.dT, 0, 0};
}

LinearRecursion closed_form_upper_recursion(const CoefficientPair& c, ClosedFormOptions opt) {
    auto fp = solve_fixed_point_a1(c.q, c.a1);
    bool use_over = opt.explicit_x0 && fp.over_admissible;
    auto L = linearize(c, use_over ? +[](const FixedPointResult& f) { return f.x0_over; }
                                   : +[](const FixedPointResult& f) { return f.x0; });
    return {c.a1, L.dS, -L.G, L.dT, L.G, L.dT * L.dS};
}

ClosedFormTerms closed_form_lower_terms(const CoefficientPair& c, int omega0, int n, ClosedFormOptions opt) {
    if (c.a1 == 0) {
        // q = beta_lambda (SP4): a_n vanishes and the recursion is already linear in n
        ClosedFormTerms t;
        t.main_linear = c.b1 * n;
        t.log_value = t.main_linear;
        return t;
    }
    auto L = linearize(c, opt.explicit_x0 ? +[](const FixedPointResult& f) { return f.x0_under; }
                                          : +[](const FixedPointResult& f) { return f.x0; });
    double d = L.dT, r = c.p / c.q;
    double omd = 1 - d, omdn = one_minus_pow(d, n);
    ClosedFormTerms t;
    t.main_geometric = L.x0 * (omega0 - r * d / omd) * omdn;
    t.main_linear = (r * L.x0 + offset(c)) * n;
    t.zeta = L.G * std::pow(d, n - 1) * omdn / omd;
    t.vartheta = r * L.G * omdn / (omd * omd) * (1 - d * (1 + std::pow(d, n)) / (1 + d));
    t.log_value = t.main_geometric + t.main_linear + t.zeta * omega0 + t.vartheta;
    return t;
}

ClosedFormTerms closed_form_upper_terms(const CoefficientPair& c, int omega0, int n, ClosedFormOptions opt) {
    auto fp = solve_fixed_point_a1(c.q, c.a1);
    bool use_over = opt.explicit_x0 && fp.over_admissible;
    auto L = linearize(c, use_over ? +[](const FixedPointResult& f) { return f.x0_over; }
                                   : +[](const FixedPointResult& f) { return f.x0; });
    double dS = L.dS, dT = L.dT, r = c.p / c.q;
    double omdS = 1 - dS;
    double pq = power_quotient(dS, dT, n);
    ClosedFormTerms t;
    t.main_geometric = L.x0 * (omega0 - r * dS / omdS) * one_minus_pow(dS, n);
    t.main_linear = (r * L.x0 + offset(c)) * n;
    t.zeta = L.G * (pq - std::pow(dS, n - 1) * one_minus_pow(dT, n) / (1 - dT));
    t.vartheta = L.G * r * dT / (1 - dT) * (one_minus_pow(dS * dT, n) / (1 - dS * dT) - pq);
    t.log_value = t.main_geometric + t.main_linear - t.zeta * omega0 - t.vartheta;
    return t;
}

CoefficientPair closed_form_lower_pair(const ParamSet& params, double lambda) {
    CaseTag tag = classify(params, lambda);
    bool exact = tag == CaseTag::NI || tag == CaseTag::SP1;
    return select_coeffs(params, lambda, exact ? PairRole::Exact : PairRole::Lower);
}

CoefficientPair closed_form_upper_pair(const ParamSet& params, double lambda) {
    CaseTag tag = classify(params, lambda);
    if (tag == CaseTag::SP3d || tag == CaseTag::SP4)
        throw Error(ErrorCode::CaseMismatch,
                    std::string("no closed-form upper bound on ") + to_string(tag));
    bool exact = tag == CaseTag::NI || tag == CaseTag::SP1;
    return select_coeffs(params, lambda, exact ? PairRole::Exact : PairRole::Upper);
}

double closed_form_log_lower(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt) {
    if (omega0 < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "omega0 and n must be positive");
    auto c = closed_form_lower_pair(params, lambda);
    return closed_form_lower_terms(c, omega0, n, opt).log_value;
}

double closed_form_log_upper(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt) {
    if (omega0 < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "omega0 and n must be positive");
    auto c = closed_form_upper_pair(params, lambda);
    return closed_form_upper_terms(c, omega0, n, opt).log_value;
}

namespace {

double log_step(const CoefficientPair& c, const LinearRecursion& L, int omega0, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (c.a1 == 0) return c.b1;
    return L.step(n) * omega0 + c.p / c.q * L.value(n) + offset(c);
}

}  // namespace

double closed_form_log_lower_step(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt) {
    auto c = closed_form_lower_pair(params, lambda);
    return log_step(c, closed_form_lower_recursion(c, opt), omega0, n);
}

double closed_form_log_upper_step(const ParamSet& params, double lambda, int omega0, int n, ClosedFormOptions opt) {
    auto c = closed_form_upper_pair(params, lambda);
    return log_step(c, closed_form_upper_recursion(c, opt), omega0, n);
}

double closed_form_slope_limit(const CoefficientPair& c) {
    auto fp = solve_fixed_point_a1(c.q, c.a1);
    return c.p / c.q * fp.x0 + offset(c);
}

}  // namespace gwi
