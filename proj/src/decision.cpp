#include "gwi/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gwi/recursion.hpp"

namespace gwi {

namespace {

double safe_log(double v) { return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity(); }

// x^e in log space with 0^e = 0
double weighted_log(double e, double v) { return v > 0 ? e * std::log(v) : -std::numeric_limits<double>::infinity(); }

}  // namespace

Divergences divergence_from_log_hellinger(double log_H, double lambda) {
    validate_lambda(lambda);
    if (log_H > 0) throw Error(ErrorCode::InvalidArgument, "log Hellinger value must be nonpositive");
    double w = lambda * (1 - lambda);
    return {-std::expm1(log_H) / w, -log_H / w};
}

DistinguishabilityVerdict distinguishability(const ParamSet& p) {
    validate(p);
    DistinguishabilityVerdict v;
    switch (classify(p, 0.5)) {
        case CaseTag::NI:
            v.contiguous_A_to_H = p.beta_A <= 1;
            v.contiguous_H_to_A = p.beta_H <= 1;
            v.entirely_separated = false;
            break;
        case CaseTag::SP4:
            break;
        default:
            v.contiguous_A_to_H = false;
            v.contiguous_H_to_A = false;
            v.entirely_separated = true;
    }
    return v;
}

void validate(const DecisionConfig& c) {
    if (!(c.loss_A > 0) || !(c.loss_H > 0)) throw Error(ErrorCode::InvalidArgument, "losses must be positive");
    if (!(c.prior_H >= 0 && c.prior_H <= 1)) throw Error(ErrorCode::InvalidArgument, "prior_H must lie in [0,1]");
    if (!(c.level > 0 && c.level < 1)) throw Error(ErrorCode::InvalidArgument, "level must lie in (0,1)");
}

BayesBounds bayes_risk_bounds(const ParamSet& params, double lambda, int omega0, int n, const DecisionConfig& cfg) {
    validate(cfg);
    auto rep = hellinger_report(params, lambda, omega0, n);
    BayesBounds b;
    b.lambda = lambda;
    b.log_H_lower = rep.log_exact ? *rep.log_exact : rep.log_lower;
    b.log_H_upper = rep.log_exact ? *rep.log_exact : rep.log_upper;
    double LA = cfg.Lambda_A(), LH = cfg.Lambda_H();

    double log_up = weighted_log(lambda, LA) + weighted_log(1 - lambda, LH) + b.log_H_upper;
    b.upper = std::min(std::exp(log_up), std::min(LA, LH));

    double r = lambda / (1 - lambda);
    double e1 = std::max(1.0, r), e2 = std::max(1.0, 1 / r), e3 = std::max(r, 1 / r);
    double e4 = std::max(1 / lambda, 1 / (1 - lambda));
    double log_lo = weighted_log(e1, LA) + weighted_log(e2, LH) - e3 * safe_log(LA + LH) + e4 * b.log_H_lower;
    b.lower = std::min(std::exp(log_lo), b.upper);

    std::string src = rep.log_exact ? "exact" : rep.method;
    b.method = "upper from H upper (" + src + "), lower from H lower (" + src + ")";
    return b;
}

BayesBounds bayes_risk_upper_grid(const ParamSet& params, int omega0, int n, const DecisionConfig& cfg) {
    BayesBounds best;
    bool have = false;
    for (int i = 1; i <= 99; ++i) {
        auto b = bayes_risk_bounds(params, i / 100.0, omega0, n, cfg);
        if (!have || b.upper < best.upper) {
            best = b;
            have = true;
        }
    }
    best.method = "grid minimum at lambda=" + std::to_string(best.lambda) + "; " + best.method;
    return best;
}

NPBound np_type2_bound(const ParamSet& params, double lambda, int omega0, int n, const DecisionConfig& cfg) {
    validate(cfg);
    validate_lambda(lambda);
    auto rep = hellinger_report(params, 1 - lambda, omega0, n);
    NPBound out;
    out.log_H = rep.log_exact ? *rep.log_exact : rep.log_upper;
    out.method = rep.log_exact ? "exact H at order 1-lambda" : "upper H at order 1-lambda (" + rep.method + ")";
    double lg = std::log1p(-lambda) + lambda / (1 - lambda) * std::log(lambda / cfg.level) + out.log_H / (1 - lambda);
    out.bound = std::min(std::exp(lg), 1.0);
    return out;
}

}  // namespace gwi
