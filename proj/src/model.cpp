#include "gwi/model.hpp"

#include <cmath>
#include <limits>

namespace gwi {

namespace {

bool finite_pos(double v) { return std::isfinite(v) && v > 0; }

// expm1(l*u) - l*expm1(u), accurate for small |u|
double curvature_term(double lambda, double u) {
    if (std::abs(u) < 0.1) {
        double sum = 0, upow = u * u, fact = 2, lpow = lambda * lambda;
        for (int k = 2; k <= 16; ++k) {
            sum += (lpow - lambda) * upow / fact;
            upow *= u;
            fact *= (k + 1);
            lpow *= lambda;
        }
        return sum;
    }
    return std::expm1(lambda * u) - lambda * std::expm1(u);
}

// log(f_A/f_H); on NI at the origin the ratio of slopes is used
double log_ratio(const ParamSet& p, double x) {
    double fa = p.f_A(x), fh = p.f_H(x);
    if (fa == 0.0 && fh == 0.0) return std::log(p.beta_A / p.beta_H);
    return std::log(fa) - std::log(fh);
}

}  // namespace

const char* to_string(CaseTag c) {
    switch (c) {
        case CaseTag::NI: return "NI";
        case CaseTag::SP1: return "SP1";
        case CaseTag::SP2: return "SP2";
        case CaseTag::SP3a: return "SP3a";
        case CaseTag::SP3b: return "SP3b";
        case CaseTag::SP3c: return "SP3c";
        case CaseTag::SP3d: return "SP3d";
        case CaseTag::SP4: return "SP4";
    }
    return "?";
}

CaseTag case_from_string(const std::string& s) {
    for (auto c : {CaseTag::NI, CaseTag::SP1, CaseTag::SP2, CaseTag::SP3a, CaseTag::SP3b,
                   CaseTag::SP3c, CaseTag::SP3d, CaseTag::SP4})
        if (s == to_string(c)) return c;
    throw Error(ErrorCode::ParseError, "unknown case tag '" + s + "'");
}

void validate(const ParamSet& p) {
    if (!finite_pos(p.beta_A) || !finite_pos(p.beta_H))
        throw Error(ErrorCode::InvalidParams, "beta_A and beta_H must be positive and finite");
    if (!std::isfinite(p.alpha_A) || !std::isfinite(p.alpha_H) || p.alpha_A < 0 || p.alpha_H < 0)
        throw Error(ErrorCode::InvalidParams, "alpha_A and alpha_H must be nonnegative and finite");
    if (p.no_immigration()) {
        if (p.beta_A == p.beta_H)
            throw Error(ErrorCode::InvalidParams, "without immigration beta_A must differ from beta_H");
        return;
    }
    if (p.alpha_A == 0.0 || p.alpha_H == 0.0)
        throw Error(ErrorCode::InvalidParams,
                    "alpha_A and alpha_H must be both zero or both positive");
    if (p.beta_A == p.beta_H && p.alpha_A == p.alpha_H)
        throw Error(ErrorCode::InvalidParams, "the two laws coincide");
}

void validate_lambda(double lambda) {
    if (!(lambda > 0 && lambda < 1))
        throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0,1)");
}

LambdaWeights weights(const ParamSet& p, double lambda) {
    return {lambda * p.beta_A + (1 - lambda) * p.beta_H,
            lambda * p.alpha_A + (1 - lambda) * p.alpha_H};
}

double varphi(const ParamSet& p, double lambda, double x) {
    double fa = p.f_A(x), fh = p.f_H(x);
    if (fa == 0.0 || fh == 0.0) return 0.0;
    return std::exp(lambda * std::log(fa) + (1 - lambda) * std::log(fh));
}

double phi(const ParamSet& p, double lambda, double x) {
    double fh = p.f_H(x);
    if (fh == 0.0) return 0.0;
    return fh * curvature_term(lambda, log_ratio(p, x));
}

PhiValues phi_eval(const ParamSet& p, double lambda, double x) {
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "phi_eval requires x >= 0");
    double u = log_ratio(p, x);
    PhiValues out{};
    out.phi = phi(p, lambda, x);
    out.phi_prime = lambda * p.beta_A * std::expm1((lambda - 1) * u) +
                    (1 - lambda) * p.beta_H * std::expm1(lambda * u);
    double g = p.gamma();
    if (g == 0.0) {
        out.phi_double_prime = 0.0;
    } else {
        double fa = p.f_A(x), fh = p.f_H(x);
        out.phi_double_prime =
            -lambda * (1 - lambda) * g * g * std::exp(lambda * u) / (fa * fa * fh);
    }
    return out;
}

Classification classify_detail(const ParamSet& p, double lambda, ClassifyOptions opt) {
    validate(p);
    validate_lambda(lambda);
    Classification c{};
    if (p.no_immigration()) {
        c.tag = CaseTag::NI;
        return c;
    }
    if (p.alpha_A == p.alpha_H) {
        c.tag = CaseTag::SP2;
        return c;
    }
    if (p.beta_A == p.beta_H) {
        c.tag = CaseTag::SP4;
        return c;
    }
    double ratio_gap = p.alpha_A / p.alpha_H - p.beta_A / p.beta_H;
    if (std::abs(ratio_gap) <= opt.tol) {
        c.near_tie = ratio_gap != 0.0;
        c.tag = CaseTag::SP1;
        return c;
    }
    double xs = (p.alpha_H - p.alpha_A) / (p.beta_A - p.beta_H);
    c.x_star = xs;
    if (xs < 0) {
        double r = p.alpha_A / p.alpha_H;
        double w = weights(p, lambda).beta_lambda;
        double d0 = lambda * p.beta_A * std::pow(r, lambda - 1) +
                    (1 - lambda) * p.beta_H * std::pow(r, lambda) - w;
        c.phi_prime_zero = d0;
        if (std::abs(d0) <= opt.tol) {
            c.near_tie = d0 != 0.0;
            c.tag = CaseTag::SP3a;
        } else {
            c.tag = d0 < 0 ? CaseTag::SP3a : CaseTag::SP3b;
        }
        return c;
    }
    c.phi_prime_zero = phi_eval(p, lambda, 0).phi_prime;
    double nearest = std::round(xs);
    double dist = std::abs(xs - nearest);
    if (nearest >= 1 && dist <= opt.tol * std::max(1.0, xs)) {
        c.near_tie = dist != 0.0;
        c.x_star = nearest;
        c.tag = CaseTag::SP3d;
    } else {
        c.tag = CaseTag::SP3c;
    }
    return c;
}

CaseTag classify(const ParamSet& p, double lambda) { return classify_detail(p, lambda).tag; }

double phi_argmax(const ParamSet& p, double lambda) {
    Classification c = classify_detail(p, lambda);
    if (c.tag == CaseTag::SP3c || c.tag == CaseTag::SP3d) return *c.x_star;
    if (c.tag == CaseTag::SP4) {
        // phi increases towards its supremum 0 as x grows when phi'(0) > 0
        return phi_eval(p, lambda, 0).phi_prime > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    if (phi_eval(p, lambda, 0).phi_prime <= 0) return 0.0;
    double lo = 0, hi = 1;
    while (phi_eval(p, lambda, hi).phi_prime > 0) {
        lo = hi;
        hi *= 2;
        if (hi > 1e300) return std::numeric_limits<double>::infinity();
    }
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        double mid = 0.5 * (lo + hi);
        if (phi_eval(p, lambda, mid).phi_prime > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

LatticeMax phi_lattice_max(const ParamSet& p, double lambda) {
    double xm = phi_argmax(p, lambda);
    if (!std::isfinite(xm)) return {-1, 0.0};
    auto k = static_cast<long long>(std::floor(xm));
    double a = phi(p, lambda, static_cast<double>(k));
    double b = phi(p, lambda, static_cast<double>(k + 1));
    if (b > a) return {k + 1, b};
    return {k, a};
}

double weighted_gap(double lambda, double u) { return curvature_term(lambda, u); }

double concavity_gap(double x, double y, double z, double lambda) {
    if (!(x > 0 && y > 0 && z > 0)) throw Error(ErrorCode::InvalidArgument, "concavity_gap needs x,y,z > 0");
    validate_lambda(lambda);
    // y z^lambda * (t^lambda - 1 - lambda (t - 1)) with t = x / (y z)
    double u = std::log(x) - std::log(y) - std::log(z);
    return y * std::pow(z, lambda) * curvature_term(lambda, u);
}

}  // namespace gwi
