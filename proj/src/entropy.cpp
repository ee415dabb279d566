#include "gwi/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gwi {

namespace {

bool exact_case(CaseTag t) { return t == CaseTag::NI || t == CaseTag::SP1; }

void check_horizon(int omega0, int n) {
    if (omega0 < 1) throw Error(ErrorCode::InvalidArgument, "omega0 must be a positive integer");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
}

// f_A log(f_A / f_H)
double F(const ParamSet& p, double x) {
    double fa = p.f_A(x), fh = p.f_H(x);
    return fa * (std::log(fa) - std::log(fh));
}

// objective whose lattice argmax is z*: f_A (1 - log(f_A/f_H)) - f_H
double psi(const ParamSet& p, double x) {
    double fa = p.f_A(x), fh = p.f_H(x);
    return fa * (1 - (std::log(fa) - std::log(fh))) - fh;
}

double time_weight_sum(const ParamSet& p, int omega0, int n) {
    // sum_{k<n} beta^k omega0 + alpha sum_{k<n} sum_{j<k} beta^j + n alpha / beta
    double b = p.beta_A, a = p.alpha_A;
    double s0 = 0, s1 = 0, pw = 1, inner = 0;
    for (int k = 0; k < n; ++k) {
        s0 += pw;
        s1 += inner;
        inner += pw;
        pw *= b;
    }
    return omega0 * s0 + a * s1 + n * a / b;
}

}  // namespace

ParamSet swapped(const ParamSet& p) { return {p.beta_H, p.beta_A, p.alpha_H, p.alpha_A}; }

double entropy_rate_coefficient(double bA, double bH) {
    double rho = bA / bH;
    return bH * (rho * std::log(rho) - rho + 1);
}

double entropy_time_weight(const ParamSet& p, int omega0, int n, std::vector<std::string>* notes) {
    double b = p.beta_A, a = p.alpha_A;
    double dist = std::abs(b - 1);
    if (dist < 1e-12) return a / 2 * double(n) * n + (omega0 + a / 2) * n;
    double G = -std::expm1(n * std::log(b)) / (1 - b) * (omega0 - a / (1 - b));
    double closed = G + a * n / (b * (1 - b));
    if (dist < 1e-6) {
        double direct = time_weight_sum(p, omega0, n);
        if (std::abs(closed - direct) > 1e-8 * std::abs(direct)) {
            if (notes) notes->push_back("beta_A near 1: closed form replaced by the direct sum");
            return direct;
        }
    }
    return closed;
}

double exact_entropy(const ParamSet& p, int omega0, int n) {
    validate(p);
    check_horizon(omega0, n);
    CaseTag t = classify(p, 0.5);
    if (!exact_case(t))
        throw Error(ErrorCode::CaseMismatch,
                    std::string("exact relative entropy only on NI/SP1, case is ") + to_string(t) +
                        "; use the entropy bounds");
    return entropy_rate_coefficient(p.beta_A, p.beta_H) * entropy_time_weight(p, omega0, n);
}

double entropy_upper(const ParamSet& p, int omega0, int n) {
    validate(p);
    check_horizon(omega0, n);
    CaseTag t = classify(p, 0.5);
    if (exact_case(t))
        throw Error(ErrorCode::CaseMismatch, "on NI/SP1 the relative entropy is exact; use exact_entropy");
    double extra = p.alpha_A * (std::log(p.alpha_A * p.beta_H / (p.alpha_H * p.beta_A)) - p.beta_H / p.beta_A) +
                   p.alpha_H;
    return entropy_rate_coefficient(p.beta_A, p.beta_H) * entropy_time_weight(p, omega0, n) + extra * n;
}

double entropy_tangent_component(const ParamSet& p, int omega0, int n, double y) {
    double R = p.f_A(y) / p.f_H(y);
    double g = p.beta_A * std::log(R) + p.beta_H * (1 - R);
    double extra = (p.alpha_H - p.alpha_A * p.beta_H / p.beta_A) * (1 - R);
    return g * entropy_time_weight(p, omega0, n) + extra * n;
}

double entropy_tangent_infinity(const ParamSet& p, int omega0, int n) {
    double extra = p.alpha_A * (1 - p.beta_H / p.beta_A) + p.alpha_H * (1 - p.beta_A / p.beta_H);
    return entropy_rate_coefficient(p.beta_A, p.beta_H) * entropy_time_weight(p, omega0, n) + extra * n;
}

double entropy_tangent_derivative(const ParamSet& p, int omega0, int n, double y) {
    double g = p.gamma();
    double fa = p.f_A(y), fh = p.f_H(y);
    return g * g / (fa * fh * fh) * entropy_time_weight(p, omega0, n) - g * g / (p.beta_A * fh * fh) * n;
}

double entropy_secant_component(const ParamSet& p, int omega0, int n, long long k) {
    double kd = double(k);
    double Fk = F(p, kd), D = F(p, kd + 1) - Fk;
    double coef = D + p.beta_H - p.beta_A;
    double extra = -D * (kd + p.alpha_A / p.beta_A) + Fk - p.alpha_A * p.beta_H / p.beta_A + p.alpha_H;
    return coef * entropy_time_weight(p, omega0, n) + extra * n;
}

double entropy_horizontal_component(const ParamSet& p, int n, long long* z_star) {
    CaseTag t = classify(p, 0.5);
    if (t == CaseTag::SP4) {
        if (z_star) *z_star = -1;
        return 0.0;
    }
    long long best_k = 0;
    double best = psi(p, 0);
    int down = 0;
    for (long long k = 1; k < (1LL << 26) && down < 10; ++k) {
        double v = psi(p, double(k));
        if (v > best) {
            best = v;
            best_k = k;
            down = 0;
        } else {
            ++down;
        }
    }
    if (z_star) *z_star = best_k;
    return std::max(-best, 0.0) * n;
}

EntropyReport entropy_lower(const ParamSet& p, int omega0, int n) {
    validate(p);
    check_horizon(omega0, n);
    EntropyReport r;
    r.tag = classify(p, 0.5);
    if (exact_case(r.tag))
        throw Error(ErrorCode::CaseMismatch, "on NI/SP1 the relative entropy is exact; use exact_entropy");
    if (r.tag == CaseTag::SP3a || r.tag == CaseTag::SP3b)
        r.notes.push_back("SP3a/SP3b split depends on lambda; tag shown for lambda = 1/2");
    auto& c = r.components;

    // tangent family: geometric grid, golden-section refinement, and the y -> infinity limit
    auto tan = [&](double y) { return entropy_tangent_component(p, omega0, n, y); };
    std::vector<double> grid{0.0};
    for (int e = -4; e <= 16; ++e) grid.push_back(std::ldexp(1.0, e));
    size_t bi = 0;
    double bv = tan(grid[0]);
    for (size_t i = 1; i < grid.size(); ++i) {
        double v = tan(grid[i]);
        if (v > bv) {
            bv = v;
            bi = i;
        }
    }
    double lo = bi == 0 ? 0.0 : grid[bi - 1];
    double hi = bi + 1 < grid.size() ? grid[bi + 1] : grid[bi] * 2;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = tan(x1), f2 = tan(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = tan(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = tan(x1);
        }
    }
    double y_best = grid[bi];
    for (auto [y, v] : {std::pair{x1, f1}, std::pair{x2, f2}})
        if (v > bv) {
            bv = v;
            y_best = y;
        }
    c.tan_infinity = entropy_tangent_infinity(p, omega0, n);
    if (c.tan_infinity > bv) {
        bv = c.tan_infinity;
        y_best = std::numeric_limits<double>::infinity();
    }
    c.best_tan = bv;
    r.y_best = y_best;

    // secant family over k = 0, 1, 2, ...
    long long z = 0;
    c.horizontal = entropy_horizontal_component(p, n, &z);
    r.z_star = z;
    c.sec_zero = entropy_secant_component(p, omega0, n, 0);
    double bs = c.sec_zero;
    long long bk = 0;
    int down = 0;
    double prev = bs;
    // the family converges to the y -> infinity tangent limit when it never turns down
    for (long long k = 1; k < (1LL << 20); ++k) {
        double v = entropy_secant_component(p, omega0, n, k);
        if (v > bs) {
            bs = v;
            bk = k;
        }
        down = v < prev ? down + 1 : 0;
        prev = v;
        if (down >= 10 && k > std::max<long long>(z, 0) + 1) break;
    }
    c.best_sec = bs;
    r.k_best = bk;

    if (r.tag == CaseTag::SP3d) {
        double ys = (p.alpha_A - p.alpha_H) / (p.beta_H - p.beta_A);
        c.tan_at_ystar = tan(ys);
        double d = entropy_tangent_derivative(p, omega0, n, ys);
        r.ystar_derivative = d;
        double scale = p.gamma() * p.gamma() * (entropy_time_weight(p, omega0, n) + n);
        r.degenerate = std::abs(d) <= 1e-10 * std::max(scale, 1e-300);
        if (r.degenerate) r.notes.push_back("tangent component is stationary at y*; no positivity guarantee");
    }

    double best = std::max({c.best_tan, c.best_sec, c.horizontal});
    r.lower = std::max(best, 0.0);
    r.simplified_lower = std::max({c.tan_infinity, c.sec_zero, c.horizontal, 0.0});
    r.upper = entropy_upper(p, omega0, n);
    return r;
}

EntropyReport entropy_report(const ParamSet& p, int omega0, int n) {
    validate(p);
    CaseTag t = classify(p, 0.5);
    if (exact_case(t)) {
        EntropyReport r;
        r.tag = t;
        r.exact = exact_entropy(p, omega0, n);
        r.lower = r.exact;
        r.upper = r.exact;
        return r;
    }
    return entropy_lower(p, omega0, n);
}

}  // namespace gwi
