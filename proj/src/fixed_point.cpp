#include "gwi/fixed_point.hpp"

#include <algorithm>
#include <cmath>

#include "gwi/error.hpp"

namespace gwi {

namespace {

void check(double q, double a1) {
    if (!(q > 0)) throw Error(ErrorCode::NoFixedPoint, "fixed point requires q > 0");
    if (!(a1 < 0)) throw Error(ErrorCode::NoFixedPoint, "fixed point requires q < beta_lambda");
}

double under_a1(double q, double a1) {
    double bl = q - a1;
    double h = -bl;
    if (q < 1) h = std::max(-bl, a1 / (1 - q));
    double disc = (1 - q) * (1 - q) - 2 * q * std::exp(h) * a1;
    return std::exp(-h) / q * ((1 - q) - std::sqrt(disc));
}

double over_a1(double q, double a1) {
    double disc = (1 - q) * (1 - q) - 2 * q * a1;
    return ((1 - q) - std::sqrt(disc)) / q;
}

}  // namespace

double fixed_point_under(double q, double bl) {
    check(q, q - bl);
    return under_a1(q, q - bl);
}

double fixed_point_over(double q, double bl) {
    check(q, q - bl);
    return over_a1(q, q - bl);
}

FixedPointResult solve_fixed_point_a1(double q, double a1) {
    check(q, a1);
    double bl = q - a1;
    auto xi = [&](double x) { return a1 + q * std::expm1(x) - x; };
    // xi(-bl) > 0 > xi(a1); xi is convex and decreasing on the bracket
    double lo = -bl, hi = a1;
    for (int it = 0; it < 400 && hi - lo > 1e-14 * std::max(std::abs(hi), 1e-300); ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (xi(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
        double d = q * std::exp(x) - 1;
        if (d == 0) break;
        double nx = x - xi(x) / d;
        if (nx > -bl && nx < a1) x = nx;
    }
    FixedPointResult r{};
    r.x0 = x;
    r.residual = std::abs(xi(x));
    r.x0_under = under_a1(q, a1);
    r.x0_over = over_a1(q, a1);
    r.d_T = q * std::exp(x);
    r.d_S = (x - a1) / x;
    r.gamma_cap = 0.5 * r.d_T * x * x;
    r.over_admissible = r.x0_over < a1;
    return r;
}

FixedPointResult solve_fixed_point(double q, double bl) { return solve_fixed_point_a1(q, q - bl); }

}  // namespace gwi
