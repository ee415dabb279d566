#include "gwi/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gwi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// q^L - beta_lambda, the slope of the asymptote of phi
double slope_gap(const ParamSet& p, double lambda) {
    return p.beta_H * weighted_gap(lambda, std::log(p.beta_A / p.beta_H));
}

// p^L - alpha_lambda = phi(0)
double intercept_gap(const ParamSet& p, double lambda) {
    if (p.no_immigration()) return 0.0;
    return p.alpha_H * weighted_gap(lambda, std::log(p.alpha_A / p.alpha_H));
}

CoefficientPair make_pair(const LambdaWeights& w, double r, double s, PairRole role, std::string method) {
    CoefficientPair c;
    c.b1 = r;
    c.a1 = s;
    c.p = w.alpha_lambda + r;
    c.q = w.beta_lambda + s;
    c.role = role;
    c.method = std::move(method);
    return c;
}

CoefficientPair geometric_pair(const ParamSet& p, double lambda, PairRole role) {
    auto w = weights(p, lambda);
    CoefficientPair c = make_pair(w, intercept_gap(p, lambda), slope_gap(p, lambda), role,
                                  role == PairRole::Exact ? "exact-geometric-mean" : "lower-geometric-mean");
    // the geometric means themselves, not reconstructed from the gaps
    c.p = p.no_immigration() ? 0.0 : std::pow(p.alpha_A, lambda) * std::pow(p.alpha_H, 1 - lambda);
    c.q = std::pow(p.beta_A, lambda) * std::pow(p.beta_H, 1 - lambda);
    return c;
}

CoefficientPair asymptote_pair(const ParamSet& p, double lambda) {
    auto w = weights(p, lambda);
    double L = std::log(p.beta_A / p.beta_H);
    double r = lambda * p.alpha_A * std::expm1((lambda - 1) * L) +
               (1 - lambda) * p.alpha_H * std::expm1(lambda * L);
    return make_pair(w, r, slope_gap(p, lambda), PairRole::Asymptote, "asymptote");
}

CoefficientPair secant_pair(const ParamSet& p, double lambda, long long k, PairRole role) {
    auto w = weights(p, lambda);
    double fk = phi(p, lambda, double(k)), fk1 = phi(p, lambda, double(k + 1));
    double s = fk1 - fk;
    double r = fk - s * double(k);
    return make_pair(w, r, s, role, "secant(" + std::to_string(k) + "," + std::to_string(k + 1) + ")");
}

// line through (k, phi(k)) with intercept r
CoefficientPair pivot_pair(const ParamSet& p, double lambda, long long k, double r, const std::string& tag) {
    auto w = weights(p, lambda);
    double fk = phi(p, lambda, double(k));
    double s = (fk - r) / double(k);
    return make_pair(w, r, s, PairRole::Upper, "pivot(" + std::to_string(k) + "," + tag + ")");
}

CoefficientPair horizontal_pair(const ParamSet& p, double lambda) {
    auto w = weights(p, lambda);
    auto m = phi_lattice_max(p, lambda);
    return make_pair(w, m.value, 0.0, PairRole::Horizontal, "horizontal(z=" + std::to_string(m.z) + ")");
}

CoefficientPair trivial_pair(const ParamSet& p, double lambda) {
    return make_pair(weights(p, lambda), 0.0, 0.0, PairRole::Upper, "trivial");
}

// the crucial lattice point for SP3b/SP3c: floor(x_max) or floor(x_max)+1
long long crucial_k(const ParamSet& p, double lambda) {
    double xm = phi_argmax(p, lambda);
    auto k = static_cast<long long>(std::floor(xm));
    if (phi(p, lambda, double(k)) > phi(p, lambda, double(k + 1))) return k;
    return k + 1;
}

// family of upper pairs around the crucial point; first entry is the proposed one
std::vector<CoefficientPair> crucial_family(const ParamSet& p, double lambda) {
    std::vector<CoefficientPair> out;
    long long k = crucial_k(p, lambda);
    auto sec = secant_pair(p, lambda, k, PairRole::Upper);
    if (k == 0) {
        out.push_back(sec);
        return out;
    }
    double fk = phi(p, lambda, double(k));
    double r_hi = sec.b1 <= 0 ? sec.b1 : 0.0;
    if (sec.b1 <= 0)
        out.push_back(sec);
    else
        out.push_back(pivot_pair(p, lambda, k, 0.0, "r=0"));
    for (int i = 0; i < 4; ++i) {
        double r = fk + (r_hi - fk) * double(i) / 4.0;
        out.push_back(pivot_pair(p, lambda, k, r, "grid" + std::to_string(i)));
    }
    return out;
}

void require_role_case(CaseTag tag, PairRole role) {
    bool exact_case = tag == CaseTag::NI || tag == CaseTag::SP1;
    switch (role) {
        case PairRole::Exact:
            if (!exact_case)
                throw Error(ErrorCode::CaseMismatch,
                            std::string("exact pair only exists on NI/SP1, case is ") + to_string(tag));
            break;
        case PairRole::Lower:
        case PairRole::Upper:
            if (exact_case)
                throw Error(ErrorCode::CaseMismatch,
                            std::string("on ") + to_string(tag) + " use the exact pair instead of bounds");
            break;
        case PairRole::Asymptote:
            if (tag == CaseTag::SP4)
                throw Error(ErrorCode::CaseMismatch, "asymptote pair is trivial on SP4");
            break;
        case PairRole::Horizontal:
            if (!(tag == CaseTag::SP3a || tag == CaseTag::SP3b || tag == CaseTag::SP3c || tag == CaseTag::SP2))
                throw Error(ErrorCode::CaseMismatch,
                            std::string("horizontal pair needs an attained lattice maximum, case is ") + to_string(tag));
            break;
    }
}

}  // namespace

const char* to_string(PairRole r) {
    switch (r) {
        case PairRole::Exact: return "exact";
        case PairRole::Lower: return "lower";
        case PairRole::Upper: return "upper";
        case PairRole::Asymptote: return "asymptote";
        case PairRole::Horizontal: return "horizontal";
    }
    return "?";
}

PairRole role_from_string(const std::string& s) {
    for (auto r : {PairRole::Exact, PairRole::Lower, PairRole::Upper, PairRole::Asymptote, PairRole::Horizontal})
        if (s == to_string(r)) return r;
    throw Error(ErrorCode::ParseError, "unknown pair role '" + s + "'");
}

RecursionTrace run_recursion(const CoefficientPair& c, int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
    RecursionTrace t;
    t.a.assign(n + 1, 0.0);
    t.b.assign(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        double e = std::expm1(t.a[k - 1]);
        t.a[k] = c.a1 + c.q * e;
        t.b[k] = c.b1 + c.p * e;
    }
    return t;
}

RecursionTrace run_recursion(double p, double q, const ParamSet& params, double lambda, int n) {
    validate(params);
    validate_lambda(lambda);
    if (p < 0 || q < 0) throw Error(ErrorCode::InvalidArgument, "p and q must be nonnegative");
    auto w = weights(params, lambda);
    CoefficientPair c;
    c.p = p;
    c.q = q;
    c.a1 = q - w.beta_lambda;
    c.b1 = p - w.alpha_lambda;
    return run_recursion(c, n);
}

CoefficientPair select_coeffs(const ParamSet& params, double lambda, PairRole role) {
    CaseTag tag = classify(params, lambda);
    require_role_case(tag, role);
    switch (role) {
        case PairRole::Exact:
        case PairRole::Lower:
            return geometric_pair(params, lambda, role);
        case PairRole::Asymptote:
            return asymptote_pair(params, lambda);
        case PairRole::Horizontal:
            return horizontal_pair(params, lambda);
        case PairRole::Upper:
            break;
    }
    switch (tag) {
        case CaseTag::SP2: {
            auto c = secant_pair(params, lambda, 0, PairRole::Upper);
            c.p = params.alpha_A;
            return c;
        }
        case CaseTag::SP3a: {
            auto c = secant_pair(params, lambda, 0, PairRole::Upper);
            c.p = std::pow(params.alpha_A, lambda) * std::pow(params.alpha_H, 1 - lambda);
            return c;
        }
        case CaseTag::SP3b:
        case CaseTag::SP3c:
            return crucial_family(params, lambda).front();
        default:
            return trivial_pair(params, lambda);
    }
}

std::vector<CoefficientPair> upper_candidates(const ParamSet& params, double lambda) {
    CaseTag tag = classify(params, lambda);
    std::vector<CoefficientPair> out;
    switch (tag) {
        case CaseTag::NI:
        case CaseTag::SP1:
            throw Error(ErrorCode::CaseMismatch, "no upper construction needed on NI/SP1");
        case CaseTag::SP4:
            out.push_back(trivial_pair(params, lambda));
            return out;
        case CaseTag::SP3d:
            out.push_back(trivial_pair(params, lambda));
            out.push_back(asymptote_pair(params, lambda));
            return out;
        case CaseTag::SP2:
        case CaseTag::SP3a:
            out.push_back(select_coeffs(params, lambda, PairRole::Upper));
            break;
        case CaseTag::SP3b:
        case CaseTag::SP3c: {
            out = crucial_family(params, lambda);
            // a rising secant through 0 and 1 dominates too, but its bounds grow with n
            auto s01 = secant_pair(params, lambda, 0, PairRole::Upper);
            if (s01.a1 <= 0) out.push_back(s01);
            break;
        }
    }
    out.push_back(asymptote_pair(params, lambda));
    if (tag != CaseTag::SP2) out.push_back(horizontal_pair(params, lambda));
    return out;
}

bool dominates_on_lattice(const ParamSet& params, double lambda, const CoefficientPair& c, double tol) {
    auto line = [&](double x) { return c.b1 + c.a1 * x; };
    auto g = [&](double x) { return phi(params, lambda, x) - line(x); };
    auto slack = [&](double x) { return tol * (1 + std::abs(phi(params, lambda, x)) + std::abs(line(x))); };
    auto asym = asymptote_pair(params, lambda);
    double xm = phi_argmax(params, lambda);
    long long start = std::isfinite(xm) ? static_cast<long long>(std::ceil(xm)) + 1 : 0;
    long long X = std::max<long long>(start, 64);
    long long checked = -1;
    while (X < (1LL << 24)) {
        for (long long x = checked + 1; x <= X; ++x)
            if (g(double(x)) > slack(double(x))) return false;
        checked = X;
        double xd = double(X);
        // beyond X, phi stays below its asymptote
        if (c.a1 >= asym.a1 && line(xd) >= asym.b1 + asym.a1 * xd - slack(xd)) return true;
        // concavity: once phi - line decreases past the peak it keeps decreasing
        if (std::isfinite(xm) && xd > xm + 1 && g(xd) <= g(xd - 1)) return true;
        X *= 2;
    }
    return false;
}

std::vector<double> pair_log_series(const CoefficientPair& c, int omega0, int n) {
    auto t = run_recursion(c, n);
    std::vector<double> out(n + 1, 0.0);
    double sum_b = 0;
    for (int k = 1; k <= n; ++k) {
        sum_b += t.b[k];
        out[k] = t.a[k] * omega0 + sum_b;
    }
    return out;
}

double pair_log_bound(const CoefficientPair& c, int omega0, int n) { return pair_log_series(c, omega0, n).back(); }

double exact_log_hellinger(const ParamSet& params, double lambda, int omega0, int n) {
    if (omega0 < 1) throw Error(ErrorCode::InvalidArgument, "omega0 must be a positive integer");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
    auto c = select_coeffs(params, lambda, PairRole::Exact);
    auto t = run_recursion(c, n);
    double sum_a = 0;
    for (int k = 1; k <= n; ++k) sum_a += t.a[k];
    double ratio = params.no_immigration() ? 0.0 : params.alpha_A / params.beta_A;
    return t.a[n] * omega0 + ratio * sum_a;
}

namespace {

// steps of a_k and the trace itself; da_k = q e^{a_{k-2}} expm1(da_{k-1})
std::vector<double> a_increments(const CoefficientPair& c, const RecursionTrace& t, int n) {
    std::vector<double> da(n + 1, 0.0);
    if (n >= 1) da[1] = c.a1;
    for (int k = 2; k <= n; ++k) da[k] = c.q * std::exp(t.a[k - 2]) * std::expm1(da[k - 1]);
    return da;
}

}  // namespace

std::vector<double> pair_log_steps(const CoefficientPair& c, int omega0, int n) {
    auto t = run_recursion(c, n);
    auto da = a_increments(c, t, n);
    std::vector<double> out(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) out[k] = da[k] * omega0 + t.b[k];
    return out;
}

std::vector<double> exact_log_hellinger_steps(const ParamSet& params, double lambda, int omega0, int n) {
    if (omega0 < 1) throw Error(ErrorCode::InvalidArgument, "omega0 must be a positive integer");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
    auto c = select_coeffs(params, lambda, PairRole::Exact);
    auto t = run_recursion(c, n);
    auto da = a_increments(c, t, n);
    double ratio = params.no_immigration() ? 0.0 : params.alpha_A / params.beta_A;
    std::vector<double> out(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) out[k] = da[k] * omega0 + ratio * t.a[k];
    return out;
}

double sp3d_delta(const ParamSet& params, double lambda) {
    if (classify(params, lambda) != CaseTag::SP3d)
        throw Error(ErrorCode::CaseMismatch, "the separation constant is only used on SP3d");
    double eps = -std::expm1(phi(params, lambda, 0));
    double best = kNegInf;
    double xs = phi_argmax(params, lambda);
    for (long long x = 0;; ++x) {
        double xd = double(x);
        double ph = phi(params, lambda, xd);
        double v = ph - eps * std::exp(-varphi(params, lambda, xd));
        best = std::max(best, v);
        if (xd > xs && ph < best - 1) break;
        if (x > (1LL << 26)) break;
    }
    return best;
}

LogBoundSeries recursive_log_bound_series(const ParamSet& params, double lambda, int omega0, int n) {
    if (omega0 < 1) throw Error(ErrorCode::InvalidArgument, "omega0 must be a positive integer");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be a positive integer");
    LogBoundSeries s;
    s.tag = classify(params, lambda);
    if (s.tag == CaseTag::NI || s.tag == CaseTag::SP1)
        throw Error(ErrorCode::CaseMismatch,
                    std::string("case ") + to_string(s.tag) + " has an exact value; use exact_log_hellinger");
    s.lower = pair_log_series(select_coeffs(params, lambda, PairRole::Lower), omega0, n);
    s.upper.assign(n + 1, 0.0);
    s.upper_method.assign(n + 1, "trivial");
    for (const auto& c : upper_candidates(params, lambda)) {
        if (!dominates_on_lattice(params, lambda, c)) {
            s.notes.push_back("discarded " + c.method + ": fails lattice domination");
            continue;
        }
        auto v = pair_log_series(c, omega0, n);
        for (int k = 1; k <= n; ++k)
            if (v[k] < s.upper[k]) {
                s.upper[k] = v[k];
                s.upper_method[k] = c.method;
            }
    }
    if (s.tag == CaseTag::SP3d) {
        double ld = sp3d_delta(params, lambda);
        for (int k = 1; k <= n; ++k) {
            double v = (k / 2) * ld;
            if (v < s.upper[k]) {
                s.upper[k] = v;
                s.upper_method[k] = "separation-delta";
            }
        }
    }
    return s;
}

LogBoundReport recursive_log_bounds(const ParamSet& params, double lambda, int omega0, int n) {
    auto s = recursive_log_bound_series(params, lambda, omega0, n);
    LogBoundReport r;
    r.tag = s.tag;
    r.log_lower = s.lower[n];
    r.log_upper = s.upper[n];
    r.method = "recursive: lower=geometric-mean, upper=" + s.upper_method[n];
    r.notes = s.notes;
    return r;
}

LogBoundReport hellinger_report(const ParamSet& params, double lambda, int omega0, int n) {
    CaseTag tag = classify(params, lambda);
    if (tag == CaseTag::NI || tag == CaseTag::SP1 || n == 0) {
        LogBoundReport r;
        r.tag = tag;
        if (n == 0) {
            r.log_exact = 0.0;
            r.method = "empty horizon";
            return r;
        }
        double v = exact_log_hellinger(params, lambda, omega0, n);
        r.log_exact = v;
        r.log_lower = v;
        r.log_upper = v;
        r.method = "recursive exact";
        return r;
    }
    return recursive_log_bounds(params, lambda, omega0, n);
}

}  // namespace gwi
