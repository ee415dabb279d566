// Acceptance runner: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gwi/closed_form.hpp"
#include "gwi/decision.hpp"
#include "gwi/diffusion.hpp"
#include "gwi/entropy.hpp"
#include "gwi/oracle.hpp"
#include "gwi/recursion.hpp"
#include "properties.hpp"
#include "test_support.hpp"

using namespace gwi;
using gwi::testing::SuiteResult;
using gwi::testing::uniform;

namespace {

bool exact_case(CaseTag t) { return t == CaseTag::NI || t == CaseTag::SP1; }
bool closed_upper_case(CaseTag t) { return t != CaseTag::SP3d && t != CaseTag::SP4; }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

SuiteResult criterion1() {
    SuiteResult r;
    struct Row {
        ParamSet p;
        double ap, aq, up, uq;
    };
    const Row rows[] = {{{0.8, 0.6, 2, 2}, 2.021, 0.693, 2.0, 0.698},
                        {{0.8, 0.6, 2, 1.9}, 1.963, 0.693, 1.949, 0.696},
                        {{0.8, 0.6, 2, 1.1}, 1.501, 0.693, 1.483, 0.699},
                        {{1, 1.5, 2, 1.8}, 1.960, 1.225, 1.897, 1.249}};
    for (const auto& row : rows) {
        auto a = select_coeffs(row.p, 0.5, PairRole::Asymptote);
        auto u = select_coeffs(row.p, 0.5, PairRole::Upper);
        std::string id = fmt("(%g,%g,%g,", row.p.beta_A, row.p.beta_H, row.p.alpha_A) + fmt("%g)", row.p.alpha_H);
        r.expect(std::fabs(a.p - row.ap) <= 5e-4 && std::fabs(a.q - row.aq) <= 5e-4,
                 id + " asymptote " + fmt("(%.5f, %.5f)", a.p, a.q));
        r.expect(std::fabs(u.p - row.up) <= 5e-4 && std::fabs(u.q - row.uq) <= 5e-4,
                 id + " upper " + fmt("(%.5f, %.5f)", u.p, u.q));
    }
    return r;
}

SuiteResult criterion2() {
    SuiteResult r;
    double d3 = phi_eval({4, 2, 3, 1}, 0.5, 0).phi_prime;
    double d4 = phi_eval({4, 2, 4, 1}, 0.5, 0).phi_prime;
    double d5 = phi_eval({4, 2, 5, 1}, 0.5, 0).phi_prime;
    r.expect(d3 < 0, fmt("phi'(0) for alpha_A=3: %g", d3));
    r.expect(std::fabs(d4) < 1e-12, fmt("phi'(0) for alpha_A=4: %g", d4));
    r.expect(d5 > 0, fmt("phi'(0) for alpha_A=5: %g", d5));
    r.expect(classify({1.8, 0.9, 2.8, 0.7}, 0.5) == CaseTag::SP3a, "(1.8,0.9,2.8,0.7) -> SP3a");
    r.expect(classify({1.8, 0.9, 2.9, 0.7}, 0.5) == CaseTag::SP3b, "(1.8,0.9,2.9,0.7) -> SP3b");
    r.expect(classify({1.8, 0.9, 1.1, 3.0}, 0.5) == CaseTag::SP3c, "(1.8,0.9,1.1,3.0) -> SP3c");
    r.expect(classify({1.8, 0.9, 1.2, 3.0}, 0.5) == CaseTag::SP3d, "(1.8,0.9,1.2,3.0) -> SP3d");
    auto rtilde = [](double bA) {
        ParamSet p{bA, 0.9, 2.0, 1.0};
        return select_coeffs(p, 0.5, PairRole::Asymptote).p - weights(p, 0.5).alpha_lambda;
    };
    r.expect(rtilde(3.7) > 1e-6, fmt("r~(3.7) = %g", rtilde(3.7)));
    r.expect(std::fabs(rtilde(3.6)) <= 1e-6, fmt("r~(3.6) = %g", rtilde(3.6)));
    r.expect(rtilde(3.5) < -1e-6, fmt("r~(3.5) = %g", rtilde(3.5)));
    return r;
}

SuiteResult criterion3() {
    SuiteResult r;
    std::mt19937_64 g(1003);
    const double lambdas[] = {0.1, 0.5, 0.9};
    for (int i = 0; i < 100; ++i) {
        CaseTag want = gwi::testing::all_cases()[i % 8];
        ParamSet p = gwi::testing::random_params(g, want, lambdas[i % 3]);
        for (double lam : lambdas) {
            CaseTag tag = classify(p, lam);
            for (int w : {1, 3}) {
                auto s = exact_case(tag) ? LogBoundSeries{} : recursive_log_bound_series(p, lam, w, 4);
                for (int n = 1; n <= 4; ++n) {
                    auto e = enum_log_hellinger(p, lam, w, n);
                    double lo, up;
                    if (exact_case(tag)) {
                        lo = up = exact_log_hellinger(p, lam, w, n);
                    } else {
                        lo = s.lower[n];
                        up = s.upper[n];
                    }
                    std::ostringstream id;
                    id << to_string(tag) << " (" << p.beta_A << "," << p.beta_H << "," << p.alpha_A << ","
                       << p.alpha_H << ") lambda=" << lam << " w=" << w << " n=" << n;
                    double slack = 1e-12;
                    r.expect(std::exp(lo) <= (e.value + e.error_bound) * (1 + slack),
                             id.str() + " lower vs enum");
                    r.expect(e.value <= std::exp(up) * (1 + slack), id.str() + " enum vs upper");
                    double cl = closed_form_log_lower(p, lam, w, n);
                    r.expect(cl <= lo + slack * std::fabs(lo), id.str() + " closed lower");
                    if (closed_upper_case(tag)) {
                        double cg = closed_form_log_upper(p, lam, w, n);
                        r.expect(up <= cg + slack * std::fabs(cg), id.str() + " closed upper");
                    }
                }
            }
        }
    }
    return r;
}

// Strict decrease is certified through the increment functions, which stay resolvable where
// the values themselves have settled to the last bit (NI converges like d^n). The values are
// also required to be non-increasing up to rounding of the final subtraction.
SuiteResult criterion4() {
    SuiteResult r;
    std::mt19937_64 g(1004);
    const int N = 50;
    auto settled_ok = [](double now, double before) { return now <= before + 4e-16 * (1 + std::fabs(before)); };
    for (int i = 0; i < 160; ++i) {
        CaseTag want = gwi::testing::all_cases()[i % 8];
        double lam = uniform(g, 0.1, 0.9);
        ParamSet p = gwi::testing::random_params(g, want, lam);
        int w = 1 + i % 3;
        std::ostringstream id;
        id << to_string(want) << " (" << p.beta_A << "," << p.beta_H << "," << p.alpha_A << "," << p.alpha_H
           << ") lambda=" << lam << " w=" << w;
        auto check = [&](const std::string& what, const std::vector<double>& value, const std::vector<double>& step) {
            for (int n = 1; n <= N; ++n) {
                r.expect(step[n] < 0, id.str() + " " + what + fmt(" step %g at n=%g", step[n], n));
                if (n > 1) r.expect(settled_ok(value[n], value[n - 1]), id.str() + " " + what + fmt(" value at n=%g", n));
            }
        };
        if (exact_case(want)) {
            std::vector<double> v(N + 1, 0.0);
            for (int n = 1; n <= N; ++n) v[n] = exact_log_hellinger(p, lam, w, n);
            check("exact", v, exact_log_hellinger_steps(p, lam, w, N));
        } else {
            auto lo = select_coeffs(p, lam, PairRole::Lower);
            check("recursive lower", pair_log_series(lo, w, N), pair_log_steps(lo, w, N));
        }
        if (want == CaseTag::SP2 || want == CaseTag::SP3a || want == CaseTag::SP3b || want == CaseTag::SP3c) {
            auto prop = select_coeffs(p, lam, PairRole::Upper);
            check("proposed upper pair", pair_log_series(prop, w, N), pair_log_steps(prop, w, N));
            // the reported upper bound is a pointwise minimum; its step is bounded by the step of
            // the candidate attaining the minimum at the previous horizon
            auto s = recursive_log_bound_series(p, lam, w, N);
            std::vector<std::vector<double>> vals, steps;
            for (const auto& c : upper_candidates(p, lam))
                if (dominates_on_lattice(p, lam, c)) {
                    vals.push_back(pair_log_series(c, w, N));
                    steps.push_back(pair_log_steps(c, w, N));
                }
            std::vector<double> ustep(N + 1, 0.0);
            for (int n = 1; n <= N; ++n) {
                size_t best = 0;
                for (size_t j = 1; j < vals.size(); ++j)
                    if (vals[j][n - 1] < vals[best][n - 1]) best = j;
                ustep[n] = n == 1 ? s.upper[1] : steps[best][n];
                double m = vals[0][n];
                for (const auto& v : vals) m = std::min(m, v[n]);
                r.expect(std::min(m, 0.0) == s.upper[n], id.str() + fmt(" reported upper minimum at n=%g", n));
            }
            check("recursive upper", s.upper, ustep);
        }
        std::vector<double> cl(N + 1, 0.0), cls(N + 1, 0.0), cg(N + 1, 0.0), cgs(N + 1, 0.0);
        for (int n = 1; n <= N; ++n) {
            cl[n] = closed_form_log_lower(p, lam, w, n);
            cls[n] = closed_form_log_lower_step(p, lam, w, n);
            if (closed_upper_case(want)) {
                cg[n] = closed_form_log_upper(p, lam, w, n);
                cgs[n] = closed_form_log_upper_step(p, lam, w, n);
            }
        }
        check("closed lower", cl, cls);
        if (closed_upper_case(want)) check("closed upper", cg, cgs);
    }
    return r;
}

// Literal check at the stated horizons on the named instances. The deviation of (1/n) log
// from the limit slope is an offset divided by n, so the stated tolerance holds only when the
// instance's offset is small enough; the increments are reported alongside.
SuiteResult criterion5() {
    SuiteResult r;
    const ParamSet sp1{4, 2, 4, 2}, ni{0.5, 0.25, 0, 0};
    const double lam = 0.5;
    {
        auto c = select_coeffs(sp1, lam, PairRole::Exact);
        double target = sp1.alpha_A / sp1.beta_A * solve_fixed_point_a1(c.q, c.a1).x0;
        double v = exact_log_hellinger(sp1, lam, 1, 200) / 200;
        r.expect(std::fabs(v - target) < 1e-3, fmt("SP1 (4,2,4,2) (1/n)log V_n at n=200: %.6g vs %.6g", v, target));
        double step = exact_log_hellinger_steps(sp1, lam, 1, 200)[200];
        std::printf("  info: SP1 increment at n=200 deviates by %.3g\n", step - target);
    }
    {
        double v = exact_log_hellinger(ni, lam, 1, 200) / 200;
        r.expect(std::fabs(v) < 1e-3, fmt("NI (0.5,0.25,0,0) (1/n)log V_n at n=200: %.3g", v));
    }
    for (const auto& p : {sp1, ni}) {
        std::string id = fmt("(%g,%g,%g,", p.beta_A, p.beta_H, p.alpha_A) + fmt("%g)", p.alpha_H);
        double tl = closed_form_slope_limit(closed_form_lower_pair(p, lam));
        double tu = closed_form_slope_limit(closed_form_upper_pair(p, lam));
        double vl = closed_form_log_lower(p, lam, 1, 500) / 500;
        double vu = closed_form_log_upper(p, lam, 1, 500) / 500;
        r.expect(std::fabs(vl - tl) < 1e-3, id + fmt(" (1/n)log C^L_n at n=500: %.6g vs %.6g", vl, tl));
        r.expect(std::fabs(vu - tu) < 1e-3, id + fmt(" (1/n)log C^G_n at n=500: %.6g vs %.6g", vu, tu));
        std::printf("  info: %s closed-form increments at n=500 deviate by %.3g / %.3g\n", id.c_str(),
                    closed_form_log_lower_step(p, lam, 1, 500) - tl, closed_form_log_upper_step(p, lam, 1, 500) - tu);
    }
    return r;
}

SuiteResult criterion6() {
    SuiteResult r;
    const SDEParams sdes[] = {{0, 0, 1, 1, 1}, {0.5, 2, 1, 1, 1}, {1.5, 0.3, 2.2, 0.7, 2}, {0.8, 1.7, 0, 1.4, 0.5}};
    for (const auto& s : sdes) {
        for (double lam : {0.2, 0.5, 0.8}) {
            for (const auto& c : scaling_checks(s, lam, 100000, 1.0)) {
                double rel = std::fabs(c.measured - c.target) / std::fabs(c.target);
                r.expect(rel <= 1e-3, c.name + fmt(" rel err %g (lambda %g)", rel, lam));
            }
        }
    }
    for (const auto& s : sdes) {
        for (double lam : {0.3, 0.5}) {
            auto lim = limit_log_bounds(s, lam, 1.0);
            double prev = INFINITY;
            for (long long m : {100LL, 1000LL, 10000LL}) {
                if (m < minimal_admissible_m(s)) continue;
                long long x0 = std::llround(double(m) * s.x0_tilde);
                auto pre = prelimit_log_bounds(s, lam, 1.0, m, x0);
                double gap =
                    std::max(std::fabs(pre.log_lower - lim.log_lower), std::fabs(pre.log_upper - lim.log_upper));
                r.expect(gap < prev, fmt("gap %g at m=%g not below previous %g", gap, double(m), prev));
                prev = gap;
            }
            r.expect(prev < 1e-2, fmt("final gap %g", prev));
        }
    }
    return r;
}

SuiteResult criterion7() {
    SuiteResult r;
    std::mt19937_64 g(1007);
    for (int i = 0; i < 20; ++i) {
        ParamSet p = gwi::testing::random_params(g, i % 2 ? CaseTag::SP1 : CaseTag::NI, 0.5);
        int w = 1 + i % 3, n = 1 + i % 6;
        double lam = 1 - 1e-6;
        double lim = -std::expm1(exact_log_hellinger(p, lam, w, n)) / (lam * (1 - lam));
        double ex = exact_entropy(p, w, n);
        r.expect(std::fabs(ex - lim) <= 1e-3 * std::fabs(ex), fmt("exact %g vs lambda limit %g", ex, lim));
    }
    for (int i = 0; i < 20; ++i) {
        CaseTag want = gwi::testing::all_cases()[2 + i % 6];
        ParamSet p = gwi::testing::random_params(g, want, 0.5);
        int w = i % 2 ? 1 : 3, n = 1 + i % 4;
        auto rep = entropy_report(p, w, n);
        auto e = enum_relative_entropy(p, w, n);
        std::string id = std::string(to_string(rep.tag)) + fmt(" n=%g enum %g err %g", n, e.value, e.error_bound);
        r.expect(rep.lower && *rep.lower <= (e.value + e.error_bound) * (1 + 1e-12),
                 id + fmt(" lower %g", rep.lower.value_or(NAN)));
        r.expect(rep.upper && e.value <= *rep.upper * (1 + 1e-12), id + fmt(" upper %g", rep.upper.value_or(NAN)));
    }
    ParamSet d{1.0 / 3, 2.0 / 3, 2, 1};
    for (int n = 1; n <= 5; ++n) {
        auto rep = entropy_report(d, 3, n);
        r.expect(rep.degenerate && rep.ystar_derivative && std::fabs(*rep.ystar_derivative) < 1e-12,
                 fmt("degenerate flag at n=%g", n));
    }
    return r;
}

SuiteResult criterion8() {
    SuiteResult r;
    std::mt19937_64 g(1008);
    const double ratios[] = {0.1, 1, 10};
    for (int i = 0; i < 50; ++i) {
        CaseTag want = gwi::testing::all_cases()[i % 8];
        ParamSet p = gwi::testing::random_params(g, want, 0.5, 1.5, 2.0);
        int n = 1 + i % 3, w = 1 + i % 2;
        DecisionConfig cfg{ratios[i % 3], 1, uniform(g, 0.1, 0.9), uniform(g, 0.01, 0.3)};
        auto risk = enum_bayes_risk(p, w, n, cfg);
        auto np = enum_np_type2(p, w, n, cfg.level);
        for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            auto b = bayes_risk_bounds(p, lam, w, n, cfg);
            std::string id = std::string(to_string(classify(p, lam))) + fmt(" lambda=%g n=%g", lam, n);
            r.expect(b.lower <= (risk.risk + risk.error_bound) * (1 + 1e-12),
                     id + fmt(" bayes lower %g > risk %g", b.lower, risk.risk));
            r.expect(risk.risk <= b.upper * (1 + 1e-12), id + fmt(" bayes risk %g > upper %g", risk.risk, b.upper));
            double nb = np_type2_bound(p, lam, w, n, cfg).bound;
            r.expect(np.type2 - np.error_bound <= nb * (1 + 1e-12), id + fmt(" NP %g > bound %g", np.type2, nb));
        }
    }
    return r;
}

SuiteResult criterion9() {
    SuiteResult r;
    for (const auto& s : {gwi::testing::concavity_gap_suite(100000), gwi::testing::sequence_suite(10000),
                          gwi::testing::linearization_suite(1000)}) {
        r.checks += s.checks;
        if (!s.passed() && r.failures == 0) r.first_failure = s.first_failure;
        r.failures += s.failures;
    }
    return r;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<SuiteResult()> run;
    };
    const Criterion all[] = {
        {1, "reference coefficient pairs", criterion1},
        {2, "case atlas", criterion2},
        {3, "oracle sandwich", criterion3},
        {4, "monotonicity in n", criterion4},
        {5, "asymptotic slopes", criterion5},
        {6, "diffusion scaling limits", criterion6},
        {7, "entropy consistency", criterion7},
        {8, "decision bounds", criterion8},
        {9, "property suites", criterion9},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult res;
        std::string crash;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            crash = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = crash.empty() && res.passed();
        failed += !ok;
        std::printf("CRITERION %d %s: %s (%lld checks, %.3fs)", c.id, ok ? "PASS" : "FAIL", c.name, res.checks, secs);
        if (!crash.empty()) std::printf(" exception: %s", crash.c_str());
        if (!res.passed()) std::printf(" %lld failures, first: %s", res.failures, res.first_failure.c_str());
        std::printf("\n");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
