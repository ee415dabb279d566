#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gwi/diffusion.hpp"
#include "gwi/entropy.hpp"
#include "gwi/recursion.hpp"
#include "test_support.hpp"

using namespace gwi;

TEST_CASE("approximating parameters") {
    SDEParams s{0.5, 2, 1, 1, 1};
    auto p = approx_params(s, 10);
    CHECK(p.beta_A == doctest::Approx(0.8));
    CHECK(p.alpha_A == doctest::Approx(0.4));
    CHECK(classify(p, 0.5) == CaseTag::SP1);
    CHECK(classify(approx_params({0, 2, 1, 1, 1}, 10), 0.5) == CaseTag::NI);
    CHECK(approx_params({0, 2, 1, 1, 1}, 10).alpha_A == 0.0);
}

TEST_CASE("inadmissible m reports the minimal admissible value") {
    SDEParams s{0.5, 2, 1, 1, 1};
    CHECK(minimal_admissible_m(s) == 3);
    try {
        approx_params(s, 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InadmissibleM);
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    SDEParams t{0.5, 2.5, 1, 1, 1};
    CHECK(minimal_admissible_m(t) == 3);
    CHECK(approx_params(t, 3).beta_A > 0);
    CHECK_THROWS_AS(validate(SDEParams{0.5, 1, 1, 1, 1}), Error);
}

TEST_CASE("horizon") {
    SDEParams s{0, 0, 1, 1, 1};
    CHECK(diffusion_horizon(s, 0.3, 10) == 3);
    CHECK(diffusion_horizon(s, 0.7, 100) == 70);
    CHECK(diffusion_horizon({0, 0, 1, 0.1, 1}, 1.0, 300) == 3);
    auto z = prelimit_log_bounds(s, 0.5, 0.001, 100, 100);
    CHECK(z.log_lower == 0.0);
    CHECK(z.log_upper == 0.0);
}

TEST_CASE("prelimit bounds bracket the exact approximating value") {
    SDEParams s{0, 0, 1, 1, 1};
    auto b = prelimit_log_bounds(s, 0.5, 1, 100, 100);
    double v = exact_log_hellinger(approx_params(s, 100), 0.5, 100, 100);
    CHECK(b.log_lower <= v);
    CHECK(v <= b.log_upper);

    SDEParams e{0.7, 2, 1, 1.3, 2};
    auto c = prelimit_log_bounds(e, 0.3, 0.5, 50, 100);
    double w = exact_log_hellinger(approx_params(e, 50), 0.3, 100, diffusion_horizon(e, 0.5, 50));
    CHECK(c.log_lower <= w);
    CHECK(w <= c.log_upper);
}

TEST_CASE("limit bounds") {
    SDEParams s{0, 0, 1, 1, 1};
    auto z = limit_log_bounds(s, 0.5, 0);
    CHECK(z.log_lower == 0.0);
    CHECK(z.log_upper == 0.0);
    // on eta = 0 the bounds scale linearly in the initial value
    SDEParams s2{0, 0, 1, 1, 2};
    auto a = limit_log_bounds(s, 0.5, 1.3), b = limit_log_bounds(s2, 0.5, 1.3);
    CHECK(b.log_lower == doctest::Approx(2 * a.log_lower));
    CHECK(b.log_upper == doctest::Approx(2 * a.log_upper));
}

TEST_CASE("prelimit bounds approach the limit") {
    SDEParams s{0, 0, 1, 1, 1};
    auto lim = limit_log_bounds(s, 0.5, 1);
    double prev_gap = INFINITY;
    for (long long m : {100LL, 1000LL, 10000LL}) {
        auto pre = prelimit_log_bounds(s, 0.5, 1, m, m);
        double gap = std::max(std::fabs(pre.log_lower - lim.log_lower), std::fabs(pre.log_upper - lim.log_upper));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-2);
}

TEST_CASE("limit entropy") {
    CHECK(limit_entropy({0, 0, 1, 1, 1}, 2) == doctest::Approx(1.0));
    CHECK(limit_entropy({0, 0, 1, 1, 1}, 0) == 0.0);
    CHECK(limit_entropy({0.5, 2, 1, 1, 1}, 0) == 0.0);
    SDEParams s{0.5, 2, 1, 1, 1};
    long long m = 10000;
    double num = exact_entropy(approx_params(s, m), int(m), int(diffusion_horizon(s, 1, m)));
    CHECK(limit_entropy(s, 1) == doctest::Approx(num).epsilon(1e-2));
}

TEST_CASE("property: invariants on random SDE parameters") {
    std::mt19937_64 g(61);
    for (int i = 0; i < 300; ++i) {
        SDEParams s{i % 3 == 0 ? 0.0 : testing::uniform(g, 0.1, 3), testing::uniform(g, 0, 3), testing::uniform(g, 0, 3),
                    testing::uniform(g, 0.3, 2), testing::uniform(g, 0.1, 5)};
        if (i % 5 == 0) s.kappa_A = 0;
        if (std::fabs(s.kappa_A - s.kappa_H) < 1e-3) continue;
        double lam = testing::uniform(g, 0.05, 0.95);
        auto ls = limit_scalars(s, lam);
        CHECK(ls.Lambda_lambda > ls.kappa_lambda);
        CHECK(ls.kappa_lambda > 0);
        double prev_ent = 0;
        for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
            auto b = limit_log_bounds(s, lam, t);
            // the two bounds can agree to the last bit when eta = 0 and t is large
            CHECK(b.log_lower <= b.log_upper + 4e-16 * std::fabs(b.log_upper));
            CHECK(b.log_upper <= 0);
            auto c = limit_corrections(s, lam, t);
            CHECK(c.L1 > 0);
            CHECK(c.L2 > 0);
            CHECK(c.U1 >= -1e-15);
            CHECK(c.U2 >= -1e-15);
            double e = limit_entropy(s, t);
            CHECK(e >= prev_ent);
            prev_ent = e;
        }
    }
}

TEST_CASE("property: scaling limits at large m") {
    std::mt19937_64 g(62);
    for (int i = 0; i < 30; ++i) {
        SDEParams s{testing::uniform(g, 0, 2), testing::uniform(g, 0, 3), testing::uniform(g, 0, 3),
                    testing::uniform(g, 0.5, 2), 1};
        if (std::fabs(s.kappa_A - s.kappa_H) < 0.1) continue;
        for (const auto& c : scaling_checks(s, testing::uniform(g, 0.1, 0.9), 100000, 1.0))
            CHECK_MESSAGE(std::fabs(c.measured - c.target) <= 1e-3 * std::fabs(c.target), c.name);
    }
}
