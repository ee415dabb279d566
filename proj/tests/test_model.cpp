#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gwi/model.hpp"
#include "test_support.hpp"

using namespace gwi;

TEST_CASE("classification of the example tuples") {
    CHECK(classify({4, 2, 0, 0}, 0.5) == CaseTag::NI);
    CHECK(classify({4, 2, 4, 2}, 0.5) == CaseTag::SP1);
    CHECK(classify({0.8, 0.6, 2, 2}, 0.5) == CaseTag::SP2);
    CHECK(classify({1.8, 0.9, 2.8, 0.7}, 0.5) == CaseTag::SP3a);
    CHECK(classify({1.8, 0.9, 2.7, 0.7}, 0.5) == CaseTag::SP3a);
    CHECK(classify({1.8, 0.9, 2.9, 0.7}, 0.5) == CaseTag::SP3b);
    CHECK(classify({1.8, 0.9, 1.1, 3.0}, 0.5) == CaseTag::SP3c);
    CHECK(classify({1.8, 0.9, 1.2, 3.0}, 0.5) == CaseTag::SP3d);
    CHECK(classify({1, 1, 2, 3}, 0.5) == CaseTag::SP4);

    auto d = classify_detail({1.8, 0.9, 1.2, 3.0}, 0.5);
    REQUIRE(d.x_star);
    CHECK(*d.x_star == doctest::Approx(2.0));
}

TEST_CASE("invalid parameter sets are rejected") {
    CHECK_THROWS_AS(validate({0, 1, 1, 1}), Error);
    CHECK_THROWS_AS(validate({1, 1, 0, 0}), Error);
    CHECK_THROWS_AS(validate({1, 1, 2, 2}), Error);
    CHECK_THROWS_AS(validate({1, 2, 0, 1}), Error);
    CHECK_THROWS_AS(validate_lambda(0.0), Error);
    CHECK_THROWS_AS(validate_lambda(1.0), Error);
    try {
        validate({-1, 1, 1, 1});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidParams);
    }
}

TEST_CASE("case names round trip") {
    for (auto c : testing::all_cases()) CHECK(case_from_string(to_string(c)) == c);
}

TEST_CASE("phi examples") {
    CHECK(std::fabs(phi_eval({1.0 / 3, 2.0 / 3, 2, 1}, 0.5, 3).phi) < 1e-15);
    CHECK(std::fabs(phi_eval({4, 2, 4, 1}, 0.5, 0).phi_prime) < 1e-14);
    CHECK(phi_eval({4, 2, 3, 1}, 0.5, 0).phi_prime < 0);
    CHECK(phi_eval({4, 2, 5, 1}, 0.5, 0).phi_prime > 0);
    CHECK(phi_eval({0.8, 0.6, 2, 2}, 0.3, 0).phi == 0.0);
    CHECK_THROWS_AS(phi_eval({0.8, 0.6, 2, 2}, 0.3, -1), Error);
    // NI convention at the origin
    CHECK(varphi({0.5, 0.25, 0, 0}, 0.5, 0) == 0.0);
    CHECK(phi({0.5, 0.25, 0, 0}, 0.5, 0) == 0.0);
}

TEST_CASE("phi matches the naive formula") {
    ParamSet p{1.3, 0.7, 2.2, 0.4};
    for (double lam : {0.1, 0.5, 0.9})
        for (double x : {0.0, 0.5, 3.0, 40.0}) {
            long double fA = p.alpha_A + p.beta_A * (long double)x, fH = p.alpha_H + p.beta_H * (long double)x;
            long double ref = std::pow(fA, (long double)lam) * std::pow(fH, 1.0L - lam) - (lam * fA + (1 - lam) * fH);
            CHECK(phi(p, lam, x) == doctest::Approx((double)ref).epsilon(1e-12));
        }
}

TEST_CASE("concavity gap examples against long double evaluation") {
    auto oracle = [](long double x, long double y, long double z, long double l) {
        return std::pow(x, l) * std::pow(y, 1 - l) - (l * x * std::pow(z, l - 1) + (1 - l) * y * std::pow(z, l));
    };
    CHECK(concavity_gap(3, 3, 1, 0.3) == doctest::Approx(0.0));
    CHECK(concavity_gap(4, 1, 2, 0.5) == doctest::Approx(-0.1213203435596426).epsilon(1e-12));
    CHECK(concavity_gap(4, 1, 2, 0.5) == doctest::Approx((double)oracle(4, 1, 2, 0.5L)).epsilon(1e-12));
    CHECK(concavity_gap(1, 1, 2, 0.5) == doctest::Approx((double)oracle(1, 1, 2, 0.5L)).epsilon(1e-12));
    CHECK(concavity_gap(1, 1, 2, 0.5) < 0);
}

TEST_CASE("weighted gap is accurate near zero") {
    for (double u : {1e-9, -3e-5, 0.05, -0.099, 0.2, 2.0}) {
        long double l = 0.37L;
        long double ref = std::expm1(l * (long double)u) - l * std::expm1((long double)u);
        CHECK(weighted_gap(0.37, u) == doctest::Approx((double)ref).epsilon(1e-10));
    }
}

TEST_CASE("property: phi <= 0 with equality only where f_A = f_H") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 10000; ++i) {
        auto tag = testing::all_cases()[i % 8];
        double lam = testing::uniform(g, 0.05, 0.95);
        ParamSet p = testing::random_params(g, tag, lam);
        double x = testing::uniform(g, 0, 30);
        double v = phi(p, lam, x);
        CHECK(v <= 1e-15);
        if (std::fabs(p.f_A(x) - p.f_H(x)) > 1e-3 * std::max(p.f_A(x), p.f_H(x))) CHECK(v < 0);
    }
}

TEST_CASE("property: concavity and finite-difference derivative") {
    std::mt19937_64 g(12);
    for (int i = 0; i < 2000; ++i) {
        auto tag = testing::all_cases()[i % 8];
        double lam = testing::uniform(g, 0.05, 0.95);
        ParamSet p = testing::random_params(g, tag, lam);
        double x = testing::uniform(g, 0.5, 20);
        auto v = phi_eval(p, lam, x);
        if (tag == CaseTag::NI || tag == CaseTag::SP1) {
            CHECK(std::fabs(v.phi_double_prime) < 1e-12);
        } else {
            CHECK(v.phi_double_prime < 0);
        }
        double h = 1e-5;
        double fd = (phi(p, lam, x + h) - phi(p, lam, x - h)) / (2 * h);
        // rounding in the difference quotient is of order eps * |f| / h
        double rounding = 4e-16 * (p.f_A(x) + p.f_H(x)) / h;
        CHECK(std::fabs(v.phi_prime - fd) <= 1e-6 * std::fabs(v.phi_prime) + rounding);
    }
}

TEST_CASE("property: SP3a/SP3b only switch across the sign of phi'(0)") {
    std::mt19937_64 g(13);
    for (int i = 0; i < 500; ++i) {
        ParamSet p = testing::random_params(g, CaseTag::SP3a, 0.5);
        double prev = phi_eval(p, 0.01, 0).phi_prime;
        CaseTag prev_tag = classify(p, 0.01);
        for (int k = 2; k < 100; ++k) {
            double lam = k / 100.0;
            double d = phi_eval(p, lam, 0).phi_prime;
            CaseTag t = classify(p, lam);
            if (t != prev_tag) CHECK(((d > 0) != (prev > 0) || std::fabs(d) < 1e-12 || std::fabs(prev) < 1e-12));
            prev = d;
            prev_tag = t;
        }
    }
}

TEST_CASE("lattice maximum of phi") {
    auto m = phi_lattice_max({1.8, 0.9, 1.2, 3.0}, 0.5);
    CHECK(m.z == 2);
    CHECK(std::fabs(m.value) < 1e-14);
    auto a = phi_lattice_max({1.8, 0.9, 2.8, 0.7}, 0.5);
    CHECK(a.z == 0);
}
