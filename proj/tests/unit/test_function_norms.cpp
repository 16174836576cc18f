#include "../oracles.hpp"
#include "essr/errors.hpp"
#include "essr/function_norms.hpp"
#include "helpers.hpp"

#include <cmath>
#include <random>

using namespace essr;
using testing::indicator;
using testing::q;
using testing::step;

namespace {

StepFunction contrast_at(const Rational& lo, const Rational& width) {
    return StepFunction::indicator(lo, lo + width, QComplex(1 / width)) -
           StepFunction::indicator(lo + width, lo + 2 * width, QComplex(1 / width));
}

}  // namespace

TEST_SUITE("function_norms") {
    TEST_CASE("p-variation examples") {
        auto c = StepFunction::constant(QComplex(q(5, 3)));
        for (double p : {1.0, 2.0, 3.5}) CHECK(p_variation(c, Interval(q(1, 5), q(4, 5)), p) == 0);
        auto f = indicator(q(1, 4), q(1, 2));
        CHECK(p_variation(f, Interval(0, 1), 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        auto stair = step({q(0), q(1, 5), q(2, 5), q(3, 5), q(4, 5), q(1)},
                          {QComplex(0), QComplex(q(1, 4)), QComplex(q(1, 2)), QComplex(q(3, 4)), QComplex(1)});
        CHECK(p_variation(stair, Interval(0, 1), 1.0) == 1.0);
        CHECK(p_variation_power_exact(stair, Interval(0, 1), 1) == 1);
        CHECK_THROWS_AS(p_variation(f, Interval(0, 1), 0.5), DomainError);
    }

    TEST_CASE("p-variation only sees the interior") {
        auto f = indicator(q(1, 4), q(1, 2));
        CHECK(p_variation(f, Interval(q(1, 4), q(1, 2)), 1.0) == 0);
        CHECK(p_variation(f, Interval(q(0), q(1, 2)), 1.0) == 1);
    }

    TEST_CASE("dynamic programme matches the exhaustive oracle") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> val(-9, 9);
        for (int t = 0; t < 60; ++t) {
            const int n = 2 + t % 11;
            std::vector<Rational> b;
            for (int i = 0; i <= n; ++i) b.push_back(q(i, n));
            std::vector<QComplex> v;
            for (int i = 0; i < n; ++i) v.emplace_back(q(val(rng), 4), q(t % 3 == 0 ? val(rng) : 0, 5));
            StepFunction f(b, v);
            auto vals = testing::oracle_values(f);
            for (double p : {1.0, 1.3, 2.0, 4.0}) {
                double want = std::pow(oracle::subsequence_variation(vals, p), 1 / p);
                CHECK(p_variation(f, Interval(0, 1), p) == doctest::Approx(want).epsilon(1e-12));
                CHECK(max_subsequence_variation(vals, p) == doctest::Approx(std::pow(want, p)).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("monotone in p") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> val(-9, 9);
        for (int t = 0; t < 30; ++t) {
            std::vector<Rational> b;
            for (int i = 0; i <= 10; ++i) b.push_back(q(i, 10));
            std::vector<QComplex> v;
            for (int i = 0; i < 10; ++i) v.emplace_back(q(val(rng)));
            StepFunction f(b, v);
            double prev = INFINITY;
            for (double p : {1.0, 1.5, 2.0, 3.0, 6.0}) {
                double cur = p_variation(f, Interval(0, 1), p);
                CHECK(cur <= prev * (1 + 1e-14));
                prev = cur;
            }
        }
    }

    TEST_CASE("atomic Besov cost") {
        auto one = indicator(q(1, 8), q(3, 8));
        CHECK(besov_atomic_upper(one, 0.25).cost == doctest::Approx(std::pow(0.25, 0.75)).epsilon(1e-15));
        CHECK(besov_atomic_upper(StepFunction::constant(QComplex(0)), 0.5).cost == 0);
        CHECK(besov_atomic_upper(StepFunction::constant(QComplex(0)), 0.5).atoms.empty());
        auto d2 = fixtures::d2();
        for (int k = 0; k <= 8; ++k) {
            auto f = pullback(d2, testing::d2_psi(), k);
            CHECK(besov_atomic_cost(f, 0.5) == doctest::Approx(std::sqrt(2.0) * std::pow(2.0, k / 2.0)).epsilon(1e-13));
        }
        auto f = step({q(0), q(1, 3), q(1)}, {QComplex(q(2)), QComplex(q(-1))});
        CHECK(besov_atomic_cost(scale(f, QComplex(q(-3))), 0.4) ==
              doctest::Approx(3 * besov_atomic_cost(f, 0.4)).epsilon(1e-14));
        CHECK(besov_atomic_cost(to_float(f), 0.4) == doctest::Approx(besov_atomic_cost(f, 0.4)).epsilon(1e-14));
    }

    TEST_CASE("dyadic Besov construction") {
        auto c = StepFunction::constant(QComplex(q(3)));
        auto r = besov_dyadic_upper(c, Interval(0, 1), 0.25, 2.0, 8);
        CHECK(r.telescoping_cost == 0);
        CHECK(r.reconstruction_l1_error == 0);

        SampledObservable ramp({0.0, 1.0}, Interpolation::PiecewiseLinear);
        auto rr = besov_dyadic_upper(ramp, Interval(0, 1), 0.25, 2.0, 10);
        CHECK(rr.v_p == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rr.rep.cost <= rr.bound);
        CHECK(rr.reconstruction_l1_error <= std::pow(2.0, -12) + 1e-15);

        auto third = indicator(q(0), q(1, 3));
        auto rt = besov_dyadic_upper(third, Interval(0, 1), 0.5, 1.5, 12);
        CHECK(std::isfinite(rt.rep.cost));
        CHECK(rt.rep.cost <= rt.bound);
        CHECK(rt.reconstruction_l1_error <= std::pow(2.0, -12));

        CHECK_THROWS_AS(besov_dyadic_upper(c, Interval(0, 1), 0.5, 2.0, 4), DomainError);
        CHECK_THROWS_AS(besov_dyadic_upper(indicator(q(0), q(1, 2)), Interval(q(1, 4), q(1)), 0.25, 2.0, 4),
                        ValidationError);
    }

    TEST_CASE("bounded variation norm") {
        CHECK(bv_norm(indicator(q(1, 4), q(1, 2))) == 2.25);
        CHECK(bv_norm(StepFunction::constant(QComplex(q(-7, 2)))) == 3.5);
        CHECK(bv_norm(contrast_at(q(1, 4), q(1, 8))) == 34);
        CHECK(bv_norm(contrast_at(q(0), q(1, 8))) == 26);
    }

    TEST_CASE("homogeneity probe") {
        const std::vector<double> scales{1.0 / 256, 1.0 / 1024, 1.0 / 4096, 1.0 / 16384, 1.0 / 65536};
        auto sup = homogeneity_probe("sup", [](const StepFunction& f) { return lp_norm(f, INFINITY); },
                                     ProbeFamily::Indicators, scales);
        CHECK(sup.t == doctest::Approx(0.0));
        for (double p : {1.0, 2.0, 4.0}) {
            auto r = homogeneity_probe("lp", [p](const StepFunction& f) { return lp_norm(f, p); }, ProbeFamily::Bump, scales);
            CHECK(r.t == doctest::Approx(-1 / p).epsilon(1e-9));
        }
        auto b = homogeneity_probe("besov", [](const StepFunction& f) { return besov_atomic_cost(f, 0.5); },
                                   ProbeFamily::Indicators, scales);
        CHECK(b.t == doctest::Approx(-0.5).epsilon(1e-9));
        CHECK(b.fit_residual < 1e-12);
        CHECK_THROWS_AS(homogeneity_probe("sup", [](const StepFunction& f) { return lp_norm(f, INFINITY); },
                                          ProbeFamily::Indicators, {0.01, 0.005, 0.002, 0.001}),
                        ValidationError);
        CHECK_THROWS_AS(homogeneity_probe("zero", [](const StepFunction&) { return 0.0; }, ProbeFamily::Indicators,
                                          scales),
                        NumericError);
    }
}
