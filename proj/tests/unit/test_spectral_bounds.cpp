#include "essr/errors.hpp"
#include "essr/spectral_bounds.hpp"
#include "essr/transfer_operator.hpp"
#include "helpers.hpp"

#include <cmath>

using namespace essr;
using testing::q;

namespace {

const HypothesisCheck& check_named(const BoundReport& r, const std::string& name) {
    for (const auto& c : r.hypothesis_checks)
        if (c.name == name) return c;
    FAIL("missing hypothesis check " << name);
    throw std::logic_error("unreachable");
}

PiecewiseMap partial_map() {
    return PiecewiseMap::linear_markov({make_linear_branch(q(0), q(1, 2), q(2), q(0)),
                                        make_linear_branch(q(1, 2), q(3, 4), q(2), q(-1)),
                                        make_linear_branch(q(3, 4), q(1), q(2), q(-3, 2))});
}

}  // namespace

TEST_SUITE("spectral_bounds") {
    TEST_CASE("pressure") {
        auto d2 = fixtures::d2();
        CHECK(pressure(d2, 1.0).exp_pressure == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(pressure(d2, 2.0).exp_pressure == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(pressure(fixtures::l3(), 0.0).exp_pressure == doctest::Approx(3.0).epsilon(1e-15));
        for (const auto& m : {fixtures::d2(), fixtures::l3()})
            for (double beta : {0.0, 0.5, 1.0, 1.5})
                CHECK(pressure(m, beta, PressureMethod::WeightedMatrix).exp_pressure ==
                      doctest::Approx(pressure(m, beta, PressureMethod::ThetaLimit, 10).exp_pressure).epsilon(1e-6));
        CHECK(pressure(fixtures::w2(), 1.0).method == PressureMethod::ThetaLimit);
        CHECK_THROWS_AS(pressure(fixtures::w2(), 1.0, PressureMethod::WeightedMatrix), ValidationError);
    }

    TEST_CASE("main bound") {
        auto d2 = fixtures::d2();
        CHECK(bound_main(d2, 0.5).lower_bound == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
        auto near = bound_main(d2, 0.999);
        CHECK(near.lower_bound == doctest::Approx(0.5).epsilon(1e-3));
        CHECK(near.ok);
        auto l3 = fixtures::l3();
        double rho = spectral_radius(weighted_transfer_matrix(l3, 0.5).entries);
        CHECK(bound_main(l3, 0.5).lower_bound == doctest::Approx(1 / rho).epsilon(1e-6));
        auto rough = bound_main(d2.with_smoothness(0.3), 0.5);
        CHECK_FALSE(rough.ok);
        CHECK_FALSE(check_named(rough, "s_below_smoothness").ok);
        CHECK_THROWS_AS(bound_main(d2, 1.0), DomainError);
    }

    TEST_CASE("branch-count bound and the Collet-Isola expression") {
        auto d2 = fixtures::d2();
        auto b = bound_bb_new(d2);
        CHECK(b.lower_bound == 0.5);
        CHECK(check_named(b, "piecewise_linear").ok);
        auto r2 = bound_bb_new(d2, 2.0);
        CHECK(*r2.collet_isola_upper == 0.25);
        CHECK(check_named(r2, "collet_isola_below_inverse_branch_count").ok);
        auto r05 = bound_bb_new(d2, 0.5);
        CHECK(*r05.collet_isola_upper == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
        CHECK_FALSE(check_named(r05, "collet_isola_below_inverse_branch_count").ok);
        CHECK_FALSE(r05.ok);
        CHECK(*r2.literal_pressure == doctest::Approx(std::log(0.25)).epsilon(1e-15));
        auto note = bound_bb_new(d2, std::nullopt, std::string("norm is translation invariant"));
        CHECK(*note.norm_assertion == "norm is translation invariant");
        CHECK_THROWS_AS(bound_bb_new(partial_map(), 1.0), ValidationError);
    }

    TEST_CASE("case classification") {
        auto d2 = fixtures::d2();
        auto bv = classify_norm(d2, "bv", [](const StepFunction& f) { return bv_norm(f); });
        CHECK(bv.norm_case == NormCase::I);
        CHECK(bv.lower_bound == 0.5);
        auto bs = classify_norm(d2, "besov", [](const StepFunction& f) { return besov_atomic_cost(f, 0.5); });
        CHECK(bs.norm_case == NormCase::II);
        CHECK(*bs.s == doctest::Approx(0.5).epsilon(0.02));
        CHECK(bs.lower_bound == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-3));
        CHECK_THROWS_WITH_AS(classify_norm(d2, "l1", [](const StepFunction& f) { return lp_norm(f, 1.0); }),
                             doctest::Contains("-1"), ValidationError);
        CHECK_THROWS_AS(classify_norm(partial_map(), "bv", [](const StepFunction& f) { return bv_norm(f); }),
                        ValidationError);
    }

    TEST_CASE("contrast observables") {
        auto a = contrast(Interval(q(0), q(1, 8)), Interval(q(1, 8), q(1, 4)));
        CHECK(integrate(a).is_zero());
        CHECK(exact_l1_norm(a) == 2);
        auto rows = contrast_decay(fixtures::d2(), 1, 4,
                                   {{"bv", [](const StepFunction& f) { return bv_norm(f); }},
                                    {"v1", [](const StepFunction& f) { return p_variation(f, Interval(0, 1), 1.0); }}});
        REQUIRE(rows.size() == 4);
        for (const auto& r : rows) {
            CHECK(r.integrals_zero);
            CHECK(r.l1_norms_two);
            CHECK(r.contrasts == (std::size_t{1} << (r.k + 1)));
            CHECK(r.max_l1_of_Lk <= 2.0);
            CHECK(r.min_norm.at("v1") == doctest::Approx(3 * std::pow(2.0, r.k + 2)).epsilon(1e-14));
        }
    }

    TEST_CASE("contrast variation away from the boundary") {
        for (int k = 1; k <= 5; ++k) {
            Rational w = q(1, 1L << (k + 2));
            Rational lo = q(1, 2);
            auto a = contrast(Interval(lo, lo + w), Interval(lo + w, lo + 2 * w));
            CHECK(p_variation(a, Interval(0, 1), 1.0) == doctest::Approx(4 * std::pow(2.0, k + 2)).epsilon(1e-14));
        }
    }
}
