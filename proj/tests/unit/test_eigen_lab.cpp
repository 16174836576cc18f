#include "essr/eigen_lab.hpp"
#include "essr/errors.hpp"
#include "helpers.hpp"

#include <algorithm>
#include <cmath>

using namespace essr;
using testing::q;

namespace {

KernelObservable linear_kernel(const PiecewiseMap& m) {
    LinearContrast c;
    c.K = Interval(0, 1);
    return build_kernel(m, c);
}

}  // namespace

TEST_SUITE("eigen_lab") {
    TEST_CASE("linear contrast kernels") {
        auto d = linear_kernel(fixtures::d2());
        CHECK(same_function(d.psi, testing::d2_psi()));
        CHECK(d.residual_exactly_zero);
        auto l = linear_kernel(fixtures::l3());
        CHECK(same_function(l.psi, testing::l3_psi()));
        CHECK(l.residual_exactly_zero);
        LinearContrast bad;
        bad.K = Interval(0, 1);
        bad.branch2 = 0;
        CHECK_THROWS_AS(build_kernel(fixtures::d2(), bad), ValidationError);
        WeightCancellation wc{0.0, 1.0, SampledObservable({1.0, 1.0}, Interpolation::PiecewiseConstant), 16, 0, 1};
        CHECK_THROWS_AS(build_kernel(fixtures::d2(), wc), UnsupportedVariant);
    }

    TEST_CASE("weight cancellation on W2") {
        WeightCancellation wc{0.0, 1.0, SampledObservable({1.0, 1.0}, Interpolation::PiecewiseConstant), 16, 0, 1};
        auto k = build_kernel(fixtures::w2(), wc, 1 << 12);
        CHECK_FALSE(k.exact);
        CHECK(k.residual <= 1e-6);
        CHECK(k.pointwise_residual.has_value());
        CHECK(std::abs(integrate(k.psi_float)) < 1e-12);
    }

    TEST_CASE("truncated h series") {
        auto d2 = fixtures::d2();
        auto psi = testing::d2_psi();
        auto z0 = h_series(d2, psi, QComplex(0), 1, 3);
        CHECK(same_function(z0.sum, psi));
        auto s = h_series(d2, psi, QComplex(q(2, 5)), 1, 2);
        CHECK(s.sum.pieces() == 8);
        std::vector<QComplex> vals;
        for (const auto& v : s.sum.values())
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        CHECK(vals.size() == 8);
        for (const auto& v : vals) {
            Rational a = abs(v.re);
            bool ok = a == q(156, 100) || a == q(124, 100) || a == q(76, 100) || a == q(44, 100);
            CHECK(ok);
        }
        for (int N = 1; N <= 6; ++N) {
            QComplex z(q(3, 10), q(1, 5));
            auto hn = h_series(d2, psi, z, 1, N);
            CHECK(lp_norm(hn.sum - hn.sum_previous, INFINITY) == doctest::Approx(std::pow(magnitude(z), N)).epsilon(1e-14));
        }
        CHECK_THROWS_AS(h_series(d2, psi, QComplex(1), 1, 2), DomainError);
        CHECK_THROWS_AS(h_series(d2, psi, QComplex(q(1, 2)), 0, 2), DomainError);
        CHECK_THROWS_AS(h_series(d2, psi, QComplex(q(1, 2)), 5, 5), ResourceError);
    }

    TEST_CASE("eigen residual") {
        auto d2 = fixtures::d2();
        auto psi = testing::d2_psi();
        auto r = eigen_residual(d2, psi, h_series(d2, psi, QComplex(q(2, 5)), 1, 5));
        CHECK(r.exact_shift_ok);
        CHECK(r.residual_l1 == doctest::Approx(std::pow(0.4, 6)).epsilon(1e-15));
        CHECK(r.residual_l1 == r.predicted);
        auto r0 = eigen_residual(d2, psi, h_series(d2, psi, QComplex(0), 1, 3));
        CHECK(r0.residual_l1 == 0);
        auto l3 = fixtures::l3();
        auto rl = eigen_residual(l3, testing::l3_psi(), h_series(l3, testing::l3_psi(), QComplex(q(3, 10)), 1, 4));
        CHECK(rl.exact_shift_ok);
        CHECK(rl.residual_l1 == doctest::Approx(rl.predicted).epsilon(1e-15));
    }

    TEST_CASE("cohomological residual") {
        auto d2 = fixtures::d2();
        auto psi = testing::d2_psi();
        auto s6 = h_series(d2, psi, QComplex(q(2, 5)), 1, 6);
        CHECK(cohomology_residual(d2, psi, s6) == doctest::Approx(std::pow(0.4, 6)).epsilon(1e-14));
        auto s0 = h_series(d2, psi, QComplex(q(2, 5)), 1, 0);
        CHECK(cohomology_residual(d2, psi, s0) == 1.0);
        auto zero = StepFunction::constant(QComplex(0));
        CHECK(cohomology_residual(d2, zero, h_series(d2, zero, QComplex(q(2, 5)), 1, 3)) == 0);
        CHECK_THROWS_AS(cohomology_residual(d2, psi, h_series(d2, psi, QComplex(0), 1, 2)), DomainError);
    }

    TEST_CASE("orthogonality") {
        auto g = orthogonality_gram(fixtures::d2(), testing::d2_psi(), 4);
        REQUIRE(g.entries.size() == 5);
        CHECK(g.off_diagonal_zero);
        CHECK(g.entries[3][3] == QComplex(1));
        auto l = orthogonality_gram(fixtures::l3(), testing::l3_psi(), 3);
        CHECK(l.diagonal_constant);
        CHECK(l.entries[2][2] == QComplex(6));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(l.entries[i][j] == l.entries[j][i]);
    }

    TEST_CASE("affine IFS") {
        std::vector<QComplex> v{QComplex(1), QComplex(-1)};
        auto a = cantor_ifs(v, QComplex(q(1, 2)), 3);
        CHECK(a.separation_ok);
        CHECK(a.fixed_points[0] == QComplex(q(8, 7)));
        CHECK(a.fixed_points[1] == QComplex(q(-8, 7)));
        CHECK_FALSE(cantor_ifs(v, QComplex(q(1, 2)), 1).separation_ok);
        CHECK_THROWS_AS(cantor_ifs(std::vector<QComplex>{QComplex(1)}, QComplex(q(1, 2)), 1), ValidationError);
    }

    TEST_CASE("backward limit") {
        auto d2 = fixtures::d2();
        auto psi = testing::d2_psi();
        QComplex z(q(2, 5));
        auto ifs = cantor_ifs(psi, z, 2);
        auto k0 = backward_limit(d2, ifs, psi, q(3, 7), 0);
        CHECK(k0 == psi(q(3, 7)) + ifs.zn * ifs.q0);
        auto at0 = backward_limit(d2, ifs, psi, q(0), 40);
        CHECK(to_double(at0.re) == doctest::Approx(1 / 0.84).epsilon(1e-14));
        for (int K = 0; K <= 6; ++K) {
            auto diff = backward_limit(d2, ifs, psi, q(5, 11), K) - series_value_at(d2, psi, z, 2, q(5, 11), K);
            CHECK(diff == power(ifs.zn, K + 1) * ifs.q0);
        }
        auto sep = cantor_ifs(psi, QComplex(q(1, 2)), 3);
        for (int K = 0; K <= 6; ++K) CHECK(distinct_truncation_values(sep, K) == (std::size_t{2} << K));
    }

    TEST_CASE("w series") {
        auto d2 = fixtures::d2();
        auto k = linear_kernel(d2);
        auto w = w_series(d2, k.psi_float, {0.4, 0.0}, 1, 64);
        CHECK(w.converged);
        CHECK(w.w.isZero(0.0));
        auto centred = to_float(testing::indicator(q(0), q(1, 2)) - StepFunction::constant(QComplex(q(1, 2))));
        auto wc = w_series(d2, centred, {0.4, 0.0}, 1, 64);
        CHECK(wc.w.isZero(0.0));
        FloatStepFunction rad({0.0, 0.5, 1.0}, {1.0, -1.0});
        auto ww = w_series(fixtures::w2(), rad, {0.9, 0.0}, 4, 128);
        CHECK(ww.converged);
        CHECK(ww.decay_ratio < 1);
        CHECK(ww.decay_ratio == doctest::Approx(std::pow(ww.second_eigenvalue_modulus / 0.9, 4)).epsilon(0.5));
        CHECK(ww.identity_ok);
    }

    TEST_CASE("eigenspace rank grows with the number of kernels") {
        auto d2 = fixtures::d2();
        auto psis = shifted_kernels(d2, 3);
        REQUIRE(psis.size() == 3);
        for (const auto& p : psis) CHECK(apply_exact(d2, p).is_zero());
        auto r = eigenspace_rank(d2, psis, QComplex(q(2, 5)), 6);
        CHECK(r.rank == 3);
    }
}
