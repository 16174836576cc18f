// Acceptance suite: one PASS/FAIL line per criterion, each with a time budget.

#include "essr/eigen_lab.hpp"
#include "essr/errors.hpp"
#include "essr/fixtures.hpp"
#include "essr/function_norms.hpp"
#include "essr/io.hpp"
#include "essr/spectral_bounds.hpp"
#include "essr/transfer_operator.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace essr;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "[" << what << "] ";
        }
    }
};

StepFunction linear_kernel(const PiecewiseMap& m) {
    LinearContrast c;
    c.K = Interval(0, 1);
    return build_kernel(m, c).psi;
}

KernelObservable w2_kernel() {
    WeightCancellation wc{0.0, 1.0, SampledObservable({1.0, 1.0}, Interpolation::PiecewiseConstant), 16, 0, 1};
    return build_kernel(fixtures::w2(), wc);
}

StepFunction random_step(std::mt19937_64& rng, int jumps, bool complex_values) {
    std::uniform_int_distribution<long> pos(1, 4095);
    std::uniform_int_distribution<long> val(-6, 6);
    std::vector<Rational> b{Rational(0)};
    std::vector<long> cuts;
    while (static_cast<int>(cuts.size()) < jumps) {
        long c = pos(rng);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    for (long c : cuts) b.push_back(ratio(c, 4096));
    b.emplace_back(1);
    std::vector<QComplex> v;
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        v.emplace_back(ratio(val(rng), 2), complex_values ? ratio(val(rng), 3) : Rational(0));
    return StepFunction(std::move(b), std::move(v));
}

Interval random_interval(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> pos(0, 1024);
    long a = pos(rng), b = pos(rng);
    while (a == b) b = pos(rng);
    if (a > b) std::swap(a, b);
    return Interval(ratio(a, 1024), ratio(b, 1024));
}

void criterion1(Outcome& o) {
    for (const char* name : {"d2", "l3"}) {
        LinearContrast c;
        c.K = Interval(0, 1);
        auto k = build_kernel(fixtures::load(name), c);
        o.require(k.residual_exactly_zero && apply_exact(fixtures::load(name), k.psi).is_zero(),
                  std::string(name) + " residual not exactly zero");
    }
    auto k = w2_kernel();
    o.detail << "w2 residual=" << format_double(k.residual) << " ";
    o.require(k.residual <= 1e-6, "w2 residual > 1e-6");
}

void criterion2(Outcome& o) {
    for (const char* name : {"d2", "l3"}) {
        auto m = fixtures::load(name);
        auto psi = linear_kernel(m);
        for (const char* zt : {"0.3", "0.4i", "-0.45"})
            for (int n : {1, 2}) {
                std::string tag = std::string(name) + " z=" + zt + " n=" + std::to_string(n);
                try {
                    auto s = h_series(m, psi, parse_qcomplex(zt), n, 8);
                    auto r = eigen_residual(m, psi, s);
                    o.require(r.exact_shift_ok, tag + " shift identity");
                    o.require(std::abs(r.residual_l1 - r.predicted) <= 1e-14 * r.predicted,
                              tag + " residual " + format_double(r.residual_l1) + " vs " + format_double(r.predicted));
                } catch (const Error& e) {
                    o.require(false, tag + " " + e.category() + ": " + e.what());
                }
            }
    }
}

void criterion3(Outcome& o) {
    auto d2 = orthogonality_gram(fixtures::d2(), linear_kernel(fixtures::d2()), 6);
    o.require(d2.off_diagonal_zero && d2.diagonal_constant && d2.entries[0][0] == QComplex(1), "d2 not identity");
    auto l3 = orthogonality_gram(fixtures::l3(), linear_kernel(fixtures::l3()), 6);
    o.require(l3.off_diagonal_zero && l3.diagonal_constant && l3.entries[0][0] == QComplex(6), "l3 not 6*identity");
    auto g = orthogonality_gram(fixtures::w2(), w2_kernel().psi_float, 6, Limits{1u << 24, 4096});
    o.detail << "w2 offdiag=" << format_double(g.off_diagonal_max) << " ";
    o.require(g.off_diagonal_max < 1e-8, "w2 off-diagonal >= 1e-8");
}

void criterion4(Outcome& o) {
    auto d2 = fixtures::d2();
    for (double beta : {0.0, 0.5, 1.0, 1.5})
        for (int k = 1; k <= 10; ++k)
            o.require(theta_sum(d2, beta, k) == std::pow(2.0, k * (1 - beta)),
                      "d2 theta beta=" + format_double(beta) + " k=" + std::to_string(k));
    double worst = 0;
    for (const char* name : {"d2", "l3"}) {
        auto m = fixtures::load(name);
        for (double beta : {0.0, 0.5, 1.0, 1.5}) {
            double fe = theta_infinity(m, beta, 10).fekete_estimate;
            double rho = spectral_radius(weighted_transfer_matrix(m, beta).entries);
            worst = std::max(worst, std::abs(fe - rho));
        }
        for (int k = 1; k <= 10; ++k) o.require(theta_sum(m, 1.0, k) == 1.0, std::string(name) + " theta(1) != 1");
    }
    o.detail << "max |fekete - rho|=" << format_double(worst) << " ";
    o.require(worst <= 1e-6, "fekete vs weighted matrix");
}

const HypothesisCheck* find_check(const BoundReport& r, const std::string& name) {
    for (const auto& c : r.hypothesis_checks)
        if (c.name == name) return &c;
    return nullptr;
}

void criterion5(Outcome& o) {
    auto d2 = fixtures::d2();
    auto main = bound_main(d2, 0.999);
    o.detail << "bound_main=" << format_double(main.lower_bound) << " ";
    o.require(main.lower_bound >= 0.5 && main.lower_bound <= 0.5007, "bound_main outside [0.5, 0.5007]");
    o.require(bound_bb_new(d2).lower_bound == 0.5, "bound_bb_new != 0.5");
    auto r2 = bound_bb_new(d2, 2.0);
    auto r05 = bound_bb_new(d2, 0.5);
    const auto* c2 = find_check(r2, "collet_isola_below_inverse_branch_count");
    const auto* c05 = find_check(r05, "collet_isola_below_inverse_branch_count");
    o.require(r2.collet_isola_upper && *r2.collet_isola_upper == 0.25, "collet_isola(r=2) != 0.25");
    o.require(r05.collet_isola_upper && std::abs(*r05.collet_isola_upper - std::pow(2.0, -0.5)) <= 1e-15,
              "collet_isola(r=0.5) != 2^-0.5");
    o.require(c2 && c2->ok, "r=2 check should pass");
    o.require(c05 && !c05->ok, "r=0.5 check should fail");
}

void criterion6(Outcome& o) {
    double worst_d2 = 0, lo_l3 = INFINITY, hi_l3 = 0;
    {
        auto m = fixtures::d2();
        auto psi = linear_kernel(m);
        double c0 = besov_atomic_upper(psi, 0.5).cost;
        for (int k = 0; k <= 10; ++k) {
            double ratio_k = besov_atomic_upper(pullback(m, psi, k), 0.5).cost / (c0 * theta_sum(m, 0.5, k));
            worst_d2 = std::max(worst_d2, std::abs(ratio_k - 1));
        }
    }
    {
        auto m = fixtures::l3();
        auto psi = linear_kernel(m);
        double c0 = besov_atomic_upper(psi, 0.5).cost;
        for (int k = 0; k <= 8; ++k) {
            double ratio_k = besov_atomic_upper(pullback(m, psi, k), 0.5).cost / (c0 * theta_sum(m, 0.5, k));
            lo_l3 = std::min(lo_l3, ratio_k);
            hi_l3 = std::max(hi_l3, ratio_k);
        }
    }
    o.detail << "d2 max|ratio-1|=" << format_double(worst_d2) << " l3 ratio in [" << format_double(lo_l3) << ", "
             << format_double(hi_l3) << "] ";
    o.require(worst_d2 <= 1e-12, "d2 ratio != 1");
    o.require(lo_l3 >= 0.5 && hi_l3 <= 2, "l3 ratio outside [0.5, 2]");
}

void criterion7(Outcome& o) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> jumps(1, 12);
    std::uniform_int_distribution<int> coin(0, 1);
    int affine_bad = 0, super_bad = 0, dp_bad = 0, dp_checked = 0;
    for (int t = 0; t < 100; ++t) {
        auto f = random_step(rng, jumps(rng), coin(rng) == 1);
        auto fr = random_step(rng, jumps(rng), false);
        // Affine invariance: u maps J' onto J, increasing or decreasing.
        Interval J = random_interval(rng), Jp = random_interval(rng);
        Rational a = J.length() / Jp.length();
        Rational b = J.lo - a * Jp.lo;
        if (coin(rng)) {
            a = -a;
            b = J.hi - a * Jp.lo;
        }
        auto g = compose_affine(fr, a, b);
        for (int p : {1, 2, 3})
            if (p_variation_power_exact(g, Jp, p) != p_variation_power_exact(fr, J, p)) ++affine_bad;
        // Superadditivity on adjacent intervals.
        Interval whole = random_interval(rng);
        std::uniform_int_distribution<long> cut(1, 1023);
        Rational mid = whole.lo + whole.length() * ratio(cut(rng), 1024);
        Interval j1(whole.lo, mid), j2(mid, whole.hi);
        for (int p : {1, 2, 3})
            if (p_variation_power_exact(fr, j1, p) + p_variation_power_exact(fr, j2, p) >
                p_variation_power_exact(fr, whole, p))
                ++super_bad;
        // Dynamic programme against exhaustive subsequences.
        if (f.pieces() <= 13) {
            ++dp_checked;
            auto vals = oracle::piece_values(f, Rational(0), Rational(1));
            for (double p : {1.0, 1.5, 2.0, 3.0}) {
                double want = std::pow(oracle::subsequence_variation(vals, p), 1 / p);
                double got = p_variation(f, Interval(0, 1), p);
                if (std::abs(got - want) > 1e-12 * std::max(1.0, want)) ++dp_bad;
            }
        }
    }
    o.detail << "affine_bad=" << affine_bad << " super_bad=" << super_bad << " dp_bad=" << dp_bad << "/" << dp_checked
             << " ";
    o.require(affine_bad == 0 && super_bad == 0 && dp_bad == 0 && dp_checked == 100, "p-variation law violated");
}

void criterion8(Outcome& o) {
    auto d2 = fixtures::d2();
    auto bv = classify_norm(d2, "bv", [](const StepFunction& f) { return bv_norm(f); });
    o.require(bv.norm_case == NormCase::I && bv.lower_bound == 0.5, "bv not Case I with 0.5");
    for (double s : {0.25, 0.5, 0.75}) {
        auto c = classify_norm(d2, "besov", [s](const StepFunction& f) { return besov_atomic_cost(f, s); });
        double got_s = c.s.value_or(-1);
        o.detail << "s=" << s << "->" << format_double(got_s) << " ";
        o.require(c.norm_case == NormCase::II && std::abs(got_s - s) <= 0.02, "besov s not recovered");
        o.require(std::abs(c.lower_bound - std::pow(2.0, -s)) <= 1e-3, "besov bound != 2^-s");
    }
    try {
        classify_norm(d2, "l1", [](const StepFunction& f) { return lp_norm(f, 1.0); });
        o.require(false, "l1 accepted");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        o.require(msg.find("-1") != std::string::npos || msg.find("−1") != std::string::npos,
                  "l1 diagnostic lacks boundary: " + msg);
    }
}

void criterion9(Outcome& o) {
    std::vector<QComplex> vals{QComplex(1), QComplex(-1)};
    QComplex z(ratio(1, 2));
    auto n1 = cantor_ifs(vals, z, 1);
    auto n3 = cantor_ifs(vals, z, 3);
    o.require(!n1.separation_ok, "n=1 separated");
    o.require(n3.separation_ok, "n=3 not separated");
    o.require(n3.fixed_points.size() == 2 && n3.fixed_points[0] == QComplex(ratio(8, 7)) &&
                  n3.fixed_points[1] == QComplex(ratio(-8, 7)),
              "fixed points != +-8/7");
    auto m = fixtures::d2();
    auto psi = linear_kernel(m);
    auto ifs = cantor_ifs(psi, z, 3);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(0, 999'999);
    std::uniform_int_distribution<int> depth(0, 10);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
        Rational x = ratio(num(rng), 1'000'003);
        int K = depth(rng);
        QComplex diff = backward_limit(m, ifs, psi, x, K) - series_value_at(m, psi, z, 3, x, K);
        QComplex expect = power(ifs.zn, K + 1) * ifs.q0;
        if (diff.norm2() != expect.norm2()) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " backward-limit mismatches");
    for (int K = 0; K <= 10; ++K)
        o.require(distinct_truncation_values(n3, K) == (std::size_t{1} << (K + 1)),
                  "distinct count at K=" + std::to_string(K));
}

void criterion10(Outcome& o) {
    auto d2 = fixtures::d2();
    LinearContrast c;
    c.K = Interval(0, 1);
    auto kernel = build_kernel(d2, c);
    auto w0 = w_series(d2, kernel.psi_float, {0.9, 0.0}, 4, 512);
    bool zero = w0.w.isZero(0.0);
    for (double t : w0.term_norms) zero = zero && t == 0;
    o.require(zero, "d2 kernel w not exactly zero");
    FloatStepFunction rad({0.0, 0.5, 1.0}, {1.0, -1.0});
    auto w = w_series(fixtures::w2(), rad, {0.9, 0.0}, 4, 512);
    o.detail << "w2 decay=" << format_double(w.decay_ratio) << " residual=" << format_double(w.identity_residual)
             << " tail=" << format_double(w.tail_estimate) << " ";
    o.require(w.converged && w.decay_ratio < 1, "w2 series does not decay");
    o.require(w.identity_residual <= 10 * w.tail_estimate, "w2 identity residual > 10x tail");
}

void criterion11(Outcome& o) {
    auto u = ulam_matrix(fixtures::d2(), 2);
    o.require((u.entries.array() == 0.5).all(), "d2 Ulam matrix != [[1/2,1/2],[1/2,1/2]]");
    auto s = spectrum(Eigen::MatrixXd(u.entries));
    o.require(s.eigenvalues.size() == 2 && std::abs(s.eigenvalues[0] - 1.0) <= 1e-12 &&
                  std::abs(s.eigenvalues[1]) <= 1e-12,
              "d2 spectrum != {1,0}");
    auto lw = leading_density(ulam_matrix(fixtures::w2(), 1024));
    o.detail << "w2 density deviation=" << format_double(lw.max_deviation_from_constant) << " ";
    o.require(lw.max_deviation_from_constant <= 1e-4, "w2 density not constant");
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> all{
        {1, "kernel exactness", 1, criterion1},
        {2, "eigen shift identity", 5, criterion2},
        {3, "orthogonality gram", 10, criterion3},
        {4, "theta and pressure consistency", 5, criterion4},
        {5, "bound coherence", 2, criterion5},
        {6, "besov growth", 10, criterion6},
        {7, "p-variation laws", 30, criterion7},
        {8, "case classification", 10, criterion8},
        {9, "cantor ifs", 10, criterion9},
        {10, "w series", 60, criterion10},
        {11, "ulam sanity", 60, criterion11},
    };
    int failed = 0;
    for (const auto& c : all) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) o.require(false, "over budget " + format_double(c.budget_s) + " s");
        failed += o.ok ? 0 : 1;
        std::printf("%s %2d %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
