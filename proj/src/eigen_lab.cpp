#include "essr/eigen_lab.hpp"

#include "essr/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace essr {

namespace {

double l1_with_mass(const UlamMatrix& u, const Eigen::VectorXcd& a) {
    double acc = 0;
    for (Eigen::Index c = 0; c < a.size(); ++c)
        acc += std::abs(a(c)) * (u.breaks[static_cast<std::size_t>(c) + 1] - u.breaks[static_cast<std::size_t>(c)]);
    return acc;
}

}  // namespace

KernelObservable build_kernel(const PiecewiseMap& map, const LinearContrast& c) {
    const auto& lm = map.linear();
    if (c.branch1 == c.branch2 || c.branch1 >= lm.branches.size() || c.branch2 >= lm.branches.size())
        throw ValidationError("linear contrast needs two distinct branches of the map");
    const auto& b1 = lm.branches[c.branch1];
    const auto& b2 = lm.branches[c.branch2];
    for (const auto* b : {&b1, &b2})
        if (c.K.lo < b->image.lo || b->image.hi < c.K.hi)
            throw ValidationError("K = [" + to_string(c.K.lo) + ", " + to_string(c.K.hi) +
                                  ") is not inside the image of both branches");
    auto preimage = [&](const LinearBranch& b) {
        Rational p = b.inverse(c.K.lo), q = b.inverse(c.K.hi);
        if (q < p) std::swap(p, q);
        return Interval(p, q);
    };
    Interval i1 = preimage(b1), i2 = preimage(b2);
    Rational s1 = abs(b1.slope), s2 = abs(b2.slope);
    Rational scale = c.scale ? *c.scale : (s1 == s2 ? Rational(1 / s1) : Rational(1));
    if (scale <= 0) throw ValidationError("contrast scale must be positive");

    KernelObservable k;
    k.construction = "linear_contrast";
    k.exact = true;
    k.psi = StepFunction::indicator(i1.lo, i1.hi, QComplex(Rational(scale * s1))) -
            StepFunction::indicator(i2.lo, i2.hi, QComplex(Rational(scale * s2)));
    k.psi_float = to_float(k.psi);
    auto lpsi = apply_exact(map, k.psi);
    k.residual_exactly_zero = lpsi.is_zero();
    k.residual = lp_norm(lpsi, 1.0);
    return k;
}

KernelObservable build_kernel(const PiecewiseMap& map, const WeightCancellation& c, int quadrature_points) {
    const auto& sm = map.smooth();
    if (sm.offsets.back() != 1.0) throw ValidationError("weight cancellation needs branch domains that tile [0,1)");
    if (c.branch1 == c.branch2 || c.branch1 >= map.branch_count() || c.branch2 >= map.branch_count())
        throw ValidationError("weight cancellation needs two distinct branches of the map");
    if (c.level < 1 || c.level > 24) throw DomainError("quantization level must lie in [1, 24]");
    const double h = std::ldexp(1.0, -c.level);
    if (!(0 <= c.k_lo && c.k_lo < c.k_hi && c.k_hi <= 1) || std::fmod(c.k_lo, h) != 0 || std::fmod(c.k_hi, h) != 0)
        throw ValidationError("K must be a subinterval of [0,1] with endpoints on the quantization grid");

    const auto first = static_cast<std::size_t>(c.k_lo / h), last = static_cast<std::size_t>(c.k_hi / h);
    std::vector<std::complex<double>> cell_integral(last - first);
    for (std::size_t j = first; j < last; ++j) cell_integral[j - first] = c.g.integral_over(j * h, (j + 1) * h);

    auto s_at = [&](std::size_t b, double x) {
        if (x == 0.0) return sm.offsets[b];
        if (x == 1.0) return sm.offsets[b + 1];
        return snap_breakpoint(map.inverse_branch(b, x));
    };
    struct Piece {
        double lo, hi;
        std::complex<double> v;
    };
    std::vector<Piece> pieces;
    std::vector<std::size_t> order{c.branch1, c.branch2};
    for (std::size_t b : order) {
        const double sign = b == c.branch1 ? 1.0 : -1.0;
        for (std::size_t j = first; j < last; ++j) {
            double lo = s_at(b, j * h), hi = s_at(b, (j + 1) * h);
            if (!(lo < hi)) throw NumericError("quantized preimage cell collapsed; lower the level");
            pieces.push_back({lo, hi, sign * cell_integral[j - first] / (hi - lo)});
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    std::vector<double> breaks{0.0};
    std::vector<std::complex<double>> values;
    for (const auto& p : pieces) {
        if (breaks.back() < p.lo) {
            values.emplace_back(0.0);
            breaks.push_back(p.lo);
        }
        values.push_back(p.v);
        breaks.push_back(p.hi);
    }
    if (breaks.back() < 1.0) {
        values.emplace_back(0.0);
        breaks.push_back(1.0);
    }

    KernelObservable k;
    k.construction = "weight_cancellation";
    k.exact = false;
    k.psi_float = FloatStepFunction(std::move(breaks), std::move(values));

    // Cell-projected residual: ∫_{C_j} Lψ = Σ_b ∫_{s_b(C_j)} ψ.
    double projected = 0;
    for (std::size_t j = first; j < last; ++j) {
        std::complex<double> acc = 0;
        for (std::size_t b : order) acc += integrate_over(k.psi_float, s_at(b, j * h), s_at(b, (j + 1) * h));
        projected += std::abs(acc);
    }
    k.residual = projected;
    k.residual_exactly_zero = projected == 0.0;

    if (quadrature_points > 0) {
        double acc = 0;
        for (int i = 0; i < quadrature_points; ++i)
            acc += std::abs(apply_pointwise(map, k.psi_float, (i + 0.5) / quadrature_points));
        k.pointwise_residual = acc / quadrature_points;
    }
    return k;
}

TruncatedEigenSeries h_series(const PiecewiseMap& map, const StepFunction& psi, const QComplex& z, int n, int N,
                              const Limits& limits) {
    if (!(z.norm2() < 1)) throw DomainError("h series needs |z| < 1");
    if (n < 1 || N < 0) throw DomainError("h series needs n >= 1 and N >= 0");
    const double cylinders = std::pow(static_cast<double>(map.branch_count()), static_cast<double>(N) * n);
    if (cylinders > static_cast<double>(limits.cylinder_cap))
        throw ResourceError("h series needs " + std::to_string(map.branch_count()) + "^" + std::to_string(N * n) +
                            " cylinders, above the cap of " + std::to_string(limits.cylinder_cap));
    TruncatedEigenSeries s;
    s.z = z;
    s.n = n;
    s.N = N;
    const QComplex zn = power(z, n);
    QComplex coeff(1);
    StepFunction cur = psi;
    s.sum_previous = StepFunction();
    for (int l = 0; l <= N; ++l) {
        s.terms.push_back(scale(cur, coeff));
        if (l == 0)
            s.sum = s.terms.back();
        else {
            s.sum_previous = s.sum;
            s.sum = s.sum + s.terms.back();
        }
        if (l < N) {
            cur = pullback(map, cur, n, limits);
            coeff = coeff * zn;
        }
    }
    const double az = magnitude(z);
    s.tail_bound = std::pow(az, (N + 1) * n) * lp_norm(psi, INFINITY) / (1.0 - std::pow(az, n));
    return s;
}

namespace {

StepFunction apply_power(const PiecewiseMap& map, StepFunction f, int n) {
    for (int i = 0; i < n; ++i) f = apply_exact(map, f);
    return f;
}

}  // namespace

namespace {

// ∫|f| with pieces grouped by |value|²; rational magnitudes are summed exactly.
double grouped_l1(const StepFunction& f) {
    std::map<Rational, Rational> mass;
    for (std::size_t j = 0; j < f.pieces(); ++j)
        if (!f.values()[j].is_zero()) mass[f.values()[j].norm2()] += f.length(j);
    Rational exact = 0;
    double inexact = 0;
    for (const auto& [n2, len] : mass) {
        mpz_class num, den;
        if (mpz_perfect_square_p(n2.get_num_mpz_t()) && mpz_perfect_square_p(n2.get_den_mpz_t())) {
            mpz_sqrt(num.get_mpz_t(), n2.get_num_mpz_t());
            mpz_sqrt(den.get_mpz_t(), n2.get_den_mpz_t());
            exact += Rational(num, den) * len;
        } else {
            inexact += std::sqrt(to_double(n2)) * to_double(len);
        }
    }
    return to_double(exact) + inexact;
}

std::optional<Rational> exact_l1(const StepFunction& f) {
    Rational acc = 0;
    for (std::size_t j = 0; j < f.pieces(); ++j) {
        auto m = exact_magnitude(f.values()[j]);
        if (!m) return std::nullopt;
        acc += *m * f.length(j);
    }
    return acc;
}

}  // namespace

EigenResidual eigen_residual(const PiecewiseMap& map, const StepFunction& psi, const TruncatedEigenSeries& series) {
    const QComplex zn = power(series.z, series.n);
    auto ln_sum = apply_power(map, series.sum, series.n);
    auto ln_psi = apply_power(map, psi, series.n);
    // d = Lⁿ sum_N − zⁿ sum_{N−1} − Lⁿψ; the residual subtracts zⁿ·(last term) as well.
    auto d = ln_sum - scale(series.sum_previous, zn) - ln_psi;
    EigenResidual r;
    r.exact_shift_ok = d.is_zero();
    r.residual_l1 = grouped_l1(d - scale(series.terms.back(), zn));
    const int power_n = (series.N + 1) * series.n;
    auto az = exact_magnitude(series.z);
    auto psi_l1 = exact_l1(psi);
    if (az && psi_l1)
        r.predicted = to_double(power(QComplex(*az), power_n).re * *psi_l1);
    else
        r.predicted = std::pow(magnitude(series.z), power_n) * grouped_l1(psi);
    return r;
}

double cohomology_residual(const PiecewiseMap& map, const StepFunction& psi, const TruncatedEigenSeries& series,
                           const Limits& limits) {
    if (series.z.is_zero()) throw DomainError("cohomological equation needs z != 0");
    const QComplex zinv = power(series.z, -series.n);
    auto shifted = pullback(map, series.sum, series.n, limits);
    auto lhs = scale(psi, -zinv);
    auto rhs = shifted - scale(series.sum, zinv);
    return lp_norm(lhs - rhs, 1.0);
}

ExactGram orthogonality_gram(const PiecewiseMap& map, const StepFunction& psi, int l_max, const Limits& limits) {
    if (l_max < 0) throw DomainError("Gram matrix needs l_max >= 0");
    std::vector<StepFunction> fs{psi};
    for (int l = 1; l <= l_max; ++l) fs.push_back(pullback(map, fs.back(), 1, limits));
    ExactGram g;
    const auto m = fs.size();
    g.entries.assign(m, std::vector<QComplex>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            g.entries[i][j] = inner_product(fs[i], fs[j]);
            g.entries[j][i] = g.entries[i][j].conj();
        }
    g.diagonal_constant = true;
    g.off_diagonal_zero = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j)
                g.diagonal_constant = g.diagonal_constant && g.entries[i][i] == g.entries[0][0];
            else
                g.off_diagonal_zero = g.off_diagonal_zero && g.entries[i][j].is_zero();
        }
    return g;
}

FloatGram orthogonality_gram(const PiecewiseMap& map, const FloatStepFunction& psi, int l_max, const Limits& limits) {
    if (l_max < 0) throw DomainError("Gram matrix needs l_max >= 0");
    std::vector<FloatStepFunction> fs{psi};
    for (int l = 1; l <= l_max; ++l) fs.push_back(pullback(map, fs.back(), 1, limits));
    const auto m = static_cast<Eigen::Index>(fs.size());
    FloatGram g;
    g.entries = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j) {
            g.entries(i, j) = inner_product(fs[static_cast<std::size_t>(i)], fs[static_cast<std::size_t>(j)]);
            g.entries(j, i) = std::conj(g.entries(i, j));
        }
    double dmin = INFINITY, dmax = -INFINITY;
    for (Eigen::Index i = 0; i < m; ++i) {
        dmin = std::min(dmin, g.entries(i, i).real());
        dmax = std::max(dmax, g.entries(i, i).real());
        for (Eigen::Index j = 0; j < m; ++j)
            if (i != j) g.off_diagonal_max = std::max(g.off_diagonal_max, std::abs(g.entries(i, j)));
    }
    g.diagonal_spread = dmax - dmin;
    return g;
}

AffineIFS cantor_ifs(const std::vector<QComplex>& values, const QComplex& z, int n) {
    if (n < 1) throw DomainError("IFS block length must be >= 1");
    AffineIFS ifs;
    for (const auto& v : values)
        if (std::find(ifs.values.begin(), ifs.values.end(), v) == ifs.values.end()) ifs.values.push_back(v);
    if (ifs.values.size() < 2) throw ValidationError("the IFS needs an observable taking at least two values");
    ifs.z = z;
    ifs.n = n;
    ifs.q0 = ifs.values.front();
    ifs.zn = power(z, n);
    double diam = 0, gap = INFINITY;
    for (std::size_t i = 0; i < ifs.values.size(); ++i)
        for (std::size_t j = i + 1; j < ifs.values.size(); ++j) {
            double d = magnitude(ifs.values[i] - ifs.values[j]);
            diam = std::max(diam, d);
            gap = std::min(gap, d);
        }
    ifs.R = 2 * diam;
    ifs.min_gap = gap;
    const double azn = magnitude(ifs.zn);
    ifs.containment_margin = INFINITY;
    for (const auto& q : ifs.values) {
        double reach = magnitude(ifs.zn * ifs.q0 + q - ifs.q0) + azn * ifs.R;
        ifs.containment_margin = std::min(ifs.containment_margin, ifs.R - reach);
    }
    ifs.containment_ok = ifs.containment_margin >= 0;
    ifs.disjoint_ok = gap > 2 * azn * ifs.R;
    ifs.separation_ok = ifs.containment_ok && ifs.disjoint_ok;
    if (QComplex(1) == ifs.zn) throw DomainError("fixed points need z^n != 1");
    const QComplex denom = inverse(QComplex(1) - ifs.zn);
    for (const auto& q : ifs.values) ifs.fixed_points.push_back(q * denom);
    return ifs;
}

AffineIFS cantor_ifs(const StepFunction& psi, const QComplex& z, int n) {
    return cantor_ifs(psi.canonical().values(), z, n);
}

namespace {

std::vector<QComplex> orbit_values(const PiecewiseMap& map, const StepFunction& psi, int n, Rational x, int K) {
    std::vector<QComplex> v;
    for (int l = 0; l <= K; ++l) {
        v.push_back(psi(x));
        if (l < K)
            for (int i = 0; i < n; ++i) x = evaluate_exact(map, x).value;
    }
    return v;
}

}  // namespace

QComplex backward_limit(const PiecewiseMap& map, const AffineIFS& ifs, const StepFunction& psi, const Rational& x,
                        int K) {
    if (K < 0) throw DomainError("depth must be >= 0");
    auto v = orbit_values(map, psi, ifs.n, x, K);
    QComplex u = ifs.q0;
    for (int l = K; l >= 0; --l) u = ifs.zn * u + v[static_cast<std::size_t>(l)];
    return u;
}

QComplex series_value_at(const PiecewiseMap& map, const StepFunction& psi, const QComplex& z, int n, const Rational& x,
                         int N) {
    if (N < 0) throw DomainError("truncation order must be >= 0");
    auto v = orbit_values(map, psi, n, x, N);
    const QComplex zn = power(z, n);
    QComplex acc(0), coeff(1);
    for (const auto& q : v) {
        acc += coeff * q;
        coeff = coeff * zn;
    }
    return acc;
}

std::size_t distinct_truncation_values(const AffineIFS& ifs, int K, std::size_t cap) {
    if (K < 0) throw DomainError("depth must be >= 0");
    std::set<QComplex> cur(ifs.values.begin(), ifs.values.end());
    for (int l = 1; l <= K; ++l) {
        std::set<QComplex> next;
        for (const auto& u : cur)
            for (const auto& q : ifs.values) next.insert(ifs.zn * u + q);
        if (next.size() > cap) throw ResourceError("value enumeration exceeds the cap of " + std::to_string(cap));
        cur = std::move(next);
    }
    return cur.size();
}

WSeries w_series(const PiecewiseMap& map, const FloatStepFunction& psi, std::complex<double> z, int n,
                 std::size_t resolution, int l_max, const Limits& limits) {
    if (z == 0.0) throw DomainError("w series needs z != 0");
    if (n < 1 || l_max < 1) throw DomainError("w series needs n >= 1 and l_max >= 1");
    auto u = ulam_matrix(map, resolution, limits);
    WSeries ws;
    ws.z = z;
    ws.n = n;
    ws.resolution = resolution;
    ws.second_eigenvalue_modulus = std::abs(spectrum(Eigen::MatrixXd(u.entries), limits).eigenvalues.at(1));

    const Eigen::VectorXcd a = project_to_cells(u, psi);
    auto un = [&](Eigen::VectorXcd v) {
        for (int i = 0; i < n; ++i) v = apply_discretized(u, v);
        return v;
    };
    const std::complex<double> zinv_n = std::pow(z, -n);
    ws.w = Eigen::VectorXcd::Zero(a.size());
    Eigen::VectorXcd power_term = a;  // U^{ℓn} a
    std::complex<double> coeff = 1.0;
    double peak = 0;
    for (int l = 1; l <= l_max; ++l) {
        power_term = un(power_term);
        coeff *= zinv_n;
        Eigen::VectorXcd term = coeff * power_term;
        double norm = l1_with_mass(u, term);
        if (norm == 0.0) break;
        ws.w += term;
        ws.term_norms.push_back(norm);
        peak = std::max(peak, norm);
        if (norm < 1e-13 * peak || norm > 1e12 * ws.term_norms.front()) break;
    }

    const std::size_t m = ws.term_norms.size();
    if (m < 2) {
        ws.decay_ratio = 0;
    } else {
        std::size_t start = m / 2;
        if (m - start < 2) start = m - 2;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double cnt = static_cast<double>(m - start);
        for (std::size_t i = start; i < m; ++i) {
            double x = static_cast<double>(i), y = std::log(ws.term_norms[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        ws.decay_ratio = std::exp((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
    }
    ws.converged = ws.decay_ratio < 1.0;
    if (m == 0)
        ws.tail_estimate = 0;
    else if (ws.converged)
        ws.tail_estimate = ws.term_norms.back() * ws.decay_ratio / (1.0 - ws.decay_ratio);
    else
        ws.tail_estimate = INFINITY;

    Eigen::VectorXcd resid = un(ws.w) - std::pow(z, n) * ws.w + un(a);
    ws.identity_residual = l1_with_mass(u, resid);
    ws.identity_ok = ws.converged && ws.identity_residual <= 10.0 * ws.tail_estimate;
    return ws;
}

std::vector<StepFunction> shifted_kernels(const PiecewiseMap& map, std::size_t d) {
    if (d < 1) throw DomainError("need at least one kernel observable");
    std::vector<StepFunction> out;
    for (std::size_t j = 0; j < d; ++j) {
        LinearContrast c;
        c.K = Interval(ratio(static_cast<long>(j), static_cast<long>(d)),
                       ratio(static_cast<long>(j + 1), static_cast<long>(d)));
        out.push_back(build_kernel(map, c).psi);
    }
    return out;
}

RankReport eigenspace_rank(const PiecewiseMap& map, const std::vector<StepFunction>& psis, const QComplex& z, int N,
                           const Limits& limits) {
    std::vector<StepFunction> hs;
    for (const auto& p : psis) hs.push_back(h_series(map, p, z, 1, N, limits).sum);
    const auto d = static_cast<Eigen::Index>(hs.size());
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            g(i, j) = inner_product(hs[static_cast<std::size_t>(i)], hs[static_cast<std::size_t>(j)]).to_complex();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
    RankReport r;
    r.observables = hs.size();
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) r.singular_values.push_back(sv(i));
    const double top = sv.size() ? sv(0) : 0.0;
    for (double v : r.singular_values)
        if (v > 1e-10 * top) ++r.rank;
    return r;
}

}  // namespace essr
