#include "cli.hpp"

#include "essr/eigen_lab.hpp"
#include "essr/errors.hpp"
#include "essr/fixtures.hpp"
#include "essr/function_norms.hpp"
#include "essr/interval_maps.hpp"
#include "essr/io.hpp"
#include "essr/observables.hpp"
#include "essr/spectral_bounds.hpp"
#include "essr/transfer_operator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace essr::cli {

namespace {

struct Common {
    std::string map_path;
    std::string fixture = "d2";
    std::string out_path;
    std::string config_path;
};

struct Loaded {
    PiecewiseMap map;
    Json map_json;
};

Loaded load_map(const Common& c) {
    Json j;
    if (!c.map_path.empty()) {
        std::ifstream in(c.map_path);
        if (in) {
            try {
                j = Json::parse(in);
            } catch (const Json::parse_error& e) {
                throw ValidationError("cannot parse map file '" + c.map_path + "': " + e.what());
            }
        } else {
            auto stem = std::filesystem::path(c.map_path).stem().string();
            auto known = fixtures::names();
            if (std::find(known.begin(), known.end(), stem) == known.end())
                throw ValidationError("cannot open map file '" + c.map_path + "'");
            j = Json::parse(fixtures::json_text(stem));
        }
    } else {
        j = Json::parse(fixtures::json_text(c.fixture));
    }
    return {parse_map(j), j};
}

Json header(const std::string& command, const Json& config) {
    Json h;
    h["tool"] = "essr";
    h["version"] = kVersion;
    h["command"] = command;
    h["config"] = config;
    h["config_hash"] = hex64(fnv1a(config.dump()));
    return h;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write output file '" + c.out_path + "'");
    f << text;
}

std::string json_document(const std::string& command, const Json& config, const Json& result) {
    Json doc;
    doc["header"] = header(command, config);
    doc["result"] = result;
    return doc.dump(2) + "\n";
}

std::string csv_document(const std::string& command, const Json& config, const std::string& csv) {
    return "# " + header(command, config).dump() + "\n" + csv;
}

Json checks_json(const std::vector<HypothesisCheck>& checks) {
    Json a = Json::array();
    for (const auto& c : checks) a.push_back({{"name", c.name}, {"ok", c.ok}, {"value", c.value}});
    return a;
}

Json bound_json(const BoundReport& r) {
    Json j;
    j["theorem"] = r.theorem == BoundKind::Main ? "main" : (r.theorem == BoundKind::BB ? "bb" : "new");
    if (r.s) j["s"] = *r.s;
    j["lower_bound"] = r.lower_bound;
    j["ok"] = r.ok;
    j["hypothesis_checks"] = checks_json(r.hypothesis_checks);
    if (r.r) j["r"] = *r.r;
    if (r.collet_isola_upper) j["collet_isola_upper"] = *r.collet_isola_upper;
    if (r.literal_pressure) j["literal_pressure"] = *r.literal_pressure;
    if (r.norm_assertion) j["norm_assertion"] = *r.norm_assertion;
    return j;
}

// Converts a JSON config object into "--key=value" tokens.
std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("cannot parse config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
    std::vector<std::string> tokens;
    for (const auto& [key, value] : j.items()) {
        if (key == "command") continue;
        std::string v = value.is_string() ? value.get<std::string>() : value.dump();
        tokens.push_back("--" + key + "=" + v);
    }
    return tokens;
}

struct SelftestCase {
    std::string name;
    std::function<bool(std::string&)> run;
};

std::vector<SelftestCase> selftest_cases() {
    std::vector<SelftestCase> cs;
    cs.push_back({"fixtures_lebesgue_invariant", [](std::string& d) {
                      double worst = 0;
                      for (const auto& n : fixtures::names()) worst = std::max(worst, verify_lebesgue_invariance(fixtures::load(n)).max_defect);
                      d = format_double(worst);
                      return worst <= 1e-12;
                  }});
    cs.push_back({"d2_theta_exact", [](std::string& d) {
                      auto m = fixtures::d2();
                      for (double beta : {0.0, 0.5, 1.0, 1.5})
                          for (int k = 1; k <= 8; ++k)
                              if (theta_sum(m, beta, k) != std::pow(2.0, k * (1 - beta))) {
                                  d = "beta=" + format_double(beta) + " k=" + std::to_string(k);
                                  return false;
                              }
                      return true;
                  }});
    cs.push_back({"pressure_methods_agree", [](std::string& d) {
                      double worst = 0;
                      for (const auto& m : {fixtures::d2(), fixtures::l3()})
                          for (double beta : {0.0, 0.5, 1.0, 1.5})
                              worst = std::max(worst, std::abs(pressure(m, beta, PressureMethod::WeightedMatrix).exp_pressure -
                                                               pressure(m, beta, PressureMethod::ThetaLimit, 10).exp_pressure));
                      d = format_double(worst);
                      return worst <= 1e-6;
                  }});
    cs.push_back({"linear_kernels_exact", [](std::string& d) {
                      bool ok = true;
                      for (const auto& m : {fixtures::d2(), fixtures::l3()}) {
                          LinearContrast c;
                          c.K = Interval(0, 1);
                          ok = ok && build_kernel(m, c).residual_exactly_zero;
                      }
                      d = ok ? "0" : "nonzero";
                      return ok;
                  }});
    cs.push_back({"eigen_shift_d2", [](std::string& d) {
                      auto m = fixtures::d2();
                      LinearContrast c;
                      c.K = Interval(0, 1);
                      auto psi = build_kernel(m, c).psi;
                      auto s = h_series(m, psi, parse_qcomplex("0.4i"), 1, 6);
                      auto r = eigen_residual(m, psi, s);
                      d = format_double(r.residual_l1);
                      return r.exact_shift_ok && std::abs(r.residual_l1 - r.predicted) <= 1e-15;
                  }});
    cs.push_back({"gram_l3_exact", [](std::string& d) {
                      auto m = fixtures::l3();
                      LinearContrast c;
                      c.K = Interval(0, 1);
                      auto g = orthogonality_gram(m, build_kernel(m, c).psi, 4);
                      d = to_string(g.entries[0][0]);
                      return g.off_diagonal_zero && g.diagonal_constant && g.entries[0][0] == QComplex(6);
                  }});
    cs.push_back({"ulam_d2_resolution_2", [](std::string& d) {
                      auto u = ulam_matrix(fixtures::d2(), 2);
                      auto s = spectrum(Eigen::MatrixXd(u.entries));
                      d = format_double(std::abs(s.eigenvalues[0])) + "," + format_double(std::abs(s.eigenvalues[1]));
                      return (u.entries.array() == 0.5).all() && std::abs(s.eigenvalues[0] - 1.0) < 1e-12 &&
                             std::abs(s.eigenvalues[1]) < 1e-12;
                  }});
    cs.push_back({"ifs_separation", [](std::string& d) {
                      std::vector<QComplex> v{QComplex(1), QComplex(-1)};
                      auto a = cantor_ifs(v, QComplex(Rational(1, 2)), 1);
                      auto b = cantor_ifs(v, QComplex(Rational(1, 2)), 3);
                      d = to_string(b.fixed_points[0]);
                      return !a.separation_ok && b.separation_ok && b.fixed_points[0] == QComplex(Rational(8, 7));
                  }});
    cs.push_back({"bv_case_one", [](std::string& d) {
                      auto c = classify_norm(fixtures::d2(), "bv", [](const StepFunction& f) { return bv_norm(f); });
                      d = format_double(c.t_max);
                      return c.norm_case == NormCase::I && c.lower_bound == 0.5;
                  }});
    cs.push_back({"p_variation_superadditive", [](std::string& d) {
                      std::mt19937_64 rng(7);
                      std::uniform_int_distribution<int> val(-5, 5);
                      for (int t = 0; t < 20; ++t) {
                          std::vector<Rational> b{Rational(0)};
                          std::vector<QComplex> v;
                          for (int i = 1; i <= 8; ++i) {
                              b.push_back(ratio(i, 8));
                              v.emplace_back(Rational(val(rng)));
                          }
                          StepFunction f(b, v);
                          Interval j1(0, Rational(3, 8)), j2(Rational(3, 8), 1), j(0, 1);
                          for (int p : {1, 2, 3})
                              if (p_variation_power_exact(f, j1, p) + p_variation_power_exact(f, j2, p) >
                                  p_variation_power_exact(f, j, p)) {
                                  d = "case " + std::to_string(t);
                                  return false;
                              }
                      }
                      return true;
                  }});
    return cs;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    auto fail = [&](const char* category, const std::string& message, int code) {
        Json e;
        e["error"] = {{"category", category}, {"message", message}, {"exit_code", code}};
        err << e.dump() << "\n";
        return code;
    };

    CLI::App app{"Transfer-operator spectra of piecewise expanding interval maps"};
    app.name("essr");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    Common common;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--map", common.map_path, "Map-definition JSON file");
        sub->add_option("--fixture", common.fixture, "Bundled map: d2, l3 or w2")
            ->check(CLI::IsMember({"d2", "l3", "w2"}));
        sub->add_option("--out", common.out_path, "Output file (default: standard output)");
        sub->add_option("--config", common.config_path, "JSON config whose keys mirror the flags");
    };

    double beta = 1.0, s = 0.5, r = 0, tol = 0.02;
    int kmax = 10, n = 1, N = 8, depth = 10, samples = 64, lmax = 400;
    std::size_t resolution = 256;
    std::string method = "auto", norm = "bv", family = "indicators", z_text = "0.4", observable = "rademacher";
    std::string matrix_path, certificate_path, assertion;
    bool have_s = false, have_r = false;

    auto* theta = app.add_subcommand("theta", "Table of Θᵏ(β) and running Fekete estimates (CSV)");
    add_common(theta);
    theta->add_option("--beta", beta)->check(CLI::NonNegativeNumber);
    theta->add_option("--kmax", kmax)->check(CLI::Range(1, 64));

    auto* press = app.add_subcommand("pressure", "exp P(−β log|DT|) (JSON)");
    add_common(press);
    press->add_option("--beta", beta)->check(CLI::NonNegativeNumber);
    press->add_option("--method", method)->check(CLI::IsMember({"auto", "weighted_matrix", "theta_limit"}));
    press->add_option("--kmax", kmax)->check(CLI::Range(1, 64));

    auto* bounds = app.add_subcommand("bounds", "Lower bounds for the essential spectral radius (JSON)");
    add_common(bounds);
    auto* s_opt = bounds->add_option("--s", s, "Besov smoothness in (0,1)");
    auto* r_opt = bounds->add_option("--r", r, "Smoothness order for the full-branch bound");
    bounds->add_option("--kmax", kmax)->check(CLI::Range(1, 64));
    bounds->add_option("--norm-assertion", assertion, "Recorded verbatim in the report");

    auto* classify = app.add_subcommand("classify", "Case I/II classification of a norm (JSON)");
    add_common(classify);
    classify->add_option("--norm", norm)->check(CLI::IsMember({"bv", "besov", "l1", "sup"}));
    auto* cs_opt = classify->add_option("--s", s, "Besov smoothness for --norm besov");
    classify->add_option("--family", family)->check(CLI::IsMember({"indicators", "bump"}));
    classify->add_option("--tol", tol)->check(CLI::PositiveNumber);
    classify->add_option("--kmax", kmax)->check(CLI::Range(1, 64));

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Ulam eigenvalue cloud (CSV)");
    add_common(spectrum_cmd);
    spectrum_cmd->add_option("--resolution", resolution)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    spectrum_cmd->add_option("--matrix", matrix_path, "Also write the Ulam matrix CSV and a JSON sidecar");

    auto* eigenfun = app.add_subcommand("eigenfun", "Truncated h_z series, residuals and samples (JSON)");
    add_common(eigenfun);
    eigenfun->add_option("--z", z_text, "Complex rational such as 0.4, -9/20, 0.4i");
    eigenfun->add_option("--n", n)->check(CLI::Range(1, 64));
    eigenfun->add_option("--N", N)->check(CLI::Range(0, 64));
    eigenfun->add_option("--samples", samples)->check(CLI::Range(1, 1 << 16));
    eigenfun->add_option("--lmax", lmax, "Gram size")->check(CLI::Range(0, 32));

    auto* cantor = app.add_subcommand("cantor", "Attractor samples (CSV) and IFS certificate");
    add_common(cantor);
    cantor->add_option("--z", z_text);
    cantor->add_option("--n", n)->check(CLI::Range(1, 64));
    cantor->add_option("--depth", depth)->check(CLI::Range(0, 64));
    cantor->add_option("--samples", samples)->check(CLI::Range(1, 1 << 16));
    cantor->add_option("--certificate", certificate_path, "Write the IFS certificate JSON here");

    auto* wser = app.add_subcommand("wseries", "w series on the Ulam surrogate (JSON)");
    add_common(wser);
    wser->add_option("--z", z_text);
    wser->add_option("--n", n)->check(CLI::Range(1, 64));
    wser->add_option("--resolution", resolution)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    wser->add_option("--observable", observable)->check(CLI::IsMember({"kernel", "rademacher"}));
    wser->add_option("--lmax", lmax)->check(CLI::Range(1, 100000));

    auto* selftest = app.add_subcommand("selftest", "Bundled invariant suite on D2, L3 and W2");
    selftest->add_option("--out", common.out_path);
    selftest->add_option("--config", common.config_path);

    std::vector<std::string> args = args_in;
    // A config file contributes flags placed before the explicit ones, so the
    // command line wins.
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
        if (path.empty()) continue;
        try {
            auto tokens = config_tokens(path);
            if (!args.empty()) args.insert(args.begin() + 1, tokens.begin(), tokens.end());
        } catch (const Error& e) {
            return fail(e.category(), e.what(), static_cast<int>(e.kind()));
        }
        break;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail("config", e.what(), 2);
    }
    have_s = s_opt->count() > 0 || cs_opt->count() > 0;
    have_r = r_opt->count() > 0;

    try {
        Json config;
        if (selftest->parsed()) {
            std::ostringstream os;
            int failures = 0;
            for (const auto& c : selftest_cases()) {
                std::string detail;
                bool ok = false;
                try {
                    ok = c.run(detail);
                } catch (const std::exception& e) {
                    detail = e.what();
                }
                failures += ok ? 0 : 1;
                os << (ok ? "PASS " : "FAIL ") << c.name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
            }
            config["suite"] = "bundled";
            emit(common, out, csv_document("selftest", config, os.str()));
            return failures == 0 ? 0 : 4;
        }

        Loaded loaded = load_map(common);
        const PiecewiseMap& map = loaded.map;
        config["map"] = loaded.map_json;

        if (theta->parsed()) {
            config["beta"] = beta;
            config["kmax"] = kmax;
            emit(common, out, csv_document("theta", config, theta_csv(theta_infinity(map, beta, kmax))));
        } else if (press->parsed()) {
            config["beta"] = beta;
            config["method"] = method;
            config["kmax"] = kmax;
            PressureReport p = method == "auto" ? pressure(map, beta, kmax)
                                                : pressure(map, beta,
                                                           method == "weighted_matrix" ? PressureMethod::WeightedMatrix
                                                                                       : PressureMethod::ThetaLimit,
                                                           kmax);
            Json res{{"beta", p.beta},
                     {"exp_pressure", p.exp_pressure},
                     {"pressure", std::log(p.exp_pressure)},
                     {"method", p.method == PressureMethod::WeightedMatrix ? "weighted_matrix" : "theta_limit"},
                     {"k_max", p.k_max}};
            emit(common, out, json_document("pressure", config, res));
        } else if (bounds->parsed()) {
            if (have_s) config["s"] = s;
            if (have_r) config["r"] = r;
            config["kmax"] = kmax;
            if (!assertion.empty()) config["norm_assertion"] = assertion;
            auto bb = bound_bb_new(map, have_r ? std::optional<double>(r) : std::nullopt,
                                   assertion.empty() ? std::nullopt : std::optional<std::string>(assertion));
            Json res;
            if (have_s) {
                res = bound_json(bound_main(map, s, kmax));
                res["bb_new"] = bound_json(bb);
            } else {
                res = bound_json(bb);
            }
            emit(common, out, json_document("bounds", config, res));
        } else if (classify->parsed()) {
            config["norm"] = norm;
            if (norm == "besov") config["s"] = s;
            config["family"] = family;
            config["tol"] = tol;
            config["kmax"] = kmax;
            NormFunctional fn;
            if (norm == "bv")
                fn = [](const StepFunction& f) { return bv_norm(f); };
            else if (norm == "besov") {
                if (!have_s) throw ValidationError("--norm besov needs --s");
                fn = [s](const StepFunction& f) { return besov_atomic_cost(f, s); };
            } else if (norm == "l1")
                fn = [](const StepFunction& f) { return lp_norm(f, 1.0); };
            else
                fn = [](const StepFunction& f) { return lp_norm(f, INFINITY); };
            ProbeConfig pc;
            pc.family = family == "bump" ? ProbeFamily::Bump : ProbeFamily::Indicators;
            pc.tolerance = tol;
            pc.k_max = kmax;
            auto c = classify_norm(map, norm, fn, pc);
            Json res{{"case", c.norm_case == NormCase::I ? "I" : "II"},
                     {"t_max", c.t_max},
                     {"lower_bound", c.lower_bound},
                     {"scaling_constant", c.scaling_constant},
                     {"fit_residual", c.probe.fit_residual}};
            if (c.s) res["s"] = *c.s;
            res["scales"] = c.probe.scales;
            res["norms"] = c.probe.norms;
            emit(common, out, json_document("classify", config, res));
        } else if (spectrum_cmd->parsed()) {
            config["resolution"] = resolution;
            auto u = ulam_matrix(map, resolution);
            auto sr = spectrum(Eigen::MatrixXd(u.entries));
            if (!matrix_path.empty()) {
                std::ofstream m(matrix_path, std::ios::binary);
                if (!m) throw ValidationError("cannot write matrix file '" + matrix_path + "'");
                m << matrix_csv(u.entries);
                Json side;
                side["resolution"] = resolution;
                side["partition"] = Json::array();
                for (const auto& c : u.partition) side["partition"].push_back({to_string(c.lo), to_string(c.hi)});
                side["map_hash"] = hex64(fnv1a(loaded.map_json.dump()));
                std::ofstream sj(matrix_path + ".json", std::ios::binary);
                sj << side.dump(2) << "\n";
            }
            emit(common, out, csv_document("spectrum", config, spectrum_csv(sr)));
        } else if (eigenfun->parsed()) {
            auto z = parse_qcomplex(z_text);
            config["z"] = to_string(z);
            config["n"] = n;
            config["N"] = N;
            config["samples"] = samples;
            config["lmax"] = lmax;
            LinearContrast c;
            c.K = Interval(0, 1);
            auto kernel = build_kernel(map, c);
            auto series = h_series(map, kernel.psi, z, n, N);
            auto er = eigen_residual(map, kernel.psi, series);
            auto gram = orthogonality_gram(map, kernel.psi, lmax);
            double offdiag = 0;
            for (std::size_t i = 0; i < gram.entries.size(); ++i)
                for (std::size_t j = 0; j < gram.entries.size(); ++j)
                    if (i != j) offdiag = std::max(offdiag, magnitude(gram.entries[i][j]));
            Json res{{"z", complex_to_json(z.to_complex())},
                     {"n", n},
                     {"N", N},
                     {"exact_shift_ok", er.exact_shift_ok},
                     {"residual_l1", er.residual_l1},
                     {"predicted_residual_l1", er.predicted},
                     {"tail_bound", series.tail_bound},
                     {"gram_offdiag_max", offdiag}};
            if (!z.is_zero()) res["cohomology_residual"] = cohomology_residual(map, kernel.psi, series);
            Json pts = Json::array();
            for (int i = 0; i < samples; ++i) {
                Rational x = ratio(2 * i + 1, 2 * samples);
                auto v = series.sum(x).to_complex();
                pts.push_back({to_double(x), v.real(), v.imag()});
            }
            res["samples"] = pts;
            emit(common, out, json_document("eigenfun", config, res));
        } else if (cantor->parsed()) {
            auto z = parse_qcomplex(z_text);
            config["z"] = to_string(z);
            config["n"] = n;
            config["depth"] = depth;
            config["samples"] = samples;
            LinearContrast c;
            c.K = Interval(0, 1);
            auto psi = build_kernel(map, c).psi;
            auto ifs = cantor_ifs(psi, z, n);
            Json cert{{"z", complex_to_json(z.to_complex())},
                      {"n", n},
                      {"separation_ok", ifs.separation_ok},
                      {"min_gap", ifs.min_gap},
                      {"containment_margin", ifs.containment_margin},
                      {"R", ifs.R}};
            if (!certificate_path.empty()) {
                std::ofstream cf(certificate_path, std::ios::binary);
                if (!cf) throw ValidationError("cannot write certificate file '" + certificate_path + "'");
                cf << cert.dump(2) << "\n";
            }
            std::ostringstream os;
            os << "x,re,im,depth\n";
            for (int i = 0; i < samples; ++i) {
                Rational x = ratio(2 * i + 1, 2 * samples);
                auto v = backward_limit(map, ifs, psi, x, depth).to_complex();
                os << format_double(to_double(x)) << ',' << format_double(v.real()) << ',' << format_double(v.imag())
                   << ',' << depth << '\n';
            }
            config["certificate"] = cert;
            emit(common, out, csv_document("cantor", config, os.str()));
        } else if (wser->parsed()) {
            auto z = parse_qcomplex(z_text).to_complex();
            config["z"] = complex_to_json(z);
            config["n"] = n;
            config["resolution"] = resolution;
            config["observable"] = observable;
            config["lmax"] = lmax;
            FloatStepFunction psi;
            if (observable == "kernel") {
                if (map.is_linear()) {
                    LinearContrast c;
                    c.K = Interval(0, 1);
                    psi = build_kernel(map, c).psi_float;
                } else {
                    WeightCancellation wc{0.0, 1.0, SampledObservable({1.0, 1.0}, Interpolation::PiecewiseConstant), 16, 0, 1};
                    psi = build_kernel(map, wc, 0).psi_float;
                }
            } else {
                psi = FloatStepFunction({0.0, 0.5, 1.0}, {1.0, -1.0});
            }
            auto w = w_series(map, psi, z, n, resolution, lmax, Limits{1'000'000, std::max<std::size_t>(4096, resolution)});
            Json res{{"z", complex_to_json(z)},
                     {"n", n},
                     {"resolution", resolution},
                     {"terms", w.term_norms.size()},
                     {"decay_ratio", w.decay_ratio},
                     {"converged", w.converged},
                     {"tail_estimate", w.tail_estimate},
                     {"identity_residual", w.identity_residual},
                     {"identity_ok", w.identity_ok},
                     {"second_eigenvalue_modulus", w.second_eigenvalue_modulus},
                     {"term_norms", w.term_norms}};
            emit(common, out, json_document("wseries", config, res));
        }
        return 0;
    } catch (const Error& e) {
        return fail(e.category(), e.what(), static_cast<int>(e.kind()));
    } catch (const Json::exception& e) {
        return fail("config", e.what(), 2);
    } catch (const std::bad_alloc&) {
        return fail("resource", "out of memory", 3);
    } catch (const std::exception& e) {
        return fail("numeric", e.what(), 4);
    }
}

}  // namespace essr::cli
