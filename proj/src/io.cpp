#include "essr/io.hpp"

#include "essr/errors.hpp"

#include <cstdio>
#include <sstream>

namespace essr {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace {

Rational rational_field(const Json& j, const char* what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ValidationError(std::string(what) + " must be a rational string such as \"1/2\"");
}

std::optional<double> smoothness_field(const Json& j) {
    if (!j.contains("smoothness") || j["smoothness"].is_null()) return std::nullopt;
    if (!j["smoothness"].is_number()) throw ValidationError("smoothness must be a number or null");
    double b = j["smoothness"].get<double>();
    if (!(b > 0)) throw ValidationError("smoothness must be positive");
    return b;
}

}  // namespace

PiecewiseMap parse_map(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw ValidationError("map definition needs a \"type\" field");
    const auto type = j["type"].get<std::string>();
    if (type == "linear_markov") {
        if (!j.contains("branches") || !j["branches"].is_array())
            throw ValidationError("linear_markov map needs a \"branches\" array");
        std::vector<LinearBranch> branches;
        for (const auto& b : j["branches"]) {
            if (!b.contains("domain") || !b["domain"].is_array() || b["domain"].size() != 2)
                throw ValidationError("branch needs \"domain\": [lo, hi]");
            branches.push_back(make_linear_branch(rational_field(b["domain"][0], "domain"),
                                                  rational_field(b["domain"][1], "domain"),
                                                  rational_field(b.at("slope"), "slope"),
                                                  rational_field(b.value("offset", Json("0")), "offset")));
        }
        return PiecewiseMap::linear_markov(std::move(branches), smoothness_field(j));
    }
    if (type == "smooth_weights") {
        if (!j.contains("weights") || !j["weights"].is_array())
            throw ValidationError("smooth_weights map needs a \"weights\" array");
        std::vector<WeightFunction> weights;
        for (const auto& w : j["weights"]) {
            const auto kind = w.value("kind", std::string("fourier"));
            if (kind == "constant")
                weights.push_back(WeightFunction::constant(w.at("value").get<double>()));
            else if (kind == "fourier")
                weights.push_back(WeightFunction::fourier(w.at("coeffs").get<std::vector<double>>()));
            else
                throw ValidationError("unknown weight kind '" + kind + "'");
        }
        const auto norm = j.value("normalization", std::string("strict"));
        Normalization mode;
        if (norm == "strict")
            mode = Normalization::Strict;
        else if (norm == "renormalize")
            mode = Normalization::Renormalize;
        else if (norm == "unchecked")
            mode = Normalization::Unchecked;
        else
            throw ValidationError("unknown normalization '" + norm + "'");
        return build_map_from_weights(std::move(weights), mode, j.value("tolerance", 1e-12), smoothness_field(j));
    }
    throw ValidationError("unknown map type '" + type + "'");
}

Json map_to_json(const PiecewiseMap& map) {
    Json j;
    if (map.is_linear()) {
        j["type"] = "linear_markov";
        j["branches"] = Json::array();
        for (const auto& b : map.linear().branches)
            j["branches"].push_back({{"domain", {to_string(b.domain.lo), to_string(b.domain.hi)}},
                                     {"slope", to_string(b.slope)},
                                     {"offset", to_string(b.offset)}});
    } else {
        j["type"] = "smooth_weights";
        j["weights"] = Json::array();
        for (const auto& w : map.smooth().weights) j["weights"].push_back({{"kind", "fourier"}, {"coeffs", w.coefficients()}});
    }
    if (map.smoothness())
        j["smoothness"] = *map.smoothness();
    else
        j["smoothness"] = nullptr;
    return j;
}

Json step_function_to_json(const StepFunction& f) {
    Json j;
    j["breakpoints"] = Json::array();
    for (const auto& b : f.breakpoints()) j["breakpoints"].push_back(to_string(b));
    j["values"] = Json::array();
    for (const auto& v : f.values()) j["values"].push_back({to_double(v.re), to_double(v.im)});
    return j;
}

StepFunction step_function_from_json(const Json& j) {
    std::vector<Rational> b;
    std::vector<QComplex> v;
    for (const auto& x : j.at("breakpoints")) b.push_back(rational_field(x, "breakpoint"));
    for (const auto& x : j.at("values")) {
        if (x.is_array() && x.size() == 2)
            v.emplace_back(rational_from_double(x[0].get<double>()), rational_from_double(x[1].get<double>()));
        else if (x.is_string())
            v.push_back(parse_qcomplex(x.get<std::string>()));
        else if (x.is_number())
            v.emplace_back(rational_from_double(x.get<double>()));
        else
            throw ValidationError("step function value must be [re, im], a number, or a string");
    }
    return StepFunction(std::move(b), std::move(v));
}

std::string step_function_csv(const StepFunction& f) {
    std::ostringstream os;
    os << "piece_lo,piece_hi,re,im\n";
    for (std::size_t j = 0; j < f.pieces(); ++j)
        os << format_double(to_double(f.lo(j))) << ',' << format_double(to_double(f.hi(j))) << ','
           << format_double(to_double(f.values()[j].re)) << ',' << format_double(to_double(f.values()[j].im)) << '\n';
    return os.str();
}

Json complex_to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json atomic_representation_to_json(const AtomicRepresentation& rep) {
    Json j;
    j["s"] = rep.s;
    j["atoms"] = Json::array();
    for (const auto& a : rep.atoms)
        j["atoms"].push_back({{"c", complex_to_json(a.c)}, {"q", {to_string(a.q.lo), to_string(a.q.hi)}}});
    j["cost"] = rep.cost;
    return j;
}

std::string theta_csv(const ThetaReport& r) {
    std::ostringstream os;
    os << "k,theta_sum,fekete_running\n";
    for (std::size_t i = 0; i < r.per_k.size(); ++i)
        os << r.per_k[i].first << ',' << format_double(r.per_k[i].second) << ',' << format_double(r.fekete_running[i])
           << '\n';
    return os.str();
}

std::string spectrum_csv(const SpectrumReport& r) {
    std::ostringstream os;
    os << "re,im,modulus\n";
    for (const auto& z : r.eigenvalues)
        os << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(std::abs(z)) << '\n';
    return os.str();
}

std::string matrix_csv(const RowMatrix& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format_double(m(i, j));
        os << '\n';
    }
    return os.str();
}

}  // namespace essr
