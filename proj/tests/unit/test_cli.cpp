#include "cli.hpp"
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = essr::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("bounds on D2") {
        auto r = invoke({"bounds", "--map", "d2.json", "--s", "0.5"});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["result"]["lower_bound"].get<double>() == doctest::Approx(0.7071067811865475).epsilon(1e-15));
        CHECK(j["header"]["command"] == "bounds");
        CHECK(j["header"]["config_hash"].get<std::string>().size() == 16);
        CHECK(j["result"]["bb_new"]["lower_bound"].get<double>() == 0.5);
    }

    TEST_CASE("theta table") {
        auto r = invoke({"theta", "--map", "d2.json", "--beta", "1", "--kmax", "4"});
        REQUIRE(r.code == 0);
        std::istringstream is(r.out);
        std::string line;
        std::getline(is, line);
        CHECK(line.rfind("# ", 0) == 0);
        std::getline(is, line);
        CHECK(line == "k,theta_sum,fekete_running");
        int rows = 0;
        while (std::getline(is, line)) {
            ++rows;
            CHECK(line.substr(0, line.find(',')) == std::to_string(rows));
            CHECK(std::stod(line.substr(line.find(',') + 1)) == 1.0);
        }
        CHECK(rows == 4);
    }

    TEST_CASE("selftest") {
        auto r = invoke({"selftest"});
        CHECK(r.code == 0);
    }

    TEST_CASE("errors") {
        auto bad = invoke({"bounds", "--fixture", "d2", "--nonsense"});
        CHECK(bad.code == 2);
        auto dom = invoke({"bounds", "--fixture", "d2", "--s", "1"});
        CHECK(dom.code == 2);
        auto e = nlohmann::json::parse(dom.err);
        CHECK(e["error"]["exit_code"] == 2);
        CHECK(e["error"]["category"].is_string());
        CHECK(invoke({"pressure", "--map", "/nonexistent/zz.json"}).code == 2);
    }

    TEST_CASE("config file and command-line precedence") {
        const std::string path = "cli_test_config.json";
        {
            std::ofstream f(path);
            f << R"({"beta": 2, "kmax": 3})";
        }
        auto a = invoke({"pressure", "--fixture", "d2", "--config", path});
        REQUIRE(a.code == 0);
        auto ja = nlohmann::json::parse(a.out);
        CHECK(ja["result"]["exp_pressure"].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
        auto b = invoke({"pressure", "--fixture", "d2", "--config", path, "--beta", "1"});
        REQUIRE(b.code == 0);
        auto jb = nlohmann::json::parse(b.out);
        CHECK(jb["result"]["exp_pressure"].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(ja["header"]["config_hash"] != jb["header"]["config_hash"]);
        std::remove(path.c_str());
    }
}
