#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "cli.hpp"
#include "gidar/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "gidar");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = gidar::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Set GIDAR_UPDATE_GOLDEN=1 to rewrite the files after an intended format change.
void check_golden(const std::string& name, const std::string& actual) {
    const fs::path path = fs::path(GIDAR_GOLDEN_DIR) / name;
    if (std::getenv("GIDAR_UPDATE_GOLDEN") || !fs::exists(path)) {
        std::ofstream(path, std::ios::binary) << actual;
        MESSAGE("wrote golden file " << path.string());
    }
    CHECK(actual == slurp(path));
}

std::size_t data_rows(const std::string& csv) {
    std::istringstream is(csv);
    return gidar::io::read_csv(is).size() - 1;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "gidar_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("usage errors exit with 2") {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"sample", "--family", "gts", "--lambda", "1"}).code == 2);
        CHECK(run({"sample", "--family", "gts", "--lambda", "1", "--beta", "0.6", "--n", "0"}).code == 2);
        CHECK(run({"pdf", "--family", "gts", "--lambda", "1", "--beta", "0.6", "--grid", "1:2"}).code == 2);
        CHECK(run({"simulate", "--model", "rck", "--family", "gts", "--lambda", "1", "--beta", "0.6"}).code == 2);
        CHECK(run({"estimate", "--family", "gg"}).code == 2);
        const auto r = run({"study", "--config", "/nonexistent/config.json"});
        CHECK(r.code == 2);
        CHECK(r.err.find("usage error") != std::string::npos);
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("runtime errors exit with 1 and name the operation") {
        const auto r = run({"simulate", "--model", "linear", "--theta", "0.3", "--family", "gg", "--alpha", "2",
                            "--beta", "1", "--n", "10"});
        CHECK(r.code == 1);
        CHECK(r.err.find("error: simulate") != std::string::npos);
        const auto d = run({"sample", "--family", "gts", "--lambda", "1", "--beta", "1.6", "--n", "3"});
        CHECK(d.code == 1);
        const fs::path in = scratch("constant.csv");
        std::ofstream(in) << "y\n1\n1\n1\n1\n";
        CHECK(run({"estimate", "--in", in.string(), "--family", "gg"}).code == 1);
    }

    TEST_CASE("sample") {
        const auto r = run({"sample", "--family", "gg", "--alpha", "2", "--beta", "1", "--n", "5", "--seed", "3"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("y\n", 0) == 0);
        CHECK(data_rows(r.out) == 5);
        check_golden("sample_gg.csv", r.out);
        const auto again = run({"sample", "--params", "alpha=2,beta=1", "--family", "gg", "--n", "5", "--seed", "3"});
        CHECK(again.out == r.out);
        const auto inn = run({"sample", "--family", "gts", "--lambda", "1", "--beta", "0.6", "--theta", "0.3",
                              "--innovation", "ratio", "--n", "4", "--seed", "3"});
        CHECK(inn.code == 0);
        check_golden("sample_ratio_gts.csv", inn.out);
    }

    TEST_CASE("GIDAR_SEED sets the default seed") {
        const std::vector<std::string> args{"sample", "--family", "gig", "--delta", "0.5", "--gamma", "1", "--n", "3"};
        ::setenv("GIDAR_SEED", "3", 1);
        const auto a = run(args);
        ::unsetenv("GIDAR_SEED");
        auto explicit_args = args;
        explicit_args.insert(explicit_args.end(), {"--seed", "3"});
        CHECK(a.out == run(explicit_args).out);
        CHECK(a.out != run(args).out);
    }

    TEST_CASE("pdf grid is normalised") {
        const auto r = run({"pdf", "--family", "gts", "--lambda", "1", "--beta", "0.6", "--theta", "1", "--grid",
                            "0.01:10:200"});
        REQUIRE(r.code == 0);
        std::istringstream is(r.out);
        const auto rows = gidar::io::read_csv(is);
        REQUIRE(rows.size() == 201);
        CHECK(rows[0] == gidar::io::CsvRow{"x", "pdf"});
        double mass = 0.0;
        for (std::size_t i = 2; i < rows.size(); ++i) {
            const double x0 = std::stod(rows[i - 1][0]), x1 = std::stod(rows[i][0]);
            mass += 0.5 * (x1 - x0) * (std::stod(rows[i - 1][1]) + std::stod(rows[i][1]));
        }
        // The law is Gamma(0.6, 1); P(X < 0.01) = 0.0703512 and the mass above 10 is negligible.
        // The tolerance covers the trapezoid's error near the integrable spike at 0.
        CHECK(std::abs(mass - (1.0 - 0.0703512)) < 0.03);
        const auto small = run({"pdf", "--family", "gg", "--alpha", "10", "--beta", "5", "--theta", "0.3", "--grid",
                                "0.5:2:3"});
        check_golden("pdf_gg.csv", small.out);
        const auto num = run({"pdf", "--family", "gg", "--alpha", "10", "--beta", "5", "--theta", "0.3", "--grid",
                              "0.5:2:3", "--method", "numeric"});
        std::istringstream a(small.out), b(num.out);
        const auto fa = gidar::io::read_csv(a), fb = gidar::io::read_csv(b);
        for (std::size_t i = 1; i < fa.size(); ++i) {
            CHECK(std::stod(fa[i][1]) == doctest::Approx(std::stod(fb[i][1])).epsilon(1e-6));
        }
        CHECK(data_rows(run({"pdf", "--family", "gig", "--delta", "0.5", "--gamma", "1", "--grid", "0.001:10:5",
                             "--log-grid"}).out) == 5);
    }

    TEST_CASE("simulate then estimate") {
        const fs::path series = scratch("series.csv");
        const fs::path result = scratch("result.json");
        const auto r = run({"simulate", "--model", "rc1", "--theta", "0.3", "--family", "gig", "--delta", "0.5",
                            "--gamma", "1", "--n", "1000", "--out", series.string()});
        REQUIRE(r.code == 0);
        const std::string csv = slurp(series);
        CHECK(csv.rfind("t,y\n", 0) == 0);
        CHECK(data_rows(csv) == 1000);
        const auto lin = run({"simulate", "--model", "linear", "--theta", "0.3", "--family", "gts", "--lambda", "1",
                              "--beta", "0.6", "--n", "5000", "--seed", "8", "--out", series.string()});
        REQUIRE(lin.code == 0);
        REQUIRE(run({"estimate", "--in", series.string(), "--family", "gts", "--out", result.string()}).code == 0);
        const auto j = gidar::io::Json::parse(slurp(result));
        CHECK(std::abs(j.at("theta_hat").get<double>() - 0.3) < 0.06);
        CHECK(j.at("family_params").contains("lambda"));
        check_golden("simulate_rck.csv", run({"simulate", "--model", "rck", "--theta", "0.2", "--thetas", "0.5,0.3",
                                              "--family", "gts", "--lambda", "1", "--beta", "0.6", "--n", "5",
                                              "--burn-in", "10", "--seed", "2"}).out);
        const auto sur = run({"simulate", "--model", "linear", "--theta", "0.3", "--family", "gg", "--alpha", "2",
                              "--beta", "1", "--n", "10", "--override-validity"});
        CHECK(sur.code == 0);
        CHECK(sur.err.find("surrogate") != std::string::npos);
    }

    TEST_CASE("study and audit") {
        const fs::path cfg = scratch("study.json");
        std::ofstream(cfg) << R"({"exponent":{"family":"gg","alpha":2,"beta":1},"replicates":3,"length":300,)"
                           << R"("burn_in":100,"override_validity":true})";
        const auto r = run({"study", "--config", cfg.string()});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("replicate,theta_hat,param1_hat,param2_hat,converged\n", 0) == 0);
        CHECK(data_rows(r.out) == 3);
        CHECK(run({"study", "--config", cfg.string(), "--serial"}).out == r.out);
        const fs::path summary = scratch("summary.json");
        REQUIRE(run({"study", "--config", cfg.string(), "--summary", summary.string(), "--out", scratch("s.csv").string()}).code == 0);
        const auto j = gidar::io::Json::parse(slurp(summary));
        CHECK(j.at("parameters").size() == 3);
        CHECK(j.at("surrogate_innovations") == true);

        const auto a = run({"audit"});
        CHECK(a.code == 0);
        CHECK(a.out.rfind("item,stated,derived,oracle,stated_rel_err,derived_rel_err,status\n", 0) == 0);
        CHECK(a.out.find("stated-differs") != std::string::npos);
        CHECK(a.out.find("derived-fails") == std::string::npos);
    }
}
