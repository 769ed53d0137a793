#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "srso3/export.hpp"
#include "srso3/rng.hpp"
#include "srso3/so3.hpp"

#ifndef SRSO3_CLI_BIN
#error "SRSO3_CLI_BIN must point at the srso3 executable"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_redirected(const std::string& args, const char* redirect) {
    const std::string cmd = std::string(SRSO3_CLI_BIN) + " " + args + " " + redirect;
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

RunResult run(const std::string& args) { return run_redirected(args, "2>/dev/null"); }

// stderr only (the machine-readable record stream of `check`)
RunResult run_err(const std::string& args) {
    return run_redirected(args, "2>&1 1>/dev/null");
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

using namespace srso3;

TEST_CASE("format_double round-trips doubles") {
    Rng rng(51);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-12, 3));
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(std::strtod(format_double(M_PI).c_str(), nullptr) == M_PI);
}

TEST_CASE("diameter prints pi*sqrt(3)") {
    const RunResult r = run("diameter");
    CHECK(r.exit_code == 0);
    CHECK(std::strtod(r.out.c_str(), nullptr) == M_PI * std::sqrt(3.0));
}

TEST_CASE("cut-time single value") {
    const RunResult r = run("cut-time --beta 0");
    CHECK(r.exit_code == 0);
    CHECK(std::strtod(r.out.c_str(), nullptr) == M_PI);
}

TEST_CASE("distance from axis-angle input") {
    const RunResult r = run("distance --axis 1 0 0 --angle 3.141592653589793");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::strtod(r.out.c_str(), nullptr) - M_PI * std::sqrt(3.0)) < 1e-6);
}

TEST_CASE("geodesic sampling endpoints") {
    const RunResult r = run("geodesic --phi0 0 --beta 0 --t-max 3.141592653589793 --steps 2");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3); // header + 2 records
    CHECK(rows[0][0] == "t");
    const auto& last = rows[2];
    // columns: t,phi0,beta,r11..r33,x,y,z
    CHECK(std::strtod(last[3].c_str(), nullptr) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::strtod(last[7].c_str(), nullptr) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::strtod(last[11].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::strtod(last[12].c_str(), nullptr) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(std::strtod(last[13].c_str(), nullptr)) < 1e-12);

    const RunResult single = run("geodesic --phi0 0.5 --beta 1 --t-max 0 --steps 1");
    const auto srows = parse_csv(single.out);
    REQUIRE(srows.size() == 2);
    CHECK(std::strtod(srows[1][0].c_str(), nullptr) == 0.0); // t = 0
    CHECK(std::strtod(srows[1][3].c_str(), nullptr) == 1.0); // identity
}

TEST_CASE("csv and json outputs carry identical numbers") {
    {
        const std::string flags = "cut-locus --n 25 --beta-max 10";
        const RunResult csv = run(flags);
        const RunResult json = run("--format json " + flags);
        REQUIRE(csv.exit_code == 0);
        REQUIRE(json.exit_code == 0);

        const auto rows = parse_csv(csv.out);
        const auto parsed = nlohmann::json::parse(json.out);
        REQUIRE(rows.size() == parsed.size() + 1);
        for (std::size_t i = 0; i < parsed.size(); ++i) {
            CHECK(std::strtod(rows[i + 1][0].c_str(), nullptr) ==
                  parsed[i]["beta"].get<double>());
            CHECK(std::strtod(rows[i + 1][1].c_str(), nullptr) ==
                  parsed[i]["t1"].get<double>());
            CHECK(rows[i + 1][2] == parsed[i]["branch"].get<std::string>());
            CHECK(std::strtod(rows[i + 1][3].c_str(), nullptr) ==
                  parsed[i]["r11"].get<double>());
        }
    }
    {
        const std::string flags = "geodesic --phi0 0.7 --beta 1.3 --t-max 4 --steps 17";
        const RunResult csv = run(flags);
        const RunResult json = run("--format json " + flags);
        const auto rows = parse_csv(csv.out);
        const auto parsed = nlohmann::json::parse(json.out);
        REQUIRE(rows.size() == parsed.size() + 1);
        const char* cols[] = {"t",   "phi0", "beta", "r11", "r12", "r13", "r21", "r22",
                              "r23", "r31",  "r32",  "r33", "x",   "y",   "z"};
        for (std::size_t i = 0; i < parsed.size(); ++i)
            for (std::size_t c = 0; c < 15; ++c)
                CHECK(std::strtod(rows[i + 1][c].c_str(), nullptr) ==
                      parsed[i][cols[c]].get<double>());
    }
}

TEST_CASE("deterministic output for identical flags") {
    const RunResult a = run("cut-locus --n 41 --beta-max 20 --jobs 1");
    const RunResult b = run("cut-locus --n 41 --beta-max 20 --jobs 1");
    const RunResult c = run("cut-locus --n 41 --beta-max 20 --jobs 3");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    const RunResult d1 = run("distance --axis 0 1 1 --angle 1.1 --seed 5");
    const RunResult d2 = run("distance --axis 0 1 1 --angle 1.1 --seed 5");
    CHECK(d1.out == d2.out);
}

TEST_CASE("sphere sampling stays on the metric sphere") {
    const RunResult r = run("sphere --radius 2.0 --n 8");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::strtod(rows[i][2].c_str(), nullptr) == 2.0); // t column
        // emitted matrices are rotations
        Mat3 m;
        for (int k = 0; k < 9; ++k)
            m.e[static_cast<std::size_t>(k)] =
                std::strtod(rows[i][static_cast<std::size_t>(3 + k)].c_str(), nullptr);
        CHECK_NOTHROW(Rotation::from_matrix(m, 1e-9));
    }
}

TEST_CASE("sphere sampling reaches the narrow near-diameter window") {
    const RunResult big = run("sphere --radius 5.2 --n 10");
    CHECK(big.exit_code == 0);
    CHECK(parse_csv(big.out).size() > 1);

    // at the diameter the sphere degenerates to the rotation by pi about e1
    const RunResult peak = run("sphere --radius 5.4413980927026531 --n 4");
    const auto rows = parse_csv(peak.out);
    REQUIRE(rows.size() > 1);
    CHECK(std::strtod(rows[1][3].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::strtod(rows[1][7].c_str(), nullptr) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::strtod(rows[1][11].c_str(), nullptr) ==
          doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("geodesic --steps 0").exit_code == 2);
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("sphere --radius 0").exit_code == 2);
    CHECK(run("sphere --radius 99").exit_code == 2);
    CHECK(run("distance --axis 0 0 0 --angle 1").exit_code == 2);
    CHECK(run("distance --matrix 1 0 0 0 1 0 0 0 2").exit_code == 2);
    CHECK(run("distance").exit_code == 2);
    CHECK(run("cut-time --beta nan").exit_code == 2);
}

namespace {
double first_threshold(const std::string& out) {
    const auto pos = out.find("threshold=");
    REQUIRE(pos != std::string::npos);
    return std::strtod(out.c_str() + pos + 10, nullptr);
}
} // namespace

TEST_CASE("check subcommand: suite selection, profiles, exit codes") {
    const RunResult ok = run("check --suite so3");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("PASS so3/so3-exp-orthogonal") != std::string::npos);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    // deterministic stdout
    const RunResult ok2 = run("check --suite so3");
    CHECK(ok.out == ok2.out);

    // loose profile multiplies thresholds by 10
    const RunResult loose = run("check --suite so3 --tolerance-profile loose");
    CHECK(loose.exit_code == 0);
    CHECK(first_threshold(loose.out) == 10.0 * first_threshold(ok.out));

    CHECK(run("check --suite bogus").exit_code == 2);
    CHECK(run("check --suite so3 --tolerance-profile bogus").exit_code == 2);
}

TEST_CASE("check emits a machine-readable record stream on stderr") {
    const RunResult csv = run_err("check --suite kernels");
    const auto rows = parse_csv(csv.out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0][0] == "suite");
    CHECK(rows[0][2] == "pass");
    CHECK(rows[1][0] == "kernels");
    CHECK(rows[1][2] == "1");

    const RunResult json = run_err("--format json check --suite kernels");
    const auto parsed = nlohmann::json::parse(json.out);
    REQUIRE(!parsed.empty());
    CHECK(parsed[0]["suite"] == "kernels");
    CHECK(parsed[0]["pass"] == true);
}

TEST_CASE("distance --oracle reports the upper bound") {
    const RunResult r = run(
        "--format json distance --axis 0 1 0 --angle 0.4 --oracle --segments 8 "
        "--budget 16 --seed 3");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    const double d = parsed["distance"].get<double>();
    const double b = parsed["oracle_bound"].get<double>();
    CHECK(d == doctest::Approx(0.4).epsilon(1e-6));
    CHECK(b >= d - 1e-2);
}

TEST_CASE("diameter --check refines the grid peak") {
    const RunResult r = run("diameter --check --grid-n 401 --beta-max 3");
    CHECK(r.exit_code == 0);
    const auto pos = r.out.find("refined_max ");
    REQUIRE(pos != std::string::npos);
    const double refined = std::strtod(r.out.c_str() + pos + 12, nullptr);
    CHECK(std::abs(refined - M_PI * std::sqrt(3.0)) < 1e-6);
}

TEST_CASE("SRSO3_TOL environment variable selects the profile") {
    const RunResult base = run("check --suite so3");
    const std::string cmd = std::string("SRSO3_TOL=loose ") + SRSO3_CLI_BIN +
                            " check --suite so3 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK(first_threshold(out) == 10.0 * first_threshold(base.out));
}

TEST_CASE("scalar kernel override works end to end") {
    const RunResult r = run("--kernel scalar cut-time --beta 0.3");
    CHECK(r.exit_code == 0);
    const RunResult rauto = run("cut-time --beta 0.3");
    CHECK(r.out == rauto.out); // same scalar single-point path either way
}

TEST_CASE("global flags are accepted after the subcommand") {
    const RunResult a = run("cut-locus --n 11 --beta-max 5 --jobs 2");
    const RunResult b = run("--jobs 2 cut-locus --n 11 --beta-max 5");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
