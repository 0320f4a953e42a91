#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "cli_run.hpp"
#include "test_util.hpp"
#include "thetaforge/theta_core.hpp"
#include "thetaforge/verify.hpp"

using namespace tf;
using nlohmann::json;

TEST_CASE("complex parsing") {
    CHECK(parse_complex("i") == I);
    CHECK(parse_complex("2i") == cplx(0.0, 2.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("(0.3+1.1i)") == cplx(0.3, 1.1));
    CHECK(parse_complex("1e-3-2e-2i") == cplx(1e-3, -2e-2));
    CHECK(parse_complex("-1.5") == cplx(-1.5, 0.0));
    CHECK(parse_complex(" 1 + i ") == cplx(1.0, 1.0));
    CHECK_THROWS_AS(parse_complex("1+"), Error);
    CHECK_THROWS_AS(parse_complex("abc"), Error);
    CHECK_THROWS_AS(parse_complex(""), Error);
    for (cplx z : {cplx(0.1, 0.2), cplx(-1.0 / 3.0, 1e-300), cplx(0.0, -7.25), cplx(12345.678, 0.0)})
        CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("eval") {
    auto r = run_cli("eval J --tau i");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["values"]["J"]["text"] == "1.00000000000");
    CHECK(std::abs(j["values"]["J"]["re"].get<double>() - 1.0) < 1e-12);

    r = run_cli("eval theta 3 --z 0 --tau i");
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(std::abs(j["values"]["theta3"]["re"].get<double>() - theta_eval(3, 0.0, I).real()) < 1e-15);

    r = run_cli("eval theta 1 --z 0 --tau 2i");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["values"]["theta1"]["re"].get<double>() == 0.0);

    r = run_cli("eval sn --u 0.3 --k2 0.5 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("name,re,im\nsn,", 0) == 0);
}

TEST_CASE("invert, roots, pvi") {
    auto r = run_cli("invert --a 4 --b 0");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(std::abs(j["tau"]["re"].get<double>()) < 1e-12);
    CHECK(std::abs(j["tau"]["im"].get<double>() - 1.0) < 1e-12);

    r = run_cli("roots --alpha 0 --beta 0 --gamma -1");
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    REQUIRE(j["roots"].size() == 4);
    for (const auto& x : j["roots"]) {
        const cplx z(x["re"].get<double>(), x["im"].get<double>());
        CHECK(std::abs(z * z * z * z - 1.0) < 1e-9);
    }

    r = run_cli("pvi --A 0.31 --B 0.2 --x 0.2,0.4,0.6");
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    REQUIRE(j.size() == 3);
    for (const auto& p : j) CHECK(p["residual"].get<double>() < 1e-5);
}

TEST_CASE("series tables") {
    auto r = run_cli("series --table G --order 4");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["rows"][0][0] == "1");
    CHECK(j["rows"][2][0] == "-6");
    r = run_cli("series --k 2 --z 0.2 --tau 0.3+1.1i");
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(std::abs(j["values"]["power_series"]["re"].get<double>() - j["values"]["trigonometric"]["re"].get<double>()) < 1e-10);
}

TEST_CASE("exit codes") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("eval J --tau i --bogus 1").code == 2);
    CHECK(run_cli("eval J --tau 1+").code == 2);
    CHECK(run_cli("verify nosuch").code == 2);
    CHECK(run_cli("eval theta 1 --z 0 --tau -i").code == 3);
    CHECK(run_cli("eval theta 7 --z 0 --tau i").code == 3);
    CHECK(run_cli("pvi --A 0.31 --B 0.2 --x 1.5").code == 3);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("verify output is deterministic and report reads it back") {
    const auto a = run_cli("verify identities --seed 7");
    const auto b = run_cli("verify identities --seed 7 --serial");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    REQUIRE(j.is_array());
    for (const auto& r : j) {
        CHECK(r["passed"].get<bool>() == (r["residual"].get<double>() <= r["tolerance"].get<double>()));
        CHECK(!r["equation_ref"].get<std::string>().empty());
    }
    const auto o = run_cli("verify ode --tau 1.3i");
    CHECK(o.code == 0);
    CHECK(json::parse(o.out)[0]["inputs"]["tau"] == "1.3i");

    // a report with one failing record exits 1
    auto recs = records_from_json(a.out);
    recs[0].residual = 1.0;
    recs[0].passed = false;
    const std::string path = "test_cli_report.json";
    std::ofstream(path) << records_to_json(recs);
    const auto rep = run_cli("report " + path);
    CHECK(rep.code == 1);
    CHECK(json::parse(rep.out)["failed"] == 1);
    std::remove(path.c_str());
}
