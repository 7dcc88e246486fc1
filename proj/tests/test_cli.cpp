#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symdet/cli.hpp"
#include "symdet/errors.hpp"
#include "symdet/io.hpp"
#include "symdet/rng.hpp"

using namespace symdet;
namespace fs = std::filesystem;

namespace {

std::string tmpdir() {
    auto dir = fs::temp_directory_path() / "symdet_tests";
    fs::create_directories(dir);
    return dir.string();
}

std::string write_worked_instance(const std::string& name, bool with_slice) {
    io::InstanceFile f{ext::worked_example_instance(), 99, std::nullopt};
    if (with_slice) {
        io::SliceData s;
        s.h = {{{Rational(1), Rational(0), Rational(0), Rational(1)},
                {Rational(0), Rational(1), Rational(0), Rational(-1)},
                {Rational(0), Rational(0), Rational(1), Rational(2)}}};
        s.q2 = {};
        s.q2[0] = Rational(1);
        s.q2[10] = Rational(1);
        s.q2[11] = Rational(2);
        s.q2[12] = Rational(-1);
        f.slice = s;
    }
    std::string path = tmpdir() + "/" + name;
    io::write_file(path, io::instance_to_json(f).dump(2) + "\n");
    return path;
}

}  // namespace

TEST_CASE("instance files round trip") {
    SplitMix64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        io::InstanceFile f;
        f.seed = rng.next();
        f.inst.alpha1 = rng.small_rational();
        f.inst.alpha2 = rng.small_rational();
        f.inst.beta1 = rng.small_rational();
        f.inst.beta2 = rng.small_rational();
        for (int i = 0; i < 3; ++i) {
            f.inst.l1[i] = rng.small_rational();
            f.inst.l3[i] = rng.small_rational();
        }
        auto j = io::instance_to_json(f);
        auto back = io::instance_from_json(io::json::parse(j.dump()));
        CHECK(back.seed == f.seed);
        CHECK(back.inst.alpha1 == f.inst.alpha1);
        CHECK(back.inst.l1 == f.inst.l1);
        CHECK(back.inst.l3 == f.inst.l3);
        CHECK(!back.slice.has_value());
    }
}

TEST_CASE("certificate files round trip and replay") {
    ext::Instance inst = ext::worked_example_instance();
    auto cert = ext::make_certificate(inst);
    auto j = io::certificate_to_json(cert);
    auto back = io::certificate_from_json(io::json::parse(j.dump()));
    CHECK(back.sq1 == cert.sq1);
    CHECK(back.conic[2] == cert.conic[2]);
    CHECK(back.w_mixed[1] == cert.w_mixed[1]);
    CHECK(ext::verify_certificate(back));
}

TEST_CASE("gen is deterministic and respects strata") {
    std::string dir = tmpdir() + "/gen1";
    std::ostringstream log1, log2;
    CHECK(cli::cmd_gen(7, 3, "generic", dir, log1) == cli::kOk);
    std::string first = io::read_file(dir + "/instance_generic_7_0.json");
    CHECK(cli::cmd_gen(7, 3, "generic", dir, log2) == cli::kOk);
    CHECK(io::read_file(dir + "/instance_generic_7_0.json") == first);

    CHECK(cli::cmd_gen(7, 2, "delta1_zero", dir, log1) == cli::kOk);
    auto f = io::instance_from_json(
        io::json::parse(io::read_file(dir + "/instance_delta1_zero_7_0.json")));
    CHECK(f.inst.alpha2 * f.inst.beta1 == Rational(1));

    CHECK(cli::cmd_gen(7, 1, "bogus", dir, log1) == cli::kParseError);
}

TEST_CASE("verify pipeline on the worked model") {
    std::string path = write_worked_instance("worked.json", true);
    std::ostringstream log;
    std::string report_path = tmpdir() + "/report.json";
    int code = cli::cmd_verify(path, "all", report_path, log);
    CHECK(code == cli::kOk);
    auto report = io::json::parse(io::read_file(report_path));
    CHECK(report["exit_code"] == 0);
    bool saw_slice = false;
    for (const auto& c : report["checks"]) {
        CHECK(c["status"] == "pass");
        if (c["name"] == "slice") {
            saw_slice = true;
            CHECK(c["detail"].get<std::string>().find("16") != std::string::npos);
        }
    }
    CHECK(saw_slice);
}

TEST_CASE("verify flags degenerate instances") {
    io::InstanceFile f;
    f.inst.alpha1 = Rational(2);
    f.inst.alpha2 = Rational(1);
    f.inst.beta1 = Rational(1);
    f.inst.beta2 = Rational(3);
    f.seed = 5;
    std::string path = tmpdir() + "/degenerate.json";
    io::write_file(path, io::instance_to_json(f).dump());
    std::ostringstream log;
    CHECK(cli::cmd_verify(path, "all", "", log) == cli::kDegenerate);
    CHECK(cli::cmd_verify(path, "degenerate", "", log) == cli::kOk);
}

TEST_CASE("verify replays and rejects tampered certificates") {
    ext::Instance inst = ext::worked_example_instance();
    auto cert = ext::make_certificate(inst);
    std::string good_path = tmpdir() + "/cert.json";
    io::write_file(good_path, io::certificate_to_json(cert).dump());
    std::ostringstream log;
    CHECK(cli::cmd_verify(good_path, "all", "", log) == cli::kOk);

    auto j = io::certificate_to_json(cert);
    std::string eq = j["equations"]["sq1"].get<std::string>();
    // perturb one coefficient: flip the sign of the leading term
    j["equations"]["sq1"] = "-" + eq;
    std::string bad_path = tmpdir() + "/cert_bad.json";
    io::write_file(bad_path, j.dump());
    CHECK(cli::cmd_verify(bad_path, "all", "", log) == cli::kReplayFailure);
}

TEST_CASE("emit formats") {
    std::string path = write_worked_instance("emit_in.json", false);

    std::ostringstream text1, text2;
    CHECK(cli::cmd_emit(path, "text", text1) == cli::kOk);
    CHECK(cli::cmd_emit(path, "text", text2) == cli::kOk);
    CHECK(text1.str() == text2.str());  // stable across runs

    std::ifstream golden(std::string(SYMDET_GOLDEN_DIR) + "/worked_example_emit.txt");
    REQUIRE(golden.good());
    std::stringstream want;
    want << golden.rdbuf();
    CHECK(text1.str() == want.str());

    std::ostringstream jtext;
    CHECK(cli::cmd_emit(path, "json", jtext) == cli::kOk);
    auto j = io::json::parse(jtext.str());
    RingPtr t = rings::tprime();
    auto tp = assembly::assemble_tprime(ext::worked_example_instance());
    CHECK(Poly::parse(t, j["tprime"][0].get<std::string>()) == tp[0]);
    CHECK(Poly::parse(t, j["tprime"][1].get<std::string>()) == tp[1]);
    auto cert = io::certificate_from_json(j["certificate"]);
    CHECK(ext::verify_certificate(cert));

    std::ostringstream cas;
    CHECK(cli::cmd_emit(path, "cas", cas) == cli::kOk);
    CHECK(cas.str().find(tp[0].str()) != std::string::npos);
    CHECK(cas.str().find(tp[1].str()) != std::string::npos);

    std::ostringstream sink;
    CHECK_THROWS_AS(cli::cmd_emit(path, "yaml", sink), UnknownFormat);
}

TEST_CASE("scan command") {
    std::string path = write_worked_instance("scan_in.json", false);
    std::string out1 = tmpdir() + "/scan1.json", out2 = tmpdir() + "/scan2.json";
    std::ostringstream log;
    CHECK(cli::cmd_scan(path, 101, 200, 5, out1, log) == cli::kOk);
    CHECK(cli::cmd_scan(path, 101, 200, 5, out2, log) == cli::kOk);
    CHECK(io::read_file(out1) == io::read_file(out2));
    auto rep = io::json::parse(io::read_file(out1));
    CHECK(rep["drops"].empty());
    CHECK(rep["on_variety"].get<long>() >= 200);

    CHECK(cli::cmd_scan(path, 100, 10, 1, "", log) == cli::kParseError);
}
