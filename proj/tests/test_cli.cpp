#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "slag_cli/commands.hpp"
#include "slag_cli/floer_io.hpp"

using Json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

/// Runs the slag binary through the shell; stderr is merged into the output when asked.
Run runSlag(const std::string& args, const std::string& env = "", bool mergeErr = false) {
    const std::string cmd = env + " " SLAG_BINARY " " + args + (mergeErr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Json json(const Run& r) { return Json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("lawlor") {
        const Run r = runSlag("lawlor --a 1,1,1");
        CHECK(r.code == 0);
        const Json j = json(r);
        for (const auto& p : j["phi"]) CHECK(std::abs(p.get<double>() - 1.0471975512) < 1e-9);
        CHECK(std::abs(j["sumPhi"].get<double>() - 3.14159265358979) < 1e-8);
        CHECK(j.contains("version"));
        CHECK(j["tolerances"]["angleSum"] == 1e-8);
        CHECK(j["potentialLimits"]["minusInfinity"] == 0.0);

        const Run r2 = runSlag("lawlor --a 1,2,3 --samples 200");
        CHECK(r2.code == 0);
        CHECK(json(r2)["residuals"]["omegaMax"].get<double>() < 1e-8);

        const Run bad = runSlag("lawlor --a 1,-1,1", "", true);
        CHECK(bad.code == 2);
        CHECK(bad.out.find("a_k must be positive") != std::string::npos);
    }

    TEST_CASE("expander") {
        const Run r = runSlag("expander --alpha 1 --a 1,1,1");
        CHECK(r.code == 0);
        const Json j = json(r);
        CHECK(j["thetaLimits"][0] == 0.0);
        CHECK(std::abs(j["thetaLimits"][1].get<double>() - (j["sumPhi"].get<double>() - 3.141592653589793)) < 1e-7);

        // The printed factor c = ½ gives A = 2(π − Σφ)/α; it disagrees with the potential limit.
        const Json j2 = json(runSlag("expander --alpha 2 --a 1,1,1"));
        const double sum = j2["sumPhi"];
        CHECK(std::abs(j2["conventions"]["printed"]["A_closedForm"].get<double>() - 2.0 * (3.141592653589793 - sum) / 2.0) < 1e-12);
        CHECK(std::abs(j2["A_closedForm"].get<double>() - j2["A_potentialLimit"].get<double>()) < 1e-7);
        CHECK(runSlag("expander --alpha 2 --a 1,1,1 --potential-factor 0.5").code == 1);

        const Run bad = runSlag("expander --alpha 0 --a 1,1,1", "", true);
        CHECK(bad.code == 2);
        CHECK(bad.out.find("alpha must be positive; use lawlor") != std::string::npos);
    }

    TEST_CASE("invert") {
        const Run r = runSlag("invert --mode lawlor --phi 1.0472,1.0472,1.0472 --A 1.0");
        CHECK(r.code == 0);
        const Json j = json(r);
        CHECK(std::abs(j["a"][0].get<double>() - j["a"][2].get<double>()) < 1e-9);
        CHECK(j["forwardResidual"].get<double>() < 1e-6);
        CHECK(j["trace"].contains("residualNorms"));

        CHECK(runSlag("invert --mode jlt --alpha 1 --phi 2.0,2.0,2.0").code == 2);
        CHECK(runSlag("invert --mode lawlor --phi 1.0,1.0,1.0 --A 1.0").code == 2);

        const Json jj = json(runSlag("invert --mode jlt --alpha 1 --phi 0.6,0.7,0.8"));
        CHECK(jj["forwardResidual"].get<double>() < 1e-6);
    }

    TEST_CASE("verify subsets and fault injection") {
        const Run r = runSlag("verify --only maslov");
        CHECK(r.code == 0);
        const Json j = json(r);
        CHECK(j["checks"].size() == 1);
        CHECK(j["checks"]["maslov"]["pass"] == true);

        const Run f = runSlag("verify --only expander", "SLAG_FAULT_THETA=1e-3");
        CHECK(f.code == 1);
        CHECK(json(f)["checks"]["expander"]["pass"] == false);

        CHECK(runSlag("verify --only nonsense").code == 2);
    }

    TEST_CASE("full battery") {
        const Run r = runSlag("verify");
        CHECK(r.code == 0);
        const Json j = json(r);
        CHECK(j["checks"].size() == slag::cli::verify_check_names().size());
        for (const auto& [name, c] : j["checks"].items()) {
            INFO(name);
            CHECK(c["pass"] == true);
        }
    }

    TEST_CASE("determinism and seeds") {
        const Run a = runSlag("lawlor --a 0.5,1.5,2.5 --samples 50 --seed 7");
        const Run b = runSlag("lawlor --a 0.5,1.5,2.5 --samples 50 --seed 7");
        CHECK(a.out == b.out);
        const Json e = json(runSlag("lawlor --a 1,1,1 --samples 5", "SLAG_SEED=99"));
        CHECK(e["seed"] == 99);
        CHECK(runSlag("lawlor --a 1,1,1", "SLAG_SEED=x").code == 2);
    }

    TEST_CASE("formats") {
        const Run csv = runSlag("expansion --m 3 --k-max 2 --grid 5 --format csv");
        CHECK(csv.code == 0);
        CHECK(csv.out.rfind("k,t,A,dA\n", 0) == 0);
        const Run flat = runSlag("lawlor --a 1,1,1 --samples 5 --format csv");
        CHECK(flat.out.rfind("key,value\n", 0) == 0);
        CHECK(flat.out.find("/version,") != std::string::npos);
        CHECK(runSlag("lawlor --a 1,1,1 --format xml").code == 2);
    }

    TEST_CASE("expansion weights") {
        CHECK(runSlag("expansion --weight consistent").code == 0);
        CHECK(runSlag("expansion --weight printed").code == 1);
    }

    TEST_CASE("plumbing") {
        const Run r = runSlag("plumbing --a 1,2,3 --samples 50");
        CHECK(r.code == 0);
        const Json j = json(r);
        CHECK(j["chartRoundTripMax"].get<double>() < 1e-12);
        CHECK(j["decay"]["radialPower"]["monotone"] == true);
    }

    TEST_CASE("floer documents") {
        const std::string path = "cli_floer_golden.json";
        std::ofstream(path) << R"({"generators":[{"id":"p","degree":0,"fL":0,"fLp":0}],"differential":[]})";
        const Run r = runSlag("floer " + path);
        CHECK(r.code == 0);
        CHECK(json(r)["cohomology"] == Json({{"0", 1}}));

        std::ofstream(path) << R"({"generators":[{"id":"a","degree":0},{"id":"b","degree":1},{"id":"c","degree":2}],
                                   "differential":[["a","b"],["b","c"]]})";
        const Run bad = runSlag("floer " + path);
        CHECK(bad.code == 1);
        CHECK(json(bad)["valid"] == false);

        std::ofstream(path) << R"({"generators":[{"id":"a"}]})";
        CHECK(runSlag("floer " + path).code == 2);
        CHECK(runSlag("floer does-not-exist.json").code == 2);
        std::remove(path.c_str());
    }

    TEST_CASE("floer document round trip") {
        const Json doc = Json::parse(R"({"generators":[{"id":"a","degree":0,"fL":1.5,"fLp":0.5,"tag":"infinity0"},
                                                        {"id":"b","degree":1}],
                                          "differential":[["a","b"],["a","b"],["a","b"]],"m":3})");
        const slag::cli::FloerDocument d = slag::cli::parse_floer_document(doc);
        CHECK(d.counts.at({"a", "b"}) == 1);
        CHECK(d.generators[0].tag == slag::GeneratorTag::Infinity0);
        const slag::cli::FloerDocument e = slag::cli::parse_floer_document(slag::cli::floer_document_to_json(d));
        CHECK(e.counts == d.counts);
        CHECK(e.m == d.m);
        CHECK(e.generators[0].fL == 1.5);
    }

    TEST_CASE("usage errors") {
        CHECK(runSlag("").code == 2);
        CHECK(runSlag("lawlor").code == 2);
        CHECK(runSlag("--help").code == 0);
        const Run h = runSlag("--help");
        CHECK(h.out.find("radians") != std::string::npos);
    }
}
