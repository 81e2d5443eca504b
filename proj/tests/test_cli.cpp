#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kgcert/cli.hpp"
#include "kgcert/json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "kgcert_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = kgcert::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("eval") {
    Run r = run({"eval", "(t-1)*(t^-1-1)"});
    CHECK(r.code == 0);
    CHECK(r.out == "2 - t - t^-1\n");
    CHECK(run({"eval", "-"}, "  (s2 - 1)*(t2 - 1)\n").code == 2);
    Run g = run({"eval", "-", "--genus", "2"}, "(s2 - 1)*(t2 - 1)\n");
    CHECK(g.code == 0);
    CHECK(g.out == "1 - s2 - t2 + s2*t2\n");
    Run j = run({"eval", "t - 2 + t^-1", "--format", "json"});
    CHECK(kgcert::Json::parse(j.out).at("balanced") == true);
    Run bad = run({"eval", "t + * 2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("position 4") != std::string::npos);
}

TEST_CASE("rho") {
    Run r = run({"rho", "canonical-C", "--genus", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[[1, -2 + t + t^-1], [0, 1]]") == 0);
    CHECK(r.out.find("balanced: yes ×4") != std::string::npos);

    Run fromfile = run({"rho", "-"}, R"({"genus":3,"m":{"0,0,0,0":-1,"0,0,1,0":1},"n":{"0,0,0,0":-2,"0,0,1,0":2}})");
    CHECK(fromfile.code == 0);
    CHECK(fromfile.out.find("[[5 - 2*t - 2*t^-1, -2 + t + t^-1], [8 - 4*t - 4*t^-1, -3 + 2*t + 2*t^-1]]") == 0);
    CHECK(fromfile.out.find("balanced: yes") != std::string::npos);

    Run invalid = run({"rho", "-"}, R"({"genus":2,"m":{"0,0":1},"n":{"1,0":1}})");
    CHECK(invalid.code == 1);
    CHECK(invalid.err.find("self-intersection") != std::string::npos);
    CHECK(run({"rho", "-"}, "{not json").code == 2);
    CHECK(run({"rho", temp_file("kgcert_missing.json").string()}).code == 2);
}

TEST_CASE("tree") {
    Run d = run({"tree", "distance", "[[t,0],[0,t^-1]]", "base"});
    CHECK(d.code == 0);
    CHECK(d.out == "2\n");
    CHECK(run({"tree", "fixes", "[[1, t - 2 + t^-1], [0, 1]]", "adjacent"}).out == "fixed\n");
    CHECK(run({"tree", "fixes", "[[1, t - 2 + t^-1], [0, 1]]", "base", "adjacent"}).out == "moved\n");
    Run tl = run({"tree", "translation", "[[t^2, 1], [0, t^-2]]", "--format", "json"});
    CHECK(kgcert::Json::parse(tl.out).at("length") == 4);
    Run dot = run({"tree", "geodesic", "base", "[[t^2, 0], [0, t^-2]]", "--format", "dot"});
    CHECK(dot.out.find("v3 -- v4") != std::string::npos);
    CHECK(run({"tree", "distance", "base"}).code == 2);
    CHECK(run({"tree", "wander", "base", "base"}).code == 2);
    CHECK(run({"tree", "fixes", "[[t, 0], [0, 1]]", "base"}).code == 2);
}

TEST_CASE("normal-form") {
    Run r = run({"normal-form", "[[1, t - 2 + t^-1], [0, 1]]"});
    CHECK(r.code == 0);
    CHECK(r.out == "B: [[1, -2 + t + t^-1], [0, 1]]\n");
    Run j = run({"normal-form", "-", "--format", "json"}, "[[t^-1, 1], [-1, 0]]");
    CHECK(kgcert::Json::parse(j.out).at("letters").size() == 2);
    CHECK(run({"normal-form", "[[t, 0], [0, 1]]"}).code == 2);
}

TEST_CASE("verify") {
    Run r = run({"verify", "--genus", "2", "--kmax", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.find("records: 10") != std::string::npos);
    CHECK(r.out.find("pairwise checks: 45") != std::string::npos);
    CHECK(run({"verify", "--genus", "2", "--kmax", "1"}).code == 2);
    CHECK(run({"verify", "--genus", "1"}).code == 2);
    CHECK(run({"verify", "--kmax", "many"}).code == 2);
    Run j = run({"verify", "--genus", "3", "--kmax", "5", "--format", "json"});
    CHECK(j.code == 0);
    kgcert::Json cert = kgcert::Json::parse(j.out);
    CHECK(cert.at("verdict") == true);
    CHECK(cert.at("records").size() == 5);

    auto path = temp_file("kgcert_cli_test_cert.json");
    CHECK(run({"verify", "--kmax", "4", "-o", path.string()}).code == 0);
    CHECK(run({"verify", "--check", path.string()}).code == 0);
    kgcert::Json stored;
    std::ifstream(path) >> stored;
    stored["records"][1]["lift"]["m"]["0,1"] = 2;
    CHECK(run({"verify", "--check", "-"}, stored.dump()).code == 1);
    std::filesystem::remove(path);

    Run bad_base = run({"verify", "--kmax", "3", "--lift", "-"}, R"({"genus":2,"m":{},"n":{}})");
    CHECK(bad_base.code == 1);
    CHECK_FALSE(bad_base.err.empty());
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"eval"}).code == 2);
    CHECK(run({"verify", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"verify", "--eps-table", "-"}, R"({"disjoint":[[1,2,3,4,5]]})").code == 2);
}
