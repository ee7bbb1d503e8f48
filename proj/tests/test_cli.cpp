#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cafcc/cli.hpp"

using namespace cafcc;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "cafcc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, EvalD1) {
    CliRun r = invoke({"eval", "--eq", "D1", "--corners", "1,2,3,4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0\n");
}

TEST(Cli, EvalGoldenPoint) {
    CliRun r = invoke({"eval", "--eq", "A3:d=1", "--point", "1,2,3,4,5,1,2,3,5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "491/150\n");
    CliRun same = invoke({"eval", "--eq", "A3:d=1", "--x", "1", "--corners", "2,3,4,5", "--alpha", "1,2", "--beta", "3,5"});
    EXPECT_EQ(same.out, r.out);
}

TEST(Cli, Solve) {
    CliRun r = invoke({"solve", "--eq", "D1", "--slot", "d", "--corners", "1,2,3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "4\n");
}

TEST(Cli, CafccSmoke) {
    CliRun r = invoke({"cafcc", "--config", "A3:d=0", "--trials", "5", "--seed", "1"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("seed=1"), std::string::npos);
}

TEST(Cli, SeedFallsBackToEnvironment) {
    setenv("CAFCC_SEED", "77", 1);
    CliRun r = invoke({"cafcc", "--config", "A2:0,0", "--trials", "2"});
    unsetenv("CAFCC_SEED");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("seed=77"), std::string::npos);
    CliRun d = invoke({"cafcc", "--config", "A2:0,0", "--trials", "2"});
    EXPECT_NE(d.out.find("seed=0"), std::string::npos);
}

TEST(Cli, LaxVerb) {
    CliRun r = invoke({"lax", "--prop", "P4.2", "--variant", "1", "--branch", "plus", "--trials", "5", "--seed", "7"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("lax_compat: PASS"), std::string::npos);
    EXPECT_NE(r.out.find("lax_offshell: PASS"), std::string::npos);
    CliRun surd = invoke({"lax", "--prop", "P4.6", "--deltas", "1/2,0,1/2", "--branch", "minus", "--trials", "5"});
    EXPECT_EQ(surd.code, 0) << surd.out << surd.err;
    CliRun none = invoke({"lax", "--prop", "P4.2", "--branch", "minus"});
    EXPECT_EQ(none.code, 2);
}

TEST(Cli, Crosscheck) {
    CliRun r = invoke({"crosscheck", "--what", "builder-vs-catalogue", "--family", "B3", "--deltas", "1/2,0,1/2", "--trials", "5"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    CliRun d = invoke({"crosscheck", "--what", "det", "--family", "A2viaC2", "--trials", "5"});
    EXPECT_EQ(d.code, 0) << d.out << d.err;
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"eval", "--eq", "D1", "--corners", "1,2,3,4", "--bogus"}).code, 2);
    EXPECT_EQ(invoke({"eval", "--eq", "A3:d=0", "--corners", "1,2,3,4"}).code, 2);
    EXPECT_EQ(invoke({"eval", "--eq", "D1", "--corners", "1,2,3"}).code, 2);
    EXPECT_EQ(invoke({"eval", "--eq", "A2:1,1,0", "--corners", "1,2,3,4", "--alpha", "1,2", "--beta", "3,4"}).code, 2);
    EXPECT_EQ(invoke({"cafcc", "--config", "ABC:A3,B2,C3:0,0,0"}).code, 2);
    EXPECT_EQ(invoke({"cafcc", "--config", "A3:d=0", "--seed", "-4"}).code, 2);
    EXPECT_EQ(invoke({"suite", "--name", "nonsense"}).code, 2);
    EXPECT_EQ(invoke({"suite", "--name", "det", "--family", "Q4"}).code, 2);
    EXPECT_EQ(invoke({"suite", "--inject-fault", "99:offset"}).code, 2);
}

TEST(Cli, InjectedFaultExitsOneWithFailureJson) {
    CliRun r = invoke({"suite", "--name", "all", "--trials", "1", "--inject-fault", "4:offset", "--json", "-"});
    EXPECT_EQ(r.code, 1);
    auto brace = r.out.find("{\n");
    ASSERT_NE(brace, std::string::npos);
    Json j = Json::parse(r.out.substr(brace));
    EXPECT_EQ(j["schema"], "1");
    EXPECT_FALSE(j["pass"].get<bool>());
    bool cafcc_failed = false;
    for (const auto& rep : j["reports"]) {
        if (rep["suite"] == "cafcc") {
            cafcc_failed = !rep["pass"].get<bool>() && !rep["failures"].empty();
            EXPECT_TRUE(rep["failures"][0].contains("point"));
            EXPECT_TRUE(rep["failures"][0].contains("seed"));
        } else {
            EXPECT_TRUE(rep["pass"].get<bool>()) << rep["suite"];
        }
    }
    EXPECT_TRUE(cafcc_failed);
}

TEST(Cli, JsonFileIsByteStable) {
    const std::string a = testing::TempDir() + "cafcc_a.json", b = testing::TempDir() + "cafcc_b.json";
    for (const auto& f : {a, b})
        ASSERT_EQ(invoke({"suite", "--name", "det", "--trials", "3", "--seed", "5", "--json", f}).code, 0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str());
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST(Cli, ListMentionsEverything) {
    CliRun r = invoke({"list"});
    EXPECT_EQ(r.code, 0);
    for (const char* s : {"A3:d=1", "C2:1,0,1", "ABC:A2,D1,C1", "P4.6[1/2,0,1/2] branch=minus", "spectral_sweep"})
        EXPECT_NE(r.out.find(s), std::string::npos) << s;
}
