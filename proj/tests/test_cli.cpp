#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cliffq/cli.hpp"

using namespace cliffq;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CLIFFQ_TEST_DATA_DIR) + "/" + name; }

} // namespace

TEST(Cli, SignatureParsing) {
    EXPECT_EQ(cli::parse_signature("3,1"), Signature(3, 1));
    EXPECT_THROW(cli::parse_signature("3"), domain_error);
    EXPECT_THROW(cli::parse_signature("3,x"), domain_error);
    EXPECT_THROW(cli::parse_signature("0,0"), domain_error);
}

TEST(Cli, Eval) {
    auto r = run({"eval", "--sig", "2,0", "--bindings", data("e1_e2.json"), "[U,V]"});
    EXPECT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_EQ(r.out, "2 e12\nqtype: 2~\n");

    r = run({"eval", "--sig", "1,0", "--bindings", data("e1.json"), "U**2"});
    EXPECT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_EQ(r.out, "1 e\nqtype: 0~\n");

    r = run({"eval", "--sig", "4,0", "--bindings", data("two_planes.json"), "wexp(U)"});
    EXPECT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_EQ(r.out, "1 e + 1 e12 + 1 e34 + 1 e1234\nqtype: 0~2~\n");
}

TEST(Cli, EvalErrorsExitTwo) {
    EXPECT_EQ(run({"eval", "--sig", "3,0", "--bindings", data("e1_e2.json"), "[U,V]"}).code, cli::exit_usage);
    EXPECT_EQ(run({"eval", "--sig", "2,0", "--bindings", data("e1_e2.json"), "[U,W]"}).code, cli::exit_usage);
    EXPECT_EQ(run({"eval", "--sig", "2,0", "--bindings", data("e1_e2.json"), "U:2"}).code, cli::exit_usage);
    EXPECT_EQ(run({"eval", "--sig", "2,0", "--bindings", data("missing.json"), "U"}).code, cli::exit_usage);
    const auto r = run({"eval", "--sig", "2,0", "--bindings", data("e1_e2.json"), "[U"});
    EXPECT_EQ(r.code, cli::exit_usage);
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
}

TEST(Cli, Infer) {
    EXPECT_EQ(run({"infer", "{U:0, V:2, W:3}"}).out, "1~\n");
    EXPECT_EQ(run({"infer", "[U:2, V:2, W:2]"}).out, "0~\n");
    EXPECT_EQ(run({"infer", "3/2"}).out, "0~\n");
    EXPECT_EQ(run({"infer", "U + V"}).code, cli::exit_usage);
}

TEST(Cli, CheckExitCodes) {
    auto r = run({"check", "--sig", "3,1", "--trials", "200", "[U:1,V:3]"});
    EXPECT_EQ(r.code, cli::exit_ok) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);

    r = run({"check", "--sig", "4,0", "--trials", "50", "U:#2 ^^ 2"});
    EXPECT_EQ(r.code, cli::exit_ok);
    EXPECT_NE(r.out.find("grades {4}"), std::string::npos);

    r = run({"check", "--sig", "3,0", "U:#5 ** 2"});
    EXPECT_EQ(r.code, cli::exit_usage);
    EXPECT_NE(r.err.find("infeasible"), std::string::npos);

    EXPECT_EQ(run({"check", "--sig", "3,0", "--trials", "0", "U:1"}).code, cli::exit_usage);
    EXPECT_EQ(run({"check", "--sig", "3,0"}).code, cli::exit_usage);
}

TEST(Cli, CheckJson) {
    const auto r = run({"check", "--sig", "3,1", "--trials", "20", "--json", "{U:1, V:1}"});
    ASSERT_EQ(r.code, cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["inferred"], "0~");
    EXPECT_EQ(j["trials"], 20);
    EXPECT_TRUE(j["failures"].empty());
}

TEST(Cli, CheckFile) {
    const std::string path = testing::TempDir() + "cliffq_exprs.txt";
    {
        std::ofstream f(path);
        f << "# bracket rules\n[U:1, V:3]\n\n{U:1, V:2}   # trailing comment\nU:#2 ** 2\n";
    }
    const auto r = run({"check", "--sig", "4,0", "--trials", "10", "--file", path});
    EXPECT_EQ(r.code, cli::exit_ok) << r.out << r.err;
    EXPECT_NE(r.out.find("3 expressions, 0 failed"), std::string::npos);
}

TEST(Cli, Tables) {
    auto r = run({"tables", "--which", "musical"});
    EXPECT_EQ(r.code, cli::exit_ok);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')).find("o"), 0u);
    r = run({"tables", "--which", "triple", "--format", "csv"});
    EXPECT_EQ(r.code, cli::exit_ok);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), R"(k,l,m,"{k,l,m}","[k,l,m]",type)");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 21);
    EXPECT_EQ(run({"tables", "--which", "nope"}).code, cli::exit_usage);
}

TEST(Cli, UsageAndHelp) {
    EXPECT_EQ(run({}).code, cli::exit_usage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::exit_usage);
    EXPECT_EQ(run({"--help"}).code, cli::exit_ok);
}
