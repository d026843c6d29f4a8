#include "ershov/cli.hpp"
#include "ershov/json_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ershov;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("ershov_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string put(std::string const& name, json const& j) const
    {
        fs::path const p = dir_ / name;
        std::ofstream(p) << j.dump();
        return p.string();
    }
    std::string path(std::string const& name) const { return (dir_ / name).string(); }

    static CliRun cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "ershov");
        std::vector<char const*> argv;
        for (auto const& a : args) {
            argv.push_back(a.c_str());
        }
        std::ostringstream out;
        std::ostringstream err;
        int const code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    static std::string slurp(std::string const& p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

json dark_config()
{
    return json::parse(R"({"scenario":"dark","level":"2","support":20,"stages":120,"seed":4,
                           "opponents":{"generate":{"count":3}},"machines":{"generate":{"count":3}}})");
}

} // namespace

TEST_F(Cli, ConstructWritesDeterministicOutput)
{
    std::string const cfg = put("dark.json", dark_config());
    auto const a = cli({"construct", "--config", cfg, "--out", path("a.json")});
    auto const b = cli({"construct", "--config", cfg, "--out", path("b.json"), "--audit"});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    EXPECT_FALSE(slurp(path("a.json")).empty());

    auto const c = cli({"construct", "--config", cfg, "--out", path("c.json"), "--seed", "99"});
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, ConstructThenAuditRoundTrips)
{
    for (std::string scenario : {"dark", "mutually-dark", "omega-pair"}) {
        json cfg = dark_config();
        cfg["scenario"] = scenario;
        cfg.erase("machines");
        cfg["machines_u"] = {{"generate", {{"count", 2}}}};
        cfg["machines_v"] = {{"generate", {{"count", 2}}}};
        std::string const c = put(scenario + ".json", cfg);
        ASSERT_EQ(cli({"construct", "--config", c, "--out", path(scenario + ".out")}).code, 0) << scenario;
        auto const a = cli({"audit", "--in", path(scenario + ".out")});
        EXPECT_EQ(a.code, 0) << a.out;
        EXPECT_TRUE(json::parse(a.out)["pass"].get<bool>());
    }
}

TEST_F(Cli, PiAtLevelOneIsAPreconditionFailure)
{
    json cfg = dark_config();
    cfg["variant"] = "pi";
    cfg["level"] = "1";
    auto const r = cli({"construct", "--config", put("pi.json", cfg)});
    EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, InputErrors)
{
    EXPECT_EQ(cli({"construct", "--config", path("missing.json")}).code, 2);
    EXPECT_EQ(cli({"construct", "--config", put("bad.json", json{{"scenario", "nope"}})}).code, 2);
    json wrong = dark_config();
    wrong["level"] = "w+w";
    EXPECT_EQ(cli({"construct", "--config", put("w.json", wrong)}).code, 2);
    std::ofstream(path("garbage.json")) << "{not json";
    EXPECT_EQ(cli({"validate-trace", "--trace", path("garbage.json")}).code, 2);
    EXPECT_EQ(cli({"audit", "--trace", path("missing.json")}).code, 2);
    EXPECT_EQ(cli({"audit"}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
}

TEST_F(Cli, AuditFlagsCorruptedGamma)
{
    ApproxTrace const good(Kind::Sigma, Notation::fin(1), Domain::Relation, 4, 1,
                           {Change{cell_of(0, 1), 1, true, Notation::fin(0)}}, {1});
    auto const ok = cli({"audit", "--trace", put("good.json", to_json(good))});
    EXPECT_EQ(ok.code, 0) << ok.out;
    json bad = to_json(good);
    bad["changes"][0][3] = "2";
    auto const r = cli({"audit", "--trace", put("bad.json", bad)});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("gamma-increase"), std::string::npos);
    EXPECT_EQ(cli({"validate-trace", "--trace", path("good.json")}).code, 0);
    auto const v = cli({"validate-trace", "--trace", path("bad.json")});
    EXPECT_EQ(v.code, 1);
    EXPECT_NE(v.out.find("gamma-increase"), std::string::npos);
}

TEST_F(Cli, Reduce)
{
    std::string const id2 = put("id2.json", to_json(id_n(2, 4)));
    std::string const id3 = put("id3.json", to_json(id_n(3, 6)));
    auto const a = cli({"reduce", "--r", id2, "--s", id3});
    EXPECT_EQ(a.code, 0);
    FiniteMap const f = json::parse(a.out)["reduction"].get<FiniteMap>();
    EXPECT_TRUE(verify_reduction(f, id_n(2, 4), id_n(3, 6)));
    auto const b = cli({"reduce", "--r", id3, "--s", id2});
    EXPECT_EQ(b.code, 1);
    EXPECT_EQ(b.out, "none\n");
    std::string const id = put("id.json", to_json(id_rel(4)));
    auto const c = cli({"reduce", "--r", id, "--s", id});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(json::parse(c.out)["reduction"], json::parse("[0,1,2,3]"));
    EXPECT_EQ(cli({"reduce", "--r", path("nope.json"), "--s", id}).code, 2);
}

TEST_F(Cli, Poset)
{
    json const catalog = json::array({to_json(id_n(1, 3)), to_json(id_n(2, 3)), to_json(id_n(3, 3)),
                                      to_json(id_n(2, 3))});
    auto const r = cli({"poset", "--catalog", put("cat.json", catalog), "--dot", path("h.dot")});
    EXPECT_EQ(r.code, 0);
    json const j = json::parse(r.out.substr(0, r.out.find('\n')));
    EXPECT_EQ(j["degrees"], json::parse("[[0],[1,3],[2]]"));
    EXPECT_EQ(j["hasse"], json::parse("[[0,1],[1,2]]"));
    EXPECT_NE(slurp(path("h.dot")).find("digraph"), std::string::npos);

    auto const e = cli({"poset", "--catalog", put("empty.json", json::array())});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(json::parse(e.out.substr(0, e.out.find('\n')))["matrix"], json::array());
    EXPECT_EQ(cli({"poset", "--catalog", put("obj.json", json::object())}).code, 2);
}
