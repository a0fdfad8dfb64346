#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "psrlab/psrlab.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("psrlab_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    CliRun run(const std::string& args)
    {
        const fs::path err = dir / "stderr.txt";
        const std::string cmd
            = "cd '" + dir.string() + "' && '" PSRLAB_CLI "' " + args + " 2>'" + err.string() + "'";
        CliRun r;
        FILE* p = popen(cmd.c_str(), "r");
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, p)) > 0)
            r.out.append(buf, n);
        const int status = pclose(p);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = slurp(err);
        return r;
    }

    static std::string data(const std::string& name) { return "'" + std::string(PSRLAB_EXAMPLES) + "/" + name + "'"; }

    fs::path dir;
};

} // namespace

TEST_F(Cli, ConstructDecoratedDoubleWheel)
{
    auto r = run("construct --family ddw --m 7 --out ddw7");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "e(G)=120 e(H)=41 ratio=41/120\n");
    ASSERT_TRUE(fs::exists(dir / "ddw7.graph"));
    ASSERT_TRUE(fs::exists(dir / "ddw7.plane"));
    auto c = run("check --graph ddw7.graph --plane ddw7.plane");
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.out, "SATURATED\n");
}

TEST_F(Cli, ConstructWritesWhatTheLibraryBuilds)
{
    ASSERT_EQ(run("construct --family general --m 9 --k1 2 --k2 0 --out g").code, 0);
    auto fi = psrlab::general_family(9, 2, 0);
    EXPECT_EQ(slurp(dir / "g.graph"), psrlab::to_graph_text(fi.host));
    EXPECT_EQ(slurp(dir / "g.plane"), psrlab::to_plane_text(fi.witness));
    auto back = psrlab::parse_plane(slurp(dir / "g.plane"));
    EXPECT_EQ(psrlab::to_plane_text(back), psrlab::to_plane_text(fi.witness));
    auto cls = run("classify --graph g.graph");
    EXPECT_EQ(cls.code, 0);
    EXPECT_NE(cls.out.find("k1=2 k2=0\n"), std::string::npos);
}

TEST_F(Cli, PsrOnFiveCycle)
{
    auto r = run("psr --graph " + data("c5.graph") + " --out w.plane");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "1/1\n");
    auto c = run("check --graph " + data("c5.graph") + " --plane w.plane");
    EXPECT_EQ(c.out, "SATURATED\n");
    EXPECT_EQ(run("psr --naive --graph " + data("k4.graph") + " --out k.plane").out, "1/1\n");
}

TEST_F(Cli, CheckReportsAddablePairWithMap)
{
    auto r = run("check --graph " + data("k4.graph") + " --plane " + data("c4.plane"));
    EXPECT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "ADDABLE 0 2 face 0");
    std::string line;
    int maps = 0;
    while (std::getline(in, line))
        maps += line.rfind("map ", 0) == 0;
    EXPECT_EQ(maps, 4);
}

TEST_F(Cli, SaturateThenAudit)
{
    ASSERT_EQ(run("saturate --graph " + data("k4.graph") + " --plane " + data("c4.plane") + " --seed 3 --out s.plane")
                  .code,
              0);
    EXPECT_EQ(run("check --graph " + data("k4.graph") + " --plane s.plane").out, "SATURATED\n");

    ASSERT_EQ(run("construct --family ddw --m 8 --out d").code, 0);
    auto a = run("audit --graph d.graph --plane d.plane --map d.map --mode twinfree");
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.out.find("check ratio pass"), std::string::npos);
    EXPECT_NE(a.out.find("floor CONSISTENT\n"), std::string::npos);
    EXPECT_NE(a.out.find("audit pass\n"), std::string::npos);
}

TEST_F(Cli, ErrorsAndExitCodes)
{
    auto parse = run("psr --graph " + data("bad.graph"));
    EXPECT_EQ(parse.code, 1);
    EXPECT_NE(parse.err.find("line 4"), std::string::npos) << parse.err;
    EXPECT_TRUE(parse.out.empty());

    EXPECT_EQ(run("psr --graph missing.graph").code, 1);
    EXPECT_EQ(run("check --graph " + data("c5.graph") + " --plane " + data("c4.plane")).code, 1);
    EXPECT_EQ(run("construct --family ddw --m 6 --out x").code, 1);
    EXPECT_FALSE(fs::exists(dir / "x.graph"));

    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("construct --family nonsense --out x").code, 2);
    EXPECT_EQ(run("psr").code, 2);
    EXPECT_EQ(run("audit --graph a --plane b --map c --mode sideways").code, 2);
}

TEST_F(Cli, OutputIsReproducible)
{
    auto a = run("construct --family example12 --n 4 --out a");
    auto b = run("construct --family example12 --n 4 --out b");
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(slurp(dir / "a.graph"), slurp(dir / "b.graph"));
    EXPECT_EQ(slurp(dir / "a.plane"), slurp(dir / "b.plane"));
    auto p = run("psr --graph a.graph --out p1.plane");
    auto q = run("psr --graph a.graph --out p2.plane");
    EXPECT_EQ(p.out, q.out);
    EXPECT_EQ(slurp(dir / "p1.plane"), slurp(dir / "p2.plane"));
}
