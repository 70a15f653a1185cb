#include "gtest/gtest.h"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string &args)
{
    std::string cmd = std::string(D0D6_BIN) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

json entry_for(const json &table, int a, int r)
{
    for (auto &e : table.at("entries"))
        if (e.at("a") == a && e.at("r") == r)
            return e;
    ADD_FAILURE() << "no entry (" << a << "," << r << ")";
    return {};
}

} // namespace

TEST(Cli, BpsGoldenTable)
{
    auto res = run("bps --chi 1 --amax 7 --rmax 2 --no-cache");
    ASSERT_EQ(res.exit_code, 0);
    auto doc = json::parse(res.out);
    EXPECT_EQ(doc.at("config").at("chi"), "1");
    auto table = doc.at("table");
    const char *expect[] = {"-1", "-6", "-21", "-61", "-165", "-426"};
    for (int a = 2; a <= 7; ++a)
        EXPECT_EQ(entry_for(table, a, 2).at("omega"), expect[a - 2]);

    // chi = 0: every mixed invariant vanishes
    auto zero = run("bps --chi 0 --amax 5 --rmax 3 --no-cache");
    ASSERT_EQ(zero.exit_code, 0);
    for (auto &e : json::parse(zero.out).at("table").at("entries")) {
        if (e.at("a").get<int>() >= 1 && e.at("r").get<int>() >= 1) {
            EXPECT_EQ(e.at("omega"), "0");
        }
    }
}

TEST(Cli, DtSymbolicAppendixValue)
{
    auto res = run("dt --chi sym --amax 3 --rmax 2 --no-cache");
    ASSERT_EQ(res.exit_code, 0);
    auto doc = json::parse(res.out);
    auto dt22 = entry_for(doc.at("table"), 2, 2).at("dtbar");
    ASSERT_TRUE(dt22.is_array());
    ASSERT_EQ(dt22.size(), 1u);
    EXPECT_EQ(dt22[0].at("coeff"), "-5/4");
    EXPECT_EQ(dt22[0].at("vars").at("chi"), 1);
}

TEST(Cli, SeriesGoldenLines)
{
    EXPECT_EQ(run("series coulomb --r 2 --chi 1 --n 7").out,
              "1,-2,7,-18,47,-110,258,-568\n");
    EXPECT_EQ(run("series macmahon --n 4").out, "1,1,3,6,13\n");
    EXPECT_EQ(run("series degenerate --r 1 --chi 0 --n 3").out, "1,0,0,0\n");
}

TEST(Cli, VerifySuitesExitZero)
{
    EXPECT_EQ(run("verify congruence --mod 4 --amax 12").exit_code, 0);
    EXPECT_EQ(run("verify gw --a 1 --r 1 --chi 1 --hmax 2").exit_code, 0);
    EXPECT_EQ(run("verify js --amax 5").exit_code, 0);
}

TEST(Cli, CacheRoundTripIsByteIdentical)
{
    fs::path dir = fs::temp_directory_path() / "d0d6-cache-test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string base = "bps --chi 2 --amax 4 --rmax 2 --cache-dir " + dir.string();

    auto first = run(base);
    ASSERT_EQ(first.exit_code, 0);
    // a cache entry appeared
    int files = 0;
    for (auto &e : fs::directory_iterator(dir))
        files += e.is_regular_file();
    EXPECT_EQ(files, 1);

    auto second = run(base);
    EXPECT_EQ(second.out, first.out);

    // written files are byte-identical across reruns as well
    fs::path out1 = dir / "out1.json", out2 = dir / "out2.json";
    run(base + " --out " + out1.string());
    run(base + " --out " + out2.string());
    EXPECT_EQ(slurp(out1), slurp(out2));
    EXPECT_FALSE(slurp(out1).empty());
    fs::remove_all(dir);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("").exit_code, 2);
    EXPECT_EQ(run("bps --chi notanumber --no-cache").exit_code, 2);
    EXPECT_EQ(run("verify nosuchsuite").exit_code, 2);
    EXPECT_EQ(run("bps --method nosuchmethod --no-cache").exit_code, 2);
}
