#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace cbtest;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string output;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("cardbalance_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliResult run(const std::string& args) const
    {
        const fs::path log = dir_ / "stdout.txt";
        const std::string cmd = std::string(CARDBALANCE_CLI) + " " + args + " > " + log.string() + " 2>&1";
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read(log)};
    }

    static std::string read(const fs::path& p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::string desk(const std::string& f) { return (data_dir() / "desk" / f).string(); }

    static std::string meta_args()
    {
        return "--pool " + desk("cards.json") + " --decks " + desk("hunter.json") + "," + desk("paladin.json") + "," +
               desk("warlock.json") + " --agents " + desk("aggro_fast.json") + "," + desk("control_fast.json") + "," +
               desk("control_fast.json");
    }

    fs::path dir_;
};

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_F(Cli, ValidateRejectsShortDeck)
{
    Json deck = detail::read_json_file(desk("hunter.json"));
    deck["cards"].erase(deck["cards"].begin());
    const fs::path bad = dir_ / "short.json";
    std::ofstream(bad) << deck.dump(2);
    const auto r = run("validate --pool " + desk("cards.json") + " --decks " + bad.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.output.find("30"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("29"), std::string::npos) << r.output;

    const auto ok = run("validate --pool " + desk("cards.json") + " --decks " + desk("hunter.json") + " --agents " +
                        desk("aggro.json"));
    EXPECT_EQ(ok.code, 0) << ok.output;
}

TEST_F(Cli, SimulateIsReproducible)
{
    const auto a = dir_ / "a";
    const auto b = dir_ / "b";
    ASSERT_EQ(run("simulate " + meta_args() + " --games 30 --seed 9 --out " + a.string()).code, 0);
    ASSERT_EQ(run("simulate " + meta_args() + " --games 30 --seed 9 --jobs 2 --out " + b.string()).code, 0);
    const auto csv = read(a / "matrix.csv");
    EXPECT_EQ(csv, read(b / "matrix.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "deck,hunter,paladin,warlock,meta");
    EXPECT_EQ(count_lines(csv), 4);

    const Json manifest = detail::read_json_file(a / "run-manifest.json");
    EXPECT_EQ(manifest.at("command"), "simulate");
    EXPECT_EQ(manifest.at("seed"), 9);
    EXPECT_TRUE(manifest.contains("pool_hash"));
    EXPECT_TRUE(manifest.contains("config_hash"));
    const Json tel = detail::read_json_file(a / "telemetry.json");
    EXPECT_EQ(tel.size(), 3U);
}

TEST_F(Cli, SimulateGameLog)
{
    const auto out = dir_ / "log";
    ASSERT_EQ(run("simulate " + meta_args() + " --games 6 --seed 4 --log-games 2 --out " + out.string()).code, 0);
    std::ifstream in(out / "games.jsonl");
    int games = 0, results = 0;
    for (std::string line; std::getline(in, line);) {
        const Json e = Json::parse(line);
        games += e.at("event") == "game";
        results += e.at("event") == "result";
    }
    EXPECT_EQ(games, 6);
    EXPECT_EQ(results, 6);
}

TEST_F(Cli, EvolveSingleLogsEveryGeneration)
{
    const auto out = dir_ / "ga";
    const auto r = run("evolve-single " + meta_args() +
                       " --games 4 --population 6 --generations 12 --baseline-games 20 --seed 2 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.output;
    const auto csv = read(out / "generations.csv");
    EXPECT_EQ(count_lines(csv), 13);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "generation,min_F,avg_F,max_F,best_M");
    const Json summary = detail::read_json_file(out / "summary.json");
    EXPECT_TRUE(summary.contains("baseline_F"));
    EXPECT_TRUE(summary.contains("best_F"));
    EXPECT_TRUE(fs::exists(out / "checkpoint.json"));

    // Round trip: best patch applies and validates.
    const auto patched = dir_ / "patched.json";
    const auto applied = run("apply-patch --pool " + desk("cards.json") + " --patch " + (out / "best_patch.json").string() +
                             " --out " + patched.string());
    ASSERT_EQ(applied.code, 0) << applied.output;
    const CardPool base = desk_pool();
    const CardPool after = load_pool(patched);
    const auto patch = load_patch(out / "best_patch.json", base);
    EXPECT_EQ(after, apply_patch(base, patch));
}

TEST_F(Cli, EvolveParetoWritesArchive)
{
    const auto out = dir_ / "nsga";
    const auto r = run("evolve-pareto " + meta_args() +
                       " --games 4 --population 6 --generations 3 --baseline-games 20 --seed 2 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.output;
    const auto csv = read(out / "archive.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "individual_id,generation,F,M,on_front,seeded");
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv.substr(csv.find('\n') + 1));
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        ASSERT_EQ(cells.size(), 6U) << line;
        rows.push_back(cells);
    }
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows[0][3], "0");
    EXPECT_EQ(rows[0][5], "1") << "first entry is the seeded zero patch";
    const bool zero_on_front =
        std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r[3] == "0" && r[4] == "1"; });
    EXPECT_TRUE(zero_on_front) << "an M = 0 point should be on the front";
    EXPECT_TRUE(fs::exists(out / "front.json"));
}

TEST_F(Cli, NerfSweepWritesImpact)
{
    const auto out = dir_ / "nerf";
    const auto r = run("nerf-sweep " + meta_args() + " --target hunter --games 4 --seed 1 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.output;
    const auto csv = read(out / "impact.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "card_id,WRD,WRP,WRN,baseline,delta,noop_nerf");
    EXPECT_EQ(count_lines(csv), 1 + static_cast<int>(desk_deck("hunter", desk_pool()).unique_cards().size()));
}

TEST_F(Cli, BadInputsFail)
{
    EXPECT_EQ(run("simulate --pool " + (dir_ / "missing.json").string() + " --decks " + desk("hunter.json")).code, 1);
    EXPECT_NE(run("frobnicate").code, 0);
    EXPECT_NE(run("simulate " + meta_args() + " --games 0 --out " + (dir_ / "x").string()).code, 0);
}
