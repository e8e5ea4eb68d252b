#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace cbtest;

namespace {

struct Meta {
    CardPool pool = desk_pool();
    std::vector<Contender> contenders{
        {"hunter", desk_deck("hunter", pool), AgentSpec::of(PlayStyle::Aggro, 100)},
        {"paladin", desk_deck("paladin", pool), AgentSpec::of(PlayStyle::Control, 100)},
        {"warlock", desk_deck("warlock", pool), AgentSpec::of(PlayStyle::Control, 100)},
    };
};

// Table II of the reference small meta, row-major with 0.5 mirrors.
const std::vector<std::vector<double>> kTable{
    {0.5, 0.0666, 0.0384},
    {0.9311, 0.5, 0.7381},
    {0.9622, 0.2648, 0.5},
};

} // namespace

TEST(GameSeed, DependsOnEveryComponent)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t b = 0; b < 4; ++b)
        for (std::uint64_t m = 0; m < 4; ++m)
            for (std::uint64_t g = 0; g < 4; ++g) seen.insert(game_seed(b, m, g));
    EXPECT_EQ(seen.size(), 64U);
    EXPECT_EQ(game_seed(1, 2, 3), game_seed(1, 2, 3));
}

TEST(RunMatchup, CountsAddUp)
{
    const Meta m;
    for (int games : {1, 2, 7, 40}) {
        const auto r = run_matchup(m.pool, m.contenders[0], m.contenders[1], games, 5);
        EXPECT_EQ(r.wins + r.losses + r.draws, games);
        EXPECT_EQ(r.first.games + r.first.draws, games);
        EXPECT_EQ(r.first.wins, r.wins);
        EXPECT_EQ(r.second.wins, r.losses);
    }
    EXPECT_THROW(run_matchup(m.pool, m.contenders[0], m.contenders[1], 0, 5), ConfigError);
}

TEST(RunMatchup, AlternatesSeatsWithPerGameSeeds)
{
    // Oracle: replay each game by hand with the documented seat/seed rule.
    const Meta m;
    const auto& a = m.contenders[0];
    const auto& b = m.contenders[2];
    const int games = 30;
    const auto r = run_matchup(m.pool, a, b, games, 11, 4);
    int wins = 0, losses = 0, draws = 0;
    for (int g = 0; g < games; ++g) {
        const auto seed = game_seed(11, 4, static_cast<std::uint64_t>(g));
        const bool a_first = g % 2 == 0;
        const auto t = a_first ? play_game(a.deck, a.agent, b.deck, b.agent, m.pool, seed)
                               : play_game(b.deck, b.agent, a.deck, a.agent, m.pool, seed);
        if (t.outcome == Outcome::Draw) {
            ++draws;
        } else if ((t.outcome == Outcome::Player1Win) == a_first) {
            ++wins;
        } else {
            ++losses;
        }
    }
    EXPECT_EQ(r.wins, wins);
    EXPECT_EQ(r.losses, losses);
    EXPECT_EQ(r.draws, draws);
}

TEST(RunMatchup, IndependentOfJobs)
{
    const Meta m;
    const auto one = run_matchup(m.pool, m.contenders[1], m.contenders[2], 24, 9, 1, 1);
    const auto many = run_matchup(m.pool, m.contenders[1], m.contenders[2], 24, 9, 1, 4);
    EXPECT_EQ(one.wins, many.wins);
    EXPECT_EQ(one.losses, many.losses);
    EXPECT_EQ(one.first, many.first);
    EXPECT_EQ(one.second, many.second);
}

TEST(MatchupMatrix, PairsAndMirrors)
{
    const Meta m;
    MetaConfig c{m.contenders, 20, {}, 3};
    const auto r = matchup_matrix(m.pool, c);
    const auto& mx = r.matrix;
    ASSERT_EQ(mx.size(), 3U);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_FALSE(mx.simulated(i, i));
        EXPECT_EQ(*mx.win_rate(i, i), 0.5);
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            EXPECT_TRUE(mx.simulated(i, j));
            EXPECT_EQ(mx.wins(i, j) + mx.losses(i, j) + mx.draws(i, j), 20);
            EXPECT_EQ(*mx.win_rate(i, j) + *mx.win_rate(j, i), 1.0);
        }
    }
    // Each deck plays two match-ups of 20 games.
    for (const auto& t : r.telemetry) EXPECT_EQ(t.games + t.draws, 40);

    c.simulate_mirrors = true;
    const auto withm = matchup_matrix(m.pool, c);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(withm.matrix.simulated(i, i));
    EXPECT_EQ(withm.matrix.wins(0, 1), mx.wins(0, 1));
}

TEST(MatchupMatrix, DeterministicAndJobInvariant)
{
    const Meta m;
    MetaConfig c{m.contenders, 16, {}, 21};
    const auto a = matchup_matrix(m.pool, c);
    c.jobs = 3;
    const auto b = matchup_matrix(m.pool, c);
    EXPECT_EQ(matrix_csv(a.matrix), matrix_csv(b.matrix));
    EXPECT_EQ(a.telemetry, b.telemetry);
}

TEST(MatchupMatrix, GapsAreErrors)
{
    MatchupMatrix mx({"a", "b"});
    EXPECT_THROW(mx.rates(), IncompleteMatrixError);
    mx.record(0, 1, 0, 0, 5);
    EXPECT_FALSE(mx.win_rate(0, 1).has_value());
    EXPECT_THROW((void)meta_win_rate(mx), IncompleteMatrixError);
    mx.record(0, 1, 3, 1, 5);
    EXPECT_DOUBLE_EQ(*mx.win_rate(0, 1), 0.75);
    EXPECT_DOUBLE_EQ(*mx.win_rate(1, 0), 0.25);
}

TEST(MetaWinRate, PublishedRows)
{
    const auto w = meta_win_rate(kTable);
    EXPECT_NEAR(w[0], 0.2017, 0.002);
    EXPECT_NEAR(w[0], 0.2018666667, 0.005);
    EXPECT_NEAR(w[1], 0.7227333333, 0.005);
    EXPECT_NEAR(w[2], 0.578, 0.005);
}

TEST(MetaWinRate, DegenerateCases)
{
    const std::vector<std::vector<double>> half(4, std::vector<double>(4, 0.5));
    for (double v : meta_win_rate(half)) EXPECT_DOUBLE_EQ(v, 0.5);
    const auto first = meta_win_rate(kTable, {1.0, 0.0, 0.0});
    for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(first[i], kTable[i][0]);
    const auto weighted = meta_win_rate(kTable, {0.5, 0.25, 0.25});
    EXPECT_DOUBLE_EQ(weighted[1], 0.5 * 0.9311 + 0.25 * 0.5 + 0.25 * 0.7381);
}

TEST(MetaWinRate, BadPrevalence)
{
    EXPECT_THROW(meta_win_rate(kTable, {0.5, 0.5}), ConfigError);
    EXPECT_THROW(meta_win_rate(kTable, {0.5, 0.6, -0.1}), ConfigError);
    EXPECT_THROW(meta_win_rate(kTable, {0.3, 0.3, 0.3}), ConfigError);
    EXPECT_THROW(meta_win_rate(kTable, {std::nan(""), 0.5, 0.5}), ConfigError);
    EXPECT_THROW(meta_win_rate({{0.5, 0.5}, {0.5}}), ConfigError);
}

TEST(MatrixCsv, Shape)
{
    MatchupMatrix mx({"x", "y", "z"});
    mx.record(0, 1, 3, 1, 0);
    mx.record(0, 2, 1, 1, 2);
    mx.record(1, 2, 0, 4, 0);
    const std::string csv = matrix_csv(mx);
    EXPECT_EQ(csv, "deck,x,y,z,meta\n"
                   "x,0.500000,0.750000,0.500000,0.583333\n"
                   "y,0.250000,0.500000,0.000000,0.250000\n"
                   "z,0.500000,1.000000,0.500000,0.666667\n");
}

TEST(Telemetry, DrawsExcludedFromTallies)
{
    DeckTelemetry t(3);
    t.record({{0, 1}, {1}}, Outcome::Player1Win, true);
    t.record({{0, 2}, {0}}, Outcome::Draw, false);
    t.record({{0}, {0}}, Outcome::Player2Win, false);
    EXPECT_EQ(t.games, 2);
    EXPECT_EQ(t.wins, 1);
    EXPECT_EQ(t.draws, 1);
    EXPECT_EQ(t.cards[0], (CardTally{2, 1, 1, 0}));
    EXPECT_EQ(t.cards[1], (CardTally{1, 1, 1, 1}));
    EXPECT_EQ(t.cards[2], (CardTally{}));
}

TEST(Telemetry, AggregationIsAssociativeAndCommutative)
{
    const Meta m;
    std::vector<DeckTelemetry> parts;
    for (std::uint64_t s = 0; s < 3; ++s) {
        parts.push_back(run_matchup(m.pool, m.contenders[0], m.contenders[1], 6, s).first);
    }
    DeckTelemetry left = parts[0];
    left += parts[1];
    left += parts[2];
    DeckTelemetry bc = parts[1];
    bc += parts[2];
    DeckTelemetry right = parts[0];
    right += bc;
    DeckTelemetry swapped = parts[2];
    swapped += parts[0];
    swapped += parts[1];
    EXPECT_EQ(left, right);
    EXPECT_EQ(left, swapped);
}

TEST(Telemetry, JsonListsDeckCards)
{
    const Meta m;
    MetaConfig c{m.contenders, 4, {}, 1};
    const auto r = matchup_matrix(m.pool, c);
    const Json j = telemetry_json(m.pool, m.contenders, r.telemetry);
    ASSERT_EQ(j.size(), 3U);
    for (const auto& con : m.contenders) {
        const auto& deck = j.at(con.label);
        EXPECT_EQ(deck.size(), con.deck.unique_cards().size());
        for (const auto& [id, tally] : deck.items()) {
            EXPECT_LE(tally.at("wins_when_played").get<int>(), tally.at("games_played").get<int>());
            EXPECT_LE(tally.at("games_played").get<int>(), tally.at("games_drawn").get<int>());
        }
    }
}
