#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace cbtest;

namespace {

struct Duel {
    CardPool pool = CardPool({
        minion("brute", 2, 3, 3),
        minion("sentry", 2, 1, 4, KeywordSet::Taunt),
        spell("jolt", 1, EffectKind::DamageEnemyHero, 3),
        minion("idol", 10, 0, 1),
        minion("filler_a", 9, 1, 1),
        minion("filler_b", 9, 1, 2),
        minion("filler_c", 9, 2, 1),
        minion("filler_d", 9, 2, 2),
        minion("filler_e", 9, 1, 3),
        minion("filler_f", 9, 3, 1),
        minion("filler_g", 9, 2, 3),
        minion("filler_h", 9, 3, 2),
        minion("filler_i", 9, 3, 3),
        minion("filler_j", 9, 1, 4),
        minion("filler_k", 9, 4, 1),
        minion("filler_l", 9, 4, 2),
        minion("filler_m", 9, 2, 4),
        minion("filler_n", 9, 4, 3),
    });

    Deck inert_deck(HeroClass cls = HeroClass::Hunter) const
    {
        return Deck(cls, pairs_of({"idol", "filler_a", "filler_b", "filler_c", "filler_d", "filler_e", "filler_f",
                                   "filler_g", "filler_h", "filler_i", "filler_j", "filler_k", "filler_l", "filler_m",
                                   "filler_n"}),
                    pool);
    }
    std::size_t id(const char* n) const { return pool.index_of(n); }
};

std::vector<GameState> sample_states(const CardPool& pool, const Deck& a, const Deck& b, int games)
{
    std::vector<GameState> out;
    std::vector<Action> actions;
    for (int g = 0; g < games; ++g) {
        GameState s = new_game(a, b, pool, static_cast<std::uint64_t>(g));
        Rng rng(static_cast<std::uint64_t>(g) + 100);
        while (!s.terminal()) {
            out.push_back(s);
            legal_actions(s, actions);
            s = apply_action(s, actions[static_cast<std::size_t>(uniform_int(rng, 0, int(actions.size()) - 1))]);
        }
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST(Evaluate, TerminalScores)
{
    const Duel d;
    GameState s = new_game(d.inert_deck(), d.inert_deck(), d.pool, 1);
    const auto w = default_weights(PlayStyle::Aggro);
    s.outcome = Outcome::Player1Win;
    EXPECT_EQ(evaluate(s, 0, w), w.lethal_bonus);
    EXPECT_EQ(evaluate(s, 1, w), -w.lethal_bonus);
    s.outcome = Outcome::Draw;
    EXPECT_EQ(evaluate(s, 0, w), 0.0);
}

TEST(Evaluate, Antisymmetric)
{
    const CardPool pool = desk_pool();
    const auto states = sample_states(pool, desk_deck("hunter", pool), desk_deck("warlock", pool), 20);
    for (const auto style : {PlayStyle::Aggro, PlayStyle::Control}) {
        const auto w = default_weights(style);
        for (const auto& s : states) {
            ASSERT_EQ(evaluate(s, 0, w), -evaluate(s, 1, w));
            ASSERT_LT(std::abs(evaluate(s, 0, w)), s.terminal() ? w.lethal_bonus + 1 : w.non_lethal_bound());
        }
    }
}

TEST(Evaluate, AggroPrefersDamagedEnemy)
{
    const Duel d;
    const GameState s = new_game(d.inert_deck(), d.inert_deck(), d.pool, 1);
    GameState hit = s;
    hit.players[1].hero_hp -= 2;
    const auto w = default_weights(PlayStyle::Aggro);
    EXPECT_GT(evaluate(hit, 0, w), evaluate(s, 0, w));
}

TEST(Weights, Validation)
{
    HeuristicWeights w = default_weights(PlayStyle::Control);
    EXPECT_NO_THROW(w.validate());
    w.lethal_bonus = w.non_lethal_bound();
    EXPECT_THROW(w.validate(), ConfigError);
    w = default_weights(PlayStyle::Control);
    w.own_hero_hp = std::numeric_limits<double>::infinity();
    EXPECT_THROW(w.validate(), ConfigError);
    AgentSpec a = AgentSpec::of(PlayStyle::Aggro, 0);
    EXPECT_THROW(a.validate(), ConfigError);
}

TEST(ChooseTurn, FindsLethal)
{
    const Duel d;
    GameState s = new_game(d.inert_deck(), d.inert_deck(), d.pool, 1);
    put_minion(s, 0, d.id("brute"));
    s.players[1].hero_hp = 2;
    for (const auto style : {PlayStyle::Aggro, PlayStyle::Control}) {
        const auto seq = choose_turn(s, AgentSpec::of(style));
        ASSERT_EQ(seq.size(), 1U);
        EXPECT_EQ(seq[0], (Action{ActionType::MinionAttack, 0, Target::enemy_hero()}));
    }
}

TEST(ChooseTurn, LethalThroughLongerLine)
{
    // Kill the taunt with the spell-free line: attack it with one minion, then
    // go face with the other.
    const Duel d;
    GameState s = new_game(d.inert_deck(), d.inert_deck(), d.pool, 1);
    put_minion(s, 0, d.id("brute"));
    put_minion(s, 0, d.id("brute"));
    put_minion(s, 1, d.id("sentry")).health = 3;
    s.players[1].hero_hp = 3;
    GameState end = s;
    for (const auto& a : choose_turn(s, AgentSpec::of(PlayStyle::Control))) end = apply_action(end, a);
    EXPECT_EQ(end.outcome, Outcome::Player1Win);
}

TEST(ChooseTurn, NothingToDo)
{
    const Duel d;
    GameState s = new_game(d.inert_deck(), d.inert_deck(), d.pool, 1);
    set_hand(s, 0, {d.id("idol"), d.id("filler_a")});
    EXPECT_EQ(choose_turn(s, AgentSpec::of(PlayStyle::Aggro)), (std::vector<Action>{{ActionType::EndTurn, 0, {}}}));
}

TEST(ChooseTurn, BudgetOneEndsTurn)
{
    const CardPool pool = desk_pool();
    GameState s = new_game(desk_deck("hunter", pool), desk_deck("paladin", pool), pool, 4);
    set_mana(s, 0, 10);
    ASSERT_GT(legal_actions(s).size(), 1U);
    EXPECT_EQ(choose_turn(s, AgentSpec::of(PlayStyle::Aggro, 1)), (std::vector<Action>{{ActionType::EndTurn, 0, {}}}));
}

TEST(ChooseTurn, TerminalInputThrows)
{
    const Duel d;
    GameState s = new_game(d.inert_deck(), d.inert_deck(), d.pool, 1);
    s.outcome = Outcome::Player2Win;
    EXPECT_THROW(choose_turn(s, AgentSpec::of(PlayStyle::Aggro)), TerminalError);
}

TEST(ChooseTurn, SequencesAreLegalAndNeverWorseThanPassing)
{
    const CardPool pool = desk_pool();
    const auto states = sample_states(pool, desk_deck("paladin", pool), desk_deck("hunter", pool), 6);
    for (const auto style : {PlayStyle::Aggro, PlayStyle::Control}) {
        const AgentSpec agent = AgentSpec::of(style, 300);
        for (const auto& s : states) {
            if (s.terminal()) continue;
            const auto seq = choose_turn(s, agent);
            ASSERT_FALSE(seq.empty());
            GameState cur = s;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                // apply_action validates against legal_actions
                if (seq[i].type == ActionType::EndTurn) {
                    ASSERT_EQ(i + 1, seq.size()) << "EndTurn must come last";
                    break;
                }
                cur = apply_action(cur, seq[i]);
            }
            if (seq.back().type != ActionType::EndTurn) {
                EXPECT_TRUE(cur.terminal());
            }
            EXPECT_GE(evaluate(cur, s.active, agent.weights), evaluate(s, s.active, agent.weights));
            EXPECT_EQ(choose_turn(s, agent), seq);
        }
    }
}

TEST(ChooseTurn, LargerBudgetNeverScoresLower)
{
    const CardPool pool = desk_pool();
    const auto states = sample_states(pool, desk_deck("warlock", pool), desk_deck("paladin", pool), 4);
    const auto w = default_weights(PlayStyle::Control);
    auto final_score = [&](const GameState& s, int budget) {
        GameState cur = s;
        for (const auto& a : choose_turn(s, AgentSpec{PlayStyle::Control, w, budget})) {
            if (a.type == ActionType::EndTurn) break;
            cur = apply_action(cur, a);
        }
        return evaluate(cur, s.active, w);
    };
    for (const auto& s : states) {
        if (s.terminal()) continue;
        EXPECT_GE(final_score(s, 2000), final_score(s, 50));
    }
}

TEST(PlayGame, Deterministic)
{
    const CardPool pool = desk_pool();
    const Deck h = desk_deck("hunter", pool);
    const Deck p = desk_deck("paladin", pool);
    const auto a = AgentSpec::of(PlayStyle::Aggro, 200);
    const auto c = AgentSpec::of(PlayStyle::Control, 200);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::ostringstream l1;
        std::ostringstream l2;
        const auto t1 = play_game(h, a, p, c, pool, seed, &l1);
        const auto t2 = play_game(h, a, p, c, pool, seed, &l2);
        EXPECT_EQ(t1.outcome, t2.outcome);
        EXPECT_EQ(t1.turns, t2.turns);
        EXPECT_EQ(t1.players[0].drawn, t2.players[0].drawn);
        EXPECT_EQ(t1.players[1].played, t2.players[1].played);
        EXPECT_EQ(l1.str(), l2.str());
        EXPECT_EQ(play_game(h, a, p, c, pool, seed).outcome, t1.outcome) << "logging must not change play";
    }
}

TEST(PlayGame, PlayedSubsetOfDrawn)
{
    const CardPool pool = desk_pool();
    const Deck w = desk_deck("warlock", pool);
    const Deck p = desk_deck("paladin", pool);
    const auto c = AgentSpec::of(PlayStyle::Control, 100);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto t = play_game(w, c, p, c, pool, seed);
        ASSERT_NE(t.outcome, Outcome::InProgress);
        for (const auto& side : t.players) {
            EXPECT_TRUE(std::includes(side.drawn.begin(), side.drawn.end(), side.played.begin(), side.played.end()));
        }
    }
}

TEST(PlayGame, BurnDeckBeatsInertDeck)
{
    const Duel d;
    std::vector<std::string> burn_ids;
    std::vector<Card> cards = d.pool.cards();
    for (int i = 0; i < 15; ++i) {
        cards.push_back(spell("burn" + std::to_string(i), 1, EffectKind::DamageEnemyHero, 3));
        burn_ids.push_back("burn" + std::to_string(i));
    }
    const CardPool pool(cards);
    const Deck burn(HeroClass::Warlock, pairs_of(burn_ids), pool);
    const Deck inert(HeroClass::Warlock, ids_of(d.pool, d.inert_deck()), pool);
    for (const auto style : {PlayStyle::Aggro, PlayStyle::Control}) {
        const auto agent = AgentSpec::of(style, 500);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            EXPECT_EQ(play_game(burn, agent, inert, agent, pool, seed).outcome, Outcome::Player1Win);
            EXPECT_EQ(play_game(inert, agent, burn, agent, pool, seed).outcome, Outcome::Player2Win);
        }
    }
}

TEST(PlayGame, AggroGamesAreNoLongerThanControlGames)
{
    const CardPool pool = desk_pool();
    for (const char* name : {"hunter", "paladin", "warlock"}) {
        const Deck deck = desk_deck(name, pool);
        double turns[2] = {0, 0};
        for (int style = 0; style < 2; ++style) {
            const auto agent = AgentSpec::of(style == 0 ? PlayStyle::Aggro : PlayStyle::Control, 100);
            for (std::uint64_t seed = 0; seed < 1000; ++seed) {
                turns[style] += play_game(deck, agent, deck, agent, pool, seed).turns;
            }
        }
        EXPECT_LE(turns[0], turns[1]) << name;
    }
}

TEST(PlayGame, LogIsWellFormed)
{
    const CardPool pool = desk_pool();
    std::ostringstream log;
    const auto t = play_game(desk_deck("hunter", pool), AgentSpec::of(PlayStyle::Aggro, 100),
                             desk_deck("warlock", pool), AgentSpec::of(PlayStyle::Control, 100), pool, 9, &log);
    std::istringstream in(log.str());
    std::string line;
    std::vector<Json> events;
    while (std::getline(in, line)) events.push_back(Json::parse(line));
    ASSERT_GE(events.size(), 9U);
    EXPECT_EQ(events.front()["event"], "game");
    EXPECT_EQ(events.back()["event"], "result");
    EXPECT_EQ(events.back()["outcome"], std::string(to_string(t.outcome)));
    int opening[2] = {0, 0};
    for (std::size_t i = 1; i < events.size() && events[i]["event"] == "draw"; ++i) {
        ++opening[events[i]["player"].get<int>() - 1];
    }
    EXPECT_EQ(opening[0], 3);
    EXPECT_EQ(opening[1], 4);
}

TEST(AgentConfig, JsonRoundTripAndErrors)
{
    AgentSpec a = AgentSpec::of(PlayStyle::Control, 321);
    a.weights.card_advantage = 2.5;
    EXPECT_EQ(agent_from_json(agent_to_json(a)), a);
    EXPECT_EQ(agent_from_json(Json::parse(R"({"style": "aggro"})")), AgentSpec::of(PlayStyle::Aggro));
    EXPECT_THROW(agent_from_json(Json::parse(R"({"style": "midrange"})")), ParseError);
    EXPECT_THROW(agent_from_json(Json::parse(R"({"style": "aggro", "weights": {"speed": 1}})")), ParseError);
    EXPECT_THROW(agent_from_json(Json::parse(R"({"style": "aggro", "node_budget": 0})")), ConfigError);
    EXPECT_THROW(agent_from_json(Json::parse(R"({"style": "aggro", "weights": {"lethal_bonus": 10}})")),
                 ConfigError);
}

TEST(AgentConfig, BundledFiles)
{
    EXPECT_EQ(load_agent((data_dir() / "desk" / "aggro.json").string()), AgentSpec::of(PlayStyle::Aggro));
    EXPECT_EQ(load_agent((data_dir() / "desk" / "control.json").string()), AgentSpec::of(PlayStyle::Control));
    EXPECT_EQ(load_agent((data_dir() / "desk" / "control_fast.json").string()).node_budget, 100);
    EXPECT_EQ(load_agent("aggro"), AgentSpec::of(PlayStyle::Aggro));
}
