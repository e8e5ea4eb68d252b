#pragma once

#include "cardbalance/card_io.hpp"
#include "cardbalance/engine.hpp"
#include "cardbalance/error.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace cardbalance {

/// Linear evaluation weights. Each term is applied to both sides and the
/// opponent's value subtracted, so a score is always antisymmetric.
struct HeuristicWeights {
    double enemy_hero_damage = 1.0;
    double own_board_attack = 1.0;
    double own_board_health = 1.0;
    double enemy_board_attack = -1.0;
    double enemy_board_health = -1.0;
    double own_hero_hp = 1.0;
    double card_advantage = 1.0;
    double lethal_bonus = 1.0e6;

    /// Largest magnitude any non-terminal state can score.
    [[nodiscard]] double non_lethal_bound() const
    {
        const double board_attack = kMaxBoard * kStatCap + kMaxStat;
        const double board_health = kMaxBoard * kStatCap;
        return 2.0 * (29.0 * std::abs(enemy_hero_damage) + 30.0 * std::abs(own_hero_hp) +
                      board_attack * (std::abs(own_board_attack) + std::abs(enemy_board_attack)) +
                      board_health * (std::abs(own_board_health) + std::abs(enemy_board_health)) +
                      (kMaxHand + kMaxBoard) * std::abs(card_advantage));
    }

    void validate() const
    {
        for (double w : {enemy_hero_damage, own_board_attack, own_board_health, enemy_board_attack, enemy_board_health,
                         own_hero_hp, card_advantage, lethal_bonus}) {
            if (!std::isfinite(w)) {
                throw ConfigError("heuristic weights must be finite");
            }
        }
        if (lethal_bonus <= non_lethal_bound()) {
            throw ConfigError("lethal_bonus must exceed every non-lethal score (" + std::to_string(non_lethal_bound()) +
                              ")");
        }
    }

    bool operator==(const HeuristicWeights&) const = default;
};

enum class PlayStyle : std::uint8_t { Aggro, Control };

inline std::string_view to_string(PlayStyle s)
{
    return s == PlayStyle::Aggro ? "aggro" : "control";
}

inline constexpr int kDefaultNodeBudget = 10'000;

// Aggro values face damage over board presence; Control values its own
// life total, the board and cards in hand.
inline HeuristicWeights default_weights(PlayStyle style)
{
    HeuristicWeights w;
    if (style == PlayStyle::Aggro) {
        w.enemy_hero_damage = 3.0;
        w.own_board_attack = 1.0;
        w.own_board_health = 0.5;
        w.enemy_board_attack = -0.75;
        w.enemy_board_health = -0.25;
        w.own_hero_hp = 0.25;
        w.card_advantage = 0.5;
    } else {
        w.enemy_hero_damage = 0.75;
        w.own_board_attack = 1.25;
        w.own_board_health = 1.25;
        w.enemy_board_attack = -2.0;
        w.enemy_board_health = -1.5;
        w.own_hero_hp = 1.0;
        w.card_advantage = 1.5;
    }
    return w;
}

struct AgentSpec {
    PlayStyle style = PlayStyle::Aggro;
    HeuristicWeights weights = default_weights(PlayStyle::Aggro);
    int node_budget = kDefaultNodeBudget;

    static AgentSpec of(PlayStyle style, int budget = kDefaultNodeBudget)
    {
        return AgentSpec{style, default_weights(style), budget};
    }

    void validate() const
    {
        if (node_budget < 1) {
            throw ConfigError("node_budget must be >= 1");
        }
        weights.validate();
    }

    bool operator==(const AgentSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline double side_value(const PlayerState& p, const PlayerState& o, const HeuristicWeights& w)
{
    int own_attack = 0;
    int own_health = 0;
    for (int i = 0; i < p.board_size; ++i) {
        own_attack += p.board[i].attack;
        own_health += p.board[i].health;
    }
    own_attack += p.weapon.attack;
    int enemy_attack = 0;
    int enemy_health = 0;
    for (int i = 0; i < o.board_size; ++i) {
        enemy_attack += o.board[i].attack;
        enemy_health += o.board[i].health;
    }
    enemy_attack += o.weapon.attack;
    return w.enemy_hero_damage * (kStartingHp - o.hero_hp) + w.own_hero_hp * p.hero_hp +
           w.own_board_attack * own_attack + w.own_board_health * own_health + w.enemy_board_attack * enemy_attack +
           w.enemy_board_health * enemy_health + w.card_advantage * (p.hand_size + p.board_size);
}

} // namespace detail

/// Score of `s` from `perspective`'s point of view (0 or 1).
inline double evaluate(const GameState& s, int perspective, const HeuristicWeights& w)
{
    switch (s.outcome) {
    case Outcome::Player1Win: return perspective == 0 ? w.lethal_bonus : -w.lethal_bonus;
    case Outcome::Player2Win: return perspective == 1 ? w.lethal_bonus : -w.lethal_bonus;
    case Outcome::Draw: return 0.0;
    case Outcome::InProgress: break;
    }
    const PlayerState& p = s.players[perspective];
    const PlayerState& o = s.players[perspective ^ 1];
    return detail::side_value(p, o, w) - detail::side_value(o, p, w);
}

// ---------------------------------------------------------------------------
// Turn search

namespace detail {

struct SearchNode {
    GameState state;
    int parent = -1;
    Action action;
};

// Open-addressing set of 64-bit hashes, cleared in O(capacity) per search.
class HashSet {
public:
    void reset(std::size_t expected)
    {
        std::size_t cap = 64;
        while (cap < expected * 2) {
            cap <<= 1U;
        }
        if (slots_.size() != cap) {
            slots_.assign(cap, 0);
        } else {
            std::fill(slots_.begin(), slots_.end(), 0);
        }
        mask_ = cap - 1;
    }

    /// False if already present.
    bool insert(std::uint64_t h)
    {
        h |= 1U; // 0 marks an empty slot
        for (std::size_t i = h & mask_;; i = (i + 1) & mask_) {
            if (slots_[i] == 0) {
                slots_[i] = h;
                return true;
            }
            if (slots_[i] == h) {
                return false;
            }
        }
    }

private:
    std::vector<std::uint64_t> slots_;
    std::size_t mask_ = 0;
};

struct SearchScratch {
    std::vector<SearchNode> nodes;
    HashSet seen;
    std::vector<Action> actions;
};

inline SearchScratch& search_scratch()
{
    thread_local SearchScratch scratch;
    return scratch;
}

} // namespace detail

/// Breadth-first search over the active player's action sequences for this
/// turn. The root and every distinct state reached count against
/// `node_budget`; states already seen this turn are pruned by hash. Returns
/// the sequence leading to the best-scoring state, followed by EndTurn.
/// Ties keep the first state found, i.e. the shortest sequence and then the
/// smallest by action codes.
inline std::vector<Action> choose_turn(const GameState& root, const AgentSpec& agent)
{
    if (root.terminal()) {
        throw TerminalError("choose_turn on a finished game");
    }
    const int me = root.active;
    const auto budget = static_cast<std::size_t>(std::max(1, agent.node_budget));
    auto& scratch = detail::search_scratch();
    auto& nodes = scratch.nodes;
    auto& seen = scratch.seen;
    nodes.clear();
    nodes.reserve(budget); // no reallocation below, references into nodes stay valid
    seen.reset(budget);

    nodes.push_back({root, -1, {}});
    seen.insert(position_hash(root));
    std::size_t best = 0;
    double best_score = evaluate(root, me, agent.weights);
    bool done = best_score >= agent.weights.lethal_bonus;

    for (std::size_t head = 0; !done && head < nodes.size() && nodes.size() < budget; ++head) {
        if (nodes[head].state.terminal()) {
            continue;
        }
        legal_actions(nodes[head].state, scratch.actions);
        for (const Action& a : scratch.actions) {
            if (a.type == ActionType::EndTurn) {
                continue;
            }
            if (nodes.size() >= budget) {
                break;
            }
            detail::SearchNode& node = nodes.emplace_back();
            node.state = nodes[head].state;
            node.parent = static_cast<int>(head);
            node.action = a;
            GameState& child = node.state;
            detail::apply_unchecked(child, a);
            if (!seen.insert(position_hash(child))) {
                nodes.pop_back();
                continue;
            }
            const double score = evaluate(child, me, agent.weights);
            if (score > best_score) {
                best_score = score;
                best = nodes.size() - 1;
                if (score >= agent.weights.lethal_bonus) {
                    done = true;
                    break;
                }
            }
        }
    }

    std::vector<Action> seq;
    for (auto i = static_cast<int>(best); nodes[i].parent >= 0; i = nodes[i].parent) {
        seq.push_back(nodes[i].action);
    }
    std::reverse(seq.begin(), seq.end());
    if (!nodes[best].state.terminal()) {
        seq.push_back({ActionType::EndTurn, 0, Target::none()});
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Full games

struct PlayerCards {
    std::vector<std::uint16_t> drawn;  // unique pool indices that reached the hand
    std::vector<std::uint16_t> played; // unique pool indices played at least once
};

struct GameTelemetry {
    Outcome outcome = Outcome::InProgress;
    int turns = 0;
    std::array<PlayerCards, 2> players;
};

namespace detail {

inline std::vector<std::uint16_t> cards_in_mask(const PlayerState& p, std::uint32_t mask)
{
    std::vector<std::uint16_t> out;
    for (int pos = 0; pos < kDeckSize; ++pos) {
        if ((mask >> pos) & 1U) {
            out.push_back(p.deck_cards[pos]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::string card_label(const CardPool& pool, std::uint16_t idx)
{
    return idx == kTokenCard ? std::string("token") : pool[idx].id;
}

// Emits one event line per new draw, burn or fatigue hit since `before`.
inline void log_draws(std::ostream& log, const GameState& before, const GameState& after)
{
    for (int p = 0; p < 2; ++p) {
        const PlayerState& b = before.players[p];
        const PlayerState& a = after.players[p];
        for (int pos = b.deck_size - 1; pos >= a.deck_size; --pos) {
            const bool burned = ((a.burned_mask >> pos) & 1U) != 0;
            log << Json{{"event", burned ? "burn" : "draw"}, {"player", p + 1},
                        {"card", card_label(*after.pool, a.deck_cards[pos])}}
                       .dump()
                << '\n';
        }
        for (int f = b.fatigue_counter + 1; f <= a.fatigue_counter; ++f) {
            log << Json{{"event", "fatigue"}, {"player", p + 1}, {"damage", f}}.dump() << '\n';
        }
    }
}

inline void log_action(std::ostream& log, const GameState& s, const Action& a)
{
    Json j{{"event", "action"},         {"turn", s.turn_number},        {"player", s.active + 1},
           {"action", to_string(a.type)}, {"source", a.source},          {"target", to_string(a.target)}};
    const PlayerState& me = s.me();
    switch (a.type) {
    case ActionType::PlayMinion:
    case ActionType::PlaySpell:
    case ActionType::PlayWeapon: j["card"] = card_label(*s.pool, me.hand_card(a.source)); break;
    case ActionType::MinionAttack: j["card"] = card_label(*s.pool, me.board[a.source].card); break;
    case ActionType::HeroAttack: j["card"] = card_label(*s.pool, me.weapon.card); break;
    default: break;
    }
    log << j.dump() << '\n';
}

} // namespace detail

/// Plays one game to completion. With `log` set, writes one JSON object per
/// line: a "game" header, then "draw" / "burn" / "fatigue" / "action" events
/// in order, then a "result" line.
inline GameTelemetry play_game(const Deck& deck1, const AgentSpec& agent1, const Deck& deck2, const AgentSpec& agent2,
                               const CardPool& pool, std::uint64_t seed, std::ostream* log = nullptr)
{
    GameState s = new_game(deck1, deck2, pool, seed);
    if (log) {
        *log << Json{{"event", "game"}, {"seed", seed}}.dump() << '\n';
        GameState empty = s;
        for (auto& p : empty.players) {
            p.deck_size = kDeckSize;
        }
        detail::log_draws(*log, empty, s);
    }
    const std::array<const AgentSpec*, 2> agents{&agent1, &agent2};
    while (!s.terminal()) {
        const auto seq = choose_turn(s, *agents[s.active]);
        for (const Action& a : seq) {
            if (log) {
                detail::log_action(*log, s, a);
                const GameState before = s;
                detail::apply_unchecked(s, a);
                detail::log_draws(*log, before, s);
            } else {
                detail::apply_unchecked(s, a);
            }
            if (s.terminal()) {
                break;
            }
        }
    }
    GameTelemetry t;
    t.outcome = s.outcome;
    t.turns = std::min(s.turn_number, kTurnCap);
    for (int p = 0; p < 2; ++p) {
        t.players[p].drawn = detail::cards_in_mask(s.players[p], s.players[p].drawn_mask());
        t.players[p].played = detail::cards_in_mask(s.players[p], s.players[p].played_mask);
    }
    if (log) {
        *log << Json{{"event", "result"}, {"outcome", to_string(t.outcome)}, {"turns", t.turns}}.dump() << '\n';
    }
    return t;
}

// ---------------------------------------------------------------------------
// Config files: {"style": "aggro"|"control", "node_budget": int,
//                "weights": {<field>: number, ...}}

inline AgentSpec agent_from_json(const Json& j, const std::string& source = "agent.json")
{
    if (!j.is_object() || !j.contains("style") || !j["style"].is_string()) {
        throw ParseError(source + ".style: required string");
    }
    const auto style_name = j["style"].get<std::string>();
    PlayStyle style{};
    if (style_name == "aggro") {
        style = PlayStyle::Aggro;
    } else if (style_name == "control") {
        style = PlayStyle::Control;
    } else {
        throw ParseError(source + ".style: unknown style '" + style_name + "'");
    }
    AgentSpec spec = AgentSpec::of(style);
    if (j.contains("node_budget")) {
        if (!j["node_budget"].is_number_integer()) {
            throw ParseError(source + ".node_budget: expected integer");
        }
        spec.node_budget = j["node_budget"].get<int>();
    }
    if (auto it = j.find("weights"); it != j.end()) {
        auto& w = spec.weights;
        const std::pair<const char*, double*> fields[] = {
            {"enemy_hero_damage", &w.enemy_hero_damage},   {"own_board_attack", &w.own_board_attack},
            {"own_board_health", &w.own_board_health},     {"enemy_board_attack", &w.enemy_board_attack},
            {"enemy_board_health", &w.enemy_board_health}, {"own_hero_hp", &w.own_hero_hp},
            {"card_advantage", &w.card_advantage},         {"lethal_bonus", &w.lethal_bonus},
        };
        for (auto& [key, value] : it->items()) {
            bool known = false;
            for (auto& [name, ptr] : fields) {
                if (key == name) {
                    if (!value.is_number()) {
                        throw ParseError(source + ".weights." + key + ": expected number");
                    }
                    *ptr = value.get<double>();
                    known = true;
                }
            }
            if (!known) {
                throw ParseError(source + ".weights." + key + ": unknown weight");
            }
        }
    }
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return spec;
}

inline Json agent_to_json(const AgentSpec& a)
{
    const auto& w = a.weights;
    return Json{{"style", to_string(a.style)},
                {"node_budget", a.node_budget},
                {"weights",
                 {{"enemy_hero_damage", w.enemy_hero_damage},
                  {"own_board_attack", w.own_board_attack},
                  {"own_board_health", w.own_board_health},
                  {"enemy_board_attack", w.enemy_board_attack},
                  {"enemy_board_health", w.enemy_board_health},
                  {"own_hero_hp", w.own_hero_hp},
                  {"card_advantage", w.card_advantage},
                  {"lethal_bonus", w.lethal_bonus}}}};
}

/// Accepts a config file path or one of the built-in names "aggro" / "control".
inline AgentSpec load_agent(const std::string& path_or_name)
{
    if (path_or_name == "aggro") {
        return AgentSpec::of(PlayStyle::Aggro);
    }
    if (path_or_name == "control") {
        return AgentSpec::of(PlayStyle::Control);
    }
    return agent_from_json(detail::read_json_file(path_or_name), path_or_name);
}

} // namespace cardbalance
