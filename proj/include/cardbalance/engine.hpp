#pragma once

// Deterministic two-player card game engine.
//
// Rules: heroes start at 30 HP; mana crystals ramp by one per own turn up to
// 10; player 1 opens with 3 cards, player 2 with 4 and no coin. Each turn
// starts with a draw; drawing from an empty deck deals escalating fatigue
// damage (1, 2, 3, ...). Hand limit 10 (overdraw burns the card), board
// limit 7. Combat is simultaneous between minions, heroes never retaliate.
// Taunt restricts attack targets, Charge waives summoning sickness. A game
// still running after both players finished turn 100 is a draw.

#include "cardbalance/cards.hpp"
#include "cardbalance/error.hpp"
#include "cardbalance/random.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <cstring>
#include <string>
#include <type_traits>
#include <vector>

namespace cardbalance {

inline constexpr int kMaxHand = 10;
inline constexpr int kMaxBoard = 7;
inline constexpr int kStartingHp = 30;
inline constexpr int kMaxMana = 10;
inline constexpr int kTurnCap = 100;
inline constexpr int kHeroPowerCost = 2;
inline constexpr int kOpeningHandFirst = 3;
inline constexpr int kOpeningHandSecond = 4;
inline constexpr int kStatCap = 99; // runtime stats after buffs

inline constexpr std::uint16_t kTokenCard = 0xFFFF;
inline constexpr std::uint8_t kNoSource = 0xFF;

// Field order in the instance/state structs below leaves no padding, and
// unused slots are always reset to their default value, so equal states have
// equal bytes (see position_hash).

struct MinionInstance {
    std::uint16_t card = kTokenCard; // pool index, kTokenCard for hero-power tokens
    std::int16_t attack = 0;
    std::int16_t health = 0;
    std::int16_t max_health = 0;
    std::uint8_t source = kNoSource; // deck position the card was drawn from
    KeywordSet keywords;
    bool can_attack = false;
    std::uint8_t attacks_remaining = 0;
};

struct WeaponInstance {
    std::uint16_t card = 0;
    std::int16_t attack = 0;
    std::int16_t durability = 0;
    std::uint8_t source = kNoSource;
    bool equipped = false;
};

/// One side of the table. The shuffled deck is kept whole: positions
/// [0, deck_size) are still in the deck (top is deck_size - 1) and every
/// position at or above deck_size has been drawn. Hands and boards refer to
/// cards by deck position.
struct PlayerState {
    std::array<std::uint16_t, kDeckSize> deck_cards{};
    std::int16_t hero_hp = kStartingHp;
    std::int16_t armor = 0;
    std::uint32_t played_mask = 0; // deck positions that were played
    std::uint32_t burned_mask = 0; // deck positions lost to a full hand

    std::array<MinionInstance, kMaxBoard> board{};
    WeaponInstance weapon;

    HeroClass hero_class = HeroClass::Hunter;
    std::int8_t mana_crystals = 0;
    std::int8_t mana_available = 0;
    std::uint8_t fatigue_counter = 0;
    bool hero_attacked_this_turn = false;
    bool hero_power_used = false;
    std::uint8_t deck_size = 0;
    std::uint8_t hand_size = 0;
    std::uint8_t board_size = 0;
    std::array<std::uint8_t, kMaxHand> hand{};
    std::uint8_t reserved = 0;

    [[nodiscard]] std::uint16_t hand_card(int i) const { return deck_cards[hand[i]]; }
    [[nodiscard]] bool has_weapon() const { return weapon.equipped; }
    [[nodiscard]] std::uint32_t drawn_mask() const
    {
        const std::uint32_t all = (1U << kDeckSize) - 1U;
        const std::uint32_t remaining = (1U << deck_size) - 1U;
        return (all & ~remaining) & ~burned_mask;
    }
    [[nodiscard]] bool has_taunt() const
    {
        for (int i = 0; i < board_size; ++i) {
            if (board[i].keywords.taunt()) {
                return true;
            }
        }
        return false;
    }
};

static_assert(std::has_unique_object_representations_v<PlayerState>);
static_assert(std::is_trivially_copyable_v<PlayerState>);

enum class Outcome : std::uint8_t { InProgress, Player1Win, Player2Win, Draw };

inline std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::InProgress: return "in_progress";
    case Outcome::Player1Win: return "player1_win";
    case Outcome::Player2Win: return "player2_win";
    case Outcome::Draw: return "draw";
    }
    return "?";
}

/// Full game state. Trivially copyable apart from the pool pointer, which
/// must outlive the state.
struct GameState {
    const CardPool* pool = nullptr;
    std::array<PlayerState, 2> players{};
    int turn_number = 1;
    std::uint8_t active = 0;
    std::uint64_t rng_state = 0;
    Outcome outcome = Outcome::InProgress;

    [[nodiscard]] PlayerState& me() { return players[active]; }
    [[nodiscard]] const PlayerState& me() const { return players[active]; }
    [[nodiscard]] PlayerState& opponent() { return players[active ^ 1U]; }
    [[nodiscard]] const PlayerState& opponent() const { return players[active ^ 1U]; }
    [[nodiscard]] bool terminal() const { return outcome != Outcome::InProgress; }
};

// ---------------------------------------------------------------------------
// Actions

enum class ActionType : std::uint8_t { PlayMinion, PlaySpell, PlayWeapon, MinionAttack, HeroAttack, HeroPower, EndTurn };

enum class TargetKind : std::uint8_t { None, EnemyHero, EnemyMinion, FriendlyMinion };

struct Target {
    TargetKind kind = TargetKind::None;
    std::uint8_t index = 0;

    static constexpr Target none() { return {}; }
    static constexpr Target enemy_hero() { return {TargetKind::EnemyHero, 0}; }
    static constexpr Target enemy_minion(int i) { return {TargetKind::EnemyMinion, static_cast<std::uint8_t>(i)}; }
    static constexpr Target friendly_minion(int i) { return {TargetKind::FriendlyMinion, static_cast<std::uint8_t>(i)}; }

    bool operator==(const Target&) const = default;
};

struct Action {
    ActionType type = ActionType::EndTurn;
    std::uint8_t source = 0; // hand index for plays, board index for minion attacks
    Target target;

    /// Total order used for deterministic tie-breaking.
    [[nodiscard]] constexpr std::uint32_t code() const noexcept
    {
        return (static_cast<std::uint32_t>(type) << 16U) | (static_cast<std::uint32_t>(source) << 8U) |
               (static_cast<std::uint32_t>(target.kind) << 4U) | target.index;
    }

    bool operator==(const Action&) const = default;
};

inline std::string_view to_string(ActionType t)
{
    switch (t) {
    case ActionType::PlayMinion: return "play_minion";
    case ActionType::PlaySpell: return "play_spell";
    case ActionType::PlayWeapon: return "play_weapon";
    case ActionType::MinionAttack: return "minion_attack";
    case ActionType::HeroAttack: return "hero_attack";
    case ActionType::HeroPower: return "hero_power";
    case ActionType::EndTurn: return "end_turn";
    }
    return "?";
}

inline std::string to_string(const Target& t)
{
    switch (t.kind) {
    case TargetKind::None: return "none";
    case TargetKind::EnemyHero: return "enemy_hero";
    case TargetKind::EnemyMinion: return "enemy_minion:" + std::to_string(t.index);
    case TargetKind::FriendlyMinion: return "friendly_minion:" + std::to_string(t.index);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Rules

namespace detail {

inline void update_outcome(GameState& s)
{
    const bool p1_dead = s.players[0].hero_hp <= 0;
    const bool p2_dead = s.players[1].hero_hp <= 0;
    if (p1_dead && p2_dead) {
        s.outcome = Outcome::Draw;
    } else if (p1_dead) {
        s.outcome = Outcome::Player2Win;
    } else if (p2_dead) {
        s.outcome = Outcome::Player1Win;
    }
}

inline void draw_in_place(GameState& s, int player)
{
    PlayerState& p = s.players[player];
    if (p.deck_size == 0) {
        ++p.fatigue_counter;
        p.hero_hp = static_cast<std::int16_t>(p.hero_hp - p.fatigue_counter);
        update_outcome(s);
        return;
    }
    const std::uint8_t pos = --p.deck_size;
    if (p.hand_size < kMaxHand) {
        p.hand[p.hand_size++] = pos;
    } else {
        p.burned_mask |= 1U << pos;
    }
}

inline std::uint8_t take_from_hand(PlayerState& p, int hand_index)
{
    const std::uint8_t pos = p.hand[hand_index];
    for (int i = hand_index; i + 1 < p.hand_size; ++i) {
        p.hand[i] = p.hand[i + 1];
    }
    p.hand[--p.hand_size] = 0;
    p.played_mask |= 1U << pos;
    return pos;
}

inline void remove_dead(PlayerState& p)
{
    int w = 0;
    for (int r = 0; r < p.board_size; ++r) {
        if (p.board[r].health > 0) {
            if (w != r) {
                p.board[w] = p.board[r];
            }
            ++w;
        }
    }
    for (int i = w; i < p.board_size; ++i) {
        p.board[i] = MinionInstance{};
    }
    p.board_size = static_cast<std::uint8_t>(w);
}

inline void damage_minion(MinionInstance& m, int amount)
{
    m.health = static_cast<std::int16_t>(m.health - amount);
}

inline void damage_hero(PlayerState& p, int amount)
{
    p.hero_hp = static_cast<std::int16_t>(p.hero_hp - amount);
}

inline void summon(PlayerState& p, const MinionInstance& m)
{
    p.board[p.board_size++] = m;
}

inline std::int16_t cap_stat(int v)
{
    return static_cast<std::int16_t>(std::min(v, kStatCap));
}

inline void start_turn(GameState& s)
{
    PlayerState& p = s.me();
    p.mana_crystals = static_cast<std::int8_t>(std::min<int>(p.mana_crystals + 1, kMaxMana));
    p.mana_available = p.mana_crystals;
    p.hero_attacked_this_turn = false;
    p.hero_power_used = false;
    for (int i = 0; i < p.board_size; ++i) {
        p.board[i].can_attack = true;
        p.board[i].attacks_remaining = 1;
    }
    draw_in_place(s, s.active);
}

inline void end_turn(GameState& s)
{
    s.active ^= 1U;
    if (s.active == 0) {
        ++s.turn_number;
        if (s.turn_number > kTurnCap) {
            s.outcome = Outcome::Draw;
            return;
        }
    }
    start_turn(s);
}

inline void resolve_spell(GameState& s, const SpellEffect& e, const Target& t)
{
    PlayerState& me = s.me();
    PlayerState& opp = s.opponent();
    switch (e.kind) {
    case EffectKind::DamageTarget:
        if (t.kind == TargetKind::EnemyHero) {
            damage_hero(opp, e.x);
        } else if (t.kind == TargetKind::EnemyMinion) {
            damage_minion(opp.board[t.index], e.x);
            remove_dead(opp);
        } else if (t.kind == TargetKind::FriendlyMinion) {
            damage_minion(me.board[t.index], e.x);
            remove_dead(me);
        }
        break;
    case EffectKind::DamageAllEnemyMinions:
        for (int i = 0; i < opp.board_size; ++i) {
            damage_minion(opp.board[i], e.x);
        }
        remove_dead(opp);
        break;
    case EffectKind::DamageEnemyHero: damage_hero(opp, e.x); break;
    case EffectKind::Heal: me.hero_hp = static_cast<std::int16_t>(std::min(kStartingHp, me.hero_hp + e.x)); break;
    case EffectKind::DrawCards:
        for (int i = 0; i < e.x && !s.terminal(); ++i) {
            draw_in_place(s, s.active);
        }
        break;
    case EffectKind::BuffMinion: {
        MinionInstance& m = me.board[t.index];
        m.attack = cap_stat(m.attack + e.x);
        m.health = cap_stat(m.health + e.y);
        m.max_health = cap_stat(m.max_health + e.y);
        break;
    }
    }
}

/// Applies an action already known to be legal.
inline void apply_unchecked(GameState& s, const Action& a)
{
    const CardPool& pool = *s.pool;
    PlayerState& me = s.me();
    PlayerState& opp = s.opponent();

    switch (a.type) {
    case ActionType::PlayMinion: {
        const Card& c = pool[me.hand_card(a.source)];
        me.mana_available = static_cast<std::int8_t>(me.mana_available - c.cost);
        const std::uint8_t pos = take_from_hand(me, a.source);
        MinionInstance m;
        m.card = me.deck_cards[pos];
        m.source = pos;
        m.attack = static_cast<std::int16_t>(c.attack);
        m.health = static_cast<std::int16_t>(c.health);
        m.max_health = m.health;
        m.keywords = c.keywords;
        m.can_attack = c.keywords.charge();
        m.attacks_remaining = 1;
        summon(me, m);
        break;
    }
    case ActionType::PlaySpell: {
        const Card& c = pool[me.hand_card(a.source)];
        me.mana_available = static_cast<std::int8_t>(me.mana_available - c.cost);
        take_from_hand(me, a.source);
        resolve_spell(s, *c.effect, a.target);
        break;
    }
    case ActionType::PlayWeapon: {
        const Card& c = pool[me.hand_card(a.source)];
        me.mana_available = static_cast<std::int8_t>(me.mana_available - c.cost);
        const std::uint8_t pos = take_from_hand(me, a.source);
        me.weapon = WeaponInstance{me.deck_cards[pos], static_cast<std::int16_t>(c.attack),
                                   static_cast<std::int16_t>(c.durability), pos, true};
        break;
    }
    case ActionType::MinionAttack: {
        MinionInstance& attacker = me.board[a.source];
        --attacker.attacks_remaining;
        if (a.target.kind == TargetKind::EnemyHero) {
            damage_hero(opp, attacker.attack);
        } else {
            MinionInstance& defender = opp.board[a.target.index];
            const int dealt = attacker.attack;
            damage_minion(attacker, defender.attack);
            damage_minion(defender, dealt);
            remove_dead(me);
            remove_dead(opp);
        }
        break;
    }
    case ActionType::HeroAttack: {
        WeaponInstance& w = me.weapon;
        me.hero_attacked_this_turn = true;
        if (a.target.kind == TargetKind::EnemyHero) {
            damage_hero(opp, w.attack);
        } else {
            MinionInstance& defender = opp.board[a.target.index];
            damage_hero(me, defender.attack);
            damage_minion(defender, w.attack);
            remove_dead(opp);
        }
        if (--w.durability <= 0) {
            me.weapon = WeaponInstance{};
        }
        break;
    }
    case ActionType::HeroPower:
        me.mana_available = static_cast<std::int8_t>(me.mana_available - kHeroPowerCost);
        me.hero_power_used = true;
        switch (me.hero_class) {
        case HeroClass::Hunter: damage_hero(opp, 2); break;
        case HeroClass::Warlock:
            damage_hero(me, 2);
            update_outcome(s);
            if (!s.terminal()) {
                draw_in_place(s, s.active);
            }
            break;
        case HeroClass::Paladin: {
            MinionInstance token;
            token.attack = 1;
            token.health = 1;
            token.max_health = 1;
            token.attacks_remaining = 1;
            summon(me, token);
            break;
        }
        case HeroClass::Neutral: break;
        }
        break;
    case ActionType::EndTurn: end_turn(s); break;
    }
    update_outcome(s);
}

template <typename Fn>
void for_each_attack_target(const PlayerState& opp, Fn&& fn)
{
    const bool taunt = opp.has_taunt();
    if (!taunt) {
        fn(Target::enemy_hero());
    }
    for (int i = 0; i < opp.board_size; ++i) {
        if (!taunt || opp.board[i].keywords.taunt()) {
            fn(Target::enemy_minion(i));
        }
    }
}

inline bool hero_power_available(const PlayerState& p)
{
    if (p.hero_power_used || p.mana_available < kHeroPowerCost || p.hero_class == HeroClass::Neutral) {
        return false;
    }
    return p.hero_class != HeroClass::Paladin || p.board_size < kMaxBoard;
}

} // namespace detail

/// Appends every legal action for the active player to `out`, sorted by
/// Action::code(). EndTurn is always last.
inline void legal_actions(const GameState& s, std::vector<Action>& out)
{
    if (s.terminal()) {
        throw TerminalError("legal_actions on a finished game");
    }
    out.clear();
    const CardPool& pool = *s.pool;
    const PlayerState& me = s.me();
    const PlayerState& opp = s.opponent();

    auto playable = [&](int i, CardType type) {
        const Card& c = pool[me.hand_card(i)];
        return c.type == type && c.cost <= me.mana_available;
    };

    for (int i = 0; i < me.hand_size; ++i) {
        if (playable(i, CardType::Minion) && me.board_size < kMaxBoard) {
            out.push_back({ActionType::PlayMinion, static_cast<std::uint8_t>(i), Target::none()});
        }
    }
    for (int i = 0; i < me.hand_size; ++i) {
        if (!playable(i, CardType::Spell)) {
            continue;
        }
        const auto src = static_cast<std::uint8_t>(i);
        const SpellEffect& e = *pool[me.hand_card(i)].effect;
        switch (e.kind) {
        case EffectKind::DamageTarget:
            out.push_back({ActionType::PlaySpell, src, Target::enemy_hero()});
            for (int t = 0; t < opp.board_size; ++t) {
                out.push_back({ActionType::PlaySpell, src, Target::enemy_minion(t)});
            }
            for (int t = 0; t < me.board_size; ++t) {
                out.push_back({ActionType::PlaySpell, src, Target::friendly_minion(t)});
            }
            break;
        case EffectKind::BuffMinion:
            for (int t = 0; t < me.board_size; ++t) {
                out.push_back({ActionType::PlaySpell, src, Target::friendly_minion(t)});
            }
            break;
        default: out.push_back({ActionType::PlaySpell, src, Target::none()}); break;
        }
    }
    for (int i = 0; i < me.hand_size; ++i) {
        if (playable(i, CardType::Weapon)) {
            out.push_back({ActionType::PlayWeapon, static_cast<std::uint8_t>(i), Target::none()});
        }
    }
    for (int i = 0; i < me.board_size; ++i) {
        const MinionInstance& m = me.board[i];
        if (m.can_attack && m.attacks_remaining > 0 && m.attack > 0) {
            detail::for_each_attack_target(
                opp, [&](Target t) { out.push_back({ActionType::MinionAttack, static_cast<std::uint8_t>(i), t}); });
        }
    }
    if (me.has_weapon() && me.weapon.attack > 0 && !me.hero_attacked_this_turn) {
        detail::for_each_attack_target(opp, [&](Target t) { out.push_back({ActionType::HeroAttack, 0, t}); });
    }
    if (detail::hero_power_available(me)) {
        out.push_back({ActionType::HeroPower, 0, Target::none()});
    }
    out.push_back({ActionType::EndTurn, 0, Target::none()});
}

inline std::vector<Action> legal_actions(const GameState& s)
{
    std::vector<Action> out;
    legal_actions(s, out);
    return out;
}

/// Shuffles both decks with the seeded RNG and deals opening hands.
inline GameState new_game(const Deck& deck1, const Deck& deck2, const CardPool& pool, std::uint64_t seed)
{
    GameState s;
    s.pool = &pool;
    s.rng_state = seed;
    Rng rng(seed);
    const std::array<const Deck*, 2> decks{&deck1, &deck2};
    for (int p = 0; p < 2; ++p) {
        const Deck& d = *decks[p];
        if (d.cards().size() != static_cast<std::size_t>(kDeckSize) || d.hero_class() == HeroClass::Neutral) {
            throw DeckError("invalid deck for player " + std::to_string(p + 1));
        }
        PlayerState& ps = s.players[p];
        ps.hero_class = d.hero_class();
        for (int i = 0; i < kDeckSize; ++i) {
            const auto idx = d.cards()[i];
            if (idx >= pool.size()) {
                throw DeckError("deck references a card outside the pool");
            }
            ps.deck_cards[i] = static_cast<std::uint16_t>(idx);
        }
        for (int i = kDeckSize - 1; i > 0; --i) {
            std::swap(ps.deck_cards[i], ps.deck_cards[uniform_int(rng, 0, i)]);
        }
        ps.deck_size = kDeckSize;
    }
    for (int i = 0; i < kOpeningHandFirst; ++i) {
        detail::draw_in_place(s, 0);
    }
    for (int i = 0; i < kOpeningHandSecond; ++i) {
        detail::draw_in_place(s, 1);
    }
    s.players[0].mana_crystals = 1;
    s.players[0].mana_available = 1;
    return s;
}

/// Validated transition: throws IllegalActionError unless `a` is legal.
inline GameState apply_action(const GameState& s, const Action& a)
{
    const auto legal = legal_actions(s);
    if (std::find(legal.begin(), legal.end(), a) == legal.end()) {
        throw IllegalActionError("illegal action " + std::string(to_string(a.type)) + " source " +
                                 std::to_string(a.source) + " target " + to_string(a.target));
    }
    GameState next = s;
    detail::apply_unchecked(next, a);
    return next;
}

inline GameState draw_card(const GameState& s, int player)
{
    GameState next = s;
    detail::draw_in_place(next, player);
    return next;
}

/// Uses the active player's hero power. Hunter: 2 damage to the enemy hero.
/// Warlock: 2 damage to self, draw a card. Paladin: summon a 1/1.
inline GameState hero_power(const GameState& s)
{
    if (s.terminal()) {
        throw TerminalError("hero_power on a finished game");
    }
    const PlayerState& me = s.me();
    if (me.hero_power_used) {
        throw IllegalActionError("hero power already used this turn");
    }
    if (me.mana_available < kHeroPowerCost) {
        throw IllegalActionError("hero power needs 2 mana");
    }
    if (!detail::hero_power_available(me)) {
        throw IllegalActionError("hero power unavailable (board full or no class power)");
    }
    GameState next = s;
    detail::apply_unchecked(next, {ActionType::HeroPower, 0, Target::none()});
    return next;
}

// ---------------------------------------------------------------------------
// Hashing and invariants

namespace detail {

// Multiply-xor accumulation with a full mix on read.
struct Hasher {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    void add(std::uint64_t v)
    {
        h = (h ^ v) * 0x9e3779b97f4a7c15ULL;
        h ^= h >> 32U;
    }
    [[nodiscard]] std::uint64_t value() const { return mix64(h); }
};

} // namespace detail

/// Hash of everything but the shuffled deck order. The deck order is fixed
/// for a whole game, so this tells apart states within one game; state_hash
/// also covers it.
inline std::uint64_t position_hash(const GameState& s)
{
    constexpr std::size_t kOffset = offsetof(PlayerState, hero_hp);
    constexpr std::size_t kWords = (sizeof(PlayerState) - kOffset) / 8;
    constexpr std::size_t kTail = (sizeof(PlayerState) - kOffset) % 8;
    detail::Hasher hs;
    hs.add(static_cast<std::uint64_t>(s.turn_number) | (static_cast<std::uint64_t>(s.active) << 16U) |
           (static_cast<std::uint64_t>(s.outcome) << 24U));
    for (const PlayerState& p : s.players) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(&p) + kOffset;
        for (std::size_t w = 0; w < kWords; ++w) {
            std::uint64_t v;
            std::memcpy(&v, bytes + w * 8, 8);
            hs.add(v);
        }
        if constexpr (kTail > 0) {
            std::uint64_t v = 0;
            std::memcpy(&v, bytes + kWords * 8, kTail);
            hs.add(v);
        }
    }
    return hs.value();
}

inline std::uint64_t state_hash(const GameState& s)
{
    detail::Hasher hs;
    hs.add(position_hash(s));
    hs.add(s.rng_state);
    for (const PlayerState& p : s.players) {
        for (int i = 0; i < kDeckSize; i += 4) {
            hs.add(static_cast<std::uint64_t>(p.deck_cards[i]) | (static_cast<std::uint64_t>(p.deck_cards[i + 1]) << 16U) |
                   (static_cast<std::uint64_t>(p.deck_cards[i + 2 < kDeckSize ? i + 2 : 0]) << 32U) |
                   (static_cast<std::uint64_t>(p.deck_cards[i + 3 < kDeckSize ? i + 3 : 0]) << 48U));
        }
    }
    return hs.value();
}

/// Returns a description of the first violated invariant, if any. Checks
/// stat ranges and zone conservation: every drawn deck position is in
/// exactly one of hand, board, weapon slot, graveyard or burned.
inline std::optional<std::string> check_invariants(const GameState& s)
{
    if (s.turn_number < 1 || s.turn_number > kTurnCap + 1) {
        return "turn_number out of range";
    }
    for (int pi = 0; pi < 2; ++pi) {
        const PlayerState& p = s.players[pi];
        const std::string who = "player " + std::to_string(pi + 1) + ": ";
        if (p.hero_hp > kStartingHp) return who + "hero_hp above 30";
        if (p.hand_size > kMaxHand) return who + "hand above 10";
        if (p.board_size > kMaxBoard) return who + "board above 7";
        if (p.mana_crystals < 0 || p.mana_crystals > kMaxMana) return who + "mana_crystals out of range";
        if (p.mana_available < 0 || p.mana_available > p.mana_crystals) return who + "mana_available out of range";
        if (p.deck_size > kDeckSize) return who + "deck_size out of range";

        const std::uint32_t drawn_region = ((1U << kDeckSize) - 1U) & ~((1U << p.deck_size) - 1U);
        if ((p.burned_mask & ~drawn_region) != 0) return who + "burned card still in deck";
        if ((p.played_mask & ~drawn_region) != 0) return who + "played card still in deck";
        if ((p.played_mask & p.burned_mask) != 0) return who + "card both played and burned";

        std::uint32_t hand_mask = 0;
        for (int i = 0; i < p.hand_size; ++i) {
            const std::uint32_t bit = 1U << p.hand[i];
            if ((bit & drawn_region) == 0 || (hand_mask & bit) != 0 || (bit & (p.played_mask | p.burned_mask)) != 0) {
                return who + "hand slot conflicts with another zone";
            }
            hand_mask |= bit;
        }
        std::uint32_t board_mask = 0;
        for (int i = 0; i < p.board_size; ++i) {
            const MinionInstance& m = p.board[i];
            if (m.health < 1) return who + "dead minion on board";
            if (m.health > m.max_health) return who + "minion health above max";
            if (m.attack < 0) return who + "negative minion attack";
            if (m.source == kNoSource) {
                if (m.card != kTokenCard) return who + "sourceless non-token minion";
                continue;
            }
            const std::uint32_t bit = 1U << m.source;
            if ((bit & p.played_mask) == 0 || (board_mask & bit) != 0) return who + "board slot conflicts";
            if (m.card != p.deck_cards[m.source]) return who + "minion card does not match its source";
            board_mask |= bit;
        }
        if (p.has_weapon()) {
            const std::uint32_t bit = 1U << p.weapon.source;
            if (p.weapon.durability < 1) return who + "weapon with no durability";
            if ((bit & p.played_mask) == 0 || (bit & board_mask) != 0) return who + "weapon slot conflicts";
        }
        if ((hand_mask | p.played_mask | p.burned_mask) != drawn_region) return who + "drawn card lost";
    }
    const bool p1_dead = s.players[0].hero_hp <= 0;
    const bool p2_dead = s.players[1].hero_hp <= 0;
    if ((p1_dead || p2_dead) && !s.terminal()) return "dead hero but game in progress";
    return std::nullopt;
}

} // namespace cardbalance
