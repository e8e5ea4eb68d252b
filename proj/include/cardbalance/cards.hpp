#pragma once

#include "cardbalance/error.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cardbalance {

enum class CardType : std::uint8_t { Minion, Spell, Weapon };

enum class HeroClass : std::uint8_t { Hunter, Paladin, Warlock, Neutral };

enum class EffectKind : std::uint8_t {
    DamageTarget,
    DamageAllEnemyMinions,
    DamageEnemyHero,
    Heal,
    DrawCards,
    BuffMinion,
};

inline constexpr int kMinStat = 0;
inline constexpr int kMaxStat = 10;
inline constexpr int kGeneMin = -3;
inline constexpr int kGeneMax = 3;
inline constexpr int kDeckSize = 30;
inline constexpr int kMaxCopies = 2;

/// Bit set over {Taunt, Charge}.
class KeywordSet {
public:
    static constexpr std::uint8_t Taunt = 1U << 0U;
    static constexpr std::uint8_t Charge = 1U << 1U;

    constexpr KeywordSet() = default;
    constexpr explicit KeywordSet(std::uint8_t bits) : bits_(bits & (Taunt | Charge)) {}

    [[nodiscard]] constexpr bool taunt() const noexcept { return (bits_ & Taunt) != 0; }
    [[nodiscard]] constexpr bool charge() const noexcept { return (bits_ & Charge) != 0; }
    [[nodiscard]] constexpr std::uint8_t bits() const noexcept { return bits_; }

    constexpr bool operator==(const KeywordSet&) const = default;

private:
    std::uint8_t bits_ = 0;
};

struct SpellEffect {
    EffectKind kind = EffectKind::DamageEnemyHero;
    int x = 0;
    int y = 0; // only meaningful for BuffMinion (+x attack / +y health)

    bool operator==(const SpellEffect&) const = default;
};

/// Immutable card definition. Attributes that do not apply to the card's
/// type are zero.
struct Card {
    std::string id;
    std::string name;
    CardType type = CardType::Minion;
    HeroClass hero_class = HeroClass::Neutral;
    int cost = 0;
    int attack = 0;
    int health = 0;     // Minion only
    int durability = 0; // Weapon only
    KeywordSet keywords;
    std::optional<SpellEffect> effect; // Spell only

    bool operator==(const Card&) const = default;
};

inline std::string_view to_string(CardType t)
{
    switch (t) {
    case CardType::Minion: return "minion";
    case CardType::Spell: return "spell";
    case CardType::Weapon: return "weapon";
    }
    return "?";
}

inline std::string_view to_string(HeroClass c)
{
    switch (c) {
    case HeroClass::Hunter: return "hunter";
    case HeroClass::Paladin: return "paladin";
    case HeroClass::Warlock: return "warlock";
    case HeroClass::Neutral: return "neutral";
    }
    return "?";
}

inline std::string_view to_string(EffectKind k)
{
    switch (k) {
    case EffectKind::DamageTarget: return "damage_target";
    case EffectKind::DamageAllEnemyMinions: return "damage_all_enemy_minions";
    case EffectKind::DamageEnemyHero: return "damage_enemy_hero";
    case EffectKind::Heal: return "heal";
    case EffectKind::DrawCards: return "draw_cards";
    case EffectKind::BuffMinion: return "buff_minion";
    }
    return "?";
}

/// Throws ParseError if the card breaks a type or range invariant.
inline void validate_card(const Card& c)
{
    auto fail = [&](const std::string& what) { throw ParseError("card '" + c.id + "': " + what); };
    auto in_range = [](int v, int lo) { return v >= lo && v <= kMaxStat; };

    if (c.id.empty()) {
        throw ParseError("card with empty id");
    }
    if (!in_range(c.cost, 0)) {
        fail("cost must be in [0,10]");
    }
    switch (c.type) {
    case CardType::Minion:
        if (!in_range(c.attack, 0)) fail("attack must be in [0,10]");
        if (!in_range(c.health, 1)) fail("health must be in [1,10]");
        if (c.durability != 0) fail("minion has no durability");
        if (c.effect) fail("minion has no spell effect");
        break;
    case CardType::Weapon:
        if (!in_range(c.attack, 0)) fail("attack must be in [0,10]");
        if (!in_range(c.durability, 1)) fail("durability must be in [1,10]");
        if (c.health != 0) fail("weapon has no health");
        if (c.effect) fail("weapon has no spell effect");
        if (c.keywords.bits() != 0) fail("weapon has no keywords");
        break;
    case CardType::Spell:
        if (c.attack != 0 || c.health != 0 || c.durability != 0) fail("spell has no attack/health/durability");
        if (!c.effect) fail("spell requires an effect");
        if (!in_range(c.effect->x, 0) || !in_range(c.effect->y, 0)) fail("effect magnitudes must be in [0,10]");
        if (c.effect->kind != EffectKind::BuffMinion && c.effect->y != 0) fail("secondary magnitude only applies to buff_minion");
        if (c.keywords.bits() != 0) fail("spell has no keywords");
        break;
    }
}

/// Ordered, immutable collection of unique cards. Pool order defines the
/// chromosome layout.
class CardPool {
public:
    CardPool() = default;

    explicit CardPool(std::vector<Card> cards) : cards_(std::move(cards))
    {
        index_.reserve(cards_.size());
        for (std::size_t i = 0; i < cards_.size(); ++i) {
            validate_card(cards_[i]);
            if (!index_.emplace(cards_[i].id, i).second) {
                throw ParseError("duplicate card id '" + cards_[i].id + "'");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return cards_.size(); }
    [[nodiscard]] bool empty() const noexcept { return cards_.empty(); }
    [[nodiscard]] const Card& operator[](std::size_t i) const { return cards_[i]; }
    [[nodiscard]] const std::vector<Card>& cards() const noexcept { return cards_; }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view id) const
    {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] std::size_t index_of(std::string_view id) const
    {
        if (auto i = find(id)) {
            return *i;
        }
        throw ReferenceError("unknown card id '" + std::string(id) + "'");
    }

    bool operator==(const CardPool& other) const { return cards_ == other.cards_; }

private:
    std::vector<Card> cards_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// A 30-card list over a pool. Stores pool indices resolved at construction;
/// patched pools keep card order, so indices stay valid across patches.
class Deck {
public:
    Deck() = default;

    Deck(HeroClass hero_class, const std::vector<std::string>& ids, const CardPool& pool) : hero_class_(hero_class)
    {
        if (hero_class == HeroClass::Neutral) {
            throw DeckError("deck class must be hunter, paladin or warlock");
        }
        if (ids.size() != static_cast<std::size_t>(kDeckSize)) {
            throw DeckError("deck must contain exactly 30 cards, got " + std::to_string(ids.size()));
        }
        std::unordered_map<std::size_t, int> copies;
        cards_.reserve(ids.size());
        for (const auto& id : ids) {
            auto idx = pool.index_of(id);
            const Card& c = pool[idx];
            if (c.hero_class != HeroClass::Neutral && c.hero_class != hero_class) {
                throw DeckError("card '" + id + "' belongs to class " + std::string(to_string(c.hero_class)));
            }
            if (++copies[idx] > kMaxCopies) {
                throw DeckError("more than 2 copies of '" + id + "' (copy limit)");
            }
            cards_.push_back(idx);
        }
    }

    [[nodiscard]] HeroClass hero_class() const noexcept { return hero_class_; }
    [[nodiscard]] const std::vector<std::size_t>& cards() const noexcept { return cards_; }

    /// Unique pool indices in first-appearance order.
    [[nodiscard]] std::vector<std::size_t> unique_cards() const
    {
        std::vector<std::size_t> out;
        for (auto c : cards_) {
            if (std::find(out.begin(), out.end(), c) == out.end()) {
                out.push_back(c);
            }
        }
        return out;
    }

    bool operator==(const Deck&) const = default;

private:
    HeroClass hero_class_ = HeroClass::Hunter;
    std::vector<std::size_t> cards_;
};

// ---------------------------------------------------------------------------
// Balance patches

enum class Attribute : std::uint8_t { Cost, Attack, Health, Durability };

inline std::string_view to_string(Attribute a)
{
    switch (a) {
    case Attribute::Cost: return "cost";
    case Attribute::Attack: return "attack";
    case Attribute::Health: return "health";
    case Attribute::Durability: return "durability";
    }
    return "?";
}

struct Locus {
    std::size_t card = 0; // pool index
    Attribute attribute = Attribute::Cost;

    bool operator==(const Locus&) const = default;
};

using Layout = std::vector<Locus>;

/// Spells contribute one locus (cost); minions and weapons contribute three.
inline Layout chromosome_layout(const CardPool& pool)
{
    Layout layout;
    layout.reserve(pool.size() * 3);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        layout.push_back({i, Attribute::Cost});
        switch (pool[i].type) {
        case CardType::Spell: break;
        case CardType::Minion:
            layout.push_back({i, Attribute::Attack});
            layout.push_back({i, Attribute::Health});
            break;
        case CardType::Weapon:
            layout.push_back({i, Attribute::Attack});
            layout.push_back({i, Attribute::Durability});
            break;
        }
    }
    return layout;
}

struct PatchVector {
    std::vector<int> genes;

    static PatchVector zero(std::size_t length) { return PatchVector{std::vector<int>(length, 0)}; }

    [[nodiscard]] std::size_t size() const noexcept { return genes.size(); }
    [[nodiscard]] bool is_zero() const
    {
        return std::all_of(genes.begin(), genes.end(), [](int g) { return g == 0; });
    }
    [[nodiscard]] bool in_bounds() const
    {
        return std::all_of(genes.begin(), genes.end(), [](int g) { return g >= kGeneMin && g <= kGeneMax; });
    }

    bool operator==(const PatchVector&) const = default;
};

struct AttributeWeights {
    int mana_weight = 2;
    int other_weight = 1;

    [[nodiscard]] int weight(Attribute a) const noexcept { return a == Attribute::Cost ? mana_weight : other_weight; }
};

enum class MagnitudeMode : std::uint8_t { Effective, Raw };

inline constexpr int lower_bound(Attribute a) noexcept
{
    return (a == Attribute::Health || a == Attribute::Durability) ? 1 : 0;
}

namespace detail {

inline int& attribute_ref(Card& c, Attribute a)
{
    switch (a) {
    case Attribute::Cost: return c.cost;
    case Attribute::Attack: return c.attack;
    case Attribute::Health: return c.health;
    case Attribute::Durability: return c.durability;
    }
    return c.cost;
}

inline void check_length(const Layout& layout, const PatchVector& patch)
{
    if (layout.size() != patch.size()) {
        throw LayoutError("patch has " + std::to_string(patch.size()) + " genes, pool layout has " +
                          std::to_string(layout.size()) + " loci");
    }
}

} // namespace detail

inline int attribute_value(const Card& c, Attribute a)
{
    switch (a) {
    case Attribute::Cost: return c.cost;
    case Attribute::Attack: return c.attack;
    case Attribute::Health: return c.health;
    case Attribute::Durability: return c.durability;
    }
    return c.cost;
}

/// Returns a new pool with every attribute clamped to [lower, 10], where the
/// lower bound is 1 for health/durability and 0 otherwise.
inline CardPool apply_patch(const CardPool& pool, const PatchVector& patch)
{
    const Layout layout = chromosome_layout(pool);
    detail::check_length(layout, patch);
    std::vector<Card> cards = pool.cards();
    for (std::size_t k = 0; k < layout.size(); ++k) {
        int& v = detail::attribute_ref(cards[layout[k].card], layout[k].attribute);
        v = std::clamp(v + patch.genes[k], lower_bound(layout[k].attribute), kMaxStat);
    }
    return CardPool(std::move(cards));
}

/// Realized per-locus deltas after clamping.
inline std::vector<int> effective_change(const CardPool& pool, const PatchVector& patch)
{
    const Layout layout = chromosome_layout(pool);
    detail::check_length(layout, patch);
    std::vector<int> out(layout.size());
    for (std::size_t k = 0; k < layout.size(); ++k) {
        const Attribute a = layout[k].attribute;
        const int before = attribute_value(pool[layout[k].card], a);
        out[k] = std::clamp(before + patch.genes[k], lower_bound(a), kMaxStat) - before;
    }
    return out;
}

/// M = sum |C_i| * w_i, with w_i the mana weight on cost loci.
inline int magnitude(std::span<const int> changes, const AttributeWeights& weights, const Layout& layout)
{
    if (changes.size() != layout.size()) {
        throw LayoutError("change vector does not match layout");
    }
    int m = 0;
    for (std::size_t k = 0; k < changes.size(); ++k) {
        m += std::abs(changes[k]) * weights.weight(layout[k].attribute);
    }
    return m;
}

inline int patch_magnitude(const CardPool& pool, const PatchVector& patch, const AttributeWeights& weights,
                           MagnitudeMode mode = MagnitudeMode::Effective)
{
    const Layout layout = chromosome_layout(pool);
    if (mode == MagnitudeMode::Raw) {
        return magnitude(patch.genes, weights, layout);
    }
    return magnitude(effective_change(pool, patch), weights, layout);
}

/// Magnitude of a patch with every gene at the range limit.
inline int max_magnitude(const Layout& layout, const AttributeWeights& weights)
{
    int m = 0;
    for (const auto& locus : layout) {
        m += kGeneMax * weights.weight(locus.attribute);
    }
    return m;
}

} // namespace cardbalance
