#pragma once

// JSON persistence for pools, decks and patches.
//
// cards.json  [ {id, name, type, class, cost, attack?, health?, durability?,
//                keywords?: ["taunt"|"charge"], effect?: {kind, x, y?}} ]
// deck.json   {class, cards: [id x30]}
// patch.json  {pool_hash, genes: [int]}

#include "cardbalance/cards.hpp"
#include "cardbalance/error.hpp"
#include "cardbalance/random.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cardbalance {

using Json = nlohmann::json;

namespace detail {

template <typename Enum, std::size_t N>
Enum parse_enum(const Json& j, const std::string& locus, const std::array<Enum, N>& values)
{
    if (!j.is_string()) {
        throw ParseError(locus + ": expected string");
    }
    const auto s = j.get<std::string>();
    for (auto v : values) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw ParseError(locus + ": unknown value '" + s + "'");
}

inline int get_int(const Json& obj, const char* key, const std::string& locus, int fallback = 0)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        return fallback;
    }
    if (!it->is_number_integer()) {
        throw ParseError(locus + "." + key + ": expected integer");
    }
    return it->get<int>();
}

inline Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace detail

inline HeroClass parse_hero_class(const Json& j, const std::string& locus)
{
    return detail::parse_enum(j, locus,
                              std::array{HeroClass::Hunter, HeroClass::Paladin, HeroClass::Warlock, HeroClass::Neutral});
}

inline Card card_from_json(const Json& j, const std::string& locus)
{
    if (!j.is_object()) {
        throw ParseError(locus + ": expected object");
    }
    Card c;
    if (!j.contains("id") || !j["id"].is_string()) {
        throw ParseError(locus + ".id: required string");
    }
    c.id = j["id"].get<std::string>();
    c.name = j.value("name", c.id);
    if (!j.contains("type")) {
        throw ParseError(locus + ".type: required");
    }
    c.type = detail::parse_enum(j["type"], locus + ".type", std::array{CardType::Minion, CardType::Spell, CardType::Weapon});
    c.hero_class = j.contains("class") ? parse_hero_class(j["class"], locus + ".class") : HeroClass::Neutral;
    if (!j.contains("cost")) {
        throw ParseError(locus + ".cost: required");
    }
    c.cost = detail::get_int(j, "cost", locus);
    c.attack = detail::get_int(j, "attack", locus);
    c.health = detail::get_int(j, "health", locus);
    c.durability = detail::get_int(j, "durability", locus);

    if (auto it = j.find("keywords"); it != j.end()) {
        if (!it->is_array()) {
            throw ParseError(locus + ".keywords: expected array");
        }
        std::uint8_t bits = 0;
        for (const auto& k : *it) {
            const auto s = k.is_string() ? k.get<std::string>() : std::string();
            if (s == "taunt") {
                bits |= KeywordSet::Taunt;
            } else if (s == "charge") {
                bits |= KeywordSet::Charge;
            } else {
                throw ParseError(locus + ".keywords: unsupported keyword '" + s + "'");
            }
        }
        c.keywords = KeywordSet(bits);
    }
    if (auto it = j.find("effect"); it != j.end() && !it->is_null()) {
        const std::string el = locus + ".effect";
        if (!it->is_object() || !it->contains("kind")) {
            throw ParseError(el + ": expected object with kind");
        }
        SpellEffect e;
        e.kind = detail::parse_enum((*it)["kind"], el + ".kind",
                                    std::array{EffectKind::DamageTarget, EffectKind::DamageAllEnemyMinions,
                                               EffectKind::DamageEnemyHero, EffectKind::Heal, EffectKind::DrawCards,
                                               EffectKind::BuffMinion});
        e.x = detail::get_int(*it, "x", el);
        e.y = detail::get_int(*it, "y", el);
        c.effect = e;
    }
    try {
        validate_card(c);
    } catch (const ParseError& e) {
        throw ParseError(locus + ": " + e.what());
    }
    return c;
}

inline Json card_to_json(const Card& c)
{
    Json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["type"] = to_string(c.type);
    j["class"] = to_string(c.hero_class);
    j["cost"] = c.cost;
    if (c.type != CardType::Spell) {
        j["attack"] = c.attack;
    }
    if (c.type == CardType::Minion) {
        j["health"] = c.health;
    }
    if (c.type == CardType::Weapon) {
        j["durability"] = c.durability;
    }
    if (c.keywords.bits() != 0) {
        Json kw = Json::array();
        if (c.keywords.taunt()) kw.push_back("taunt");
        if (c.keywords.charge()) kw.push_back("charge");
        j["keywords"] = kw;
    }
    if (c.effect) {
        Json e{{"kind", to_string(c.effect->kind)}, {"x", c.effect->x}};
        if (c.effect->kind == EffectKind::BuffMinion) {
            e["y"] = c.effect->y;
        }
        j["effect"] = e;
    }
    return j;
}

inline CardPool pool_from_json(const Json& j, const std::string& source = "cards.json")
{
    if (!j.is_array()) {
        throw ParseError(source + ": expected an array of cards");
    }
    std::vector<Card> cards;
    cards.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        cards.push_back(card_from_json(j[i], source + "[" + std::to_string(i) + "]"));
    }
    return CardPool(std::move(cards));
}

inline Json pool_to_json(const CardPool& pool)
{
    Json j = Json::array();
    for (const auto& c : pool.cards()) {
        j.push_back(card_to_json(c));
    }
    return j;
}

/// Hash of the pool's canonical JSON; changes whenever cards are added,
/// removed, reordered or edited.
inline std::string pool_hash(const CardPool& pool)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(pool_to_json(pool).dump())));
    return buf;
}

inline Deck deck_from_json(const Json& j, const CardPool& pool, const std::string& source = "deck.json")
{
    if (!j.is_object()) {
        throw ParseError(source + ": expected object");
    }
    if (!j.contains("class")) {
        throw ParseError(source + ".class: required");
    }
    const HeroClass cls = parse_hero_class(j["class"], source + ".class");
    if (!j.contains("cards") || !j["cards"].is_array()) {
        throw ParseError(source + ".cards: required array");
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < j["cards"].size(); ++i) {
        const auto& v = j["cards"][i];
        if (!v.is_string()) {
            throw ParseError(source + ".cards[" + std::to_string(i) + "]: expected string id");
        }
        ids.push_back(v.get<std::string>());
    }
    try {
        return Deck(cls, ids, pool);
    } catch (const DeckError& e) {
        throw DeckError(source + ": " + e.what());
    } catch (const ReferenceError& e) {
        throw ReferenceError(source + ": " + e.what());
    }
}

inline Json deck_to_json(const Deck& deck, const CardPool& pool)
{
    Json ids = Json::array();
    for (auto idx : deck.cards()) {
        ids.push_back(pool[idx].id);
    }
    return Json{{"class", to_string(deck.hero_class())}, {"cards", ids}};
}

inline Json patch_to_json(const PatchVector& patch, const CardPool& pool)
{
    return Json{{"pool_hash", pool_hash(pool)}, {"genes", patch.genes}};
}

/// Parses a patch and checks it against the pool it claims to target.
inline PatchVector patch_from_json(const Json& j, const CardPool& pool, const std::string& source = "patch.json")
{
    if (!j.is_object() || !j.contains("genes") || !j["genes"].is_array()) {
        throw ParseError(source + ".genes: required array");
    }
    if (!j.contains("pool_hash") || !j["pool_hash"].is_string()) {
        throw ParseError(source + ".pool_hash: required string");
    }
    if (j["pool_hash"].get<std::string>() != pool_hash(pool)) {
        throw LayoutError(source + ": pool_hash does not match the card pool (layout drift)");
    }
    PatchVector p;
    for (std::size_t i = 0; i < j["genes"].size(); ++i) {
        const auto& g = j["genes"][i];
        if (!g.is_number_integer()) {
            throw ParseError(source + ".genes[" + std::to_string(i) + "]: expected integer");
        }
        p.genes.push_back(g.get<int>());
    }
    if (!p.in_bounds()) {
        throw ParseError(source + ".genes: every gene must be in [-3,3]");
    }
    if (p.size() != chromosome_layout(pool).size()) {
        throw LayoutError(source + ": gene count does not match the pool layout");
    }
    return p;
}

inline CardPool load_pool(const std::filesystem::path& path)
{
    return pool_from_json(detail::read_json_file(path), path.string());
}

inline Deck load_deck(const std::filesystem::path& path, const CardPool& pool)
{
    return deck_from_json(detail::read_json_file(path), pool, path.string());
}

inline PatchVector load_patch(const std::filesystem::path& path, const CardPool& pool)
{
    return patch_from_json(detail::read_json_file(path), pool, path.string());
}

/// Writes via a sibling temp file and rename so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out << contents;
    }
    std::filesystem::rename(tmp, path);
}

inline void save_json(const std::filesystem::path& path, const Json& j)
{
    write_file_atomic(path, j.dump(2) + "\n");
}

inline void save_patch(const std::filesystem::path& path, const PatchVector& patch, const CardPool& pool)
{
    save_json(path, patch_to_json(patch, pool));
}

} // namespace cardbalance
