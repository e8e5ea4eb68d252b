#pragma once

// Monte Carlo match-up evaluation.

#include "cardbalance/agents.hpp"
#include "cardbalance/card_io.hpp"
#include "cardbalance/error.hpp"
#include "cardbalance/parallel.hpp"
#include "cardbalance/random.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace cardbalance {

/// A deck together with the policy that pilots it.
struct Contender {
    std::string label;
    Deck deck;
    AgentSpec agent;
};

struct CardTally {
    int games_drawn = 0;
    int games_played = 0;
    int wins_when_drawn = 0;
    int wins_when_played = 0;

    CardTally& operator+=(const CardTally& o)
    {
        games_drawn += o.games_drawn;
        games_played += o.games_played;
        wins_when_drawn += o.wins_when_drawn;
        wins_when_played += o.wins_when_played;
        return *this;
    }
    bool operator==(const CardTally&) const = default;
};

/// Per-card tallies for one deck, indexed by pool index. Drawn games (ties)
/// are counted in `draws` only and excluded from every card tally.
struct DeckTelemetry {
    int games = 0; // decisive games
    int wins = 0;
    int draws = 0;
    std::vector<CardTally> cards;

    explicit DeckTelemetry(std::size_t pool_size = 0) : cards(pool_size) {}

    DeckTelemetry& operator+=(const DeckTelemetry& o)
    {
        if (cards.size() < o.cards.size()) {
            cards.resize(o.cards.size());
        }
        games += o.games;
        wins += o.wins;
        draws += o.draws;
        for (std::size_t i = 0; i < o.cards.size(); ++i) {
            cards[i] += o.cards[i];
        }
        return *this;
    }

    void record(const PlayerCards& pc, Outcome outcome, bool won)
    {
        if (outcome == Outcome::Draw) {
            ++draws;
            return;
        }
        ++games;
        wins += won ? 1 : 0;
        for (auto c : pc.drawn) {
            ++cards[c].games_drawn;
            cards[c].wins_when_drawn += won ? 1 : 0;
        }
        for (auto c : pc.played) {
            ++cards[c].games_played;
            cards[c].wins_when_played += won ? 1 : 0;
        }
    }

    [[nodiscard]] double win_rate() const { return games == 0 ? 0.5 : static_cast<double>(wins) / games; }
    bool operator==(const DeckTelemetry&) const = default;
};

struct MatchupResult {
    int wins = 0;   // games won by the first contender
    int losses = 0; // games won by the second contender
    int draws = 0;
    DeckTelemetry first;
    DeckTelemetry second;

    [[nodiscard]] int games() const { return wins + losses + draws; }
    [[nodiscard]] std::optional<double> win_rate() const
    {
        if (wins + losses == 0) {
            return std::nullopt;
        }
        return static_cast<double>(wins) / (wins + losses);
    }
};

inline std::uint64_t game_seed(std::uint64_t base_seed, std::uint64_t matchup_id, std::uint64_t game)
{
    return stable_hash({base_seed, matchup_id, game});
}

/// Plays `games` games between a and b. Even-numbered games seat `a` first,
/// odd-numbered games seat `b` first. Each game's seed depends only on
/// (base_seed, matchup_id, game index), so results do not depend on `jobs`.
inline MatchupResult run_matchup(const CardPool& pool, const Contender& a, const Contender& b, int games,
                                 std::uint64_t base_seed, std::uint64_t matchup_id = 0, int jobs = 1)
{
    if (games < 1) {
        throw ConfigError("games must be >= 1");
    }
    std::vector<GameTelemetry> results(static_cast<std::size_t>(games));
    parallel_for(results.size(), jobs, [&](std::size_t g) {
        const std::uint64_t seed = game_seed(base_seed, matchup_id, g);
        results[g] = (g % 2 == 0) ? play_game(a.deck, a.agent, b.deck, b.agent, pool, seed)
                                  : play_game(b.deck, b.agent, a.deck, a.agent, pool, seed);
    });

    MatchupResult r;
    r.first = DeckTelemetry(pool.size());
    r.second = DeckTelemetry(pool.size());
    for (std::size_t g = 0; g < results.size(); ++g) {
        const GameTelemetry& t = results[g];
        const int a_seat = (g % 2 == 0) ? 0 : 1;
        const Outcome a_wins = a_seat == 0 ? Outcome::Player1Win : Outcome::Player2Win;
        const bool a_won = t.outcome == a_wins;
        if (t.outcome == Outcome::Draw) {
            ++r.draws;
        } else if (a_won) {
            ++r.wins;
        } else {
            ++r.losses;
        }
        r.first.record(t.players[a_seat], t.outcome, a_won);
        r.second.record(t.players[a_seat ^ 1], t.outcome, t.outcome != Outcome::Draw && !a_won);
    }
    return r;
}

/// Pairwise win/loss/draw counts. Row i against column j; an off-diagonal
/// pair is recorded once and mirrored, so W_ij + W_ji = 1 exactly.
class MatchupMatrix {
public:
    MatchupMatrix() = default;
    explicit MatchupMatrix(std::vector<std::string> labels)
        : labels_(std::move(labels)), n_(labels_.size()), wins_(n_ * n_), losses_(n_ * n_), draws_(n_ * n_),
          simulated_(n_ * n_, 0)
    {
    }

    void record(std::size_t i, std::size_t j, int wins, int losses, int draws)
    {
        set(i, j, wins, losses, draws);
        if (i != j) {
            set(j, i, losses, wins, draws);
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] int wins(std::size_t i, std::size_t j) const { return wins_[i * n_ + j]; }
    [[nodiscard]] int losses(std::size_t i, std::size_t j) const { return losses_[i * n_ + j]; }
    [[nodiscard]] int draws(std::size_t i, std::size_t j) const { return draws_[i * n_ + j]; }
    [[nodiscard]] bool simulated(std::size_t i, std::size_t j) const { return simulated_[i * n_ + j] != 0; }

    /// wins / (wins + losses). Unsimulated mirrors are 0.5; anything else
    /// without a decisive game is undefined.
    [[nodiscard]] std::optional<double> win_rate(std::size_t i, std::size_t j) const
    {
        if (!simulated(i, j)) {
            if (i == j) {
                return 0.5;
            }
            return std::nullopt;
        }
        const int decided = wins(i, j) + losses(i, j);
        if (decided == 0) {
            return i == j ? std::optional<double>(0.5) : std::nullopt;
        }
        return static_cast<double>(wins(i, j)) / decided;
    }

    /// Dense N x N rate matrix. Throws IncompleteMatrixError on gaps.
    [[nodiscard]] std::vector<std::vector<double>> rates() const
    {
        std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                auto w = win_rate(i, j);
                if (!w) {
                    throw IncompleteMatrixError("no decisive games for " + labels_[i] + " vs " + labels_[j]);
                }
                out[i][j] = *w;
            }
        }
        return out;
    }

private:
    void set(std::size_t i, std::size_t j, int w, int l, int d)
    {
        wins_[i * n_ + j] = w;
        losses_[i * n_ + j] = l;
        draws_[i * n_ + j] = d;
        simulated_[i * n_ + j] = 1;
    }

    std::vector<std::string> labels_;
    std::size_t n_ = 0;
    std::vector<int> wins_;
    std::vector<int> losses_;
    std::vector<int> draws_;
    std::vector<char> simulated_;
};

struct MetaConfig {
    std::vector<Contender> contenders;
    int games_per_matchup = 100;
    std::vector<double> prevalence; // empty means uniform
    std::uint64_t base_seed = 0;
    bool simulate_mirrors = false;
    int jobs = 1;
};

struct MetaResult {
    MatchupMatrix matrix;
    std::vector<DeckTelemetry> telemetry; // one per contender, over all its games
};

inline std::uint64_t matchup_id(std::size_t i, std::size_t j, std::size_t n)
{
    return static_cast<std::uint64_t>(i * n + j);
}

/// Evaluates every pair i < j (and i == i when mirrors are requested).
inline MetaResult matchup_matrix(const CardPool& pool, const MetaConfig& config)
{
    const std::size_t n = config.contenders.size();
    if (config.games_per_matchup < 1) {
        throw ConfigError("games_per_matchup must be >= 1");
    }
    std::vector<std::string> labels;
    for (const auto& c : config.contenders) {
        labels.push_back(c.label);
    }
    MetaResult out{MatchupMatrix(labels), std::vector<DeckTelemetry>(n, DeckTelemetry(pool.size()))};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = config.simulate_mirrors ? i : i + 1; j < n; ++j) {
            const auto r = run_matchup(pool, config.contenders[i], config.contenders[j], config.games_per_matchup,
                                       config.base_seed, matchup_id(i, j, n), config.jobs);
            out.matrix.record(i, j, r.wins, r.losses, r.draws);
            out.telemetry[i] += r.first;
            out.telemetry[j] += r.second;
        }
    }
    return out;
}

inline std::vector<double> validated_prevalence(const std::vector<double>& p, std::size_t n)
{
    if (p.empty()) {
        return std::vector<double>(n, 1.0 / static_cast<double>(n));
    }
    if (p.size() != n) {
        throw ConfigError("prevalence has " + std::to_string(p.size()) + " entries for " + std::to_string(n) + " decks");
    }
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ConfigError("prevalence entries must be finite and non-negative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("prevalence must sum to 1");
    }
    return p;
}

/// W_i = sum_j W_ij P(j), mirrors included.
inline std::vector<double> meta_win_rate(const std::vector<std::vector<double>>& rates,
                                         const std::vector<double>& prevalence = {})
{
    const std::size_t n = rates.size();
    const auto p = validated_prevalence(prevalence, n);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rates[i].size() != n) {
            throw ConfigError("rate matrix must be square");
        }
        for (std::size_t j = 0; j < n; ++j) {
            out[i] += rates[i][j] * p[j];
        }
    }
    return out;
}

inline std::vector<double> meta_win_rate(const MatchupMatrix& m, const std::vector<double>& prevalence = {})
{
    return meta_win_rate(m.rates(), prevalence);
}

// ---------------------------------------------------------------------------
// Output

inline std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// Header row of labels, one row per deck, trailing "meta" column.
inline std::string matrix_csv(const MatchupMatrix& m, const std::vector<double>& prevalence = {})
{
    const auto rates = m.rates();
    const auto meta = meta_win_rate(rates, prevalence);
    std::string out = "deck";
    for (const auto& l : m.labels()) {
        out += "," + l;
    }
    out += ",meta\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += m.labels()[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            out += "," + format_real(rates[i][j]);
        }
        out += "," + format_real(meta[i]) + "\n";
    }
    return out;
}

/// {deck label: {card id: {games_drawn, games_played, wins_when_drawn,
/// wins_when_played}}} over the cards each deck contains.
inline Json telemetry_json(const CardPool& pool, const std::vector<Contender>& contenders,
                           const std::vector<DeckTelemetry>& telemetry)
{
    Json j = Json::object();
    for (std::size_t d = 0; d < contenders.size(); ++d) {
        Json cards = Json::object();
        for (auto idx : contenders[d].deck.unique_cards()) {
            const CardTally& t = telemetry[d].cards[idx];
            cards[pool[idx].id] = Json{{"games_drawn", t.games_drawn},
                                       {"games_played", t.games_played},
                                       {"wins_when_drawn", t.wins_when_drawn},
                                       {"wins_when_played", t.wins_when_played}};
        }
        j[contenders[d].label] = cards;
    }
    return j;
}

} // namespace cardbalance
