#pragma once

// Card impact: win rate when drawn / played, and the single-card nerf sweep.

#include "cardbalance/arena.hpp"
#include "cardbalance/cards.hpp"
#include "cardbalance/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace cardbalance {

inline std::optional<double> wrp(const CardTally& t)
{
    if (t.games_played == 0) {
        return std::nullopt;
    }
    return static_cast<double>(t.wins_when_played) / t.games_played;
}

inline std::optional<double> wrd(const CardTally& t)
{
    if (t.games_drawn == 0) {
        return std::nullopt;
    }
    return static_cast<double>(t.wins_when_drawn) / t.games_drawn;
}

inline std::optional<double> wrp(const DeckTelemetry& t, std::size_t card) { return wrp(t.cards.at(card)); }
inline std::optional<double> wrd(const DeckTelemetry& t, std::size_t card) { return wrd(t.cards.at(card)); }

struct Correlation {
    double pearson = 0.0;
    double spearman = 0.0;
    std::size_t n = 0;
};

namespace detail {

inline double pearson(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw InsufficientDataError("correlation of a constant series is undefined");
    }
    return sxy / std::sqrt(sxx * syy);
}

// 1-based ranks, ties share their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& v)
{
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

} // namespace detail

/// Pearson and Spearman coefficients over the pairs where both values are
/// defined.
inline Correlation correlation(const std::vector<std::optional<double>>& xs, const std::vector<std::optional<double>>& ys)
{
    if (xs.size() != ys.size()) {
        throw ConfigError("correlation inputs differ in length");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] && ys[i]) {
            x.push_back(*xs[i]);
            y.push_back(*ys[i]);
        }
    }
    if (x.size() < 2) {
        throw InsufficientDataError("correlation needs at least 2 defined pairs, got " + std::to_string(x.size()));
    }
    return {detail::pearson(x, y), detail::pearson(detail::average_ranks(x), detail::average_ranks(y)), x.size()};
}

inline Correlation correlation(const std::vector<double>& xs, const std::vector<double>& ys)
{
    return correlation(std::vector<std::optional<double>>(xs.begin(), xs.end()),
                       std::vector<std::optional<double>>(ys.begin(), ys.end()));
}

struct CardImpact {
    std::string card_id;
    std::size_t card_index = 0;
    CardTally tally;
    std::optional<double> wrd;
    std::optional<double> wrp;
    double wrn = 0.0;
    double baseline = 0.0;
    bool noop_nerf = false; // cost already at the cap

    [[nodiscard]] double delta() const { return wrn - baseline; }
};

struct NerfSweepConfig {
    int games = 1000; // per opponent, for the baseline and for every nerf
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// Mean win rate of `target` against each opponent; every run uses the same
/// game seeds so that runs on different pools are paired.
inline double deck_meta_win_rate(const CardPool& pool, const Contender& target, const std::vector<Contender>& opponents,
                                 const NerfSweepConfig& config, DeckTelemetry* telemetry = nullptr)
{
    double sum = 0.0;
    for (std::size_t o = 0; o < opponents.size(); ++o) {
        const auto r = run_matchup(pool, target, opponents[o], config.games, config.seed, o, config.jobs);
        const auto w = r.win_rate();
        if (!w) {
            throw IncompleteMatrixError("no decisive games for " + target.label + " vs " + opponents[o].label);
        }
        sum += *w;
        if (telemetry) {
            *telemetry += r.first;
        }
    }
    return sum / static_cast<double>(opponents.size());
}

/// WRD/WRP from a baseline run, then WRN for a +1 mana nerf of each unique
/// card of the target deck. Sorted by WRN ascending, ties by card id.
inline std::vector<CardImpact> nerf_sweep(const CardPool& pool, const Contender& target,
                                          const std::vector<Contender>& opponents, const NerfSweepConfig& config)
{
    if (config.games < 1) {
        throw ConfigError("games must be >= 1");
    }
    if (opponents.empty()) {
        throw ConfigError("nerf sweep needs at least one opponent");
    }
    DeckTelemetry telemetry(pool.size());
    const double baseline = deck_meta_win_rate(pool, target, opponents, config, &telemetry);

    const Layout layout = chromosome_layout(pool);
    std::vector<CardImpact> report;
    for (auto idx : target.deck.unique_cards()) {
        CardImpact c;
        c.card_id = pool[idx].id;
        c.card_index = idx;
        c.tally = telemetry.cards[idx];
        c.wrd = wrd(c.tally);
        c.wrp = wrp(c.tally);
        c.baseline = baseline;
        c.noop_nerf = pool[idx].cost >= kMaxStat;
        if (c.noop_nerf) {
            c.wrn = baseline;
        } else {
            PatchVector nerf = PatchVector::zero(layout.size());
            for (std::size_t k = 0; k < layout.size(); ++k) {
                if (layout[k].card == idx && layout[k].attribute == Attribute::Cost) {
                    nerf.genes[k] = 1;
                }
            }
            c.wrn = deck_meta_win_rate(apply_patch(pool, nerf), target, opponents, config);
        }
        report.push_back(std::move(c));
    }
    std::stable_sort(report.begin(), report.end(), [](const CardImpact& a, const CardImpact& b) {
        if (a.wrn != b.wrn) return a.wrn < b.wrn;
        return a.card_id < b.card_id;
    });
    return report;
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

/// Undefined WRD/WRP are written as empty fields.
inline std::string impact_csv(const std::vector<CardImpact>& report)
{
    std::string out = "card_id,WRD,WRP,WRN,baseline,delta,noop_nerf\n";
    for (const auto& c : report) {
        out += c.card_id + "," + format_optional(c.wrd) + "," + format_optional(c.wrp) + "," + format_real(c.wrn) +
               "," + format_real(c.baseline) + "," + format_real(c.delta()) + "," + (c.noop_nerf ? "1" : "0") + "\n";
    }
    return out;
}

} // namespace cardbalance
