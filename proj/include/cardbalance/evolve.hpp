#pragma once

// Search over balance patches: a generational GA on meta balance F, and
// NSGA-II on (F, M).

#include "cardbalance/arena.hpp"
#include "cardbalance/cards.hpp"
#include "cardbalance/error.hpp"
#include "cardbalance/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace cardbalance {

// ---------------------------------------------------------------------------
// Objectives

/// F = sqrt(4/|pairs| * sum (w - 0.5)^2): the distance of the pairwise win
/// rates from an all-0.5 vector, scaled so F lies in [0, 1]. With three
/// decks the scale is 4/3.
inline double balance_fitness(std::span<const double> pair_rates)
{
    if (pair_rates.empty()) {
        throw IncompleteMatrixError("balance fitness needs at least one match-up");
    }
    double sum = 0.0;
    for (double w : pair_rates) {
        sum += (w - 0.5) * (w - 0.5);
    }
    return std::sqrt(4.0 / static_cast<double>(pair_rates.size()) * sum);
}

/// Win rates of every pair i < j, row-major.
inline std::vector<double> pair_rates(const MatchupMatrix& m)
{
    if (m.size() < 2) {
        throw IncompleteMatrixError("balance fitness needs at least two decks");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            auto w = m.win_rate(i, j);
            if (!w) {
                throw IncompleteMatrixError("missing match-up " + m.labels()[i] + " vs " + m.labels()[j]);
            }
            out.push_back(*w);
        }
    }
    return out;
}

inline double balance_fitness(const MatchupMatrix& m)
{
    return balance_fitness(pair_rates(m));
}

/// Multi-objective fitness (F, M); both minimized.
struct Objectives {
    double balance = 0.0;
    int magnitude = 0;

    bool operator==(const Objectives&) const = default;
};

/// Standard Pareto dominance.
constexpr bool dominates(const Objectives& a, const Objectives& b) noexcept
{
    return a.balance <= b.balance && a.magnitude <= b.magnitude &&
           (a.balance < b.balance || a.magnitude < b.magnitude);
}

/// Dominance that treats balance values within `tolerance` as tied. For
/// reporting only; selection always uses dominates().
constexpr bool dominates_within(const Objectives& a, const Objectives& b, double tolerance) noexcept
{
    const bool f_no_worse = a.balance <= b.balance + tolerance;
    const bool f_better = a.balance < b.balance - tolerance;
    return f_no_worse && a.magnitude <= b.magnitude && (f_better || a.magnitude < b.magnitude);
}

struct Individual {
    PatchVector patch;
    double fitness = 1.0;
    int magnitude = 0;
    bool evaluated = false;

    [[nodiscard]] Objectives objectives() const { return {fitness, magnitude}; }
};

struct GAConfig {
    int population_size = 100;
    double crossover_rate = 0.35;
    double mutation_rate = 0.20;
    double gene_mutation_prob = 0.05;
    int tournament_size = 3;
    int generations = 12;
    int games_per_matchup = 100;
    std::uint64_t seed = 0;

    void validate() const
    {
        for (double p : {crossover_rate, mutation_rate, gene_mutation_prob}) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ConfigError("probabilities must be in [0,1]");
            }
        }
        if (population_size < 1 || tournament_size < 1 || games_per_matchup < 1 || generations < 0) {
            throw ConfigError("population, tournament and game counts must be >= 1");
        }
    }
};

// ---------------------------------------------------------------------------
// Variation operators

inline PatchVector random_patch(std::size_t length, Rng& rng)
{
    PatchVector p;
    p.genes.resize(length);
    for (auto& g : p.genes) {
        g = uniform_int(rng, kGeneMin, kGeneMax);
    }
    return p;
}

/// Strictly better: lower F, then lower M, then lower index.
inline bool fitter(const Individual& a, std::size_t ia, const Individual& b, std::size_t ib)
{
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    if (a.magnitude != b.magnitude) return a.magnitude < b.magnitude;
    return ia < ib;
}

/// Samples k members with replacement and returns the index of the fittest.
inline std::size_t tournament_select(std::span<const Individual> population, int k, Rng& rng)
{
    if (population.empty()) {
        throw ConfigError("tournament on an empty population");
    }
    if (k < 1) {
        throw ConfigError("tournament size must be >= 1");
    }
    const int last = static_cast<int>(population.size()) - 1;
    auto best = static_cast<std::size_t>(uniform_int(rng, 0, last));
    for (int i = 1; i < k; ++i) {
        const auto c = static_cast<std::size_t>(uniform_int(rng, 0, last));
        if (fitter(population[c], c, population[best], best)) {
            best = c;
        }
    }
    return best;
}

/// Swaps genes [first, last) between the parents.
inline std::pair<PatchVector, PatchVector> two_point_crossover(const PatchVector& a, const PatchVector& b,
                                                               std::size_t first, std::size_t last)
{
    if (a.size() != b.size()) {
        throw LayoutError("crossover parents differ in length");
    }
    if (first > last || last > a.size()) {
        throw LayoutError("crossover cut points out of range");
    }
    std::pair<PatchVector, PatchVector> children{a, b};
    for (std::size_t k = first; k < last; ++k) {
        std::swap(children.first.genes[k], children.second.genes[k]);
    }
    return children;
}

/// Two cut points drawn uniformly from [0, length] and sorted.
inline std::pair<PatchVector, PatchVector> two_point_crossover(const PatchVector& a, const PatchVector& b, Rng& rng)
{
    if (a.size() != b.size()) {
        throw LayoutError("crossover parents differ in length");
    }
    const int n = static_cast<int>(a.size());
    auto i = static_cast<std::size_t>(uniform_int(rng, 0, n));
    auto j = static_cast<std::size_t>(uniform_int(rng, 0, n));
    if (i > j) {
        std::swap(i, j);
    }
    return two_point_crossover(a, b, i, j);
}

/// Resamples each gene from [-3, 3] with probability gene_prob.
inline PatchVector mutate(const PatchVector& p, double gene_prob, Rng& rng)
{
    PatchVector out = p;
    for (auto& g : out.genes) {
        if (uniform_real(rng) < gene_prob) {
            g = uniform_int(rng, kGeneMin, kGeneMax);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

inline std::uint64_t evaluation_seed(std::uint64_t run_seed, int generation)
{
    return stable_hash({run_seed, 0x45564131ULL, static_cast<std::uint64_t>(generation)});
}

/// Scores patches against a fixed meta. Results are cached per
/// (evaluation seed, patch); the same pair always yields the same (F, M).
/// Not thread-safe; games inside one evaluation run on `jobs` threads.
class MetaEvaluator {
public:
    MetaEvaluator(CardPool base, std::vector<Contender> contenders, int games_per_matchup,
                  AttributeWeights weights = {}, MagnitudeMode mode = MagnitudeMode::Effective, int jobs = 1)
        : base_(std::move(base)), contenders_(std::move(contenders)), games_(games_per_matchup), weights_(weights),
          mode_(mode), jobs_(jobs), layout_(chromosome_layout(base_))
    {
        if (contenders_.size() < 2) {
            throw ConfigError("a meta needs at least two decks");
        }
        if (games_ < 1) {
            throw ConfigError("games_per_matchup must be >= 1");
        }
    }

    [[nodiscard]] Objectives evaluate(const PatchVector& patch, std::uint64_t seed)
    {
        if (patch.size() != layout_.size()) {
            throw LayoutError("patch length " + std::to_string(patch.size()) + " does not match layout length " +
                              std::to_string(layout_.size()));
        }
        auto key = std::make_pair(seed, patch.genes);
        if (auto it = cache_.find(key); it != cache_.end()) {
            return it->second;
        }
        const CardPool pool = apply_patch(base_, patch);
        MetaConfig config;
        config.contenders = contenders_;
        config.games_per_matchup = games_;
        config.base_seed = seed;
        config.jobs = jobs_;
        const auto result = matchup_matrix(pool, config);
        const Objectives obj{balance_fitness(result.matrix), patch_magnitude(base_, patch, weights_, mode_)};
        ++simulations_;
        cache_.emplace(std::move(key), obj);
        return obj;
    }

    void evaluate(Individual& ind, std::uint64_t seed)
    {
        const auto obj = evaluate(ind.patch, seed);
        ind.fitness = obj.balance;
        ind.magnitude = obj.magnitude;
        ind.evaluated = true;
    }

    [[nodiscard]] const CardPool& base_pool() const noexcept { return base_; }
    [[nodiscard]] const Layout& layout() const noexcept { return layout_; }
    [[nodiscard]] const AttributeWeights& weights() const noexcept { return weights_; }
    [[nodiscard]] MagnitudeMode mode() const noexcept { return mode_; }
    [[nodiscard]] int max_magnitude() const { return cardbalance::max_magnitude(layout_, weights_); }
    [[nodiscard]] std::size_t simulations() const noexcept { return simulations_; }

private:
    CardPool base_;
    std::vector<Contender> contenders_;
    int games_;
    AttributeWeights weights_;
    MagnitudeMode mode_;
    int jobs_;
    Layout layout_;
    std::map<std::pair<std::uint64_t, std::vector<int>>, Objectives> cache_;
    std::size_t simulations_ = 0;
};

struct GenerationStats {
    int generation = 0;
    double min_fitness = 0.0;
    double avg_fitness = 0.0;
    double max_fitness = 0.0;
    int best_magnitude = 0; // M of the lowest-F individual

    bool operator==(const GenerationStats&) const = default;
};

inline std::size_t best_index(std::span<const Individual> population)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (fitter(population[i], i, population[best], best)) {
            best = i;
        }
    }
    return best;
}

inline GenerationStats generation_stats(int generation, std::span<const Individual> population)
{
    GenerationStats s;
    s.generation = generation;
    s.min_fitness = std::numeric_limits<double>::infinity();
    s.max_fitness = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& ind : population) {
        s.min_fitness = std::min(s.min_fitness, ind.fitness);
        s.max_fitness = std::max(s.max_fitness, ind.fitness);
        sum += ind.fitness;
    }
    // Rounding can push the mean of equal values just past them.
    s.avg_fitness = std::clamp(sum / static_cast<double>(population.size()), s.min_fitness, s.max_fitness);
    s.best_magnitude = population[best_index(population)].magnitude;
    return s;
}

namespace detail {

inline std::vector<Individual> initial_population(const GAConfig& config, const std::vector<PatchVector>& seeds,
                                                  std::size_t length, Rng& rng)
{
    std::vector<Individual> pop;
    for (const auto& s : seeds) {
        if (s.size() != length) {
            throw LayoutError("seed patch has " + std::to_string(s.size()) + " genes, layout has " +
                              std::to_string(length));
        }
        if (!s.in_bounds()) {
            throw LayoutError("seed patch genes must be in [-3,3]");
        }
        if (pop.size() < static_cast<std::size_t>(config.population_size)) {
            pop.push_back({s});
        }
    }
    while (pop.size() < static_cast<std::size_t>(config.population_size)) {
        pop.push_back({random_patch(length, rng)});
    }
    return pop;
}

// Recombination step shared by both algorithms: optional crossover of the
// two parents, then each child passes the per-offspring mutation gate.
inline std::pair<PatchVector, PatchVector> breed(const PatchVector& a, const PatchVector& b, const GAConfig& config,
                                                 Rng& rng)
{
    std::pair<PatchVector, PatchVector> kids{a, b};
    if (uniform_real(rng) < config.crossover_rate) {
        kids = two_point_crossover(a, b, rng);
    }
    if (uniform_real(rng) < config.mutation_rate) {
        kids.first = mutate(kids.first, config.gene_mutation_prob, rng);
    }
    if (uniform_real(rng) < config.mutation_rate) {
        kids.second = mutate(kids.second, config.gene_mutation_prob, rng);
    }
    return kids;
}

} // namespace detail

/// Called after each generation is evaluated, with that generation's
/// population and the log so far. Lets callers checkpoint long runs.
using GenerationCallback =
    std::function<void(int generation, const std::vector<Individual>& population, const std::vector<GenerationStats>& log)>;

struct GAResult {
    std::vector<GenerationStats> log;
    Individual best;
    int best_generation = 0;
    std::vector<Individual> final_population;
};

/// Generational GA minimizing F. Generation 0 is the initial population
/// (`seeds` first, random patches after); `config.generations` counts
/// evaluated generations, at least one. The fittest individual is carried
/// over unchanged and, like everyone else, re-evaluated on the next
/// generation's seed.
inline GAResult run_ga(const GAConfig& config, MetaEvaluator& evaluator, const std::vector<PatchVector>& seeds = {},
                       const GenerationCallback& on_generation = {})
{
    config.validate();
    Rng rng(stable_hash({config.seed, 0x4741ULL}));
    const std::size_t n = static_cast<std::size_t>(config.population_size);
    const std::size_t length = evaluator.layout().size();

    GAResult result;
    std::vector<Individual> pop = detail::initial_population(config, seeds, length, rng);
    const int total = std::max(1, config.generations);
    for (int gen = 0; gen < total; ++gen) {
        if (gen > 0) {
            std::vector<Individual> next;
            next.reserve(n);
            next.push_back({pop[best_index(pop)].patch});
            while (next.size() < n) {
                const auto& pa = pop[tournament_select(pop, config.tournament_size, rng)].patch;
                const auto& pb = pop[tournament_select(pop, config.tournament_size, rng)].patch;
                auto [ca, cb] = detail::breed(pa, pb, config, rng);
                next.push_back({std::move(ca)});
                if (next.size() < n) {
                    next.push_back({std::move(cb)});
                }
            }
            pop = std::move(next);
        }
        const auto seed = evaluation_seed(config.seed, gen);
        for (auto& ind : pop) {
            evaluator.evaluate(ind, seed);
        }
        result.log.push_back(generation_stats(gen, pop));
        const auto& champion = pop[best_index(pop)];
        if (gen == 0 || fitter(champion, 0, result.best, 1)) {
            result.best = champion;
            result.best_generation = gen;
        }
        if (on_generation) {
            on_generation(gen, pop, result.log);
        }
    }
    result.final_population = std::move(pop);
    return result;
}

// ---------------------------------------------------------------------------
// NSGA-II

/// Fast non-dominated sort. Front 0 holds the non-dominated points; indices
/// within each front are ascending.
inline std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const Objectives> points)
{
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> count(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated[p].push_back(q);
            } else if (dominates(points[q], points[p])) {
                ++count[p];
            }
        }
        if (count[p] == 0) {
            fronts[0].push_back(p);
        }
    }
    while (!fronts.back().empty()) {
        std::vector<std::size_t> next;
        for (auto p : fronts.back()) {
            for (auto q : dominated[p]) {
                if (--count[q] == 0) {
                    next.push_back(q);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

/// Crowding distance of each member of `front` (same order as `front`).
/// Boundary points of each objective get +infinity.
inline std::vector<double> crowding_distance(std::span<const Objectives> points, const std::vector<std::size_t>& front)
{
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    if (m <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    std::vector<std::size_t> order(m);
    auto accumulate = [&](auto value) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value(front[a]) < value(front[b]); });
        const double lo = value(front[order.front()]);
        const double hi = value(front[order.back()]);
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi <= lo) {
            return;
        }
        for (std::size_t k = 1; k + 1 < m; ++k) {
            dist[order[k]] += (value(front[order[k + 1]]) - value(front[order[k - 1]])) / (hi - lo);
        }
    };
    accumulate([&](std::size_t i) { return points[i].balance; });
    accumulate([&](std::size_t i) { return static_cast<double>(points[i].magnitude); });
    return dist;
}

struct RankInfo {
    std::vector<int> rank;
    std::vector<double> crowding;
};

inline RankInfo rank_population(std::span<const Objectives> points)
{
    RankInfo info{std::vector<int>(points.size()), std::vector<double>(points.size())};
    const auto fronts = non_dominated_sort(points);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        const auto d = crowding_distance(points, fronts[f]);
        for (std::size_t k = 0; k < fronts[f].size(); ++k) {
            info.rank[fronts[f][k]] = static_cast<int>(f);
            info.crowding[fronts[f][k]] = d[k];
        }
    }
    return info;
}

/// Keeps the best `n` points: whole fronts in rank order, then the least
/// crowded members of the front that overflows (ties by lower index).
/// Returned indices are in selection order.
inline std::vector<std::size_t> environmental_selection(std::span<const Objectives> points, std::size_t n)
{
    std::vector<std::size_t> selected;
    for (const auto& front : non_dominated_sort(points)) {
        if (selected.size() + front.size() <= n) {
            selected.insert(selected.end(), front.begin(), front.end());
            if (selected.size() == n) {
                break;
            }
            continue;
        }
        const auto d = crowding_distance(points, front);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
        for (std::size_t k = 0; selected.size() < n; ++k) {
            selected.push_back(front[order[k]]);
        }
        break;
    }
    return selected;
}

/// Binary tournament on (rank, crowding).
inline std::size_t crowded_tournament(const RankInfo& info, Rng& rng)
{
    const int last = static_cast<int>(info.rank.size()) - 1;
    const auto a = static_cast<std::size_t>(uniform_int(rng, 0, last));
    const auto b = static_cast<std::size_t>(uniform_int(rng, 0, last));
    auto better = [&](std::size_t x, std::size_t y) {
        if (info.rank[x] != info.rank[y]) return info.rank[x] < info.rank[y];
        if (info.crowding[x] != info.crowding[y]) return info.crowding[x] > info.crowding[y];
        return x < y;
    };
    return better(b, a) ? b : a;
}

inline std::vector<Objectives> objectives_of(std::span<const Individual> pop)
{
    std::vector<Objectives> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) {
        out.push_back(ind.objectives());
    }
    return out;
}

struct ArchiveEntry {
    int id = 0;
    int generation = 0;
    PatchVector patch;
    Objectives objectives;
    bool seeded = false;
};

/// Every distinct patch evaluated in each generation of a run; `front` lists
/// the entries no other entry dominates.
struct ParetoArchive {
    std::vector<ArchiveEntry> entries;
    std::vector<std::size_t> front;

    /// Returns false when the patch is already archived for this generation.
    bool add(int generation, const Individual& ind, bool seeded = false)
    {
        if (!seen_.insert({generation, ind.patch.genes}).second) {
            return false;
        }
        entries.push_back({static_cast<int>(entries.size()), generation, ind.patch, ind.objectives(), seeded});
        return true;
    }

    void update_front()
    {
        std::vector<Objectives> pts;
        pts.reserve(entries.size());
        for (const auto& e : entries) {
            pts.push_back(e.objectives);
        }
        const auto fronts = non_dominated_sort(pts);
        front = fronts.empty() ? std::vector<std::size_t>{} : fronts.front();
    }

    [[nodiscard]] bool on_front(std::size_t i) const
    {
        return std::binary_search(front.begin(), front.end(), i);
    }

private:
    std::set<std::pair<int, std::vector<int>>> seen_;
};

/// One NSGA-II generation: offspring by crowded binary tournament and the
/// shared crossover/mutation step, evaluated on `seed`, then parents and
/// offspring are merged and truncated back to the population size. Parents
/// keep the objectives they were evaluated with. Newly evaluated offspring
/// are appended to `offspring_out` when given.
inline std::vector<Individual> nsga2_step(const std::vector<Individual>& population, const GAConfig& config, Rng& rng,
                                          MetaEvaluator& evaluator, std::uint64_t seed,
                                          std::vector<Individual>* offspring_out = nullptr)
{
    const std::size_t n = population.size();
    const auto parent_obj = objectives_of(population);
    const RankInfo info = rank_population(parent_obj);

    std::vector<Individual> combined = population;
    combined.reserve(2 * n);
    while (combined.size() < 2 * n) {
        const auto& pa = population[crowded_tournament(info, rng)].patch;
        const auto& pb = population[crowded_tournament(info, rng)].patch;
        auto [ca, cb] = detail::breed(pa, pb, config, rng);
        combined.push_back({std::move(ca)});
        if (combined.size() < 2 * n) {
            combined.push_back({std::move(cb)});
        }
    }
    for (std::size_t i = n; i < combined.size(); ++i) {
        evaluator.evaluate(combined[i], seed);
        if (offspring_out) {
            offspring_out->push_back(combined[i]);
        }
    }
    const auto obj = objectives_of(combined);
    std::vector<Individual> next;
    next.reserve(n);
    for (auto i : environmental_selection(obj, n)) {
        next.push_back(std::move(combined[i]));
    }
    return next;
}

struct NSGA2Result {
    ParetoArchive archive;
    std::vector<GenerationStats> log;
    std::vector<Individual> final_population;
};

/// NSGA-II over (F, M). The initial population holds the given seeds, the
/// zero patch (always), and random patches up to the population size.
/// `config.generations` counts evaluated generations including the first.
inline NSGA2Result run_nsga2(const GAConfig& config, MetaEvaluator& evaluator, const std::vector<PatchVector>& seeds = {},
                             const GenerationCallback& on_generation = {})
{
    config.validate();
    const std::size_t length = evaluator.layout().size();
    std::vector<PatchVector> all_seeds = seeds;
    const auto zero = PatchVector::zero(length);
    if (std::find(all_seeds.begin(), all_seeds.end(), zero) == all_seeds.end()) {
        all_seeds.insert(all_seeds.begin(), zero);
    }
    Rng rng(stable_hash({config.seed, 0x4e534741ULL}));
    std::vector<Individual> pop = detail::initial_population(config, all_seeds, length, rng);

    NSGA2Result result;
    const auto seed0 = evaluation_seed(config.seed, 0);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        evaluator.evaluate(pop[i], seed0);
        result.archive.add(0, pop[i], i < all_seeds.size());
    }
    result.log.push_back(generation_stats(0, pop));
    if (on_generation) {
        on_generation(0, pop, result.log);
    }

    const int total = std::max(1, config.generations);
    std::vector<Individual> offspring;
    for (int gen = 1; gen < total; ++gen) {
        offspring.clear();
        pop = nsga2_step(pop, config, rng, evaluator, evaluation_seed(config.seed, gen), &offspring);
        for (const auto& ind : offspring) {
            result.archive.add(gen, ind);
        }
        result.log.push_back(generation_stats(gen, pop));
        if (on_generation) {
            on_generation(gen, pop, result.log);
        }
    }
    result.archive.update_front();
    result.final_population = std::move(pop);
    return result;
}

// ---------------------------------------------------------------------------
// Output

inline std::string generations_csv(const std::vector<GenerationStats>& log)
{
    std::string out = "generation,min_F,avg_F,max_F,best_M\n";
    for (const auto& g : log) {
        out += std::to_string(g.generation) + "," + format_real(g.min_fitness) + "," + format_real(g.avg_fitness) +
               "," + format_real(g.max_fitness) + "," + std::to_string(g.best_magnitude) + "\n";
    }
    return out;
}

inline std::string archive_csv(const ParetoArchive& archive)
{
    std::string out = "individual_id,generation,F,M,on_front,seeded\n";
    for (std::size_t i = 0; i < archive.entries.size(); ++i) {
        const auto& e = archive.entries[i];
        out += std::to_string(e.id) + "," + std::to_string(e.generation) + "," + format_real(e.objectives.balance) +
               "," + std::to_string(e.objectives.magnitude) + "," + (archive.on_front(i) ? "1" : "0") + "," +
               (e.seeded ? "1" : "0") + "\n";
    }
    return out;
}

inline Json scored_patch_json(const PatchVector& patch, const CardPool& pool, const Objectives& obj)
{
    Json j = patch_to_json(patch, pool);
    j["F"] = obj.balance;
    j["M"] = obj.magnitude;
    return j;
}

} // namespace cardbalance
