// cardbalance: command-line driver for simulation, evolution and nerf sweeps.

#include "cardbalance/cardbalance.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace cardbalance;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct CommonOptions {
    std::string pool;
    std::vector<std::string> decks;
    std::vector<std::string> agents;
    int games = 100;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 1;
    int node_budget = 0;
    std::string out = "out";
};

struct EvolveOptions {
    int generations = 12;
    int population = 100;
    double crossover_rate = 0.35;
    double mutation_rate = 0.20;
    double gene_prob = 0.05;
    int tournament = 3;
    std::vector<std::string> seed_patches;
    std::string magnitude = "effective";
    int mana_weight = 2;
    int baseline_games = 0;
};

std::string deck_label(const std::string& path)
{
    return fs::path(path).stem().string();
}

std::vector<Contender> load_contenders(const CardPool& pool, const CommonOptions& o)
{
    if (o.decks.empty()) {
        throw ConfigError("--decks: at least one deck file is required");
    }
    if (o.agents.empty()) {
        throw ConfigError("--agents: give one agent for all decks or one per deck");
    }
    if (o.agents.size() != 1 && o.agents.size() != o.decks.size()) {
        throw ConfigError("--agents: got " + std::to_string(o.agents.size()) + " agents for " +
                          std::to_string(o.decks.size()) + " decks");
    }
    std::vector<Contender> out;
    for (std::size_t i = 0; i < o.decks.size(); ++i) {
        AgentSpec agent = load_agent(o.agents.size() == 1 ? o.agents[0] : o.agents[i]);
        if (o.node_budget > 0) {
            agent.node_budget = o.node_budget;
        }
        agent.validate();
        out.push_back({deck_label(o.decks[i]), load_deck(o.decks[i], pool), agent});
    }
    return out;
}

class RunManifest {
public:
    RunManifest(std::string command, const CommonOptions& o) : command_(std::move(command))
    {
        config_ = Json{{"pool", o.pool},   {"decks", o.decks}, {"agents", o.agents},
                       {"games", o.games}, {"seed", o.seed},   {"node_budget", o.node_budget}};
    }

    Json& config() { return config_; }

    void add_output(const fs::path& p) { outputs_.push_back(p.filename().string()); }

    void write(const fs::path& dir, const CardPool& pool, const std::vector<Contender>& contenders,
               double seconds) const
    {
        Json agents = Json::array();
        for (const auto& c : contenders) {
            agents.push_back(Json{{"deck", c.label}, {"agent", agent_to_json(c.agent)}});
        }
        const std::string canonical = config_.dump();
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
        Json m{{"tool", "cardbalance"},
               {"version", kToolVersion},
               {"command", command_},
               {"seed", config_.at("seed")},
               {"config", config_},
               {"config_hash", hash},
               {"pool_hash", pool_hash(pool)},
               {"resolved_agents", agents},
               {"outputs", outputs_},
               {"elapsed_seconds", seconds}};
        save_json(dir / "run-manifest.json", m);
    }

private:
    std::string command_;
    Json config_;
    std::vector<std::string> outputs_;
};

void write_output(const fs::path& path, const std::string& contents, RunManifest& manifest)
{
    write_file_atomic(path, contents);
    manifest.add_output(path);
}

void write_output(const fs::path& path, const Json& j, RunManifest& manifest)
{
    save_json(path, j);
    manifest.add_output(path);
}

double elapsed(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

// Replays the first `games` games of every simulated match-up with event
// logging on. Seeds and seats match the arena, so the logs describe the
// games behind matrix.csv.
std::string game_logs(const CardPool& pool, const MetaConfig& config, const MatchupMatrix& m, int games)
{
    std::ostringstream log;
    const std::size_t n = config.contenders.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j < i || !m.simulated(i, j)) continue;
            const auto& a = config.contenders[i];
            const auto& b = config.contenders[j];
            for (int g = 0; g < std::min(games, config.games_per_matchup); ++g) {
                const auto seed = game_seed(config.base_seed, matchup_id(i, j, n), static_cast<std::uint64_t>(g));
                if (g % 2 == 0) {
                    play_game(a.deck, a.agent, b.deck, b.agent, pool, seed, &log);
                } else {
                    play_game(b.deck, b.agent, a.deck, a.agent, pool, seed, &log);
                }
            }
        }
    }
    return log.str();
}

int cmd_simulate(const CommonOptions& o, bool mirrors, const std::vector<double>& prevalence, int log_games)
{
    const auto t0 = std::chrono::steady_clock::now();
    const CardPool pool = load_pool(o.pool);
    MetaConfig config;
    config.contenders = load_contenders(pool, o);
    config.games_per_matchup = o.games;
    config.base_seed = o.seed;
    config.simulate_mirrors = mirrors;
    config.prevalence = prevalence;
    config.jobs = o.jobs;
    validated_prevalence(prevalence, config.contenders.size());

    const MetaResult r = matchup_matrix(pool, config);
    RunManifest manifest("simulate", o);
    manifest.config()["mirrors"] = mirrors;
    manifest.config()["prevalence"] = prevalence;
    const fs::path dir(o.out);
    const std::string csv = matrix_csv(r.matrix, prevalence);
    write_output(dir / "matrix.csv", csv, manifest);
    Json counts = Json::array();
    for (std::size_t i = 0; i < r.matrix.size(); ++i) {
        for (std::size_t j = 0; j < r.matrix.size(); ++j) {
            if (r.matrix.simulated(i, j)) {
                counts.push_back(Json{{"deck", r.matrix.labels()[i]},
                                      {"opponent", r.matrix.labels()[j]},
                                      {"wins", r.matrix.wins(i, j)},
                                      {"losses", r.matrix.losses(i, j)},
                                      {"draws", r.matrix.draws(i, j)}});
            }
        }
    }
    write_output(dir / "counts.json", counts, manifest);
    write_output(dir / "telemetry.json", telemetry_json(pool, config.contenders, r.telemetry), manifest);
    if (log_games > 0) {
        manifest.config()["log_games"] = log_games;
        write_output(dir / "games.jsonl", game_logs(pool, config, r.matrix, log_games), manifest);
    }
    if (r.matrix.size() >= 2) {
        std::cout << "F = " << format_real(balance_fitness(r.matrix)) << "\n";
    }
    std::cout << csv;
    manifest.write(dir, pool, config.contenders, elapsed(t0));
    return 0;
}

GAConfig ga_config(const CommonOptions& o, const EvolveOptions& e)
{
    GAConfig g;
    g.population_size = e.population;
    g.crossover_rate = e.crossover_rate;
    g.mutation_rate = e.mutation_rate;
    g.gene_mutation_prob = e.gene_prob;
    g.tournament_size = e.tournament;
    g.generations = e.generations;
    g.games_per_matchup = o.games;
    g.seed = o.seed;
    g.validate();
    return g;
}

void record_evolve_config(RunManifest& m, const EvolveOptions& e)
{
    m.config()["generations"] = e.generations;
    m.config()["population"] = e.population;
    m.config()["crossover_rate"] = e.crossover_rate;
    m.config()["mutation_rate"] = e.mutation_rate;
    m.config()["gene_prob"] = e.gene_prob;
    m.config()["tournament"] = e.tournament;
    m.config()["seed_patches"] = e.seed_patches;
    m.config()["magnitude"] = e.magnitude;
    m.config()["mana_weight"] = e.mana_weight;
    m.config()["baseline_games"] = e.baseline_games;
}

struct EvolveSetup {
    CardPool pool;
    std::vector<Contender> contenders;
    std::vector<PatchVector> seeds;
    AttributeWeights weights;
    MagnitudeMode mode = MagnitudeMode::Effective;
    double baseline = 0.0;
};

EvolveSetup evolve_setup(const CommonOptions& o, const EvolveOptions& e)
{
    EvolveSetup s{load_pool(o.pool), {}, {}, {}, {}, 0.0};
    s.contenders = load_contenders(s.pool, o);
    if (s.contenders.size() < 2) {
        throw ConfigError("--decks: evolution needs at least two decks");
    }
    for (const auto& p : e.seed_patches) {
        s.seeds.push_back(load_patch(p, s.pool));
    }
    s.weights.mana_weight = e.mana_weight;
    s.mode = e.magnitude == "raw" ? MagnitudeMode::Raw : MagnitudeMode::Effective;
    // Unpatched meta on the first generation's seed.
    MetaEvaluator baseline(s.pool, s.contenders, e.baseline_games > 0 ? e.baseline_games : o.games, s.weights, s.mode,
                           o.jobs);
    s.baseline = baseline.evaluate(PatchVector::zero(baseline.layout().size()), evaluation_seed(o.seed, 0)).balance;
    std::cerr << "baseline F = " << format_real(s.baseline) << "\n";
    return s;
}

Json population_json(int generation, const std::vector<Individual>& pop)
{
    Json genes = Json::array();
    Json scores = Json::array();
    for (const auto& ind : pop) {
        genes.push_back(ind.patch.genes);
        scores.push_back(Json{{"F", ind.fitness}, {"M", ind.magnitude}});
    }
    return Json{{"generation", generation}, {"genes", genes}, {"objectives", scores}};
}

int cmd_evolve_single(const CommonOptions& o, const EvolveOptions& e)
{
    const auto t0 = std::chrono::steady_clock::now();
    const GAConfig config = ga_config(o, e);
    EvolveSetup s = evolve_setup(o, e);
    MetaEvaluator evaluator(s.pool, s.contenders, o.games, s.weights, s.mode, o.jobs);
    const fs::path dir(o.out);
    RunManifest manifest("evolve-single", o);
    record_evolve_config(manifest, e);

    auto checkpoint = [&](int gen, const std::vector<Individual>& pop, const std::vector<GenerationStats>& log) {
        write_file_atomic(dir / "generations.csv", generations_csv(log));
        save_json(dir / "checkpoint.json", population_json(gen, pop));
        std::cerr << "generation " << gen << ": min F " << format_real(log.back().min_fitness) << "\n";
    };
    const GAResult r = run_ga(config, evaluator, s.seeds, checkpoint);

    write_output(dir / "generations.csv", generations_csv(r.log), manifest);
    manifest.add_output(dir / "checkpoint.json");
    Json best = scored_patch_json(r.best.patch, s.pool, r.best.objectives());
    best["generation"] = r.best_generation;
    write_output(dir / "best_patch.json", best, manifest);
    write_output(dir / "summary.json",
                 Json{{"baseline_F", s.baseline},
                      {"best_F", r.best.fitness},
                      {"best_M", r.best.magnitude},
                      {"best_generation", r.best_generation},
                      {"max_M", evaluator.max_magnitude()},
                      {"simulations", evaluator.simulations()}},
                 manifest);
    std::cout << "baseline F " << format_real(s.baseline) << ", best F " << format_real(r.best.fitness) << " (M "
              << r.best.magnitude << ", generation " << r.best_generation << ")\n";
    manifest.write(dir, s.pool, s.contenders, elapsed(t0));
    return 0;
}

int cmd_evolve_pareto(const CommonOptions& o, const EvolveOptions& e)
{
    const auto t0 = std::chrono::steady_clock::now();
    const GAConfig config = ga_config(o, e);
    EvolveSetup s = evolve_setup(o, e);
    MetaEvaluator evaluator(s.pool, s.contenders, o.games, s.weights, s.mode, o.jobs);
    const fs::path dir(o.out);
    RunManifest manifest("evolve-pareto", o);
    record_evolve_config(manifest, e);

    auto checkpoint = [&](int gen, const std::vector<Individual>& pop, const std::vector<GenerationStats>& log) {
        write_file_atomic(dir / "generations.csv", generations_csv(log));
        save_json(dir / "checkpoint.json", population_json(gen, pop));
        std::cerr << "generation " << gen << "\n";
    };
    const NSGA2Result r = run_nsga2(config, evaluator, s.seeds, checkpoint);

    write_output(dir / "archive.csv", archive_csv(r.archive), manifest);
    write_output(dir / "generations.csv", generations_csv(r.log), manifest);
    manifest.add_output(dir / "checkpoint.json");
    Json front = Json::array();
    for (auto i : r.archive.front) {
        const auto& entry = r.archive.entries[i];
        Json p = scored_patch_json(entry.patch, s.pool, entry.objectives);
        p["individual_id"] = entry.id;
        p["generation"] = entry.generation;
        front.push_back(p);
    }
    write_output(dir / "front.json", front, manifest);
    write_output(dir / "summary.json",
                 Json{{"baseline_F", s.baseline},
                      {"front_size", r.archive.front.size()},
                      {"archive_size", r.archive.entries.size()},
                      {"max_M", evaluator.max_magnitude()},
                      {"simulations", evaluator.simulations()}},
                 manifest);
    std::cout << "baseline F " << format_real(s.baseline) << "\nfront (F, M):\n";
    for (auto i : r.archive.front) {
        const auto& obj = r.archive.entries[i].objectives;
        std::cout << "  " << format_real(obj.balance) << " " << obj.magnitude << "\n";
    }
    manifest.write(dir, s.pool, s.contenders, elapsed(t0));
    return 0;
}

int cmd_nerf_sweep(const CommonOptions& o, const std::string& target)
{
    const auto t0 = std::chrono::steady_clock::now();
    const CardPool pool = load_pool(o.pool);
    const auto contenders = load_contenders(pool, o);
    std::size_t t = contenders.size();
    for (std::size_t i = 0; i < contenders.size(); ++i) {
        if (contenders[i].label == target) {
            t = i;
        }
    }
    if (t == contenders.size()) {
        throw ConfigError("--target: no deck labelled '" + target + "'");
    }
    std::vector<Contender> opponents;
    for (std::size_t i = 0; i < contenders.size(); ++i) {
        if (i != t) {
            opponents.push_back(contenders[i]);
        }
    }
    NerfSweepConfig config{o.games, o.seed, o.jobs};
    const auto report = nerf_sweep(pool, contenders[t], opponents, config);

    const fs::path dir(o.out);
    RunManifest manifest("nerf-sweep", o);
    manifest.config()["target"] = target;
    write_output(dir / "impact.csv", impact_csv(report), manifest);
    std::vector<std::optional<double>> d;
    std::vector<std::optional<double>> p;
    std::vector<std::optional<double>> n;
    for (const auto& c : report) {
        d.push_back(c.wrd);
        p.push_back(c.wrp);
        n.push_back(c.wrn);
    }
    Json summary{{"baseline", report.empty() ? 0.0 : report.front().baseline}};
    for (auto [name, xs] : {std::pair{"WRD", &d}, std::pair{"WRP", &p}}) {
        try {
            const auto c = correlation(*xs, n);
            summary[name] = Json{{"pearson", c.pearson}, {"spearman", c.spearman}, {"n", c.n}};
            std::cout << name << " vs WRN: pearson " << format_real(c.pearson) << ", spearman "
                      << format_real(c.spearman) << "\n";
        } catch (const InsufficientDataError& err) {
            summary[name] = nullptr;
            std::cout << name << " vs WRN: " << err.what() << "\n";
        }
    }
    write_output(dir / "summary.json", summary, manifest);
    manifest.write(dir, pool, contenders, elapsed(t0));
    return 0;
}

int cmd_apply_patch(const std::string& pool_path, const std::string& patch_path, const std::string& out)
{
    const CardPool pool = load_pool(pool_path);
    const PatchVector patch = load_patch(patch_path, pool);
    save_json(out, pool_to_json(apply_patch(pool, patch)));
    std::cout << "wrote " << out << " (M = " << patch_magnitude(pool, patch, {}, MagnitudeMode::Effective) << ")\n";
    return 0;
}

int cmd_validate(const CommonOptions& o, const std::vector<std::string>& patches)
{
    if (o.pool.empty()) {
        throw ConfigError("--pool is required");
    }
    const CardPool pool = load_pool(o.pool);
    std::cout << o.pool << ": ok (" << pool.size() << " cards, " << chromosome_layout(pool).size() << " loci)\n";
    for (const auto& d : o.decks) {
        load_deck(d, pool);
        std::cout << d << ": ok\n";
    }
    for (const auto& a : o.agents) {
        load_agent(a).validate();
        std::cout << a << ": ok\n";
    }
    for (const auto& p : patches) {
        const auto patch = load_patch(p, pool);
        std::cout << p << ": ok (M = " << patch_magnitude(pool, patch, {}, MagnitudeMode::Effective) << ")\n";
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_meta)
{
    auto* pool = cmd->add_option("--pool", o.pool, "card pool JSON")->envname("CARDBALANCE_POOL");
    cmd->add_option("--decks", o.decks, "deck JSON files")->delimiter(',')->envname("CARDBALANCE_DECKS");
    cmd->add_option("--agents", o.agents, "agent JSON files or built-in names (aggro, control)")
        ->delimiter(',')
        ->envname("CARDBALANCE_AGENTS");
    if (needs_meta) {
        pool->required();
        cmd->add_option("--games", o.games, "games per match-up")->envname("CARDBALANCE_GAMES");
        cmd->add_option("--seed", o.seed, "base seed (random and recorded if omitted)")->envname("CARDBALANCE_SEED");
        cmd->add_option("--jobs", o.jobs, "worker threads; 0 = all cores")->envname("CARDBALANCE_JOBS");
        cmd->add_option("--node-budget", o.node_budget, "override every agent's search budget")
            ->envname("CARDBALANCE_NODE_BUDGET");
        cmd->add_option("--out", o.out, "output directory")->envname("CARDBALANCE_OUT");
    }
}

void add_evolve(CLI::App* cmd, EvolveOptions& e)
{
    cmd->add_option("--generations", e.generations, "evaluated generations")->envname("CARDBALANCE_GENERATIONS");
    cmd->add_option("--population", e.population, "population size");
    cmd->add_option("--crossover-rate", e.crossover_rate);
    cmd->add_option("--mutation-rate", e.mutation_rate, "per-offspring mutation probability");
    cmd->add_option("--gene-prob", e.gene_prob, "per-gene resample probability");
    cmd->add_option("--tournament", e.tournament, "tournament size");
    cmd->add_option("--seed-patch", e.seed_patches, "patch JSON to include in the initial population");
    cmd->add_option("--magnitude", e.magnitude, "effective or raw")->check(CLI::IsMember({"effective", "raw"}));
    cmd->add_option("--mana-weight", e.mana_weight, "magnitude weight of cost changes");
    cmd->add_option("--baseline-games", e.baseline_games, "games per match-up for the baseline (default --games)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Card game metagame balancing toolkit"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    CommonOptions common;
    EvolveOptions evolve;

    auto* simulate = app.add_subcommand("simulate", "match-up matrix and meta win rates");
    add_common(simulate, common, true);
    bool mirrors = false;
    std::vector<double> prevalence;
    simulate->add_flag("--mirrors", mirrors, "simulate mirror match-ups instead of fixing them at 0.5");
    simulate->add_option("--prevalence", prevalence, "deck prevalence, one per deck")->delimiter(',');
    int log_games = 0;
    simulate->add_option("--log-games", log_games, "write event logs of the first N games per match-up to games.jsonl");

    auto* single = app.add_subcommand("evolve-single", "genetic algorithm on balance F");
    add_common(single, common, true);
    add_evolve(single, evolve);

    auto* pareto = app.add_subcommand("evolve-pareto", "NSGA-II on balance F and magnitude M");
    add_common(pareto, common, true);
    add_evolve(pareto, evolve);

    auto* sweep = app.add_subcommand("nerf-sweep", "+1 mana nerf of each card of one deck");
    add_common(sweep, common, true);
    std::string target;
    sweep->add_option("--target", target, "label (file stem) of the deck to sweep")->required();

    auto* apply = app.add_subcommand("apply-patch", "write a patched card pool");
    std::string patch_path;
    std::string apply_out;
    apply->add_option("--pool", common.pool, "card pool JSON")->required()->envname("CARDBALANCE_POOL");
    apply->add_option("--patch", patch_path, "patch JSON")->required();
    apply->add_option("--out", apply_out, "output card pool file")->required();

    auto* validate = app.add_subcommand("validate", "check pool, deck, agent and patch files");
    add_common(validate, common, false);
    std::vector<std::string> patches;
    validate->add_option("--patch", patches, "patch JSON files")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        auto* seed_opt = app.get_subcommands().front()->get_option_no_throw("--seed");
        common.seed_given = seed_opt != nullptr && seed_opt->count() > 0;
        if (seed_opt != nullptr && !common.seed_given && std::getenv("CARDBALANCE_SEED") == nullptr) {
            common.seed = std::random_device{}();
            std::cerr << "seed = " << common.seed << "\n";
        }
        if (simulate->parsed()) return cmd_simulate(common, mirrors, prevalence, log_games);
        if (single->parsed()) return cmd_evolve_single(common, evolve);
        if (pareto->parsed()) return cmd_evolve_pareto(common, evolve);
        if (sweep->parsed()) return cmd_nerf_sweep(common, target);
        if (apply->parsed()) return cmd_apply_patch(common.pool, patch_path, apply_out);
        if (validate->parsed()) return cmd_validate(common, patches);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
