#include "thcp/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "thcp/core.hpp"
#include "thcp/graph_gen.hpp"
#include "thcp/meanfield.hpp"

namespace thcp {

using nlohmann::json;

namespace {

const char* kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::survival_sweep: return "survival_sweep";
        case ExperimentKind::core_size: return "core_size";
        case ExperimentKind::structure_event: return "structure_event";
        case ExperimentKind::cycle_cover: return "cycle_cover";
        case ExperimentKind::meanfield_table: return "meanfield_table";
        case ExperimentKind::matching_law: return "matching_law";
    }
    return "?";
}

ExperimentKind kind_from(const std::string& s) {
    for (auto k : {ExperimentKind::survival_sweep, ExperimentKind::core_size,
                   ExperimentKind::structure_event, ExperimentKind::cycle_cover,
                   ExperimentKind::meanfield_table, ExperimentKind::matching_law})
        if (s == kind_name(k)) return k;
    throw SpecError("unknown experiment kind: " + s);
}

// Index-addressed parallel map: worker scheduling cannot change where a
// job's output lands.
void parallel_for(std::size_t jobs, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        threads = hc == 0 ? 1 : static_cast<int>(hc);
    }
    threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), jobs));
    if (threads <= 1) {
        for (std::size_t j = 0; j < jobs; ++j) fn(j);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t j = next.fetch_add(1);
                if (j >= jobs) return;
                try {
                    fn(j);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

json traj_summary(const Trajectory& traj, std::size_t n) {
    json rec;
    rec["extinct_at"] = traj.extinct_at ? json(*traj.extinct_at) : json(nullptr);
    rec["censored_at"] = traj.censored_at ? json(*traj.censored_at) : json(nullptr);
    rec["final_density"] =
        static_cast<double>(traj.final_size) / static_cast<double>(n);
    rec["survived"] = traj.survived();
    return rec;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) return std::nan("");
    std::sort(xs.begin(), xs.end());
    double pos = q * static_cast<double>(xs.size() - 1);
    auto lo = static_cast<std::size_t>(pos);
    auto hi = std::min(lo + 1, xs.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

MultiGraph make_graph(const ExperimentSpec& spec, std::uint64_t rep_seed) {
    auto seq = sample_degree_sequence(*spec.dist, spec.n, derive_seed(rep_seed, 0));
    return generate(seq, derive_seed(rep_seed, 1), MatchMethod::uniform).graph;
}

ProcessState make_init(const ExperimentSpec& spec, std::uint64_t rep_seed) {
    switch (spec.init.type) {
        case InitCondition::Type::all: return ProcessState::all_infected(spec.n);
        case InitCondition::Type::density:
            return ProcessState::with_density(spec.n, spec.init.rho, derive_seed(rep_seed, 2));
        case InitCondition::Type::explicit_set:
            return ProcessState::from_set(spec.n, spec.init.vertices);
    }
    throw SpecError("bad init condition");
}

std::string matching_signature(const HalfEdgeTable& table) {
    std::string sig;
    for (std::size_t j = 0; j < table.matched.size(); ++j) {
        if (table.matched[j] != HalfEdgeTable::npos && table.matched[j] > j) {
            if (!sig.empty()) sig += ',';
            sig += std::to_string(j) + '-' + std::to_string(table.matched[j]);
        }
    }
    return sig;
}

void run_survival_sweep(const ExperimentSpec& spec, int threads, ExperimentResult& out) {
    const std::size_t jobs = spec.p_grid.size() * static_cast<std::size_t>(spec.replicas);
    std::vector<json> records(jobs);
    parallel_for(jobs, threads, [&](std::size_t j) {
        std::size_t p_idx = j / static_cast<std::size_t>(spec.replicas);
        int rep = static_cast<int>(j % static_cast<std::size_t>(spec.replicas));
        std::uint64_t rep_seed = derive_seed(spec.master_seed, j);
        json rec;
        rec["p"] = spec.p_grid[p_idx];
        rec["replica"] = rep;
        try {
            MultiGraph g = make_graph(spec, rep_seed);
            ProcessState init = make_init(spec, rep_seed);
            ProcessConfig cfg{spec.theta, spec.p_grid[p_idx], spec.counting_mode,
                              derive_seed(rep_seed, 3)};
            Trajectory traj = run(g, init, cfg, spec.t_max);
            rec.update(traj_summary(traj, spec.n));
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        records[j] = std::move(rec);
    });
    for (auto& r : records) out.records.push_back(std::move(r));

    std::optional<CoreThresholdResult> analytic;
    if (spec.relative_to_core) {
        analytic = solve_core_threshold(*spec.dist, spec.theta + 2);
        for (auto& rec : out.records) {
            if (rec.contains("error") || !analytic->condition_holds) continue;
            double dens = rec["final_density"].get<double>();
            rec["core_relative_density"] = dens / analytic->rho;
        }
    }

    json per_p = json::array();
    std::vector<double> fractions;
    for (std::size_t pi = 0; pi < spec.p_grid.size(); ++pi) {
        std::vector<double> ext_times;
        std::vector<double> final_dens;
        int survived = 0, valid = 0;
        for (int rep = 0; rep < spec.replicas; ++rep) {
            const json& rec = out.records[pi * static_cast<std::size_t>(spec.replicas) +
                                          static_cast<std::size_t>(rep)];
            if (rec.contains("error")) continue;
            ++valid;
            if (rec["survived"].get<bool>())
                ++survived;
            else
                ext_times.push_back(rec["extinct_at"].get<double>());
            final_dens.push_back(rec["final_density"].get<double>());
        }
        double frac = valid > 0 ? static_cast<double>(survived) / valid : 0.0;
        fractions.push_back(frac);
        json row;
        row["p"] = spec.p_grid[pi];
        row["survival_fraction"] = frac;
        row["median_extinction_time"] =
            ext_times.empty() ? json(nullptr) : json(quantile(ext_times, 0.5));
        row["q25_extinction_time"] =
            ext_times.empty() ? json(nullptr) : json(quantile(ext_times, 0.25));
        row["q75_extinction_time"] =
            ext_times.empty() ? json(nullptr) : json(quantile(ext_times, 0.75));
        row["mean_final_density"] =
            final_dens.empty()
                ? 0.0
                : std::accumulate(final_dens.begin(), final_dens.end(), 0.0) /
                      static_cast<double>(final_dens.size());
        per_p.push_back(std::move(row));
    }
    out.aggregates["per_p"] = std::move(per_p);
    if (analytic) {
        out.aggregates["core_threshold"] = {{"condition_holds", analytic->condition_holds},
                                            {"hhat", analytic->hhat},
                                            {"rho", analytic->rho}};
    }
    if (spec.p_grid.size() >= 2) {
        TransitionBracket br = estimate_transition(spec.p_grid, fractions);
        out.aggregates["transition"] = {
            {"p_lo", br.p_lo ? json(*br.p_lo) : json(nullptr)},
            {"p_hi", br.p_hi ? json(*br.p_hi) : json(nullptr)},
            {"open_low", br.open_low},
            {"open_high", br.open_high}};
    }
}

void run_core_size(const ExperimentSpec& spec, int threads, ExperimentResult& out) {
    auto analytic = solve_core_threshold(*spec.dist, spec.r);
    const auto jobs = static_cast<std::size_t>(spec.replicas);
    std::vector<json> records(jobs);
    parallel_for(jobs, threads, [&](std::size_t j) {
        std::uint64_t rep_seed = derive_seed(spec.master_seed, j);
        json rec;
        rec["replica"] = j;
        try {
            MultiGraph g = make_graph(spec, rep_seed);
            CoreResult core = peel_core(g, spec.r);
            rec["core_size"] = core.size();
            rec["fraction"] =
                static_cast<double>(core.size()) / static_cast<double>(spec.n);
            rec["h_core"] = nullptr;
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        records[j] = std::move(rec);
    });
    std::vector<double> fractions;
    for (auto& r : records) {
        if (!r.contains("error")) fractions.push_back(r["fraction"].get<double>());
        out.records.push_back(std::move(r));
    }
    double mean = fractions.empty()
                      ? 0.0
                      : std::accumulate(fractions.begin(), fractions.end(), 0.0) /
                            static_cast<double>(fractions.size());
    out.aggregates["analytic"] = {{"condition_holds", analytic.condition_holds},
                                  {"hhat", analytic.hhat},
                                  {"rho", analytic.rho},
                                  {"r", analytic.r}};
    out.aggregates["mean_fraction"] = mean;
    out.aggregates["abs_error"] =
        analytic.condition_holds ? std::abs(mean - analytic.rho) : mean;
}

void run_structure_event(const ExperimentSpec& spec, int threads, ExperimentResult& out) {
    const auto jobs = static_cast<std::size_t>(spec.replicas);
    std::vector<json> records(jobs);
    parallel_for(jobs, threads, [&](std::size_t j) {
        std::uint64_t rep_seed = derive_seed(spec.master_seed, j);
        json rec;
        rec["replica"] = j;
        try {
            MultiGraph g = make_graph(spec, rep_seed);
            EventEstimate est =
                estimate_event(g, spec.event, spec.m1, spec.m2, spec.l, spec.trials,
                               derive_seed(rep_seed, 2), spec.exact_cap);
            rec["trials"] = est.trials;
            rec["violations"] = est.violations;
            rec["mode"] = est.exact ? "exact" : "sampled";
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        records[j] = std::move(rec);
    });
    std::int64_t trials = 0, violations = 0;
    for (auto& r : records) {
        if (!r.contains("error")) {
            trials += r["trials"].get<std::int64_t>();
            violations += r["violations"].get<std::int64_t>();
        }
        out.records.push_back(std::move(r));
    }
    double frac = trials > 0 ? static_cast<double>(violations) / static_cast<double>(trials)
                             : 0.0;
    out.aggregates["total_trials"] = trials;
    out.aggregates["total_violations"] = violations;
    out.aggregates["violation_fraction"] = frac;
    out.aggregates["standard_error"] =
        trials > 0 ? std::sqrt(frac * (1.0 - frac) / static_cast<double>(trials)) : 0.0;
}

void run_cycle_cover(const ExperimentSpec& spec, int threads, ExperimentResult& out) {
    const auto jobs = static_cast<std::size_t>(spec.replicas);
    std::vector<json> records(jobs);
    parallel_for(jobs, threads, [&](std::size_t j) {
        std::uint64_t rep_seed = derive_seed(spec.master_seed, j);
        json rec;
        rec["replica"] = j;
        try {
            MultiGraph g = make_graph(spec, rep_seed);
            CycleCover cover = cycle_cover(g, spec.max_len);
            rec["num_cycles"] = cover.cycles.size();
            rec["num_uncovered"] = cover.uncovered.size();
            rec["max_len_used"] = cover.max_len_used;
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        records[j] = std::move(rec);
    });
    bool all_covered = true;
    for (auto& r : records) {
        if (r.contains("error") || r["num_uncovered"].get<std::int64_t>() > 0)
            all_covered = false;
        out.records.push_back(std::move(r));
    }
    out.aggregates["all_covered"] = all_covered;
}

void run_meanfield_table(const ExperimentSpec& spec, ExperimentResult& out) {
    for (double p : spec.p_grid) {
        auto report = meanfield::fixed_points(p, spec.theta);
        json roots = json::array();
        for (const auto& root : report.roots) {
            const char* st = root.stability == meanfield::Stability::stable     ? "stable"
                             : root.stability == meanfield::Stability::unstable ? "unstable"
                                                                                : "marginal";
            roots.push_back({{"q", root.q}, {"stability", st}});
        }
        out.records.push_back(
            {{"p", p}, {"roots", roots}, {"has_nontrivial", report.has_nontrivial}});
    }
    out.aggregates["critical_p"] = meanfield::critical_p(spec.theta);
}

void run_matching_law(const ExperimentSpec& spec, int threads, ExperimentResult& out) {
    DegreeSequence seq{spec.degrees};
    seq.validate();
    const auto reps = static_cast<std::size_t>(spec.replicas);
    std::vector<std::string> sigs(2 * reps);
    parallel_for(2 * reps, threads, [&](std::size_t j) {
        MatchMethod method = j < reps ? MatchMethod::uniform : MatchMethod::cutoff_line;
        auto gen = generate(seq, derive_seed(spec.master_seed, j), method);
        sigs[j] = matching_signature(gen.table);
    });

    std::map<std::string, std::array<std::int64_t, 2>> table;
    for (std::size_t j = 0; j < 2 * reps; ++j) table[sigs[j]][j < reps ? 0 : 1]++;

    json per_method = json::object();
    for (int m = 0; m < 2; ++m) {
        json counts = json::object();
        for (const auto& [sig, c] : table) counts[sig] = c[static_cast<std::size_t>(m)];
        per_method[m == 0 ? "uniform" : "cutoff_line"] = counts;
    }
    out.records.push_back(per_method);

    // two-sample homogeneity chi-square across observed signatures
    double chi2 = 0.0;
    auto total = static_cast<double>(2 * reps);
    for (const auto& [sig, c] : table) {
        double rowsum = static_cast<double>(c[0] + c[1]);
        for (int m = 0; m < 2; ++m) {
            double expected = rowsum * static_cast<double>(reps) / total;
            double diff = static_cast<double>(c[static_cast<std::size_t>(m)]) - expected;
            chi2 += diff * diff / expected;
        }
    }
    out.aggregates["num_signatures"] = table.size();
    out.aggregates["two_sample_chi2"] = chi2;
    out.aggregates["two_sample_df"] = table.size() - 1;

    // per-method goodness of fit against the uniform matching law
    double expected = static_cast<double>(reps) / static_cast<double>(table.size());
    json gof = json::object();
    const char* names[2] = {"uniform", "cutoff_line"};
    for (int m = 0; m < 2; ++m) {
        double stat = 0.0;
        for (const auto& [sig, c] : table) {
            double diff = static_cast<double>(c[static_cast<std::size_t>(m)]) - expected;
            stat += diff * diff / expected;
        }
        gof[names[m]] = stat;
    }
    out.aggregates["uniformity_chi2"] = gof;
    out.aggregates["uniformity_df"] = table.size() - 1;
}

}  // namespace

void ExperimentSpec::validate() const {
    auto need_dist = [&] {
        if (!dist) throw SpecError("spec: distribution required for this kind");
        if (n < 1) throw SpecError("spec: n must be >= 1");
    };
    if (replicas < 1) throw SpecError("spec: replicas must be >= 1");
    switch (kind) {
        case ExperimentKind::survival_sweep:
            need_dist();
            if (theta < 2) throw SpecError("spec: theta must be >= 2");
            if (p_grid.empty()) throw SpecError("spec: p_grid must be nonempty");
            if (!std::is_sorted(p_grid.begin(), p_grid.end()))
                throw SpecError("spec: p_grid must be sorted ascending");
            for (double p : p_grid)
                if (p < 0.0 || p > 1.0) throw SpecError("spec: p must be in [0,1]");
            if (t_max < 1) throw SpecError("spec: t_max must be >= 1");
            if (init.type == InitCondition::Type::density && (init.rho < 0 || init.rho > 1))
                throw SpecError("spec: initial density must be in [0,1]");
            if (init.type == InitCondition::Type::explicit_set)
                for (Vertex v : init.vertices)
                    if (v >= n) throw SpecError("spec: initial vertex out of range");
            break;
        case ExperimentKind::core_size:
            need_dist();
            if (r < 2) throw SpecError("spec: r must be >= 2");
            break;
        case ExperimentKind::structure_event:
            need_dist();
            if (l < 1) throw SpecError("spec: l must be >= 1");
            if (m1 < 0 || m1 > static_cast<std::int64_t>(n))
                throw SpecError("spec: m1 out of range");
            if (trials < 1) throw SpecError("spec: trials must be >= 1");
            break;
        case ExperimentKind::cycle_cover:
            need_dist();
            if (max_len < 1) throw SpecError("spec: max_len must be >= 1");
            break;
        case ExperimentKind::meanfield_table:
            if (theta < 2) throw SpecError("spec: theta must be >= 2");
            if (p_grid.empty()) throw SpecError("spec: p_grid must be nonempty");
            break;
        case ExperimentKind::matching_law: {
            if (degrees.empty()) throw SpecError("spec: degrees required for matching_law");
            std::uint64_t sum = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
            if (sum % 2 != 0) throw SpecError("spec: degrees must have even sum");
            break;
        }
    }
}

json ExperimentSpec::to_json() const {
    json j;
    j["kind"] = kind_name(kind);
    if (dist) j["dist"] = dist->to_json();
    if (!degrees.empty()) j["degrees"] = degrees;
    j["n"] = n;
    j["theta"] = theta;
    j["p_grid"] = p_grid;
    switch (init.type) {
        case InitCondition::Type::all: j["init"] = {{"type", "all"}}; break;
        case InitCondition::Type::density:
            j["init"] = {{"type", "density"}, {"rho", init.rho}};
            break;
        case InitCondition::Type::explicit_set:
            j["init"] = {{"type", "explicit"}, {"vertices", init.vertices}};
            break;
    }
    j["replicas"] = replicas;
    j["t_max"] = t_max;
    j["master_seed"] = master_seed;
    j["counting_mode"] =
        counting_mode == CountingMode::multiplicity ? "multiplicity" : "distinct";
    j["r"] = r;
    j["relative_to_core"] = relative_to_core;
    j["event"] = event == StructureEvent::e2 ? "E2" : "Ftheta";
    j["m1"] = m1;
    j["m2"] = m2;
    j["l"] = l;
    j["trials"] = trials;
    j["exact_cap"] = exact_cap;
    j["max_len"] = max_len;
    return j;
}

ExperimentSpec ExperimentSpec::from_json(const json& j) {
    ExperimentSpec s;
    try {
        s.kind = kind_from(j.at("kind").get<std::string>());
        if (j.contains("dist")) s.dist = DegreeDistribution::from_json(j.at("dist"));
        if (j.contains("degrees")) s.degrees = j.at("degrees").get<std::vector<std::uint32_t>>();
        s.n = j.value("n", std::size_t{0});
        s.theta = j.value("theta", 2);
        if (j.contains("p_grid")) s.p_grid = j.at("p_grid").get<std::vector<double>>();
        if (j.contains("init")) {
            const json& init = j.at("init");
            std::string type = init.value("type", "all");
            if (type == "all") {
                s.init.type = InitCondition::Type::all;
            } else if (type == "density") {
                s.init.type = InitCondition::Type::density;
                s.init.rho = init.at("rho").get<double>();
            } else if (type == "explicit") {
                s.init.type = InitCondition::Type::explicit_set;
                s.init.vertices = init.at("vertices").get<std::vector<Vertex>>();
            } else {
                throw SpecError("spec: unknown init type: " + type);
            }
        }
        s.replicas = j.value("replicas", 1);
        s.t_max = j.value("t_max", std::int64_t{0});
        s.master_seed = j.value("master_seed", std::uint64_t{0});
        std::string mode = j.value("counting_mode", "multiplicity");
        if (mode == "multiplicity") s.counting_mode = CountingMode::multiplicity;
        else if (mode == "distinct") s.counting_mode = CountingMode::distinct;
        else throw SpecError("spec: unknown counting_mode: " + mode);
        s.r = j.value("r", 0);
        s.relative_to_core = j.value("relative_to_core", false);
        std::string ev = j.value("event", "E2");
        if (ev == "E2") s.event = StructureEvent::e2;
        else if (ev == "Ftheta") s.event = StructureEvent::ftheta;
        else throw SpecError("spec: unknown event: " + ev);
        s.m1 = j.value("m1", std::int64_t{0});
        s.m2 = j.value("m2", std::int64_t{0});
        s.l = j.value("l", 0);
        s.trials = j.value("trials", std::int64_t{0});
        s.exact_cap = j.value("exact_cap", std::int64_t{1000000});
        s.max_len = j.value("max_len", 0);
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError(std::string("spec: malformed config: ") + e.what());
    }
    return s;
}

bool ExperimentSpec::operator==(const ExperimentSpec& other) const {
    return kind == other.kind && dist == other.dist && degrees == other.degrees &&
           n == other.n && theta == other.theta && p_grid == other.p_grid &&
           init == other.init && replicas == other.replicas && t_max == other.t_max &&
           master_seed == other.master_seed && counting_mode == other.counting_mode &&
           r == other.r && relative_to_core == other.relative_to_core &&
           event == other.event && m1 == other.m1 && m2 == other.m2 && l == other.l &&
           trials == other.trials && exact_cap == other.exact_cap && max_len == other.max_len;
}

json ExperimentResult::to_json() const {
    json j;
    j["spec"] = spec.to_json();
    j["records"] = records;
    j["aggregates"] = aggregates;
    j["wall_clock_seconds"] = wall_clock_seconds;
    j["version"] = kVersionTag;
    return j;
}

std::string ExperimentResult::deterministic_dump() const {
    json j = to_json();
    j["wall_clock_seconds"] = 0.0;
    return j.dump(2);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads) {
    spec.validate();
    ExperimentResult result;
    result.spec = spec;
    auto start = std::chrono::steady_clock::now();
    switch (spec.kind) {
        case ExperimentKind::survival_sweep: run_survival_sweep(spec, threads, result); break;
        case ExperimentKind::core_size: run_core_size(spec, threads, result); break;
        case ExperimentKind::structure_event: run_structure_event(spec, threads, result); break;
        case ExperimentKind::cycle_cover: run_cycle_cover(spec, threads, result); break;
        case ExperimentKind::meanfield_table: run_meanfield_table(spec, result); break;
        case ExperimentKind::matching_law: run_matching_law(spec, threads, result); break;
    }
    result.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

TransitionBracket estimate_transition(const std::vector<double>& p_grid,
                                      const std::vector<double>& survival_fractions) {
    if (p_grid.size() != survival_fractions.size() || p_grid.size() < 2)
        throw SpecError("estimate_transition: need >= 2 aligned grid points");

    // pool-adjacent-violators, increasing
    struct Block {
        double value;
        int weight;
    };
    std::vector<Block> blocks;
    for (double f : survival_fractions) {
        blocks.push_back({f, 1});
        while (blocks.size() >= 2 && blocks[blocks.size() - 2].value > blocks.back().value) {
            Block b = blocks.back();
            blocks.pop_back();
            Block& a = blocks.back();
            a.value = (a.value * a.weight + b.value * b.weight) / (a.weight + b.weight);
            a.weight += b.weight;
        }
    }
    std::vector<double> fitted;
    for (const Block& b : blocks)
        for (int i = 0; i < b.weight; ++i) fitted.push_back(b.value);

    TransitionBracket br;
    if (fitted.front() >= 0.5) {
        br.open_low = true;
        br.p_hi = p_grid.front();
        return br;
    }
    if (fitted.back() < 0.5) {
        br.open_high = true;
        br.p_lo = p_grid.back();
        return br;
    }
    for (std::size_t i = 0; i + 1 < fitted.size(); ++i) {
        if (fitted[i] < 0.5 && fitted[i + 1] >= 0.5) {
            br.p_lo = p_grid[i];
            br.p_hi = p_grid[i + 1];
            break;
        }
    }
    return br;
}

TransitionBracket estimate_transition(const ExperimentResult& sweep_result) {
    if (sweep_result.spec.kind != ExperimentKind::survival_sweep)
        throw SpecError("estimate_transition: not a survival sweep result");
    std::vector<double> fractions;
    for (const auto& row : sweep_result.aggregates.at("per_p"))
        fractions.push_back(row.at("survival_fraction").get<double>());
    return estimate_transition(sweep_result.spec.p_grid, fractions);
}

std::string sweep_csv(const ExperimentResult& result) {
    std::ostringstream os;
    os << "p,replica,extinct_at,censored_at,final_density\n";
    for (const auto& rec : result.records) {
        if (rec.contains("error")) continue;
        os << rec.at("p").get<double>() << ',' << rec.at("replica").get<int>() << ',';
        if (!rec.at("extinct_at").is_null()) os << rec.at("extinct_at").get<std::int64_t>();
        os << ',';
        if (!rec.at("censored_at").is_null()) os << rec.at("censored_at").get<std::int64_t>();
        os << ',' << rec.at("final_density").get<double>() << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t,infected_count\n";
    for (const auto& [t, count] : traj.series) os << t << ',' << count << '\n';
    return os.str();
}

}  // namespace thcp
