// thcp command line: configuration-model generation, threshold contact
// process runs, and the analytic/structural experiment families. Every
// subcommand reads a JSON config and writes its result atomically.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "thcp/core.hpp"
#include "thcp/experiment.hpp"
#include "thcp/graph_gen.hpp"
#include "thcp/kernels.hpp"
#include "thcp/meanfield.hpp"

using nlohmann::json;

namespace {

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw thcp::SpecError("cannot open config: " + path);
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw thcp::SpecError(std::string("config is not valid JSON: ") + e.what());
    }
}

struct CommonOpts {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config, "JSON config path")->required();
    cmd->add_option("--out", opts.out, "output path")->required();
    cmd->add_option("--seed", opts.seed, "override master seed");
    cmd->add_option("--threads", opts.threads, "worker cap (0 = hardware)");
}

thcp::ExperimentSpec load_spec(const CommonOpts& opts, thcp::ExperimentKind kind) {
    json cfg = load_config(opts.config);
    if (!cfg.contains("kind")) cfg["kind"] = thcp::ExperimentSpec{.kind = kind}.to_json()["kind"];
    auto spec = thcp::ExperimentSpec::from_json(cfg);
    if (spec.kind != kind) throw thcp::SpecError("config kind does not match subcommand");
    if (opts.seed) spec.master_seed = *opts.seed;
    spec.validate();
    return spec;
}

void run_experiment_command(const CommonOpts& opts, thcp::ExperimentKind kind,
                            const std::string& csv_path) {
    auto spec = load_spec(opts, kind);
    auto result = thcp::run_experiment(spec, opts.threads);
    thcp::write_atomic(opts.out, result.to_json().dump(2) + "\n");
    if (!csv_path.empty()) {
        if (kind == thcp::ExperimentKind::survival_sweep) {
            thcp::write_atomic(csv_path, thcp::sweep_csv(result));
        } else if (kind == thcp::ExperimentKind::meanfield_table) {
            std::ostringstream os;
            os << "p,q,stability\n";
            for (const auto& row : result.records)
                for (const auto& root : row.at("roots"))
                    os << row.at("p").get<double>() << ',' << root.at("q").get<double>() << ','
                       << root.at("stability").get<std::string>() << '\n';
            thcp::write_atomic(csv_path, os.str());
        }
    }
}

void run_generate(const CommonOpts& opts) {
    json cfg = load_config(opts.config);
    std::uint64_t seed = opts.seed.value_or(cfg.value("seed", std::uint64_t{0}));
    std::string method_name = cfg.value("method", "uniform");
    thcp::MatchMethod method;
    if (method_name == "uniform") method = thcp::MatchMethod::uniform;
    else if (method_name == "cutoff_line") method = thcp::MatchMethod::cutoff_line;
    else throw thcp::SpecError("generate: unknown method: " + method_name);

    thcp::DegreeSequence seq;
    if (cfg.contains("degrees")) {
        seq.degrees = cfg.at("degrees").get<std::vector<std::uint32_t>>();
    } else if (cfg.contains("dist")) {
        auto dist = thcp::DegreeDistribution::from_json(cfg.at("dist"));
        auto n = cfg.at("n").get<std::size_t>();
        seq = thcp::sample_degree_sequence(dist, n, thcp::derive_seed(seed, 0));
    } else {
        throw thcp::SpecError("generate: config needs either degrees or dist+n");
    }
    try {
        seq.validate();
    } catch (const std::exception& e) {
        throw thcp::SpecError(e.what());
    }
    auto gen = thcp::generate(seq, thcp::derive_seed(seed, 1), method);
    thcp::MultiGraph graph =
        cfg.value("simplify", false) ? gen.graph.simplified() : std::move(gen.graph);
    thcp::write_atomic(opts.out, graph.to_text());

    auto st = graph.stats();
    std::cerr << "generated n=" << graph.num_vertices() << " m=" << st.edge_count
              << " loops=" << st.self_loops << " parallel_pairs=" << st.parallel_pairs << "\n";
}

void run_simulate(const CommonOpts& opts, const std::string& csv_path) {
    json cfg = load_config(opts.config);
    std::uint64_t seed = opts.seed.value_or(cfg.value("master_seed", std::uint64_t{0}));

    std::optional<thcp::MultiGraph> graph;
    std::size_t n = 0;
    if (cfg.contains("graph_file")) {
        std::ifstream in(cfg.at("graph_file").get<std::string>());
        if (!in) throw thcp::SpecError("simulate: cannot open graph_file");
        graph = thcp::MultiGraph::from_text(in);
        n = graph->num_vertices();
    } else if (cfg.contains("dist")) {
        auto dist = thcp::DegreeDistribution::from_json(cfg.at("dist"));
        n = cfg.at("n").get<std::size_t>();
        auto seq = thcp::sample_degree_sequence(dist, n, thcp::derive_seed(seed, 0));
        graph = thcp::generate(seq, thcp::derive_seed(seed, 1), thcp::MatchMethod::uniform).graph;
    } else {
        throw thcp::SpecError("simulate: config needs graph_file or dist+n");
    }

    thcp::ProcessConfig pc;
    pc.theta = cfg.value("theta", 2);
    pc.p = cfg.at("p").get<double>();
    std::string mode = cfg.value("counting_mode", "multiplicity");
    if (mode == "multiplicity") pc.mode = thcp::CountingMode::multiplicity;
    else if (mode == "distinct") pc.mode = thcp::CountingMode::distinct;
    else throw thcp::SpecError("simulate: unknown counting_mode");
    pc.seed = thcp::derive_seed(seed, 3);
    auto t_max = cfg.value("t_max", std::int64_t{1000});
    if (pc.theta < 2 || pc.p < 0.0 || pc.p > 1.0 || t_max < 1)
        throw thcp::SpecError("simulate: invalid theta/p/t_max");

    thcp::ProcessState init = thcp::ProcessState::all_infected(n);
    if (cfg.contains("init")) {
        const json& ij = cfg.at("init");
        std::string type = ij.value("type", "all");
        if (type == "density")
            init = thcp::ProcessState::with_density(n, ij.at("rho").get<double>(),
                                                    thcp::derive_seed(seed, 2));
        else if (type == "explicit")
            init = thcp::ProcessState::from_set(
                n, ij.at("vertices").get<std::vector<thcp::Vertex>>());
        else if (type != "all")
            throw thcp::SpecError("simulate: unknown init type");
    }

    auto traj = thcp::run(*graph, init, pc, t_max);
    json out;
    out["n"] = n;
    out["theta"] = pc.theta;
    out["p"] = pc.p;
    out["t_max"] = t_max;
    out["master_seed"] = seed;
    out["kernel_backend"] = thcp::kernels::backend_name(thcp::kernels::active_backend());
    out["extinct_at"] = traj.extinct_at ? json(*traj.extinct_at) : json(nullptr);
    out["censored_at"] = traj.censored_at ? json(*traj.censored_at) : json(nullptr);
    out["final_density"] = static_cast<double>(traj.final_size) / static_cast<double>(n);
    thcp::write_atomic(opts.out, out.dump(2) + "\n");
    if (!csv_path.empty()) thcp::write_atomic(csv_path, thcp::trajectory_csv(traj));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"threshold contact process laboratory on configuration-model graphs"};
    app.require_subcommand(1);

    CommonOpts gen_opts, sim_opts, sweep_opts, core_opts, struct_opts, cyc_opts, mf_opts;
    std::string sim_csv, sweep_csv_path, mf_csv;

    auto* gen = app.add_subcommand("generate", "write a configuration-model graph file");
    add_common(gen, gen_opts);

    auto* sim = app.add_subcommand("simulate", "run one trajectory");
    add_common(sim, sim_opts);
    sim->add_option("--csv", sim_csv, "trajectory CSV path (t,infected_count)");

    auto* sweep = app.add_subcommand("sweep", "survival sweep over a p-grid");
    add_common(sweep, sweep_opts);
    sweep->add_option("--csv", sweep_csv_path, "per-record CSV path");

    auto* core = app.add_subcommand("core", "peel r-cores and compare with the analytic law");
    add_common(core, core_opts);

    auto* structure = app.add_subcommand("structure", "W* event violation estimates");
    add_common(structure, struct_opts);

    auto* cycles = app.add_subcommand("cycles", "short-cycle covers");
    add_common(cycles, cyc_opts);

    auto* meanfield = app.add_subcommand("meanfield", "fixed-point tables of the mean-field map");
    add_common(meanfield, mf_opts);
    meanfield->add_option("--csv", mf_csv, "p,q,stability CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) run_generate(gen_opts);
        else if (sim->parsed()) run_simulate(sim_opts, sim_csv);
        else if (sweep->parsed())
            run_experiment_command(sweep_opts, thcp::ExperimentKind::survival_sweep,
                                   sweep_csv_path);
        else if (core->parsed())
            run_experiment_command(core_opts, thcp::ExperimentKind::core_size, "");
        else if (structure->parsed())
            run_experiment_command(struct_opts, thcp::ExperimentKind::structure_event, "");
        else if (cycles->parsed())
            run_experiment_command(cyc_opts, thcp::ExperimentKind::cycle_cover, "");
        else if (meanfield->parsed())
            run_experiment_command(mf_opts, thcp::ExperimentKind::meanfield_table, mf_csv);
    } catch (const thcp::SpecError& e) {
        std::cerr << "spec rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
