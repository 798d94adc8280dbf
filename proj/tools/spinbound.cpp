// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

// spinbound: bound constants, operator certificates, weight optimization,
// comparison with the weak-homogeneity bound, magnon checks and operator export.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "spinbound/cli.hpp"

namespace {

using namespace spinbound;

struct GraphFlags {
    std::string lattice;
    std::string extents;
    std::string bc = "periodic";
    std::string edges;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& f) {
    cmd->add_option("--lattice", f.lattice, "cubic lattice as DxN, e.g. 1x4 or 2x3");
    cmd->add_option("--extents", f.extents, "rectangular lattice extents, e.g. 4,3");
    cmd->add_option("--bc", f.bc, "boundary condition")->check(CLI::IsMember({"periodic", "open"}));
    cmd->add_option("--edges", f.edges, "edge-list file: one 'u v' per line, '#' comments");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-energy operator inequalities on Heisenberg coupling graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    CommandConfig cfg;
    GraphFlags graph;
    std::string method = "auto";
    std::string variant;
    std::string paths = "bfs";
    std::string which = "deltaH";
    std::string sweep;
    double c = -1.0;

    const std::map<std::string, std::string> help{
        {"constant", "closed-form bound constants (optionally swept over N)"},
        {"verify", "certify DeltaS^2 <= c DeltaH/4J by smallest eigenvalues"},
        {"optimal", "tightest constant c_star from the joint spectrum"},
        {"optimize", "uniform and optimized path-weight constants"},
        {"compare", "closed-form bound against the weak-homogeneity bound"},
        {"magnon", "single-magnon eigenstate and dispersion checks"},
        {"export", "write a sector operator in Matrix Market format"}};

    for (const auto& [name, text] : help) {
        CLI::App* cmd = app.add_subcommand(name, text);
        add_graph_flags(cmd, graph);
        cmd->add_option("--J", cfg.coupling, "coupling J (energy units in output only)");
        cmd->add_option("--tol", cfg.tol, "eigenvalue tolerance");
        cmd->add_option("--method", method, "eigensolver")->check(CLI::IsMember({"auto", "dense", "iterative"}));
        cmd->add_option("--seed", cfg.seed, "seed for iterative start vectors");
        cmd->add_option("--out", cfg.output, "output path (report, table or matrix)");
        cmd->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));
        if (name == "constant" || name == "verify" || name == "compare")
            cmd->add_option("--variant", variant, "closed form")
                ->check(CLI::IsMember({"generic", "diameter", "periodic", "open"}));
        if (name == "constant") cmd->add_option("--sweep-n", sweep, "sweep N over lo:hi (CSV table)");
        if (name == "verify") cmd->add_option("--c", c, "constant to certify");
        if (name == "optimize") {
            cmd->add_option("--paths", paths, "path choice")->check(CLI::IsMember({"bfs", "canonical"}));
            cmd->add_option("--assignment-out", cfg.assignment_output, "write the optimized assignment as JSON");
        }
        if (name == "magnon") {
            cmd->add_option("--momentum", cfg.momentum, "momentum integers m_d for --state-out");
            cmd->add_option("--state-out", cfg.state_output, "write that magnon state as (real, imag) lines");
        }
        if (name == "export") {
            cmd->add_option("--sector", cfg.sector, "number of flipped spins")->required();
            cmd->add_option("--which", which, "operator")->check(CLI::IsMember({"deltaH", "deltaS2"}));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        const Boundary bc = graph.bc == "open" ? Boundary::open : Boundary::periodic;
        if (!graph.lattice.empty() && !graph.extents.empty()) throw UsageError("give --lattice or --extents, not both");
        if (!graph.lattice.empty()) cfg.lattice = LatticeSpec{parse_lattice_arg(graph.lattice, false), bc};
        if (!graph.extents.empty()) cfg.lattice = LatticeSpec{parse_lattice_arg(graph.extents, true), bc};
        if (!graph.edges.empty()) cfg.edge_file = graph.edges;
        cfg.method = method == "dense" ? Method::dense : method == "iterative" ? Method::iterative : Method::automatic;
        if (!variant.empty())
            cfg.variant = variant == "generic"    ? Variant::generic
                          : variant == "diameter" ? Variant::diameter
                          : variant == "periodic" ? Variant::periodic
                                                  : Variant::open;
        if (c >= 0.0) cfg.constant = c;
        cfg.paths = paths == "canonical" ? PathChoice::canonical : PathChoice::bfs;
        cfg.which = which == "deltaS2" ? OperatorKind::delta_s2 : OperatorKind::delta_h;
        if (!sweep.empty()) {
            const auto colon = sweep.find(':');
            if (colon == std::string::npos) throw UsageError("--sweep-n expects lo:hi");
            cfg.sweep = std::make_pair(std::stoi(sweep.substr(0, colon)), std::stoi(sweep.substr(colon + 1)));
        }

        const Report report = run(cfg);
        std::string text;
        if (cfg.format == "csv") {
            if (report.csv.empty()) throw UsageError("this subcommand has no CSV table; use --format json");
            text = report.csv;
        } else {
            text = report.body.dump(2) + "\n";
        }
        if (!cfg.output.empty() && cfg.subcommand != "export") {
            std::ofstream out(cfg.output);
            if (!out) throw std::runtime_error("cannot write '" + cfg.output + "'");
            out << text;
        } else {
            std::cout << text;
        }
        return static_cast<int>(report.exit_code);
    } catch (const std::invalid_argument& e) {
        std::cerr << "spinbound: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    } catch (const std::exception& e) {
        std::cerr << "spinbound: " << e.what() << "\n";
        return static_cast<int>(ExitCode::bound_failure);
    }
}
