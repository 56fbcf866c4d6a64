#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tnrank/io.hpp"
#include "tnrank/verify.hpp"

using namespace tnrank;

namespace {

constexpr int kFailed = 1;
constexpr int kError = 2;

struct Common {
    std::string mode = "auto";
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::string out = "-";
    bool trace = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--mode", c.mode, "Scalar mode for the computation")->check(CLI::IsMember({"auto", "exact", "float"}));
    cmd->add_option("--tol", c.tol, "Singular value threshold for float ranks")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", c.seed, "Random seed");
    cmd->add_option("--out", c.out, "Output path, - for stdout");
    cmd->add_flag("--trace", c.trace, "Include per-iteration detail");
}

Tensor with_mode(Tensor t, const std::string& mode) {
    if (mode == "float") return t.to_float();
    if (mode == "exact" && t.mode() != ScalarMode::exact) throw std::invalid_argument("--mode exact needs an exact tensor file");
    return t;
}

Tensor load_tensor(const std::string& path, const std::string& mode) { return with_mode(tensor_from_json(read_json_file(path)), mode); }

// A path to a graph file or a name such as P4 or C3.
NetworkGraph load_graph(const std::string& arg) {
    if (std::filesystem::exists(arg)) return graph_from_json(read_json_file(arg));
    try {
        return graph_from_name(arg);
    } catch (const FormatError&) {
        throw std::runtime_error("cannot open " + arg);
    }
}

std::vector<std::uint64_t> seed_list(std::uint64_t seed, std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(seed + k);
    return out;
}

std::vector<double> parse_targets(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("bad target '" + tok + "'");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor network ranks: exact tree ranks, constructions, dimensions and ALS fits"};
    app.require_subcommand(1);
    Common c;
    int status = 0;

    std::string tensor_path, graph_arg, input_path, name;
    std::vector<std::size_t> params;

    auto* rank = app.add_subcommand("rank", "G-rank of a tensor on a tree");
    rank->add_option("tensor", tensor_path, "Tensor file")->required();
    rank->add_option("graph", graph_arg, "Graph file or name (P4, S3, ...)")->required();
    add_common(rank, c);
    rank->callback([&] {
        const auto t = load_tensor(tensor_path, c.mode);
        const auto g = load_graph(graph_arg);
        write_json_file(c.out, rank_report_to_json(ttns_rank_report(t, g, c.tol), g));
    });

    auto* decompose = app.add_subcommand("decompose", "Tree decomposition with edge dims equal to the G-rank");
    decompose->add_option("tensor", tensor_path, "Tensor file")->required();
    decompose->add_option("graph", graph_arg, "Graph file or name")->required();
    add_common(decompose, c);
    decompose->callback([&] {
        write_json_file(c.out, state_to_json(ttns_decompose(load_tensor(tensor_path, c.mode), load_graph(graph_arg), c.tol)));
    });

    auto* contract = app.add_subcommand("contract", "Contract a state file to a tensor");
    contract->add_option("state", input_path, "State file")->required();
    add_common(contract, c);
    contract->callback([&] {
        write_json_file(c.out, tensor_to_json(with_mode(contract_network(state_from_json(read_json_file(input_path))), c.mode)));
    });

    auto* embed = app.add_subcommand("embed", "Embed a CP decomposition into a network on any connected graph");
    embed->add_option("cp", input_path, "CP decomposition file")->required();
    embed->add_option("graph", graph_arg, "Graph file or name")->required();
    add_common(embed, c);
    embed->callback([&] { write_json_file(c.out, state_to_json(universal_embed(cp_from_json(read_json_file(input_path)), load_graph(graph_arg)))); });

    std::size_t dim_seeds = 3;
    auto* dim = app.add_subcommand("dim", "Closed-form dimension against the Jacobian estimate");
    dim->add_option("spec", input_path, "Spec file")->required();
    dim->add_option("--seeds", dim_seeds, "Number of Jacobian seeds, starting at --seed")->check(CLI::PositiveNumber);
    add_common(dim, c);
    dim->callback([&] {
        const auto spec = spec_from_json(read_json_file(input_path));
        write_json_file(c.out, dim_report_to_json(dimension_report(spec, seed_list(c.seed, dim_seeds))));
    });

    std::string form = "tensor";
    auto* gallery = app.add_subcommand("gallery", "Emit a fixture: w D, ghz D, strassen M N P, sym N, skew N, monomial P..., border D N");
    gallery->add_option("name", name, "Fixture name")->required();
    gallery->add_option("params", params, "Integer parameters");
    gallery->add_option("--form", form, "tensor, cp, path, cycle or star")->check(CLI::IsMember({"tensor", "cp", "path", "cycle", "star"}));
    add_common(gallery, c);
    gallery->callback([&] { write_json_file(c.out, gallery_to_json(name, params, form)); });

    FitOptions fit_opts;
    std::string spec_path, border_targets;
    std::size_t max_budget = 32000;
    auto* fit = app.add_subcommand("fit", "Alternating least squares on any connected graph");
    fit->add_option("tensor", tensor_path, "Tensor file")->required();
    fit->add_option("spec", spec_path, "Spec file")->required();
    fit->add_option("--restarts", fit_opts.restarts)->check(CLI::PositiveNumber);
    fit->add_option("--max-iters", fit_opts.max_iters);
    fit->add_option("--ridge", fit_opts.ridge)->check(CLI::NonNegativeNumber);
    fit->add_option("--target", fit_opts.target, "Stop a restart once this residual is reached");
    fit->add_option("--conv-tol", fit_opts.convergence_tol)->check(CLI::NonNegativeNumber);
    fit->add_option("--border", border_targets, "Comma-separated decreasing targets: run the border probe instead");
    fit->add_option("--max-budget", max_budget, "Largest sweep budget in the border probe")->check(CLI::PositiveNumber);
    add_common(fit, c);
    fit->callback([&] {
        fit_opts.seed = c.seed;
        const auto t = load_tensor(tensor_path, c.mode);
        const auto spec = spec_from_json(read_json_file(spec_path));
        if (!border_targets.empty()) {
            write_json_file(c.out, border_report_to_json(border_probe(t, spec, parse_targets(border_targets), fit_opts, max_budget)));
        } else {
            write_json_file(c.out, fit_result_to_json(als_fit(t, spec, fit_opts), c.trace));
        }
    });

    std::string filter;
    bool list = false;
    auto* verify = app.add_subcommand("verify", "Re-derive each claim; exit status 0 iff every gated claim passes");
    verify->add_option("--filter", filter, "Comma-separated groups or claim ids");
    verify->add_flag("--list", list, "List the claims without running them");
    add_common(verify, c);
    verify->callback([&] {
        std::ostringstream lines;
        if (list) {
            for (const auto& i : list_claims()) lines << Json{{"id", i.id}, {"group", i.group}, {"gated", i.gated}}.dump() << '\n';
        } else {
            const auto results = run_claims(filter);
            for (const auto& r : results) lines << claim_to_json(r).dump() << '\n';
            if (!gated_claims_pass(results)) status = kFailed;
        }
        if (c.out == "-") {
            std::cout << lines.str();
        } else {
            std::ofstream f(c.out);
            if (!f) throw std::runtime_error("cannot write " + c.out);
            f << lines.str();
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return status;
}
