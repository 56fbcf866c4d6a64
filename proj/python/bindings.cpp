#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tnrank/io.hpp"
#include "tnrank/verify.hpp"

namespace py = pybind11;
using namespace tnrank;

namespace {

// Every argument and result crosses the boundary as a JSON document in the
// file formats, so indices are 1-based on the Python side.
Json parse(const std::string& s) {
    try {
        return Json::parse(s);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(e.what());
    }
}

template <class F>
std::string released(F&& f) {
    py::gil_scoped_release release;
    return f().dump();
}

}  // namespace

PYBIND11_MODULE(_tnrank, m) {
    m.doc() = "Exact tree ranks, constructions, dimensions and ALS fits for tensor networks";
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);

    m.def("rank", [](const std::string& t, const std::string& g, std::optional<double> tol) {
        return released([&] {
            const auto graph = graph_from_json(parse(g));
            return rank_report_to_json(ttns_rank_report(tensor_from_json(parse(t)), graph, tol), graph);
        });
    }, py::arg("tensor"), py::arg("graph"), py::arg("tol") = py::none());

    m.def("membership", [](const std::string& t, const std::string& g, const std::vector<std::size_t>& r, std::optional<double> tol) {
        const auto tensor = tensor_from_json(parse(t));
        const auto graph = graph_from_json(parse(g));
        py::gil_scoped_release release;
        return tree_membership(tensor, graph, RankTuple(r), tol);
    }, py::arg("tensor"), py::arg("graph"), py::arg("ranks"), py::arg("tol") = py::none());

    m.def("multilinear_rank", [](const std::string& t, std::optional<double> tol) {
        const auto tensor = tensor_from_json(parse(t));
        py::gil_scoped_release release;
        return multilinear_rank(tensor, tol);
    }, py::arg("tensor"), py::arg("tol") = py::none());

    m.def("decompose", [](const std::string& t, const std::string& g, std::optional<double> tol) {
        return released([&] { return state_to_json(ttns_decompose(tensor_from_json(parse(t)), graph_from_json(parse(g)), tol)); });
    }, py::arg("tensor"), py::arg("graph"), py::arg("tol") = py::none());

    m.def("contract", [](const std::string& s) {
        return released([&] { return tensor_to_json(contract_network(state_from_json(parse(s)))); });
    }, py::arg("state"));

    m.def("embed", [](const std::string& cp, const std::string& g) {
        return released([&] { return state_to_json(universal_embed(cp_from_json(parse(cp)), graph_from_json(parse(g)))); });
    }, py::arg("cp"), py::arg("graph"));

    m.def("dimension", [](const std::string& spec, const std::vector<std::uint64_t>& seeds) {
        return released([&] { return dim_report_to_json(dimension_report(spec_from_json(parse(spec)), seeds)); });
    }, py::arg("spec"), py::arg("seeds"));

    m.def("gallery", [](const std::string& name, const std::vector<std::size_t>& params, const std::string& form) {
        return released([&] { return gallery_to_json(name, params, form); });
    }, py::arg("name"), py::arg("params"), py::arg("form") = "tensor");

    m.def("fit", [](const std::string& t, const std::string& spec, std::size_t restarts, std::size_t max_iters, std::uint64_t seed,
                    double ridge, std::optional<double> target, double convergence_tol, bool trace, std::size_t threads) {
        FitOptions o;
        o.restarts = restarts;
        o.max_iters = max_iters;
        o.seed = seed;
        o.ridge = ridge;
        o.target = target;
        o.convergence_tol = convergence_tol;
        o.threads = threads;
        return released([&] { return fit_result_to_json(als_fit(tensor_from_json(parse(t)), spec_from_json(parse(spec)), o), trace); });
    }, py::arg("tensor"), py::arg("spec"), py::arg("restarts") = 10, py::arg("max_iters") = 500, py::arg("seed") = 0,
       py::arg("ridge") = 0.0, py::arg("target") = py::none(), py::arg("convergence_tol") = 1e-12, py::arg("trace") = false,
       py::arg("threads") = 0);

    m.def("border_probe", [](const std::string& t, const std::string& spec, const std::vector<double>& targets, std::size_t restarts,
                             std::size_t max_iters, std::uint64_t seed, std::size_t max_budget) {
        FitOptions o;
        o.restarts = restarts;
        o.max_iters = max_iters;
        o.seed = seed;
        return released([&] {
            return border_report_to_json(border_probe(tensor_from_json(parse(t)), spec_from_json(parse(spec)), targets, o, max_budget));
        });
    }, py::arg("tensor"), py::arg("spec"), py::arg("targets"), py::arg("restarts") = 20, py::arg("max_iters") = 25, py::arg("seed") = 0,
       py::arg("max_budget") = 32000);

    m.def("list_claims", [] {
        std::vector<std::string> out;
        for (const auto& c : list_claims()) out.push_back(Json{{"id", c.id}, {"group", c.group}, {"gated", c.gated}}.dump());
        return out;
    });

    m.def("verify", [](const std::string& filter, std::size_t threads) {
        std::vector<std::string> out;
        py::gil_scoped_release release;
        for (const auto& r : run_claims(filter, threads)) out.push_back(claim_to_json(r).dump());
        return out;
    }, py::arg("filter") = "", py::arg("threads") = 0);
}
