#include "tnrank/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "tnrank/gallery.hpp"

namespace tnrank {

namespace {

Json exact_scalar(const GaussianRational& x) {
    if (x.is_real()) return x.re().get_str();
    return Json{{"re", x.re().get_str()}, {"im", x.im().get_str()}};
}

Json float_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

Json float_scalar(Complex x) {
    if (x.imag() == 0.0) return float_number(x.real());
    return Json{{"re", float_number(x.real())}, {"im", float_number(x.imag())}};
}

mpq_class rational_part(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    throw FormatError("exact scalars must be \"p/q\" strings or integers");
}

double float_part(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double_nearest(parse_rational(j.get<std::string>()));
    throw FormatError("float scalars must be numbers");
}

GaussianRational exact_from(const Json& j) {
    if (j.is_object()) return {rational_part(j.at("re")), j.contains("im") ? rational_part(j.at("im")) : mpq_class(0)};
    return GaussianRational(rational_part(j));
}

Complex float_from(const Json& j) {
    if (j.is_object()) return {float_part(j.at("re")), j.contains("im") ? float_part(j.at("im")) : 0.0};
    return {float_part(j), 0.0};
}

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const FormatError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed ") + what + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid ") + what + ": " + e.what());
    }
}

Json one_based(const std::vector<std::size_t>& xs) {
    Json out = Json::array();
    for (auto x : xs) out.push_back(x + 1);
    return out;
}

Json finite_or_null(double x) { return float_number(x); }

Json jacobian_to_json(const JacobianEstimate& e) {
    Json gaps = Json::array();
    for (double g : e.gaps) gaps.push_back(finite_or_null(g));
    return Json{{"dimension", e.dimension}, {"stable", e.stable()}, {"seeds", e.seeds}, {"ranks", e.ranks}, {"gaps", gaps}};
}

}  // namespace

Json tensor_to_json(const Tensor& t) {
    Json j;
    j["dims"] = t.dims();
    j["scalar"] = t.mode() == ScalarMode::exact ? "exact" : "float";
    const std::size_t n = t.size();
    std::size_t nnz = 0;
    t.visit([&](const auto& data) {
        for (const auto& x : data) nnz += x == std::decay_t<decltype(x)>{} ? 0 : 1;
    });
    const bool sparse = 4 * nnz <= n && t.order() > 0;
    if (!sparse) {
        Json dense = Json::array();
        if (t.mode() == ScalarMode::exact) {
            for (const auto& x : t.exact()) dense.push_back(exact_scalar(x));
        } else {
            for (const auto& x : t.floating()) dense.push_back(float_scalar(x));
        }
        j["dense"] = std::move(dense);
        return j;
    }
    Json entries = Json::array();
    std::vector<std::size_t> idx(t.order(), 0);
    for (std::size_t off = 0; off < n; ++off) {
        Json e;
        bool keep = false;
        if (t.mode() == ScalarMode::exact) {
            const auto& x = t.exact()[off];
            if (!x.is_zero()) {
                keep = true;
                e["idx"] = one_based(idx);
                e["re"] = x.re().get_str();
                if (!x.is_real()) e["im"] = x.im().get_str();
            }
        } else {
            const auto x = t.floating()[off];
            if (x != Complex{}) {
                keep = true;
                e["idx"] = one_based(idx);
                e["re"] = float_number(x.real());
                if (x.imag() != 0.0) e["im"] = float_number(x.imag());
            }
        }
        if (keep) entries.push_back(std::move(e));
        for (std::size_t k = t.order(); k-- > 0;) {
            if (++idx[k] < t.dim(k)) break;
            idx[k] = 0;
        }
    }
    j["sparse"] = std::move(entries);
    return j;
}

Tensor tensor_from_json(const Json& j) {
    return guarded("tensor", [&] {
        const Shape dims = j.at("dims").get<Shape>();
        for (auto n : dims) {
            if (n == 0) throw FormatError("tensor dims must be positive");
        }
        const ScalarMode mode = parse_scalar_mode(j.value("scalar", std::string("exact")));
        const std::size_t n = shape_size(dims);
        const bool has_dense = j.contains("dense"), has_sparse = j.contains("sparse");
        if (has_dense == has_sparse) throw FormatError("tensor needs exactly one of \"dense\" and \"sparse\"");
        Tensor::ExactData ex;
        Tensor::FloatData fl;
        if (mode == ScalarMode::exact) ex.assign(n, GaussianRational());
        else fl.assign(n, Complex{});
        if (has_dense) {
            const auto& dense = j.at("dense");
            if (!dense.is_array() || dense.size() != n) throw FormatError("dense entry count differs from the product of dims");
            for (std::size_t k = 0; k < n; ++k) {
                if (mode == ScalarMode::exact) ex[k] = exact_from(dense[k]);
                else fl[k] = float_from(dense[k]);
            }
        } else {
            for (const auto& e : j.at("sparse")) {
                const auto idx = e.at("idx").get<std::vector<std::size_t>>();
                if (idx.size() != dims.size()) throw FormatError("sparse index has the wrong length");
                std::size_t off = 0;
                for (std::size_t k = 0; k < idx.size(); ++k) {
                    if (idx[k] < 1 || idx[k] > dims[k]) throw FormatError("sparse index out of range (indices are 1-based)");
                    off = off * dims[k] + (idx[k] - 1);
                }
                Json value{{"re", e.at("re")}};
                if (e.contains("im")) value["im"] = e.at("im");
                if (mode == ScalarMode::exact) ex[off] += exact_from(value);
                else fl[off] += float_from(value);
            }
        }
        return mode == ScalarMode::exact ? Tensor(dims, std::move(ex)) : Tensor(dims, std::move(fl));
    });
}

Json graph_to_json(const NetworkGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back(Json::array({e.u + 1, e.v + 1, e.weight}));
    return Json{{"d", g.vertex_count()}, {"edges", edges}};
}

NetworkGraph graph_from_json(const Json& j) {
    return guarded("graph", [&] {
        if (j.is_string()) return graph_from_name(j.get<std::string>());
        const auto d = j.at("d").get<std::size_t>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3) throw FormatError("graph edges are [u, v] or [u, v, weight]");
            const auto u = e[0].get<std::size_t>(), v = e[1].get<std::size_t>();
            if (u < 1 || v < 1 || u > d || v > d) throw FormatError("graph vertices are 1-based and at most d");
            const auto w = e.size() == 3 ? e[2].get<std::uint64_t>() : std::uint64_t{1};
            edges.push_back(Edge{u - 1, v - 1, w});
        }
        return NetworkGraph(d, std::move(edges));
    });
}

NetworkGraph graph_from_name(const std::string& name) {
    if (name.size() < 2) throw FormatError("graph name must look like P4, C3, S5 or K4");
    std::size_t d = 0;
    try {
        std::size_t used = 0;
        d = std::stoul(name.substr(1), &used);
        if (used != name.size() - 1) throw std::invalid_argument(name);
    } catch (const std::exception&) {
        throw FormatError("graph name must look like P4, C3, S5 or K4: " + name);
    }
    switch (name[0]) {
        case 'P': return path_graph(d);
        case 'C': return cycle_graph(d);
        case 'S': return star_graph(d);
        case 'K': return complete_graph(d);
        default: throw FormatError("unknown graph family in " + name);
    }
}

Json spec_to_json(const ProblemSpec& s) {
    return Json{{"graph", graph_to_json(s.graph)}, {"edge_dims", s.edge_dims.values()}, {"vertex_dims", s.vertex_dims}};
}

ProblemSpec spec_from_json(const Json& j) {
    return guarded("spec", [&] {
        const auto g = graph_from_json(j.at("graph"));
        const auto n = j.at("vertex_dims").get<std::vector<std::size_t>>();
        ProblemSpec s = j.contains("edge_dims")
                            ? ProblemSpec{g, RankTuple(j.at("edge_dims").get<std::vector<std::size_t>>()), n}
                            : ProblemSpec::from_graph(g, n);
        s.validate();
        return s;
    });
}

Json state_to_json(const TNState& s) {
    Json factors = Json::array();
    for (const auto& f : s.factors()) factors.push_back(tensor_to_json(f));
    Json j = spec_to_json(s.spec());
    j["factors"] = factors;
    return j;
}

TNState state_from_json(const Json& j) {
    return guarded("state", [&] {
        std::vector<Tensor> factors;
        for (const auto& f : j.at("factors")) factors.push_back(tensor_from_json(f));
        return TNState(spec_from_json(j), std::move(factors));
    });
}

Json cp_to_json(const CPDecomposition& cp) {
    Json terms = Json::array();
    for (const auto& term : cp.terms) {
        Json slots = Json::array();
        for (const auto& v : term) {
            Json entries = Json::array();
            if (v.mode() == ScalarMode::exact) {
                for (const auto& x : v.exact()) entries.push_back(exact_scalar(x));
            } else {
                for (const auto& x : v.floating()) entries.push_back(float_scalar(x));
            }
            slots.push_back(std::move(entries));
        }
        terms.push_back(std::move(slots));
    }
    return Json{{"dims", cp.dims}, {"scalar", cp.mode == ScalarMode::exact ? "exact" : "float"}, {"terms", terms}};
}

CPDecomposition cp_from_json(const Json& j) {
    return guarded("cp decomposition", [&] {
        CPDecomposition cp;
        cp.dims = j.at("dims").get<Shape>();
        cp.mode = parse_scalar_mode(j.value("scalar", std::string("exact")));
        for (const auto& term : j.at("terms")) {
            std::vector<Tensor> slots;
            for (const auto& entries : term) {
                if (cp.mode == ScalarMode::exact) {
                    Tensor::ExactData d;
                    for (const auto& x : entries) d.push_back(exact_from(x));
                    slots.emplace_back(Shape{d.size()}, std::move(d));
                } else {
                    Tensor::FloatData d;
                    for (const auto& x : entries) d.push_back(float_from(x));
                    slots.emplace_back(Shape{d.size()}, std::move(d));
                }
            }
            cp.terms.push_back(std::move(slots));
        }
        cp.validate();
        return cp;
    });
}

Json rank_report_to_json(const TreeRankReport& r, const NetworkGraph& g) {
    Json edges = Json::array();
    for (const auto& e : r.edges) {
        const auto& ed = g.edge(e.edge);
        Json sv = Json::array();
        for (double s : e.decision.singular_values) sv.push_back(s);
        Json item{{"edge", e.edge + 1},
                  {"endpoints", {ed.u + 1, ed.v + 1}},
                  {"row_modes", one_based(e.row_modes)},
                  {"rows", e.rows},
                  {"cols", e.cols},
                  {"rank", e.decision.rank}};
        if (!sv.empty()) {
            item["threshold"] = e.decision.threshold;
            item["gap_ratio"] = finite_or_null(e.decision.gap_ratio);
            item["near_boundary"] = e.decision.near_boundary;
        }
        edges.push_back(std::move(item));
    }
    return Json{{"rank", r.rank.values()}, {"edges", edges}, {"ill_conditioned", r.ill_conditioned}};
}

Json dim_report_to_json(const DimReport& r) {
    Json j;
    j["label"] = r.label;
    if (r.spec) j["spec"] = spec_to_json(*r.spec);
    j["formula_value"] = r.formula_value ? finite_or_null(*r.formula_value) : Json(nullptr);
    Json variants = Json::array();
    for (const auto& v : r.variants) variants.push_back(Json{{"name", v.name}, {"value", finite_or_null(v.value)}});
    j["variants"] = variants;
    j["jacobian"] = r.jacobian ? jacobian_to_json(*r.jacobian) : Json(nullptr);
    j["matches"] = r.matches;
    j["agreement"] = r.agreement;
    return j;
}

Json fit_result_to_json(const FitResult& r, bool trace) {
    Json restarts = Json::array();
    for (const auto& t : r.restarts) {
        Json item{{"seed", t.seed},
                  {"sweeps", t.sweeps},
                  {"final_residual", t.residuals.empty() ? Json(nullptr) : finite_or_null(t.residuals.back())},
                  {"converged", t.converged},
                  {"ridge_solves", t.ridge_solves}};
        if (trace) item["residuals"] = t.residuals;
        restarts.push_back(std::move(item));
    }
    return Json{{"relative_residual", finite_or_null(r.relative_residual)},
                {"best_restart", r.best_restart + 1},
                {"max_factor_magnitude", finite_or_null(r.max_factor_magnitude)},
                {"restarts", restarts},
                {"state", state_to_json(r.best_state)}};
}

Json border_report_to_json(const BorderReport& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        steps.push_back(Json{{"target", s.target},
                             {"achieved", finite_or_null(s.achieved)},
                             {"max_factor_magnitude", finite_or_null(s.max_factor_magnitude)},
                             {"cancellation_ratio", finite_or_null(s.cancellation_ratio)},
                             {"budget", s.budget},
                             {"met", s.met}});
    }
    return Json{{"steps", steps}, {"all_met", r.all_met}, {"magnitude_grows", r.magnitude_grows}};
}

Json gallery_to_json(const std::string& name, const std::vector<std::size_t>& p, const std::string& form) {
    auto need = [&](std::size_t k) {
        if (p.size() != k) throw std::invalid_argument(name + " takes " + std::to_string(k) + " parameter(s)");
    };
    auto bad_form = [&]() -> Json { throw std::invalid_argument(name + " has no form '" + form + "'"); };
    if (name == "w" || name == "ghz") {
        need(1);
        const auto s = name == "w" ? w_state(p[0]) : ghz_state(p[0]);
        if (form == "tensor") return tensor_to_json(s.tensor);
        if (form == "cp") return cp_to_json(s.cp);
        if (form == "path") return state_to_json(s.path);
        if (form == "cycle" && s.cycle) return state_to_json(*s.cycle);
        return bad_form();
    }
    if (name == "strassen") {
        need(3);
        const auto s = strassen(p[0], p[1], p[2]);
        if (form == "tensor") return tensor_to_json(s.tensor);
        if (form == "cp") return cp_to_json(s.cp);
        if (form == "cycle") return state_to_json(s.cycle);
        return bad_form();
    }
    if (name == "sym" || name == "skew") {
        need(1);
        std::vector<Tensor> basis;
        for (std::size_t i = 0; i < p[0]; ++i) basis.push_back(Tensor::basis_vector(p[0], i, ScalarMode::exact));
        const auto s = name == "sym" ? decomposable_sym(basis) : decomposable_skew(basis);
        if (form == "tensor") return tensor_to_json(s.tensor);
        if (form == "star") return state_to_json(s.star);
        return bad_form();
    }
    if (name == "monomial") {
        if (form != "tensor") return bad_form();
        return tensor_to_json(monomial_tensor(p));
    }
    if (name == "border") {
        need(2);
        if (form != "tensor") return bad_form();
        return tensor_to_json(border_example(p[0], p[1]));
    }
    throw std::invalid_argument("unknown fixture '" + name + "' (w, ghz, strassen, sym, skew, monomial, border)");
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    if (path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace tnrank
