#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tnrank/fit.hpp"
#include "tnrank/geometry.hpp"
#include "tnrank/network.hpp"
#include "tnrank/tree_rank.hpp"

namespace tnrank {

using Json = nlohmann::ordered_json;

/// Malformed input file or document.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All file formats use 1-based indices (tensor entries, vertices, edges, modes).

/// {"dims", "scalar": "exact"|"float", "sparse": [{"idx", "re", "im"}]} or
/// "dense": row-major entries. Exact scalars are "p/q" strings.
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);

/// {"d": d, "edges": [[u, v, weight], ...]}; weight defaults to 1. A name
/// such as "C3" is accepted on input.
Json graph_to_json(const NetworkGraph& g);
NetworkGraph graph_from_json(const Json& j);
/// "P4", "C3", "S5", "K4": path, cycle, star and complete graphs.
NetworkGraph graph_from_name(const std::string& name);

/// {"graph", "edge_dims", "vertex_dims"}; edge_dims default to the weights.
Json spec_to_json(const ProblemSpec& s);
ProblemSpec spec_from_json(const Json& j);

/// The spec fields plus "factors": [tensor, ...].
Json state_to_json(const TNState& s);
TNState state_from_json(const Json& j);

/// {"dims", "scalar", "terms": [[[entries of slot 1], ...], ...]}.
Json cp_to_json(const CPDecomposition& cp);
CPDecomposition cp_from_json(const Json& j);

Json rank_report_to_json(const TreeRankReport& r, const NetworkGraph& g);
Json dim_report_to_json(const DimReport& r);
/// Per-sweep residuals are included only with `trace`.
Json fit_result_to_json(const FitResult& r, bool trace);
Json border_report_to_json(const BorderReport& r);

/// A gallery fixture by name: w D, ghz D, strassen M N P, sym N, skew N,
/// monomial P..., border D N. `form` is tensor, cp, path, cycle or star,
/// where the fixture has that form.
Json gallery_to_json(const std::string& name, const std::vector<std::size_t>& params, const std::string& form = "tensor");

Json read_json_file(const std::string& path);
/// "-" writes to stdout.
void write_json_file(const std::string& path, const Json& j);

}  // namespace tnrank
