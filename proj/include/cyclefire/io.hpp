#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cyclefire/graph.hpp"
#include "cyclefire/matrix.hpp"
#include "cyclefire/mbasis.hpp"

namespace cyclefire {

using nlohmann::json;

// Numbers are written as decimal strings; rationals as "p/q".
json to_json(const Integer& x);
json to_json(const Rational& x);
json to_json(std::span<const Integer> v);
json to_json(std::span<const Rational> v);
json to_json(const IntMatrix& m);
json to_json(const Graph& g);

/// Accepts JSON integers or decimal strings.
Integer parse_integer(const json& j, const std::string& what);
IntVector parse_int_vector(const json& j, const std::string& what);
/// "1,2,-3" -> (1,2,-3). Whitespace around entries is ignored.
IntVector parse_int_list(std::string_view text);

/// {"graph": <path or inline graph>, "vectors": [[...], ...]}. A relative
/// graph path is resolved against `base_dir`.
struct BasisDocument {
    std::optional<Graph> graph;
    FlowBasis vectors;
};

BasisDocument load_basis(std::string_view document, const std::filesystem::path& base_dir = {});
BasisDocument load_basis_file(const std::filesystem::path& path);

/// Basis document with the graph inlined; loadable by load_basis.
json basis_to_json(const Graph& g, std::span<const IntVector> vectors);

/// Basis document extended with dual_laplacian, pairwise_products,
/// determinant and is_m_matrix.
json certificate_to_json(const Graph& g, const MBasisCertificate& cert);

std::string read_text_file(const std::filesystem::path& path);

} // namespace cyclefire
