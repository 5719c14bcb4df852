#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cyclefire/graph.hpp"
#include "cyclefire/mbasis.hpp"

namespace cyclefire {

/// A published circuit M-basis together with the dual Laplacian printed next
/// to it. Graphs use lexicographic edge order.
struct ReferenceBasis {
    std::string name;
    Graph graph;
    FlowBasis basis;
    IntMatrix printed_dual_laplacian;
};

/// Names accepted by reference_basis: "K5" and "K33".
std::vector<std::string> reference_basis_names();

/// Throws Error for an unknown name.
ReferenceBasis reference_basis(std::string_view name);

/// Checks every certificate condition and compares the Gram matrix with the
/// printed one entry by entry. Throws Error naming the first mismatch.
MBasisCertificate verify_reference_basis(std::string_view name);

} // namespace cyclefire
