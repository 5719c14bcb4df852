#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cyclefire/graph.hpp"
#include "cyclefire/linalg.hpp"
#include "cyclefire/matrix.hpp"

namespace cyclefire {

/// Chips per firing site: non-root vertices in classical mode, basis cycles in
/// dual mode.
using ChipConfig = IntVector;

bool is_effective(std::span<const Integer> c);

/// Square matrix with positive diagonal and non-positive off-diagonal entries.
/// Firing site i subtracts row i of the matrix from the configuration.
class RedistributionMatrix {
public:
    explicit RedistributionMatrix(IntMatrix l);

    const IntMatrix& matrix() const noexcept { return l_; }
    std::size_t size() const noexcept { return l_.rows(); }
    const Integer& threshold(std::size_t site) const { return l_(site, site); }

    /// True iff the matrix is a non-singular M-matrix.
    bool avalanche_finite() const noexcept { return inverse_.has_value(); }
    /// The non-negative inverse; present iff avalanche_finite().
    const std::optional<RationalMatrix>& inverse() const noexcept { return inverse_; }

private:
    IntMatrix l_;
    std::optional<RationalMatrix> inverse_;
};

/// c - (column of the reduced Laplacian for `vertex`). No legality check.
ChipConfig fire_vertex(std::span<const Integer> c, const Graph& g, int vertex);

/// c - L^T z: fires every site i exactly z_i times.
ChipConfig fire_multiset(std::span<const Integer> c, const RedistributionMatrix& l, std::span<const Integer> z);

struct StabilizeResult {
    ChipConfig stable;
    IntVector firing_counts;
    std::uint64_t fires = 0;
};

/// Picks the next site to fire among the currently legal ones (never empty).
using SiteChooser = std::function<std::size_t(std::span<const std::size_t> legal)>;

inline constexpr std::uint64_t default_fire_cap = 1'000'000;

/// Fires legal sites (c_i >= L_ii), lowest index first, until stable. Throws
/// NotAvalancheFiniteError once `cap` fires have been performed.
StabilizeResult stabilize(std::span<const Integer> c, const RedistributionMatrix& l,
                          std::uint64_t cap = default_fire_cap);
/// Same, with the firing order decided by `choose`.
StabilizeResult stabilize(std::span<const Integer> c, const RedistributionMatrix& l, const SiteChooser& choose,
                          std::uint64_t cap = default_fire_cap);

/// No nonzero 0/1 vector z leaves c - L z non-negative.
bool is_set_superstable(std::span<const Integer> c, const RedistributionMatrix& l);

struct ZSuperstableVerdict {
    enum class Method {
        box,  // exhaustive over 0 <= z <= floor(L^{-1} c)
        coset // compared with the z-superstable representative of c's class
    };
    bool superstable = false;
    /// A nonzero z >= 0 with c - L z >= 0 when not superstable.
    std::optional<IntVector> witness;
    Method method = Method::box;
};

/// Decides whether no nonzero z >= 0 leaves c - L z non-negative. Throws
/// NotMMatrixError unless l is avalanche finite.
ZSuperstableVerdict check_z_superstable(std::span<const Integer> c, const RedistributionMatrix& l);
bool is_z_superstable(std::span<const Integer> c, const RedistributionMatrix& l);

/// Canonical representative of c + im(L): residues of U c modulo the
/// invariant factors, where U L V = D is the Smith form.
using CosetLabel = IntVector;

class CosetLabeler {
public:
    explicit CosetLabeler(const IntMatrix& l);
    CosetLabel label(std::span<const Integer> c) const;
    const IntVector& invariant_factors() const noexcept { return factors_; }

private:
    IntMatrix u_;
    IntVector factors_;
};

CosetLabel coset_label(std::span<const Integer> c, const IntMatrix& l);

/// The unique z-superstable configuration equivalent to c modulo im(L).
ChipConfig z_superstable_representative(std::span<const Integer> c, const RedistributionMatrix& l);

/// All z-superstable configurations, sorted. Explores the down-set of
/// z-superstables from 0 in order of increasing weight w . c, w = L^{-T} 1;
/// the first configuration reached in each class is that class's
/// z-superstable. Throws NotMMatrixError for non-M-matrices.
std::vector<ChipConfig> enumerate_z_superstables(const RedistributionMatrix& l);

/// Reference enumeration: scans the box prod [0, L_ii) and keeps the
/// configurations passing check_z_superstable.
std::vector<ChipConfig> enumerate_z_superstables_box(const RedistributionMatrix& l);

/// All set-superstable configurations of l, sorted (the down-set grown from 0).
std::vector<ChipConfig> set_superstables(const RedistributionMatrix& l);

std::vector<ChipConfig> classical_superstables(const Graph& g);
/// k - c over the superstables c, with k_v = deg(v) - 1; sorted.
std::vector<ChipConfig> classical_criticals(const Graph& g);
/// Invariant factors of the reduced Laplacian other than 1.
IntVector critical_group(const Graph& g);

/// counts[d] = number of configurations with d chips in total.
std::vector<std::size_t> degree_histogram(std::span<const ChipConfig> configs);
/// Configurations not strictly below another one of the set; sorted.
std::vector<ChipConfig> maximal_elements(std::span<const ChipConfig> configs);

/// c^T L c.
Integer quadratic_energy(std::span<const Integer> c, const IntMatrix& l);
/// c^T L^{-1} c.
Rational inverse_energy(std::span<const Integer> c, const IntMatrix& l);

} // namespace cyclefire
