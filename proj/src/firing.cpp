#include "cyclefire/firing.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "cyclefire/errors.hpp"
#include "cyclefire/mbasis.hpp"

namespace cyclefire {

namespace {

constexpr int descent_sweep_cap = 4096;
constexpr double box_scan_limit = 1e8;

void require_size(std::span<const Integer> c, std::size_t n, const char* what)
{
    if (c.size() != n)
        throw DimensionError(std::string(what) + " has length " + std::to_string(c.size()) + ", expected " +
                             std::to_string(n));
}

void require_effective(std::span<const Integer> c)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        if (sgn(c[i]) < 0)
            throw ConfigurationError("configuration has a negative entry at site " + std::to_string(i));
}

void require_avalanche_finite(const RedistributionMatrix& l)
{
    if (!l.avalanche_finite())
        throw NotMMatrixError("redistribution matrix is not an M-matrix");
}

// Solves L z = c - s for the integral firing vector between two equivalent
// configurations.
IntVector firing_vector(const RedistributionMatrix& l, std::span<const Integer> c, std::span<const Integer> s)
{
    IntVector diff = c - s;
    RationalVector z = (*l.inverse()) * diff;
    IntVector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i].get_den() != 1)
            throw Error("internal: configurations are not equivalent");
        out[i] = z[i].get_num();
    }
    return out;
}

// Grows the down-set of z-superstables from 0 in increasing weight order. A
// configuration is accepted iff it is the first one popped in its class.
// Stops early once `target` has been labelled, returning that class's
// representative.
class Exploration {
public:
    explicit Exploration(const RedistributionMatrix& l) : l_(l), labeler_(l.matrix())
    {
        require_avalanche_finite(l);
        const RationalMatrix& inv = *l.inverse();
        weights_.assign(l.size(), Rational(0));
        for (std::size_t k = 0; k < inv.rows(); ++k)
            for (std::size_t i = 0; i < inv.cols(); ++i)
                weights_[i] += inv(k, i);
    }

    std::optional<ChipConfig> run(const std::optional<CosetLabel>& target)
    {
        const std::size_t n = l_.size();
        std::set<std::pair<Rational, ChipConfig>> queue;
        std::set<ChipConfig> queued;
        std::set<CosetLabel> labels;

        ChipConfig zero(n);
        queue.emplace(Rational(0), zero);
        queued.insert(zero);
        while (!queue.empty()) {
            auto [weight, c] = *queue.begin();
            queue.erase(queue.begin());
            CosetLabel label = labeler_.label(c);
            if (!labels.insert(label).second)
                continue;
            accepted_.push_back(c);
            if (target && label == *target)
                return c;
            for (std::size_t i = 0; i < n; ++i) {
                ChipConfig next = c;
                next[i] += 1;
                if (queued.insert(next).second)
                    queue.emplace(weight + weights_[i], std::move(next));
            }
        }
        return std::nullopt;
    }

    const CosetLabeler& labeler() const { return labeler_; }
    std::vector<ChipConfig>& accepted() { return accepted_; }

private:
    const RedistributionMatrix& l_;
    CosetLabeler labeler_;
    RationalVector weights_;
    std::vector<ChipConfig> accepted_;
};

} // namespace

bool is_effective(std::span<const Integer> c)
{
    return std::all_of(c.begin(), c.end(), [](const Integer& x) { return sgn(x) >= 0; });
}

RedistributionMatrix::RedistributionMatrix(IntMatrix l) : l_(std::move(l))
{
    if (!l_.is_square())
        throw DimensionError("redistribution matrix must be square");
    for (std::size_t i = 0; i < l_.rows(); ++i)
        for (std::size_t j = 0; j < l_.cols(); ++j) {
            if (i == j && sgn(l_(i, j)) <= 0)
                throw DimensionError("redistribution matrix needs a positive diagonal; entry (" +
                                     std::to_string(i) + "," + std::to_string(i) + ") is not");
            if (i != j && sgn(l_(i, j)) > 0)
                throw DimensionError("redistribution matrix entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") is positive");
        }
    MMatrixReport report = is_m_matrix(l_);
    if (report.is_m_matrix)
        inverse_ = std::move(report.inverse);
}

ChipConfig fire_vertex(std::span<const Integer> c, const Graph& g, int vertex)
{
    const std::size_t site = g.site_index(vertex);
    IntMatrix l = reduced_laplacian(g);
    require_size(c, l.rows(), "configuration");
    ChipConfig out(c.begin(), c.end());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= l(i, site);
    return out;
}

ChipConfig fire_multiset(std::span<const Integer> c, const RedistributionMatrix& l, std::span<const Integer> z)
{
    require_size(c, l.size(), "configuration");
    require_size(z, l.size(), "firing vector");
    ChipConfig out(c.begin(), c.end());
    const IntMatrix& m = l.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(z[i]) == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] -= m(i, j) * z[i];
    }
    return out;
}

StabilizeResult stabilize(std::span<const Integer> c, const RedistributionMatrix& l, std::uint64_t cap)
{
    return stabilize(c, l, [](std::span<const std::size_t> legal) { return legal.front(); }, cap);
}

StabilizeResult stabilize(std::span<const Integer> c, const RedistributionMatrix& l, const SiteChooser& choose,
                          std::uint64_t cap)
{
    require_size(c, l.size(), "configuration");
    require_effective(c);
    const IntMatrix& m = l.matrix();
    StabilizeResult r{ChipConfig(c.begin(), c.end()), IntVector(l.size()), 0};
    std::vector<std::size_t> legal;
    for (;;) {
        legal.clear();
        for (std::size_t i = 0; i < r.stable.size(); ++i)
            if (r.stable[i] >= m(i, i))
                legal.push_back(i);
        if (legal.empty())
            return r;
        if (r.fires >= cap)
            throw NotAvalancheFiniteError("not avalanche finite: still unstable after " + std::to_string(cap) +
                                          " fires");
        const std::size_t site = choose(legal);
        if (std::find(legal.begin(), legal.end(), site) == legal.end())
            throw Error("site chooser picked an illegal site " + std::to_string(site));
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(site, j)) != 0)
                r.stable[j] -= m(site, j);
        r.firing_counts[site] += 1;
        ++r.fires;
    }
}

bool is_set_superstable(std::span<const Integer> c, const RedistributionMatrix& l)
{
    const std::size_t n = l.size();
    require_size(c, n, "configuration");
    require_effective(c);
    if (n >= 63)
        throw DimensionError("set-superstability test limited to fewer than 63 sites");
    const IntMatrix& m = l.matrix();
    IntVector after(n);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        bool legal = true;
        for (std::size_t i = 0; i < n && legal; ++i) {
            Integer v = c[i];
            for (std::size_t j = 0; j < n; ++j)
                if (mask >> j & 1U)
                    v -= m(i, j);
            legal = sgn(v) >= 0;
        }
        if (legal)
            return false;
    }
    return true;
}

ZSuperstableVerdict check_z_superstable(std::span<const Integer> c, const RedistributionMatrix& l)
{
    require_avalanche_finite(l);
    const std::size_t n = l.size();
    require_size(c, n, "configuration");
    require_effective(c);
    const IntMatrix& m = l.matrix();

    // Any z >= 0 with L z <= c satisfies z <= L^{-1} c because L^{-1} >= 0.
    RationalVector bound = (*l.inverse()) * c;
    IntVector z(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = floor(bound[i]);
    if (is_zero(z))
        return {true, std::nullopt, ZSuperstableVerdict::Method::box};

    // The feasible z are closed under componentwise max, so the box holds a
    // greatest feasible z*. Lowering z to floor((c_i - sum_{j!=i} L_ij z_j) / L_ii)
    // never passes below z* and stops exactly at it.
    for (int sweep = 0; sweep < descent_sweep_cap; ++sweep) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            Integer s = c[i];
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && sgn(m(i, j)) != 0)
                    s -= m(i, j) * z[j];
            Integer b = floor_div(s, m(i, i));
            if (sgn(b) < 0)
                b = 0; // z_i = 0 never violates row i
            if (b < z[i]) {
                z[i] = std::move(b);
                changed = true;
            }
        }
        if (!changed) {
            if (is_zero(z))
                return {true, std::nullopt, ZSuperstableVerdict::Method::box};
            return {false, z, ZSuperstableVerdict::Method::box};
        }
    }

    // Slow descent (badly conditioned L): compare with the class representative.
    ChipConfig rep = z_superstable_representative(c, l);
    if (std::equal(rep.begin(), rep.end(), c.begin(), c.end()))
        return {true, std::nullopt, ZSuperstableVerdict::Method::coset};
    return {false, firing_vector(l, c, rep), ZSuperstableVerdict::Method::coset};
}

ChipConfig z_superstable_representative(std::span<const Integer> c, const RedistributionMatrix& l)
{
    require_size(c, l.size(), "configuration");
    Exploration exploration(l);
    std::optional<ChipConfig> rep = exploration.run(exploration.labeler().label(c));
    if (!rep)
        throw Error("internal: no z-superstable found in the class of " + to_string(c));
    return *rep;
}

bool is_z_superstable(std::span<const Integer> c, const RedistributionMatrix& l)
{
    return check_z_superstable(c, l).superstable;
}

CosetLabeler::CosetLabeler(const IntMatrix& l)
{
    if (l.rows() == l.cols() && sgn(determinant(l)) != 0) {
        CokernelMap k = cokernel_map(l);
        u_ = std::move(k.u);
        factors_ = std::move(k.factors);
        return;
    }
    SmithForm s = snf(l);
    u_ = std::move(s.u);
    factors_ = s.d.diagonal();
    // Rows of U beyond the diagonal index free coordinates of the cokernel.
    factors_.resize(u_.rows(), Integer(0));
}

CosetLabel CosetLabeler::label(std::span<const Integer> c) const
{
    CosetLabel y = u_ * c;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (sgn(factors_[i]) != 0)
            mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), factors_[i].get_mpz_t());
    return y;
}

CosetLabel coset_label(std::span<const Integer> c, const IntMatrix& l) { return CosetLabeler(l).label(c); }

std::vector<ChipConfig> enumerate_z_superstables(const RedistributionMatrix& l)
{
    Exploration exploration(l);
    exploration.run(std::nullopt);
    std::vector<ChipConfig> out = std::move(exploration.accepted());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ChipConfig> enumerate_z_superstables_box(const RedistributionMatrix& l)
{
    require_avalanche_finite(l);
    const std::size_t n = l.size();
    double volume = 1;
    for (std::size_t i = 0; i < n; ++i)
        volume *= l.threshold(i).get_d();
    if (volume > box_scan_limit)
        throw DimensionError("configuration box too large to scan");

    std::vector<ChipConfig> out;
    ChipConfig c(n);
    for (;;) {
        if (check_z_superstable(c, l).superstable)
            out.push_back(c);
        std::size_t i = 0;
        for (; i < n; ++i) {
            c[i] += 1;
            if (c[i] < l.threshold(i))
                break;
            c[i] = 0;
        }
        if (i == n)
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ChipConfig> set_superstables(const RedistributionMatrix& l)
{
    const std::size_t n = l.size();
    std::vector<ChipConfig> out;
    std::set<ChipConfig> seen;
    std::vector<ChipConfig> frontier{ChipConfig(n)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        ChipConfig c = std::move(frontier.back());
        frontier.pop_back();
        if (!is_set_superstable(c, l))
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            ChipConfig next = c;
            next[i] += 1;
            if (seen.insert(next).second)
                frontier.push_back(std::move(next));
        }
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ChipConfig> classical_superstables(const Graph& g)
{
    if (g.vertex_count() == 1)
        return {ChipConfig{}};
    return set_superstables(RedistributionMatrix(reduced_laplacian(g)));
}

std::vector<ChipConfig> classical_criticals(const Graph& g)
{
    std::vector<ChipConfig> out;
    const std::vector<int> sites = g.sites();
    for (const auto& c : classical_superstables(g)) {
        ChipConfig k(sites.size());
        for (std::size_t i = 0; i < sites.size(); ++i)
            k[i] = g.degree(sites[i]) - 1 - c[i];
        out.push_back(std::move(k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntVector critical_group(const Graph& g)
{
    const IntMatrix l = reduced_laplacian(g);
    return l.rows() == 0 ? IntVector{} : cokernel_map(l).nontrivial_factors();
}

std::vector<std::size_t> degree_histogram(std::span<const ChipConfig> configs)
{
    std::vector<std::size_t> counts;
    for (const auto& c : configs) {
        Integer total = std::accumulate(c.begin(), c.end(), Integer(0));
        const auto d = static_cast<std::size_t>(total.get_ui());
        if (counts.size() <= d)
            counts.resize(d + 1, 0);
        ++counts[d];
    }
    return counts;
}

std::vector<ChipConfig> maximal_elements(std::span<const ChipConfig> configs)
{
    const std::set<ChipConfig> members(configs.begin(), configs.end());

    // In a down-set, c is maximal iff no c + e_i is a member.
    bool down_closed = true;
    for (const auto& c : members) {
        for (std::size_t i = 0; i < c.size() && down_closed; ++i) {
            if (sgn(c[i]) == 0)
                continue;
            ChipConfig below = c;
            below[i] -= 1;
            down_closed = members.count(below) > 0;
        }
        if (!down_closed)
            break;
    }

    std::vector<ChipConfig> out;
    for (const auto& c : members) {
        bool maximal = true;
        if (down_closed) {
            for (std::size_t i = 0; i < c.size() && maximal; ++i) {
                ChipConfig above = c;
                above[i] += 1;
                maximal = members.count(above) == 0;
            }
        } else {
            for (const auto& d : members) {
                if (d == c || d.size() != c.size())
                    continue;
                bool dominates = true;
                for (std::size_t i = 0; i < c.size() && dominates; ++i)
                    dominates = d[i] >= c[i];
                if (dominates) {
                    maximal = false;
                    break;
                }
            }
        }
        if (maximal)
            out.push_back(c);
    }
    return out;
}

Integer quadratic_energy(std::span<const Integer> c, const IntMatrix& l)
{
    IntVector lc = l * c;
    return dot(c, lc);
}

Rational inverse_energy(std::span<const Integer> c, const IntMatrix& l)
{
    RationalVector x = rational_inverse(l) * c;
    Rational e = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        e += x[i] * c[i];
    return e;
}

} // namespace cyclefire
