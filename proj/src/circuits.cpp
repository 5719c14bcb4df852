#include "cyclefire/circuits.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <utility>

#include "cyclefire/errors.hpp"
#include "cyclefire/linalg.hpp"

namespace cyclefire {

namespace {

class CircuitCollector {
public:
    CircuitCollector(const Graph& g, std::size_t max_len) : g_(g), max_len_(max_len), on_path_(g.vertex_count(), false) {}

    std::vector<Circuit> run()
    {
        for (int s = 0; s < g_.vertex_count(); ++s) {
            start_ = s;
            path_ = {s};
            on_path_[s] = true;
            extend(s);
            on_path_[s] = false;
        }
        std::sort(out_.begin(), out_.end(), [](const Circuit& a, const Circuit& b) {
            if (a.length() != b.length())
                return a.length() < b.length();
            return a.vertices < b.vertices;
        });
        return std::move(out_);
    }

private:
    void extend(int v)
    {
        for (int w : g_.neighbors(v)) {
            if (w == start_ && path_.size() >= 3 && path_[1] < path_.back()) {
                out_.push_back(Circuit{path_, walk_vector(g_, path_)});
                continue;
            }
            if (w <= start_ || on_path_[w] || path_.size() >= max_len_)
                continue;
            path_.push_back(w);
            on_path_[w] = true;
            extend(w);
            on_path_[w] = false;
            path_.pop_back();
        }
    }

    const Graph& g_;
    std::size_t max_len_;
    int start_ = 0;
    std::vector<int> path_;
    std::vector<bool> on_path_;
    std::vector<Circuit> out_;
};

// Fraction-free row echelon form grown one vector at a time.
class IncrementalEchelon {
public:
    /// Appends v and returns true, or returns false if v is in the span.
    bool push(const IntVector& v)
    {
        IntVector r = v;
        for (const auto& [row, pivot] : rows_) {
            if (sgn(r[pivot]) == 0)
                continue;
            Integer a = row[pivot];
            Integer b = r[pivot];
            for (std::size_t k = 0; k < r.size(); ++k)
                r[k] = a * r[k] - b * row[k];
        }
        auto nz = std::find_if(r.begin(), r.end(), [](const Integer& x) { return sgn(x) != 0; });
        if (nz == r.end())
            return false;
        Integer content = 0;
        for (const auto& x : r)
            content = gcd(content, x);
        for (auto& x : r)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
        const auto pivot = static_cast<std::size_t>(nz - r.begin());
        rows_.emplace_back(std::move(r), pivot);
        return true;
    }

    void pop() { rows_.pop_back(); }

private:
    std::vector<std::pair<IntVector, std::size_t>> rows_;
};

struct BudgetExhausted {};

class CircuitSearch {
public:
    CircuitSearch(std::vector<Circuit> candidates, std::size_t target_size, Integer tree_count,
                  const SearchConstraints& cons)
        : candidates_(std::move(candidates)), target_(target_size), tree_count_(std::move(tree_count)), cons_(cons)
    {
        // Circuit vectors have entries in {-1, 0, 1}; products fit easily in a long.
        const std::size_t m = candidates_.size();
        products_.assign(m, std::vector<long>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                products_[i][j] = products_[j][i] = dot(candidates_[i].vector, candidates_[j].vector).get_si();
    }

    SearchStatus run()
    {
        try {
            return descend(0) ? SearchStatus::found : SearchStatus::infeasible;
        } catch (const BudgetExhausted&) {
            return SearchStatus::inconclusive;
        }
    }

    std::uint64_t nodes() const noexcept { return nodes_; }
    const std::vector<std::pair<std::size_t, int>>& chosen() const noexcept { return chosen_; }

private:
    bool descend(std::size_t start)
    {
        const std::size_t depth = chosen_.size();
        if (depth == target_)
            return accept();
        const std::size_t m = candidates_.size();
        for (std::size_t i = start; i + (target_ - depth) <= m; ++i) {
            // Negating every vector leaves the Gram matrix unchanged, so the
            // first circuit only enters positively.
            for (int sign : {1, -1}) {
                if (depth == 0 && sign < 0)
                    break;
                if (!compatible(i, sign))
                    continue;
                IntVector v = signed_vector(i, sign);
                if (!echelon_.push(v))
                    break; // dependence does not depend on the sign
                if (++nodes_ > cons_.node_budget)
                    throw BudgetExhausted{};
                chosen_.emplace_back(i, sign);
                if (descend(i + 1))
                    return true;
                chosen_.pop_back();
                echelon_.pop();
            }
        }
        return false;
    }

    bool compatible(std::size_t i, int sign) const
    {
        for (const auto& [j, s] : chosen_)
            if (sign * s * products_[i][j] > 0)
                return false;
        return true;
    }

    IntVector signed_vector(std::size_t i, int sign) const
    {
        IntVector v = candidates_[i].vector;
        if (sign < 0)
            for (auto& x : v)
                x = -x;
        return v;
    }

    bool accept() const
    {
        if (!cons_.require_full_span)
            return true;
        std::vector<IntVector> vs;
        for (const auto& [i, s] : chosen_)
            vs.push_back(signed_vector(i, s));
        return determinant(gram(vs)) == tree_count_;
    }

    std::vector<Circuit> candidates_;
    std::size_t target_;
    Integer tree_count_;
    const SearchConstraints& cons_;
    std::vector<std::vector<long>> products_;
    std::vector<std::pair<std::size_t, int>> chosen_;
    IncrementalEchelon echelon_;
    std::uint64_t nodes_ = 0;
};

MBasisCertificate certificate_for(FlowBasis basis)
{
    MBasisCertificate cert;
    cert.dual_laplacian = dual_laplacian(basis);
    cert.pairwise_products = IntMatrix(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            cert.pairwise_products(i, j) = dot(basis[i], basis[j]);
    cert.basis = std::move(basis);
    return cert;
}

} // namespace

std::vector<Circuit> enumerate_circuits(const Graph& g, std::optional<std::size_t> max_len)
{
    const auto n = static_cast<std::size_t>(g.vertex_count());
    return CircuitCollector(g, max_len ? std::min(*max_len, n) : n).run();
}

void SearchConstraints::validate() const
{
    if (max_len && *max_len < 3)
        throw DimensionError("max_len must be at least 3");
    for (std::size_t len : exact_lens)
        if (len < 3)
            throw DimensionError("circuit lengths must be at least 3, got " + std::to_string(len));
    if (node_budget == 0)
        throw DimensionError("node budget must be positive");
}

SearchReport find_circuit_m_basis(const Graph& g, const SearchConstraints& cons)
{
    cons.validate();
    const auto started = std::chrono::steady_clock::now();

    std::optional<std::size_t> bound = cons.max_len;
    if (!cons.exact_lens.empty())
        bound = bound ? std::min(*bound, *cons.exact_lens.rbegin()) : *cons.exact_lens.rbegin();
    std::vector<Circuit> candidates = enumerate_circuits(g, bound);
    if (!cons.exact_lens.empty())
        std::erase_if(candidates, [&](const Circuit& c) { return !cons.exact_lens.contains(c.length()); });
    if (cons.order == CircuitOrder::descending)
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Circuit& a, const Circuit& b) { return a.length() > b.length(); });
    else if (cons.order == CircuitOrder::shuffled)
        std::shuffle(candidates.begin(), candidates.end(), std::mt19937_64(cons.seed));

    SearchReport report;
    report.circuits_considered = candidates.size();
    CircuitSearch search(candidates, genus(g), spanning_tree_count(g), cons);
    report.status = search.run();
    report.nodes = search.nodes();
    if (report.status == SearchStatus::found) {
        FlowBasis basis;
        for (const auto& [i, sign] : search.chosen()) {
            Circuit c = candidates[i];
            if (sign < 0) {
                std::reverse(c.vertices.begin() + 1, c.vertices.end());
                for (auto& x : c.vector)
                    x = -x;
            }
            basis.push_back(c.vector);
            report.chosen.push_back(std::move(c));
        }
        report.certificate = certificate_for(std::move(basis));
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

PlanarCircuitBasis planar_circuit_m_basis(const Graph& g)
{
    PlanarCircuitBasis out;
    out.faces = trace_faces(g);
    FlowBasis basis;
    for (const auto& f : out.faces.bounded)
        basis.push_back(f.flow);
    out.certificate = certificate_for(std::move(basis));
    out.dual_graph_laplacian = dual_graph_reduced_laplacian(g, out.faces);
    out.matches_dual_graph = out.dual_graph_laplacian == out.certificate.dual_laplacian;
    return out;
}

std::string to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found:
        return "found";
    case SearchStatus::infeasible:
        return "infeasible";
    case SearchStatus::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

} // namespace cyclefire
