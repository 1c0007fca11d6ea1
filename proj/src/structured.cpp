#include "apt/structured.hpp"

#include "apt/error.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>
#include <thread>

namespace apt {

namespace {

constexpr long long kNegInf = LLONG_MIN / 4;

/// Every vector (n_0, ..., n_{parts-1}) of non-negative integers summing to total.
std::vector<std::vector<int>> compositions(int total, int parts)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    std::function<void(int, int)> rec = [&](int index, int left) {
        if (index == parts - 1) {
            cur[static_cast<std::size_t>(index)] = left;
            out.push_back(cur);
            return;
        }
        for (int x = left; x >= 0; --x) {
            cur[static_cast<std::size_t>(index)] = x;
            rec(index + 1, left - x);
        }
    };
    if (parts > 0)
        rec(0, total);
    return out;
}

std::vector<std::vector<char>> adjacency_matrix(const Graph& g)
{
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(g.n()), std::vector<char>(static_cast<std::size_t>(g.n()), 0));
    for (const Edge& e : g.edges())
        adj[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] =
            adj[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    return adj;
}

struct CompositionScore {
    long long base;                  // edges inside plus matching weight
    std::vector<Vertex> assignment;  // clique-local index -> target vertex
};

CompositionScore score(const Graph& g0, const std::vector<std::vector<long long>>& rows, const std::vector<int>& n)
{
    long long inner = 0;
    for (const Edge& e : g0.edges())
        inner += static_cast<long long>(n[static_cast<std::size_t>(e.u)]) * n[static_cast<std::size_t>(e.v)];
    std::vector<Vertex> column_label;
    for (Vertex a = 0; a < g0.n(); ++a)
        for (int t = 0; t < n[static_cast<std::size_t>(a)]; ++t)
            column_label.push_back(a);
    const std::size_t c = rows.size();
    std::vector<std::vector<long long>> w(c, std::vector<long long>(c, 0));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            w[i][j] = rows[i][static_cast<std::size_t>(column_label[j])];
    const MatchingResult m = max_weight_perfect_matching(w);
    CompositionScore out{inner + m.value, std::vector<Vertex>(c)};
    for (std::size_t i = 0; i < c; ++i)
        out.assignment[i] = column_label[static_cast<std::size_t>(m.assignment[i])];
    return out;
}

/// Shared validation and bookkeeping for both solvers.
struct Split {
    std::vector<Vertex> s;          // sorted, ids of g
    std::vector<char> in_s;
    Graph rest;                     // g \ s
    std::vector<Vertex> to_g;       // rest id -> id of g
    std::vector<LeafClique> steps;  // in ids of rest
};

Split split_instance(const Graph& g, std::span<const Vertex> s, RootChoice root)
{
    if (!is_connected(g))
        throw PreconditionError("structured solver needs a connected graph");
    Split out;
    out.in_s.assign(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : s) {
        if (v < 0 || v >= g.n())
            throw PreconditionError("deletion set vertex " + std::to_string(v) + " out of range");
        if (out.in_s[static_cast<std::size_t>(v)])
            throw PreconditionError("deletion set lists vertex " + std::to_string(v) + " twice");
        out.in_s[static_cast<std::size_t>(v)] = 1;
        out.s.push_back(v);
    }
    std::sort(out.s.begin(), out.s.end());
    out.rest = delete_vertices(g, out.s);
    for (Vertex v = 0; v < g.n(); ++v)
        if (!out.in_s[static_cast<std::size_t>(v)])
            out.to_g.push_back(v);
    if (!is_forest_of_cliques(out.rest))
        throw PreconditionError("removing the deletion set does not leave a forest of cliques");
    out.steps = clique_elimination_order(out.rest, root);
    return out;
}

/// Runs evaluate(index) over [0, total) on `jobs` threads; returns the
/// largest value and the least index attaining it.
template <class Evaluate>
std::pair<long long, long long> parallel_argmax(long long total, int jobs, Evaluate evaluate)
{
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<long long>(total, 256))));
    std::vector<std::pair<long long, long long>> best(static_cast<std::size_t>(jobs), {kNegInf, -1});
    auto worker = [&](int id) {
        const long long lo = total * id / jobs;
        const long long hi = total * (id + 1) / jobs;
        for (long long t = lo; t < hi; ++t) {
            const long long v = evaluate(t);
            if (v > best[static_cast<std::size_t>(id)].first)
                best[static_cast<std::size_t>(id)] = {v, t};
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int id = 0; id < jobs; ++id)
            threads.emplace_back(worker, id);
        for (auto& t : threads)
            t.join();
    }
    std::pair<long long, long long> out{kNegInf, -1};
    for (auto [v, t] : best)
        if (v > out.first)  // chunks are ordered, so ties keep the least index
            out = {v, t};
    return out;
}

long long checked_power(long long base, std::size_t exp)
{
    long long out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (out > LLONG_MAX / std::max<long long>(base, 1))
            throw BudgetError("search space over the deletion set is too large");
        out *= base;
    }
    return out;
}

long long checked_factorial(std::size_t n)
{
    long long out = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        if (out > LLONG_MAX / static_cast<long long>(i))
            throw BudgetError("too many orders of the deletion set");
        out *= static_cast<long long>(i);
    }
    return out;
}

std::vector<int> nth_permutation(long long index, std::size_t n)
{
    std::vector<int> pool(n);
    for (std::size_t i = 0; i < n; ++i)
        pool[i] = static_cast<int>(i);
    std::vector<long long> fact(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i)
        fact[i] = fact[i - 1] * static_cast<long long>(i);
    std::vector<int> out;
    for (std::size_t i = n; i > 0; --i) {
        const long long f = fact[i - 1];
        const auto pick = static_cast<std::size_t>(index / f);
        index %= f;
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------------ matching

MatchingResult max_weight_perfect_matching(const std::vector<std::vector<long long>>& weights)
{
    const std::size_t n = weights.size();
    for (const auto& row : weights)
        if (row.size() != n)
            throw PreconditionError("matching needs a square weight matrix");
    MatchingResult out;
    out.assignment.assign(n, -1);
    if (n == 0)
        return out;
    // Shortest augmenting paths with potentials, minimising negated weights.
    const long long inf = LLONG_MAX / 4;
    std::vector<long long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            long long delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const long long cur = -weights[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    for (std::size_t j = 1; j <= n; ++j)
        out.assignment[p[j] - 1] = static_cast<int>(j - 1);
    for (std::size_t i = 0; i < n; ++i)
        out.value += weights[i][static_cast<std::size_t>(out.assignment[i])];
    return out;
}

// --------------------------------------------------------------- clique steps

namespace clique_step {

long long hom_component(const Graph& g0, const std::vector<std::vector<long long>>& rows,
                        std::vector<Vertex>* assignment)
{
    if (rows.empty()) {
        if (assignment)
            assignment->clear();
        return 0;
    }
    long long best = kNegInf;
    for (const auto& n : compositions(static_cast<int>(rows.size()), g0.n())) {
        CompositionScore sc = score(g0, rows, n);
        if (sc.base > best) {
            best = sc.base;
            if (assignment)
                *assignment = std::move(sc.assignment);
        }
    }
    return best;
}

std::vector<long long> hom_with_cut(const Graph& g0, const std::vector<std::vector<long long>>& rows,
                                    std::vector<std::vector<Vertex>>* assignments)
{
    const auto n0 = static_cast<std::size_t>(g0.n());
    std::vector<long long> best(n0, kNegInf);
    if (assignments)
        assignments->assign(n0, {});
    const auto adj = adjacency_matrix(g0);
    for (const auto& n : compositions(static_cast<int>(rows.size()), g0.n())) {
        const CompositionScore sc = score(g0, rows, n);
        for (std::size_t a = 0; a < n0; ++a) {
            long long towards_cut = 0;
            for (std::size_t b = 0; b < n0; ++b)
                if (adj[a][b])
                    towards_cut += n[b];
            if (sc.base + towards_cut > best[a]) {
                best[a] = sc.base + towards_cut;
                if (assignments)
                    (*assignments)[a] = sc.assignment;
            }
        }
    }
    return best;
}

std::optional<long long> acyclic_clique(const std::vector<std::vector<char>>& arc,
                                        const std::vector<std::vector<long long>>& rows,
                                        std::optional<std::pair<int, int>> fixed, Placement* placement)
{
    const std::size_t c = arc.size();
    if (rows.size() != c)
        throw PreconditionError("acyclic clique step: rows and arcs disagree");
    if (c == 0) {
        if (placement)
            *placement = {};
        return 0;
    }
    if (c > 24)
        throw BudgetError("clique of " + std::to_string(c) + " vertices is too large for the exact clique step");
    const std::size_t slots = rows.front().size();
    auto row = [&](std::size_t i, std::size_t j) -> long long {
        if (fixed && static_cast<std::size_t>(fixed->first) == i)
            return static_cast<std::size_t>(fixed->second) == j ? 0 : kNegInf;
        return rows[i][j];
    };
    std::vector<std::uint32_t> in_mask(c, 0);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (arc[j][i])
                in_mask[i] |= 1u << j;

    const std::size_t full = (std::size_t{1} << c) - 1;
    // f[T * slots + j]: T placed first, all slots <= j.
    std::vector<long long> f((full + 1) * slots, kNegInf);
    for (std::size_t j = 0; j < slots; ++j)
        f[j] = 0;
    for (std::size_t t = 1; t <= full; ++t) {
        for (std::size_t j = 0; j < slots; ++j) {
            long long best = j > 0 ? f[t * slots + j - 1] : kNegInf;
            for (std::size_t i = 0; i < c; ++i) {
                if (!(t >> i & 1u))
                    continue;
                const std::size_t prev = t & ~(std::size_t{1} << i);
                const long long before = f[prev * slots + j];
                const long long here = row(i, j);
                if (before == kNegInf || here == kNegInf)
                    continue;
                const long long cand =
                    before + here + std::popcount(static_cast<std::uint32_t>(in_mask[i] & static_cast<std::uint32_t>(prev)));
                best = std::max(best, cand);
            }
            f[t * slots + j] = best;
        }
    }
    const long long result = f[full * slots + slots - 1];
    if (result == kNegInf)
        return std::nullopt;
    if (placement) {
        placement->order.assign(c, 0);
        placement->slot.assign(c, 0);
        std::size_t t = full;
        std::size_t j = slots - 1;
        std::size_t pos = c;
        while (t != 0) {
            const long long cur = f[t * slots + j];
            if (j > 0 && f[t * slots + j - 1] == cur) {
                --j;
                continue;
            }
            bool found = false;
            for (std::size_t i = 0; i < c && !found; ++i) {
                if (!(t >> i & 1u))
                    continue;
                const std::size_t prev = t & ~(std::size_t{1} << i);
                const long long before = f[prev * slots + j];
                const long long here = row(i, j);
                if (before == kNegInf || here == kNegInf)
                    continue;
                if (before + here + std::popcount(static_cast<std::uint32_t>(in_mask[i] & static_cast<std::uint32_t>(prev))) == cur) {
                    placement->order[--pos] = static_cast<int>(i);
                    placement->slot[i] = static_cast<int>(j);
                    t = prev;
                    found = true;
                }
            }
            if (!found)
                throw InternalError("acyclic clique step: broken backtrack");
        }
    }
    return result;
}

}  // namespace clique_step

// ------------------------------------------------------------------ Spencer

bool spencer_shortcut_applies(long long b, int k, int outside_components)
{
    if (b < 1)
        return false;
    // 0.15 b^{3/2} >= b/4 + k + e/4  <=>  9 b^3 >= 25 (b + 4k + e)^2, both sides positive.
    const long long extra = std::max(1, outside_components - 1);
    using Int = Rational::Integer;
    const Int bb = b;
    const Int rhs = Int(b) + 4 * Int(k) + extra;
    return 9 * bb * bb * bb >= 25 * rhs * rhs;
}

long long spencer_threshold(int k)
{
    if (k < 1)
        throw PreconditionError("spencer_threshold needs k >= 1");
    long long b = 1;
    while (!spencer_shortcut_applies(b, k, 1))
        ++b;
    // Large k: b0(k) = k also works (k >= (5 / 4c)^2 = 625/9).
    if (9LL * k >= 625)
        b = std::min<long long>(b, k);
    return b;
}

// ---------------------------------------------------------------- hom solver

namespace {

class HomSolver {
public:
    HomSolver(const Graph& g, std::span<const Vertex> s, const Graph& g0, const StructuredOptions& options)
        : g_(g), g0_(g0), split_(split_instance(g, s, options.root)), adj0_(adjacency_matrix(g0))
    {
        for (const Edge& e : g.edges())
            if (split_.in_s[static_cast<std::size_t>(e.u)] && split_.in_s[static_cast<std::size_t>(e.v)])
                s_edges_.push_back(e);
        s_index_.assign(static_cast<std::size_t>(g.n()), -1);
        for (std::size_t i = 0; i < split_.s.size(); ++i)
            s_index_[static_cast<std::size_t>(split_.s[i])] = static_cast<int>(i);
    }

    long long map_count() const { return checked_power(g0_.n(), split_.s.size()); }

    std::vector<Vertex> decode(long long index) const
    {
        std::vector<Vertex> phi(split_.s.size());
        for (auto& x : phi) {
            x = static_cast<Vertex>(index % g0_.n());
            index /= g0_.n();
        }
        return phi;
    }

    /// r_phi; fills `map` with an optimal full map when given.
    long long evaluate(const std::vector<Vertex>& phi, std::vector<Vertex>* map) const
    {
        const auto n0 = static_cast<std::size_t>(g0_.n());
        auto image_of = [&](Vertex v) { return phi[static_cast<std::size_t>(s_index_[static_cast<std::size_t>(v)])]; };

        long long r = 0;
        for (const Edge& e : s_edges_)
            r += adj0_[static_cast<std::size_t>(image_of(e.u))][static_cast<std::size_t>(image_of(e.v))];

        const Graph& rest = split_.rest;
        std::vector<std::vector<long long>> tab(static_cast<std::size_t>(rest.n()), std::vector<long long>(n0, 0));
        for (Vertex v = 0; v < rest.n(); ++v)
            for (Vertex u : g_.neighbors(split_.to_g.at(v)))
                if (split_.in_s[static_cast<std::size_t>(u)]) {
                    const auto iu = static_cast<std::size_t>(image_of(u));
                    for (std::size_t a = 0; a < n0; ++a)
                        tab[static_cast<std::size_t>(v)][a] += adj0_[iu][a];
                }

        struct Record {
            std::vector<Vertex> whole;              // component step
            std::vector<std::vector<Vertex>> by_cut;  // cut step, per image of the cut vertex
        };
        std::vector<Record> records(map ? split_.steps.size() : 0);

        for (std::size_t si = 0; si < split_.steps.size(); ++si) {
            const LeafClique& step = split_.steps[si];
            std::vector<std::vector<long long>> rows;
            for (Vertex v : step.clique)
                if (v != step.cut_vertex)
                    rows.push_back(tab[static_cast<std::size_t>(v)]);
            if (!step.cut_vertex) {
                r += clique_step::hom_component(g0_, rows, map ? &records[si].whole : nullptr);
            } else {
                const auto t = clique_step::hom_with_cut(g0_, rows, map ? &records[si].by_cut : nullptr);
                auto& cut_row = tab[static_cast<std::size_t>(*step.cut_vertex)];
                for (std::size_t a = 0; a < n0; ++a)
                    cut_row[a] += t[a];
            }
        }

        if (map) {
            map->assign(static_cast<std::size_t>(g_.n()), -1);
            for (std::size_t i = 0; i < split_.s.size(); ++i)
                (*map)[static_cast<std::size_t>(split_.s[i])] = phi[i];
            for (std::size_t si = split_.steps.size(); si-- > 0;) {
                const LeafClique& step = split_.steps[si];
                const std::vector<Vertex>* chosen = &records[si].whole;
                if (step.cut_vertex) {
                    const Vertex cut_image = (*map)[static_cast<std::size_t>(split_.to_g.at(*step.cut_vertex))];
                    chosen = &records[si].by_cut[static_cast<std::size_t>(cut_image)];
                }
                std::size_t i = 0;
                for (Vertex v : step.clique)
                    if (v != step.cut_vertex)
                        (*map)[static_cast<std::size_t>(split_.to_g.at(v))] = (*chosen)[i++];
            }
        }
        return r;
    }

private:
    const Graph& g_;
    const Graph& g0_;
    Split split_;
    std::vector<std::vector<char>> adj0_;
    std::vector<Edge> s_edges_;
    std::vector<int> s_index_;
};

}  // namespace

StructuredResult solve_hom_structured(const Graph& g, std::span<const Vertex> s, const Graph& g0, int k,
                                      const StructuredOptions& options)
{
    if (g.kind() != GraphKind{} || g0.kind() != GraphKind{})
        throw PreconditionError("structured homomorphism solving supports plain graphs only");
    if (g0.m() == 0 || !is_vertex_transitive(g0))
        throw PreconditionError("target graph must have an edge and be vertex-transitive");
    const HomSolver solver(g, s, g0, options);

    StructuredResult out;
    out.threshold = pt_bound(g, hom_lambda(g0)) + Rational(k);
    const auto [best, index] = parallel_argmax(solver.map_count(), options.jobs,
                                               [&](long long t) { return solver.evaluate(solver.decode(t), nullptr); });
    std::vector<Vertex> map;
    const long long again = solver.evaluate(solver.decode(index), &map);
    if (again != best)
        throw InternalError("homomorphism DP is not deterministic");
    Witness w{Witness::Kind::homomorphism, realized_edges(g, TargetRelation(g0), map), std::move(map)};
    if (static_cast<long long>(w.edges.size()) != best)
        throw InternalError("homomorphism witness does not realise the computed optimum");
    out.value = best;
    out.witness = std::move(w);
    out.yes = Rational(best) >= out.threshold;
    return out;
}

// ------------------------------------------------------------ acyclic solver

namespace {

class AcyclicSolver {
public:
    AcyclicSolver(const Graph& g, std::span<const Vertex> s, const StructuredOptions& options)
        : g_(g), split_(split_instance(g, s, options.root))
    {
        const Graph& rest = split_.rest;
        for (const LeafClique& step : split_.steps) {
            const std::size_t c = step.clique.size();
            std::vector<std::vector<char>> arc(c, std::vector<char>(c, 0));
            for (std::size_t i = 0; i < c; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    if (i != j)
                        arc[i][j] = rest.has_arc(step.clique[i], step.clique[j]) ? 1 : 0;
            arcs_.push_back(std::move(arc));
        }
    }

    const Split& split() const { return split_; }
    long long order_count() const { return checked_factorial(split_.s.size()); }

    /// r for the order of S given as a permutation of indices into split().s.
    long long evaluate(const std::vector<int>& perm, std::vector<Vertex>* order) const
    {
        const std::size_t s = split_.s.size();
        const std::size_t slots = s + 1;
        std::vector<int> pos(static_cast<std::size_t>(g_.n()), -1);
        for (std::size_t p = 0; p < s; ++p)
            pos[static_cast<std::size_t>(split_.s[static_cast<std::size_t>(perm[p])])] = static_cast<int>(p);

        long long r = 0;
        for (const Edge& e : g_.edges()) {
            const int pt = pos[static_cast<std::size_t>(e.tail())];
            const int ph = pos[static_cast<std::size_t>(e.head())];
            if (pt >= 0 && ph >= 0 && pt < ph)
                ++r;
        }

        const Graph& rest = split_.rest;
        std::vector<std::vector<long long>> tab(static_cast<std::size_t>(rest.n()), std::vector<long long>(slots, 0));
        for (Vertex v = 0; v < rest.n(); ++v) {
            const Vertex gv = split_.to_g.at(v);
            auto& row = tab[static_cast<std::size_t>(v)];
            for (Vertex u : g_.neighbors(gv)) {
                const int p = pos[static_cast<std::size_t>(u)];
                if (p < 0)
                    continue;
                if (g_.has_arc(u, gv)) {
                    for (std::size_t j = static_cast<std::size_t>(p) + 1; j < slots; ++j)
                        ++row[j];
                } else {
                    for (std::size_t j = 0; j <= static_cast<std::size_t>(p); ++j)
                        ++row[j];
                }
            }
        }

        std::vector<Record> records(order ? split_.steps.size() : 0);

        for (std::size_t si = 0; si < split_.steps.size(); ++si) {
            const LeafClique& step = split_.steps[si];
            std::vector<std::vector<long long>> rows;
            int cut_local = -1;
            for (std::size_t i = 0; i < step.clique.size(); ++i) {
                rows.push_back(tab[static_cast<std::size_t>(step.clique[i])]);
                if (step.clique[i] == step.cut_vertex)
                    cut_local = static_cast<int>(i);
            }
            if (!step.cut_vertex) {
                r += *clique_step::acyclic_clique(arcs_[si], rows, std::nullopt, order ? &records[si].whole : nullptr);
                continue;
            }
            auto& cut_row = tab[static_cast<std::size_t>(*step.cut_vertex)];
            if (order)
                records[si].by_slot.resize(slots);
            for (std::size_t j = 0; j < slots; ++j)
                cut_row[j] += *clique_step::acyclic_clique(arcs_[si], rows, std::pair{cut_local, static_cast<int>(j)},
                                                           order ? &records[si].by_slot[j] : nullptr);
        }

        if (order)
            *order = assemble(perm, records);
        return r;
    }

private:
    struct Record {
        clique_step::Placement whole;
        std::vector<clique_step::Placement> by_slot;
    };

    /// Merges per-clique placements into one linear order of V(g).
    std::vector<Vertex> assemble(const std::vector<int>& perm, const std::vector<Record>& records) const
    {
        const Graph& rest = split_.rest;
        const std::size_t s = split_.s.size();
        std::vector<int> slot(static_cast<std::size_t>(rest.n()), -1);
        std::vector<std::vector<Vertex>> after(static_cast<std::size_t>(rest.n()));
        std::vector<int> indeg(static_cast<std::size_t>(rest.n()), 0);

        for (std::size_t si = split_.steps.size(); si-- > 0;) {
            const LeafClique& step = split_.steps[si];
            const clique_step::Placement* pl = &records[si].whole;
            if (step.cut_vertex)
                pl = &records[si].by_slot[static_cast<std::size_t>(slot[static_cast<std::size_t>(*step.cut_vertex)])];
            for (std::size_t i = 0; i < step.clique.size(); ++i)
                if (step.clique[i] != step.cut_vertex)
                    slot[static_cast<std::size_t>(step.clique[i])] = pl->slot[i];
            for (std::size_t a = 0; a + 1 < pl->order.size(); ++a) {
                const Vertex u = step.clique[static_cast<std::size_t>(pl->order[a])];
                const Vertex w = step.clique[static_cast<std::size_t>(pl->order[a + 1])];
                after[static_cast<std::size_t>(u)].push_back(w);
                ++indeg[static_cast<std::size_t>(w)];
            }
        }

        // Kahn by (slot, id); every constraint edge goes to an equal or later slot.
        std::vector<Vertex> order;
        std::vector<std::vector<Vertex>> by_slot(s + 1);
        for (Vertex v = 0; v < rest.n(); ++v)
            by_slot[static_cast<std::size_t>(slot[static_cast<std::size_t>(v)])].push_back(v);
        for (std::size_t j = 0; j <= s; ++j) {
            std::vector<Vertex> heap;
            for (Vertex v : by_slot[j])
                if (indeg[static_cast<std::size_t>(v)] == 0)
                    heap.push_back(v);
            std::size_t placed = 0;
            while (!heap.empty()) {
                std::sort(heap.begin(), heap.end(), std::greater<>());
                const Vertex v = heap.back();
                heap.pop_back();
                order.push_back(split_.to_g.at(v));
                ++placed;
                for (Vertex w : after[static_cast<std::size_t>(v)])
                    if (--indeg[static_cast<std::size_t>(w)] == 0 &&
                        slot[static_cast<std::size_t>(w)] == static_cast<int>(j))
                        heap.push_back(w);
            }
            if (placed != by_slot[j].size())
                throw InternalError("clique placements are inconsistent");
            if (j < s)
                order.push_back(split_.s[static_cast<std::size_t>(perm[j])]);
        }
        return order;
    }

    const Graph& g_;
    Split split_;
    std::vector<std::vector<std::vector<char>>> arcs_;
};

}  // namespace

StructuredResult solve_acyclic_structured(const Graph& g, std::span<const Vertex> s, int k,
                                          const StructuredOptions& options)
{
    if (!g.is_oriented() || g.is_labeled())
        throw PreconditionError("acyclic structured solving needs an oriented, unlabeled graph");
    const AcyclicSolver solver(g, s, options);

    StructuredResult out;
    out.threshold = pt_bound(g, Rational(1, 2)) + Rational(k);

    if (options.spencer) {
        const long long b0 = spencer_threshold(k);
        const Graph& rest = solver.split().rest;
        for (const auto& block : blocks(rest).blocks) {
            if (static_cast<long long>(block.size()) < b0)
                continue;
            std::vector<Vertex> ids;
            for (Vertex v : block)
                ids.push_back(solver.split().to_g.at(v));
            const int outside = static_cast<int>(components(delete_vertices(g, ids)).size());
            if (spencer_shortcut_applies(static_cast<long long>(block.size()), k, outside)) {
                out.yes = true;
                out.spencer_shortcut = true;
                return out;
            }
        }
    }

    const std::size_t sn = solver.split().s.size();
    const auto [best, index] = parallel_argmax(solver.order_count(), options.jobs, [&](long long t) {
        return solver.evaluate(nth_permutation(t, sn), nullptr);
    });
    std::vector<Vertex> order;
    const long long again = solver.evaluate(nth_permutation(index, sn), &order);
    if (again != best)
        throw InternalError("acyclic DP is not deterministic");
    Witness w{Witness::Kind::order, realized_arcs(g, order), std::move(order)};
    if (static_cast<long long>(w.edges.size()) != best)
        throw InternalError("order witness does not realise the computed optimum");
    out.value = best;
    out.witness = std::move(w);
    out.yes = Rational(best) >= out.threshold;
    return out;
}

}  // namespace apt
