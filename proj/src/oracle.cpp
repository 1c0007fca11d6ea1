#include "apt/oracle.hpp"

#include "apt/error.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <numeric>
#include <random>

namespace apt {

namespace {

ExactValue subset_dp(int n, const std::vector<std::pair<Vertex, Vertex>>& arcs, int cap)
{
    if (n > cap)
        throw BudgetError("exact acyclic oracle capped at " + std::to_string(cap) + " vertices");
    std::vector<std::uint32_t> in(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : arcs)
        in[static_cast<std::size_t>(b)] |= 1u << a;
    const std::size_t full = std::size_t{1} << n;
    std::vector<int> f(full, 0);
    for (std::size_t t = 1; t < full; ++t) {
        int best = INT_MIN;
        for (int v = 0; v < n; ++v)
            if (t >> v & 1u) {
                const std::size_t prev = t ^ (std::size_t{1} << v);
                best = std::max(best, f[prev] + std::popcount(in[static_cast<std::size_t>(v)] & static_cast<std::uint32_t>(prev)));
            }
        f[t] = best;
    }
    ExactValue out{f[full - 1], std::vector<Vertex>(static_cast<std::size_t>(n))};
    std::size_t t = full - 1;
    for (int pos = n - 1; pos >= 0; --pos) {
        for (int v = 0; v < n; ++v) {
            if (!(t >> v & 1u))
                continue;
            const std::size_t prev = t ^ (std::size_t{1} << v);
            if (f[prev] + std::popcount(in[static_cast<std::size_t>(v)] & static_cast<std::uint32_t>(prev)) == f[t]) {
                out.certificate[static_cast<std::size_t>(pos)] = v;
                t = prev;
                break;
            }
        }
    }
    return out;
}

// Pair (i, j), i < j, of an n-vertex graph as a position in lexicographic order.
int pair_index(int n, int i, int j)
{
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Graphs encoded as one base-`states` digit per vertex pair: 0 absent,
/// 1 arc i -> j (or an edge), 2 arc j -> i.
struct PairCode {
    int n;
    int states;
    std::vector<std::uint64_t> power;

    PairCode(int n_, int states_) : n(n_), states(states_)
    {
        const int p = n * (n - 1) / 2;
        power.assign(static_cast<std::size_t>(p) + 1, 1);
        for (int i = 1; i <= p; ++i)
            power[static_cast<std::size_t>(i)] = power[static_cast<std::size_t>(i) - 1] * static_cast<std::uint64_t>(states);
    }

    std::uint64_t count() const { return power.back(); }

    std::vector<int> digits(std::uint64_t code) const
    {
        std::vector<int> d(power.size() - 1);
        for (auto& x : d) {
            x = static_cast<int>(code % static_cast<std::uint64_t>(states));
            code /= static_cast<std::uint64_t>(states);
        }
        return d;
    }

    std::uint64_t canonical(const std::vector<int>& d) const
    {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::uint64_t best = UINT64_MAX;
        do {
            std::uint64_t code = 0;
            int idx = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++idx) {
                    int s = d[static_cast<std::size_t>(idx)];
                    if (s == 0)
                        continue;
                    int a = perm[static_cast<std::size_t>(i)], b = perm[static_cast<std::size_t>(j)];
                    if (a > b) {
                        std::swap(a, b);
                        if (s != 0 && states == 3)
                            s = 3 - s;
                    }
                    code += static_cast<std::uint64_t>(s) * power[static_cast<std::size_t>(pair_index(n, a, b))];
                }
            best = std::min(best, code);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    Graph graph(const std::vector<int>& d) const
    {
        std::vector<Graph::Arc> arcs;
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++idx) {
                const int s = d[static_cast<std::size_t>(idx)];
                if (s == 1)
                    arcs.push_back({i, j});
                else if (s == 2)
                    arcs.push_back({j, i});
            }
        return Graph(n, arcs, GraphKind{states == 3, false});
    }
};

Graph without_edges(const Graph& g, const std::vector<char>& removed)
{
    std::vector<Graph::Arc> arcs;
    for (EdgeId e = 0; e < g.m(); ++e)
        if (!removed[static_cast<std::size_t>(e)]) {
            const Edge& x = g.edge(e);
            arcs.push_back({x.tail(), x.head(), x.attrs.label});
        }
    return Graph(g.n(), arcs, g.kind());
}

std::vector<Vertex> mask_vertices(int n, std::uint32_t mask, bool inside)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v)
        if (static_cast<bool>(mask >> v & 1u) == inside)
            out.push_back(v);
    return out;
}

bool blocks_all_members(const Graph& g, const Membership& member)
{
    for (const auto& b : blocks(g).blocks)
        if (!member(induced(g, b)))
            return false;
    return true;
}

/// Member graphs G \ (delta \ F), as bitmasks F over delta.
std::vector<std::uint32_t> admissible_subsets(const Graph& g, const std::vector<EdgeId>& delta, const Membership& member)
{
    std::vector<std::uint32_t> out;
    std::vector<char> removed(static_cast<std::size_t>(g.m()), 0);
    for (std::uint32_t f = 0; f < (1u << delta.size()); ++f) {
        for (std::size_t i = 0; i < delta.size(); ++i)
            removed[static_cast<std::size_t>(delta[i])] = (f >> i & 1u) ? 0 : 1;
        if (member(without_edges(g, removed)))
            out.push_back(f);
    }
    return out;
}

Rational best_fraction(const std::vector<std::uint32_t>& admissible, const std::vector<Rational>& w)
{
    Rational total = 0;
    for (const auto& x : w)
        total += x;
    if (total == Rational(0))
        return admissible.empty() ? Rational(-1) : Rational(1);
    Rational best = -1;
    for (std::uint32_t f : admissible) {
        Rational c = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (f >> i & 1u)
                c += w[i];
        best = std::max(best, c / total);
    }
    return best;
}

}  // namespace

// ----------------------------------------------------------------- values

ExactValue exact_max_hom(const Graph& g, const Graph& g0, const OracleBudget& budget)
{
    const TargetRelation rel(g0);
    rel.check_instance(g);
    const int n = g.n();
    const long long n0 = g0.n();
    long long maps = 1;
    for (int i = 0; i < n; ++i) {
        if (maps > budget.max_maps / std::max(n0, 1LL))
            throw BudgetError("exact_max_hom: more than " + std::to_string(budget.max_maps) + " maps");
        maps *= n0;
    }
    // ok[e][a * n0 + b]
    std::vector<std::vector<char>> ok(static_cast<std::size_t>(g.m()), std::vector<char>(static_cast<std::size_t>(n0 * n0)));
    for (EdgeId e = 0; e < g.m(); ++e)
        for (Vertex a = 0; a < n0; ++a)
            for (Vertex b = 0; b < n0; ++b)
                ok[static_cast<std::size_t>(e)][static_cast<std::size_t>(a * n0 + b)] = rel.realizes(g.edge(e), a, b);

    ExactValue best{-1, {}};
    std::vector<Vertex> map(static_cast<std::size_t>(n), 0);
    for (long long t = 0; t < maps; ++t) {
        long long count = 0;
        for (EdgeId e = 0; e < g.m(); ++e) {
            const Edge& x = g.edge(e);
            count += ok[static_cast<std::size_t>(e)][static_cast<std::size_t>(map[static_cast<std::size_t>(x.u)] * n0 +
                                                                              map[static_cast<std::size_t>(x.v)])];
        }
        if (count > best.value)
            best = {count, map};
        for (int i = 0; i < n; ++i) {
            if (++map[static_cast<std::size_t>(i)] < n0)
                break;
            map[static_cast<std::size_t>(i)] = 0;
        }
    }
    return best;
}

long long exact_max_cut(const Graph& g)
{
    if (g.kind() != GraphKind{})
        throw PreconditionError("exact_max_cut takes plain graphs");
    if (g.n() > 30)
        throw BudgetError("exact_max_cut capped at 30 vertices");
    if (g.n() == 0)
        return 0;
    long long best = 0;
    const std::uint64_t half = std::uint64_t{1} << (g.n() - 1);
    for (std::uint64_t side = 0; side < half; ++side) {
        long long cut = 0;
        for (const Edge& e : g.edges())
            cut += ((side >> e.u) ^ (side >> e.v)) & 1u;
        best = std::max(best, cut);
    }
    return best;
}

ExactValue exact_max_acyclic(const Graph& g, const OracleBudget& budget)
{
    if (!g.is_oriented())
        throw PreconditionError("exact_max_acyclic takes oriented graphs");
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (const Edge& e : g.edges())
        arcs.emplace_back(e.tail(), e.head());
    return subset_dp(g.n(), arcs, budget.max_acyclic_vertices);
}

ExactValue exact_max_acyclic(const Digraph& d, const OracleBudget& budget)
{
    return subset_dp(d.n, d.arcs, budget.max_acyclic_vertices);
}

long long exact_value(const Graph& g, const PropertySpec& spec, const OracleBudget& budget)
{
    return spec.is_hom() ? exact_max_hom(g, spec.target(), budget).value : exact_max_acyclic(g, budget).value;
}

bool exact_apt_decide(const Graph& g, int k, const PropertySpec& spec, const OracleBudget& budget)
{
    return Rational(exact_value(g, spec, budget)) >= pt_bound(g, spec.lambda()) + Rational(k);
}

bool exact_mas_above_half(const Digraph& d, int k, const OracleBudget& budget)
{
    return Rational(exact_max_acyclic(d, budget).value) >= Rational(static_cast<std::int64_t>(d.arcs.size()), 2) + Rational(k);
}

// ------------------------------------------------------------ enumeration

ConnectedGraphs::ConnectedGraphs(int n) : n_(n)
{
    if (n < 1 || n > 7)
        throw PreconditionError("connected graph enumeration supports 1 <= n <= 7");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs_.emplace_back(i, j);
    end_ = std::uint64_t{1} << pairs_.size();
}

std::optional<Graph> ConnectedGraphs::next()
{
    while (mask_ < end_) {
        const std::uint64_t mask = mask_++;
        std::vector<std::uint32_t> adj(static_cast<std::size_t>(n_), 0);
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            if (mask >> i & 1u) {
                adj[static_cast<std::size_t>(pairs_[i].first)] |= 1u << pairs_[i].second;
                adj[static_cast<std::size_t>(pairs_[i].second)] |= 1u << pairs_[i].first;
            }
        std::uint32_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint32_t grow = 0;
            for (int v = 0; v < n_; ++v)
                if (frontier >> v & 1u)
                    grow |= adj[static_cast<std::size_t>(v)];
            frontier = grow & ~seen;
            seen |= grow;
        }
        if (seen != (1u << n_) - 1)
            continue;
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            if (mask >> i & 1u)
                edges.push_back(pairs_[i]);
        return Graph::undirected(n_, edges);
    }
    return std::nullopt;
}

// ----------------------------------------------------------- extendibility

std::string to_string(ExtendibilityCounterexample::Condition c)
{
    switch (c) {
    case ExtendibilityCounterexample::Condition::inclusiveness:
        return "inclusiveness";
    case ExtendibilityCounterexample::Condition::block_additivity:
        return "block-additivity";
    case ExtendibilityCounterexample::Condition::subgraph_extension:
        return "subgraph-extension";
    }
    return "?";
}

ExtendibilityReport check_strong_extendibility(const Membership& member, const Rational& lambda, int n_max,
                                               int trials, std::uint64_t seed, GraphKind kind)
{
    if (kind.labeled)
        throw PreconditionError("extendibility checker handles plain and oriented graphs");
    if (n_max < 1 || n_max > (kind.oriented ? 5 : 6))
        throw BudgetError("extendibility checker: n_max out of range");
    if (trials < 0)
        throw PreconditionError("trials must be non-negative");
    if (!(Rational(0) < lambda && lambda < Rational(1)))
        throw PreconditionError("lambda must lie strictly between 0 and 1");

    using Cond = ExtendibilityCounterexample::Condition;
    ExtendibilityReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> draw(1, 100);

    const Graph k1(1, {}, kind);
    const Graph k2(2, {{0, 1}}, kind);
    for (const Graph* g : {&k1, &k2}) {
        ++report.graphs_tested;
        if (!member(*g)) {
            report.counterexample = ExtendibilityCounterexample{Cond::inclusiveness, *g, {}, {}, 0, "not a member"};
            return report;
        }
    }

    for (int n = 1; n <= n_max; ++n) {
        const PairCode codes(n, kind.oriented ? 3 : 2);
        for (std::uint64_t code = 0; code < codes.count(); ++code) {
            const auto d = codes.digits(code);
            if (codes.canonical(d) != code)
                continue;
            const Graph g = codes.graph(d);
            ++report.graphs_tested;

            const bool whole = member(g);
            if (whole != blocks_all_members(g, member)) {
                report.counterexample = ExtendibilityCounterexample{
                    Cond::block_additivity, g, {}, {}, 0,
                    whole ? "member with a non-member block" : "every block a member, graph is not"};
                return report;
            }

            for (std::uint32_t smask = 1; smask + 1 < (1u << n); ++smask) {
                const auto s = mask_vertices(n, smask, true);
                const auto rest = mask_vertices(n, smask, false);
                if (!member(induced(g, s)) || !member(induced(g, rest)))
                    continue;
                ++report.cuts_tested;
                const auto delta = boundary(g, s);
                const auto admissible = admissible_subsets(g, delta, member);
                for (int trial = 0; trial <= trials; ++trial) {
                    std::vector<Rational> w;
                    for (std::size_t i = 0; i < delta.size(); ++i)
                        w.push_back(trial == 0 ? Rational(1) : Rational(draw(rng), draw(rng)));
                    ++report.weight_functions_tested;
                    const Rational best = best_fraction(admissible, w);
                    if (best < lambda) {
                        report.counterexample = ExtendibilityCounterexample{
                            Cond::subgraph_extension, g, s, std::move(w), best,
                            best < Rational(0) ? "no admissible F" : "best admissible F keeps " + best.str()};
                        return report;
                    }
                    if (delta.empty())
                        break;
                }
            }
        }
    }
    return report;
}

bool reverify(const ExtendibilityCounterexample& cx, const Membership& member, const Rational& lambda)
{
    using Cond = ExtendibilityCounterexample::Condition;
    switch (cx.condition) {
    case Cond::inclusiveness:
        return !member(cx.g);
    case Cond::block_additivity:
        return member(cx.g) != blocks_all_members(cx.g, member);
    case Cond::subgraph_extension: {
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < cx.g.n(); ++v)
            if (!std::binary_search(cx.s.begin(), cx.s.end(), v))
                rest.push_back(v);
        if (!member(induced(cx.g, cx.s)) || !member(induced(cx.g, rest)))
            return false;
        const auto delta = boundary(cx.g, cx.s);
        if (delta.size() != cx.weights.size())
            return false;
        Rational total = 0;
        for (const auto& x : cx.weights)
            total += x;
        std::vector<char> removed(static_cast<std::size_t>(cx.g.m()), 0);
        for (std::uint32_t f = 0; f < (1u << delta.size()); ++f) {
            Rational c = 0;
            for (std::size_t i = 0; i < delta.size(); ++i) {
                const bool keep = f >> i & 1u;
                removed[static_cast<std::size_t>(delta[i])] = keep ? 0 : 1;
                if (keep)
                    c += cx.weights[i];
            }
            if (c >= lambda * total && member(without_edges(cx.g, removed)))
                return false;
        }
        return true;
    }
    }
    return false;
}

}  // namespace apt
