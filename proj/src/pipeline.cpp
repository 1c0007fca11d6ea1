#include "apt/pipeline.hpp"

#include "apt/error.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <map>
#include <numeric>
#include <set>

namespace apt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_instance(const Graph& g, int k, const PropertySpec& spec)
{
    if (k < 1)
        throw PreconditionError("k must be at least 1");
    if (g.kind() != spec.instance_kind())
        throw PreconditionError("property " + spec.name() + " is stated over " + to_string(spec.instance_kind()) +
                                " graphs, input is " + to_string(g.kind()));
    if (spec.is_hom()) {
        if (spec.target().kind() != GraphKind{})
            throw PreconditionError("exact solving supports plain homomorphism targets only");
        TargetRelation(spec.target()).check_instance(g);
    }
    if (!is_connected(g))
        throw PreconditionError("input graph is not connected");
}

void solve(const Graph& g, std::span<const Vertex> s, int k, const PropertySpec& spec, const DecideOptions& options,
           Decision& out)
{
    const auto start = Clock::now();
    StructuredResult r = spec.is_hom() ? solve_hom_structured(g, s, spec.target(), k, options.structured)
                                       : solve_acyclic_structured(g, s, k, options.structured);
    out.diagnostics.solve_seconds = seconds_since(start);
    out.diagnostics.solver = r.spencer_shortcut ? "spencer" : spec.is_hom() ? "structured-hom" : "structured-acyclic";
    out.diagnostics.value = r.value;
    out.diagnostics.threshold = r.threshold;
    out.yes = r.yes;
    if (r.yes)
        out.witness = std::move(r.witness);
}

/// Subset DP: f(T) = max over v in T of f(T \ v) + arcs from T \ v into v.
std::pair<long long, std::vector<Vertex>> max_acyclic_subset_dp(int n, const std::vector<std::pair<Vertex, Vertex>>& arcs)
{
    if (n > 24)
        throw BudgetError("exact stage limited to 24 vertices");
    std::vector<std::uint32_t> in(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : arcs)
        in[static_cast<std::size_t>(b)] |= 1u << a;
    const std::size_t full = (std::size_t{1} << n);
    std::vector<int> f(full, 0);
    std::vector<signed char> last(full, -1);
    for (std::size_t t = 1; t < full; ++t) {
        int best = INT_MIN;
        for (int v = 0; v < n; ++v) {
            if (!(t >> v & 1u))
                continue;
            const std::size_t prev = t & ~(std::size_t{1} << v);
            const int cand = f[prev] + std::popcount(static_cast<std::uint32_t>(in[static_cast<std::size_t>(v)] & prev));
            if (cand > best) {
                best = cand;
                last[t] = static_cast<signed char>(v);
            }
        }
        f[t] = best;
    }
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::size_t t = full - 1;
    for (int pos = n - 1; pos >= 0; --pos) {
        const int v = last[t];
        order[static_cast<std::size_t>(pos)] = v;
        t &= ~(std::size_t{1} << v);
    }
    return {f[full - 1], order};
}

}  // namespace

Decision apt_decide(const Graph& g, int k, const PropertySpec& spec, const DecideOptions& options)
{
    check_instance(g, k, spec);
    Decision out;
    const auto start = Clock::now();
    Preprocessed pre = decide_or_decompose(g, k, spec);
    out.diagnostics.reduce_seconds = seconds_since(start);
    out.diagnostics.k_star = pre.reduction.k_star;
    out.diagnostics.trace = std::move(pre.reduction.trace);
    out.diagnostics.threshold = pt_bound(g, spec.lambda()) + Rational(k);
    if (pre.yes) {
        out.yes = true;
        out.diagnostics.solver = "reduction";
        return out;
    }
    out.diagnostics.s = pre.s;
    solve(g, pre.s, k, spec, options, out);
    return out;
}

Decision decide_structured(const Graph& g, std::span<const Vertex> s, int k, const PropertySpec& spec,
                           const DecideOptions& options)
{
    check_instance(g, k, spec);
    Decision out;
    out.diagnostics.k_star = Rational(k);
    out.diagnostics.s.assign(s.begin(), s.end());
    std::sort(out.diagnostics.s.begin(), out.diagnostics.s.end());
    solve(g, s, k, spec, options, out);
    return out;
}

Decision mas_above_half(const Digraph& d, int k)
{
    if (k < 1)
        throw PreconditionError("k must be at least 1");
    std::set<std::pair<Vertex, Vertex>> present;
    for (auto [a, b] : d.arcs) {
        if (a < 0 || b < 0 || a >= d.n || b >= d.n)
            throw PreconditionError("arc endpoint out of range");
        if (a == b)
            throw PreconditionError("self-loop at vertex " + std::to_string(a));
        if (!present.insert({a, b}).second)
            throw PreconditionError("duplicate arc");
    }

    Decision out;
    const auto start = Clock::now();
    const long long m = static_cast<long long>(d.arcs.size());
    out.diagnostics.threshold = Rational(m, 2) + Rational(k);

    // Opposite pairs: one arc of each pair is always recoverable.
    std::vector<std::size_t> single;  // indices into d.arcs
    int pairs = 0;
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
        auto [a, b] = d.arcs[i];
        if (present.count({b, a}))
            pairs += a < b ? 1 : 0;
        else
            single.push_back(i);
    }
    out.diagnostics.opposite_pairs = pairs;
    const long long m_reduced = static_cast<long long>(single.size());

    // Identify the smallest vertices of the two first components until
    // connected; rep maps every vertex to its merged vertex.
    std::vector<Vertex> rep(static_cast<std::size_t>(d.n));
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](Vertex v) {
        while (rep[static_cast<std::size_t>(v)] != v)
            v = rep[static_cast<std::size_t>(v)];
        return v;
    };
    {
        std::vector<Vertex> comp(static_cast<std::size_t>(d.n));
        std::iota(comp.begin(), comp.end(), 0);
        auto root = [&](Vertex v) {
            while (comp[static_cast<std::size_t>(v)] != v)
                v = comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
            return v;
        };
        for (std::size_t i : single) {
            const Vertex a = root(d.arcs[i].first), b = root(d.arcs[i].second);
            comp[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
        // With union by smaller id the roots are the component minima.
        std::vector<Vertex> minima;
        for (Vertex v = 0; v < d.n; ++v)
            if (root(v) == v)
                minima.push_back(v);
        for (std::size_t i = 1; i < minima.size(); ++i) {
            rep[static_cast<std::size_t>(minima[i])] = minima[0];
            ++out.diagnostics.identifications;
        }
    }
    std::vector<int> index(static_cast<std::size_t>(d.n), -1);
    int n = 0;
    for (Vertex v = 0; v < d.n; ++v)
        if (find(v) == v)
            index[static_cast<std::size_t>(v)] = n++;
    out.diagnostics.kernel_n = n;
    out.diagnostics.k_star = Rational(k);

    if (4LL * k <= static_cast<long long>(n) - 1) {
        out.yes = true;
        out.diagnostics.solver = "lower-bound";
        out.diagnostics.solve_seconds = seconds_since(start);
        return out;
    }

    out.diagnostics.exact_stage = true;
    out.diagnostics.solver = "subset-dp";
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (std::size_t i : single)
        arcs.emplace_back(index[static_cast<std::size_t>(find(d.arcs[i].first))],
                          index[static_cast<std::size_t>(find(d.arcs[i].second))]);
    auto [r, order] = max_acyclic_subset_dp(n, arcs);
    out.diagnostics.value = r + pairs;
    out.yes = Rational(r) >= Rational(m_reduced, 2) + Rational(k);
    out.diagnostics.solve_seconds = seconds_since(start);
    if (!out.yes)
        return out;

    // Expand merged vertices in place; they lie in different components, so
    // no arc runs between them.
    std::vector<std::vector<Vertex>> members(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < d.n; ++v)
        members[static_cast<std::size_t>(index[static_cast<std::size_t>(find(v))])].push_back(v);
    Witness w;
    w.kind = Witness::Kind::order;
    for (Vertex x : order)
        for (Vertex v : members[static_cast<std::size_t>(x)])
            w.certificate.push_back(v);
    std::vector<int> pos(static_cast<std::size_t>(d.n));
    for (std::size_t i = 0; i < w.certificate.size(); ++i)
        pos[static_cast<std::size_t>(w.certificate[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < d.arcs.size(); ++i)
        if (pos[static_cast<std::size_t>(d.arcs[i].first)] < pos[static_cast<std::size_t>(d.arcs[i].second)])
            w.edges.push_back(static_cast<EdgeId>(i));
    if (static_cast<long long>(w.edges.size()) != r + pairs)
        throw InternalError("expanded order does not realise the kernel optimum");
    out.witness = std::move(w);
    return out;
}

}  // namespace apt
