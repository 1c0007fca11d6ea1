#include "apt/property.hpp"

#include "apt/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace apt {

// ---------------------------------------------------------- TargetRelation

TargetRelation::TargetRelation(const Graph& target) : n0_(target.n()), kind_(target.kind())
{
    for (const Edge& e : target.edges())
        if (e.attrs.label)
            labels_.push_back(*e.attrs.label);
    std::sort(labels_.begin(), labels_.end());
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
    const std::size_t classes = std::max<std::size_t>(1, labels_.size());
    rel_.assign(classes * static_cast<std::size_t>(n0_ * n0_), 0);
    for (const Edge& e : target.edges()) {
        const auto base = static_cast<std::size_t>(label_index(e)) * static_cast<std::size_t>(n0_ * n0_);
        rel_[base + static_cast<std::size_t>(e.tail() * n0_ + e.head())] = 1;
        if (!kind_.oriented)
            rel_[base + static_cast<std::size_t>(e.head() * n0_ + e.tail())] = 1;
    }
}

int TargetRelation::label_index(const Edge& e) const
{
    if (!e.attrs.label)
        return 0;
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), *e.attrs.label);
    if (it == labels_.end() || *it != *e.attrs.label)
        return -1;
    return static_cast<int>(it - labels_.begin());
}

void TargetRelation::check_instance(const Graph& g) const
{
    if (g.kind() != kind_)
        throw PreconditionError("instance is " + to_string(g.kind()) + " but the target is " + to_string(kind_));
    for (const Edge& e : g.edges())
        if (label_index(e) < 0)
            throw PreconditionError("edge label " + std::to_string(*e.attrs.label) +
                                    " does not occur in the target graph");
}

bool TargetRelation::realizes(const Edge& e, Vertex image_u, Vertex image_v) const
{
    const int li = label_index(e);
    if (li < 0)
        return false;
    Vertex t = image_u;
    Vertex h = image_v;
    if (e.attrs.orientation == Orientation::backward)
        std::swap(t, h);
    return rel_[static_cast<std::size_t>(li) * static_cast<std::size_t>(n0_ * n0_) +
                static_cast<std::size_t>(t * n0_ + h)] != 0;
}

// ------------------------------------------------------------ PropertySpec

PropertySpec PropertySpec::hom(Graph target)
{
    if (target.m() == 0)
        throw PreconditionError("homomorphism target must have at least one edge");
    if (!is_vertex_transitive(target))
        throw PreconditionError("homomorphism target is not vertex-transitive");
    PropertySpec spec;
    spec.variant_ = Variant::hom;
    spec.lambda_ = hom_lambda(target);
    spec.name_ = "hom(n0=" + std::to_string(target.n()) + ")";
    spec.target_ = std::move(target);
    return spec;
}

PropertySpec PropertySpec::cut()
{
    return coloring(2);
}

PropertySpec PropertySpec::coloring(int q)
{
    if (q < 2 || q > 10)
        throw PreconditionError("color:q needs 2 <= q <= 10");
    PropertySpec spec = hom(Graph::complete(q));
    spec.name_ = q == 2 ? "cut" : "color:" + std::to_string(q);
    return spec;
}

PropertySpec PropertySpec::acyclic()
{
    PropertySpec spec;
    spec.variant_ = Variant::acyclic;
    spec.lambda_ = Rational(1, 2);
    spec.name_ = "acyclic";
    return spec;
}

const Graph& PropertySpec::target() const
{
    if (!target_)
        throw PreconditionError("property has no homomorphism target");
    return *target_;
}

GraphKind PropertySpec::instance_kind() const
{
    if (is_acyclic())
        return GraphKind{true, false};
    return target_->kind();
}

std::string PropertySpec::name() const { return name_; }

// ------------------------------------------------------------------ bounds

Rational pt_bound(long long n, long long m, const Rational& lambda)
{
    if (n == 0)
        return Rational(0);
    const Rational lambda_prime = (Rational(1) - lambda) / Rational(2);
    return lambda * Rational(m) + lambda_prime * Rational(n - 1);
}

Rational pt_bound(const Graph& g, const Rational& lambda)
{
    if (!is_connected(g))
        throw PreconditionError("the Poljak-Turzik bound needs a connected graph");
    return pt_bound(g.n(), g.m(), lambda);
}

Rational hom_lambda(const Graph& g0)
{
    if (g0.m() == 0)
        throw PreconditionError("hom_lambda: target graph has no edges");
    std::vector<int> labels;
    for (const Edge& e : g0.edges())
        if (e.attrs.label)
            labels.push_back(*e.attrs.label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const std::size_t nl = std::max<std::size_t>(1, labels.size());
    const std::size_t directions = g0.is_oriented() ? 2 : 1;

    // counts[v][label * directions + dir]
    std::vector<std::vector<int>> counts(static_cast<std::size_t>(g0.n()), std::vector<int>(nl * directions, 0));
    for (const Edge& e : g0.edges()) {
        std::size_t li = 0;
        if (e.attrs.label)
            li = static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), *e.attrs.label) -
                                          labels.begin());
        if (g0.is_oriented()) {
            ++counts[static_cast<std::size_t>(e.tail())][li * 2];
            ++counts[static_cast<std::size_t>(e.head())][li * 2 + 1];
        } else {
            ++counts[static_cast<std::size_t>(e.u)][li];
            ++counts[static_cast<std::size_t>(e.v)][li];
        }
    }
    int d = std::numeric_limits<int>::max();
    for (const auto& row : counts)
        for (int c : row)
            d = std::min(d, c);
    return Rational(d, g0.n());
}

// --------------------------------------------------------- vertex transitivity

namespace {

bool same_adjacency(const Graph& g, Vertex a, Vertex b, Vertex fa, Vertex fb)
{
    const auto e1 = g.edge_id(a, b);
    const auto e2 = g.edge_id(fa, fb);
    if (e1.has_value() != e2.has_value())
        return false;
    if (!e1)
        return true;
    const Edge& x = g.edge(*e1);
    const Edge& y = g.edge(*e2);
    if (x.attrs.label != y.attrs.label)
        return false;
    if (g.is_oriented() && (x.tail() == a) != (y.tail() == fa))
        return false;
    return true;
}

bool extend_automorphism(const Graph& g, std::vector<Vertex>& image, std::vector<char>& used, Vertex next)
{
    if (next == g.n())
        return true;
    if (image[static_cast<std::size_t>(next)] >= 0)
        return extend_automorphism(g, image, used, next + 1);
    for (Vertex cand = 0; cand < g.n(); ++cand) {
        if (used[static_cast<std::size_t>(cand)] || g.degree(cand) != g.degree(next))
            continue;
        bool ok = true;
        for (Vertex a = 0; a < g.n() && ok; ++a)
            if (image[static_cast<std::size_t>(a)] >= 0)
                ok = same_adjacency(g, a, next, image[static_cast<std::size_t>(a)], cand);
        if (!ok)
            continue;
        image[static_cast<std::size_t>(next)] = cand;
        used[static_cast<std::size_t>(cand)] = 1;
        if (extend_automorphism(g, image, used, next + 1))
            return true;
        image[static_cast<std::size_t>(next)] = -1;
        used[static_cast<std::size_t>(cand)] = 0;
    }
    return false;
}

}  // namespace

bool is_vertex_transitive(const Graph& g0)
{
    if (g0.n() > 10)
        throw PreconditionError("vertex-transitivity check is capped at 10 vertices");
    // The automorphism group acts transitively iff the orbit of vertex 0 is everything.
    for (Vertex v = 1; v < g0.n(); ++v) {
        std::vector<Vertex> image(static_cast<std::size_t>(g0.n()), -1);
        std::vector<char> used(static_cast<std::size_t>(g0.n()), 0);
        if (g0.degree(0) != g0.degree(v))
            return false;
        image[0] = v;
        used[static_cast<std::size_t>(v)] = 1;
        if (!extend_automorphism(g0, image, used, 1))
            return false;
    }
    return true;
}

// -------------------------------------------------------------- realisation

std::vector<EdgeId> realized_edges(const Graph& g, const TargetRelation& target, const std::vector<Vertex>& map)
{
    if (map.size() != static_cast<std::size_t>(g.n()))
        throw PreconditionError("homomorphism map has the wrong length");
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < g.m(); ++id) {
        const Edge& e = g.edge(id);
        if (target.realizes(e, map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]))
            out.push_back(id);
    }
    return out;
}

std::vector<EdgeId> realized_arcs(const Graph& g, const std::vector<Vertex>& order)
{
    if (order.size() != static_cast<std::size_t>(g.n()))
        throw PreconditionError("order has the wrong length");
    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        if (v < 0 || v >= g.n() || pos[static_cast<std::size_t>(v)] != -1)
            throw PreconditionError("order is not a permutation of the vertices");
        pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < g.m(); ++id) {
        const Edge& e = g.edge(id);
        if (pos[static_cast<std::size_t>(e.tail())] < pos[static_cast<std::size_t>(e.head())])
            out.push_back(id);
    }
    return out;
}

// -------------------------------------------------------------- membership

namespace {

std::optional<std::vector<Vertex>> topological_order(const Graph& g)
{
    std::vector<int> indeg(static_cast<std::size_t>(g.n()), 0);
    for (const Edge& e : g.edges())
        ++indeg[static_cast<std::size_t>(e.head())];
    std::vector<Vertex> order;
    for (Vertex v = 0; v < g.n(); ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0)
            order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        const auto nbrs = g.neighbors(v);
        const auto ids = g.incident(v);
        for (std::size_t j = 0; j < nbrs.size(); ++j)
            if (g.edge(ids[j]).tail() == v && --indeg[static_cast<std::size_t>(nbrs[j])] == 0)
                order.push_back(nbrs[j]);
    }
    if (order.size() != static_cast<std::size_t>(g.n()))
        return std::nullopt;
    return order;
}

bool is_forest(const Graph& g) { return g.m() + static_cast<int>(components(g).size()) == g.n(); }

std::vector<Vertex> bfs_order(const Graph& g)
{
    std::vector<Vertex> order;
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (seen[static_cast<std::size_t>(s)])
            continue;
        seen[static_cast<std::size_t>(s)] = 1;
        const std::size_t start = order.size();
        order.push_back(s);
        for (std::size_t i = start; i < order.size(); ++i)
            for (Vertex w : g.neighbors(order[i]))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    order.push_back(w);
                }
    }
    return order;
}

bool search_hom(const Graph& g, const TargetRelation& target, const std::vector<Vertex>& order, std::size_t at,
                std::vector<Vertex>& map)
{
    if (at == order.size())
        return true;
    const Vertex v = order[at];
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident(v);
    for (Vertex image = 0; image < target.size(); ++image) {
        bool ok = true;
        for (std::size_t j = 0; j < nbrs.size() && ok; ++j) {
            const Vertex w = nbrs[j];
            if (map[static_cast<std::size_t>(w)] < 0)
                continue;
            const Edge& e = g.edge(ids[j]);
            const Vertex iu = e.u == v ? image : map[static_cast<std::size_t>(w)];
            const Vertex iv = e.v == v ? image : map[static_cast<std::size_t>(w)];
            ok = target.realizes(e, iu, iv);
        }
        if (!ok)
            continue;
        map[static_cast<std::size_t>(v)] = image;
        if (search_hom(g, target, order, at + 1, map))
            return true;
        map[static_cast<std::size_t>(v)] = -1;
    }
    return false;
}

}  // namespace

std::optional<Witness> is_member(const Graph& g, const PropertySpec& spec, const MembershipOptions& options)
{
    std::vector<EdgeId> all(static_cast<std::size_t>(g.m()));
    std::iota(all.begin(), all.end(), 0);

    if (spec.is_acyclic()) {
        if (!g.is_oriented())
            throw PreconditionError("acyclicity is defined for oriented graphs");
        auto order = topological_order(g);
        if (!order)
            return std::nullopt;
        return Witness{Witness::Kind::order, std::move(all), std::move(*order)};
    }

    const Graph& target = spec.target();
    const TargetRelation relation(target);
    relation.check_instance(g);

    // Forests are in every such property; map them onto one target edge.
    if (!g.is_oriented() && !g.is_labeled() && is_forest(g)) {
        const Edge& te = target.edge(0);
        std::vector<Vertex> map(static_cast<std::size_t>(g.n()), -1);
        for (Vertex v : bfs_order(g)) {
            Vertex parent_image = -1;
            for (Vertex w : g.neighbors(v))
                if (map[static_cast<std::size_t>(w)] >= 0)
                    parent_image = map[static_cast<std::size_t>(w)];
            map[static_cast<std::size_t>(v)] = parent_image == te.u ? te.v : te.u;
        }
        return Witness{Witness::Kind::homomorphism, std::move(all), std::move(map)};
    }

    if (g.n() > options.max_hom_vertices)
        throw BudgetError("homomorphism membership capped at " + std::to_string(options.max_hom_vertices) +
                          " vertices");
    std::vector<Vertex> map(static_cast<std::size_t>(g.n()), -1);
    if (!search_hom(g, relation, bfs_order(g), 0, map))
        return std::nullopt;
    return Witness{Witness::Kind::homomorphism, std::move(all), std::move(map)};
}

}  // namespace apt
