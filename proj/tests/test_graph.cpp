#include "apt/error.hpp"
#include "apt/graph.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

using namespace apt;

namespace {

Graph from_mask(int n, std::uint32_t mask)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1u)
                edges.emplace_back(i, j);
    return Graph::undirected(n, edges);
}

int component_count_without(const Graph& g, Vertex v)
{
    return static_cast<int>(components(delete_vertices(g, std::vector<Vertex>{v})).size());
}

/// Every simple cycle of g (as a vertex set), found by DFS from its least vertex.
std::vector<std::vector<Vertex>> simple_cycles(const Graph& g)
{
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path;
    std::vector<char> on(static_cast<std::size_t>(g.n()), 0);
    std::function<void(Vertex, Vertex)> dfs = [&](Vertex start, Vertex v) {
        for (Vertex w : g.neighbors(v)) {
            if (w == start && path.size() >= 3)
                out.push_back(path);
            if (w <= start || on[static_cast<std::size_t>(w)])
                continue;
            on[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            dfs(start, w);
            path.pop_back();
            on[static_cast<std::size_t>(w)] = 0;
        }
    };
    for (Vertex s = 0; s < g.n(); ++s) {
        path = {s};
        on[static_cast<std::size_t>(s)] = 1;
        dfs(s, s);
        on[static_cast<std::size_t>(s)] = 0;
    }
    return out;
}

}  // namespace

TEST_CASE("parse plain and oriented graphs")
{
    const Graph k3 = parse_graph("p apt 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    CHECK(k3.n() == 3);
    CHECK(k3.m() == 3);
    CHECK(k3 == Graph::complete(3));

    const Graph arc = parse_graph("p apt 2 1 directed\na 1 2\n");
    CHECK(arc.is_oriented());
    CHECK(arc.has_arc(0, 1));
    CHECK_FALSE(arc.has_arc(1, 0));

    const Graph back = parse_graph("c comment\np apt 2 1 directed\na 2 1\n");
    CHECK(back.has_arc(1, 0));

    const Graph lab = parse_graph("p apt 3 2 labeled\ne 1 2 4\ne 2 3 7\n");
    CHECK(lab.is_labeled());
    CHECK(lab.edge(*lab.edge_id(1, 2)).attrs.label == 7);
}

TEST_CASE("parse errors name the line")
{
    auto line_of = [](const char* text) {
        try {
            parse_graph(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.line());
        }
        return -1L;
    };
    CHECK(line_of("p apt 3 3\ne 1 2\ne 1 2\n") == 3);
    CHECK(line_of("p apt 3 1\ne 2 2\n") == 2);
    CHECK(line_of("p apt 3 1\ne 1 4\n") == 2);
    CHECK(line_of("e 1 2\n") == 1);
    CHECK(line_of("p apt 2 1 directed\ne 1 2\n") == 2);
    CHECK(line_of("p apt 2 1\na 1 2\n") == 2);
    CHECK(line_of("p apt 2 1 directed\na 1 2\na 2 1\n") == 3);
    CHECK(line_of("p apt 2 1 labeled\ne 1 2\n") == 2);
    CHECK(line_of("p apt 2 1\ne 1 2 5\n") == 2);
    CHECK(line_of("p apt 3 2\ne 1 2\n") == 1);
    CHECK_THROWS_AS(parse_graph("p apt 2 1\ne 1 2\n", GraphKind{true, false}), ParseError);
}

TEST_CASE("write then parse is the identity")
{
    test::Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const bool oriented = t % 2 == 1;
        const Graph g = test::random_connected(rng, test::uniform(rng, 1, 9), 0.4, oriented);
        const std::string text = write_graph(g);
        CHECK(parse_graph(text) == g);
        CHECK(write_graph(parse_graph(text)) == text);
    }
    const Graph lab = parse_graph("p apt 3 2 directed labeled\na 3 1 2\na 2 3 1\n");
    CHECK(parse_graph(write_graph(lab)) == lab);

    const Digraph d = parse_digraph("p apt 3 3 directed\na 1 2\na 2 1\na 2 3\n");
    CHECK(d.arcs.size() == 3);
    CHECK(parse_digraph(write_digraph(d)).arcs == d.arcs);
    CHECK_THROWS_AS(parse_digraph("p apt 2 1\ne 1 2\n"), ParseError);
}

TEST_CASE("block examples")
{
    const auto k3 = blocks(Graph::complete(3));
    CHECK(k3.blocks == std::vector<std::vector<Vertex>>{{0, 1, 2}});
    CHECK(k3.cut_vertices.empty());

    const auto p3 = blocks(Graph::path(3));
    CHECK(p3.blocks == std::vector<std::vector<Vertex>>{{0, 1}, {1, 2}});
    CHECK(p3.cut_vertices == std::vector<Vertex>{1});

    const Graph bowtie = Graph::undirected(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
    const auto bt = blocks(bowtie);
    CHECK(bt.blocks == std::vector<std::vector<Vertex>>{{0, 1, 2}, {0, 3, 4}});
    CHECK(bt.cut_vertices == std::vector<Vertex>{0});

    const auto iso = blocks(Graph::undirected(3, {{0, 1}}));
    CHECK(iso.blocks == std::vector<std::vector<Vertex>>{{0, 1}, {2}});
}

/// Cut vertices by deleting each vertex and counting components on bitmasks.
std::vector<Vertex> cut_vertices_by_deletion(int n, const std::vector<std::uint32_t>& adj)
{
    auto count = [&](std::uint32_t alive) {
        int c = 0;
        while (alive) {
            std::uint32_t seen = alive & (~alive + 1), frontier = seen;
            while (frontier) {
                std::uint32_t grow = 0;
                for (int v = 0; v < n; ++v)
                    if (frontier >> v & 1u)
                        grow |= adj[static_cast<std::size_t>(v)];
                frontier = grow & alive & ~seen;
                seen |= frontier;
            }
            alive &= ~seen;
            ++c;
        }
        return c;
    };
    const std::uint32_t all = (1u << n) - 1;
    const int base = count(all);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v)
        if (count(all & ~(1u << v)) > base - (adj[static_cast<std::size_t>(v)] == 0 ? 1 : 0))
            out.push_back(v);
    return out;
}

TEST_CASE("blocks agree with the vertex-deletion oracle on all graphs up to 7 vertices")
{
    long long checked = 0, mismatches = 0;
    for (int n = 1; n <= 7; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            const Graph g = from_mask(n, mask);
            std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
            for (const Edge& e : g.edges()) {
                adj[static_cast<std::size_t>(e.u)] |= 1u << e.v;
                adj[static_cast<std::size_t>(e.v)] |= 1u << e.u;
            }
            const auto bd = blocks(g);
            ++checked;
            if (bd.cut_vertices != cut_vertices_by_deletion(n, adj)) {
                ++mismatches;
                continue;
            }
            if (n == 7)
                continue;

            // Edges partitioned; each block 2-connected or a bridge; block
            // forest acyclic (incidences = blocks + cuts - components).
            const int base = static_cast<int>(components(g).size());
            std::vector<int> edge_blocks(static_cast<std::size_t>(g.m()), 0);
            std::set<Vertex> cut_set(bd.cut_vertices.begin(), bd.cut_vertices.end());
            int incidences = 0;
            bool ok = true;
            for (const auto& b : bd.blocks) {
                const Graph h = induced(g, b);
                for (const Edge& e : h.edges())
                    ++edge_blocks[static_cast<std::size_t>(*g.edge_id(b[static_cast<std::size_t>(e.u)], b[static_cast<std::size_t>(e.v)]))];
                ok = ok && is_connected(h);
                if (h.n() >= 3)
                    for (Vertex v = 0; v < h.n(); ++v)
                        ok = ok && is_connected(delete_vertices(h, std::vector<Vertex>{v}));
                for (Vertex v : b)
                    incidences += cut_set.count(v) ? 1 : 0;
            }
            for (int c : edge_blocks)
                ok = ok && c == 1;
            ok = ok && static_cast<int>(bd.forest_edges.size()) == incidences;
            ok = ok && incidences == static_cast<int>(bd.blocks.size() + bd.cut_vertices.size()) - base;
            mismatches += ok ? 0 : 1;
        }
    }
    CHECK(mismatches == 0);
    CHECK(checked == 1 + 2 + 8 + 64 + 1024 + 32768 + 2097152);
}

TEST_CASE("blocks survive a long path")
{
    const Graph p = Graph::path(100000);
    const auto bd = blocks(p);
    CHECK(bd.blocks.size() == 99999);
    CHECK(bd.cut_vertices.size() == 99998);
}

TEST_CASE("forest of cliques examples")
{
    CHECK(is_forest_of_cliques(Graph::path(6)));
    CHECK_FALSE(is_forest_of_cliques(Graph::cycle(4)));
    std::vector<std::pair<Vertex, Vertex>> two_k4;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            two_k4.emplace_back(a, b);
            two_k4.emplace_back(a == 0 ? 0 : a + 3, b + 3);
        }
    CHECK(is_forest_of_cliques(Graph::undirected(7, two_k4)));
    CHECK(is_forest_of_cliques(parse_graph("p apt 3 3 directed\na 1 2\na 2 3\na 3 1\n")));
}

TEST_CASE("forest of cliques iff every cycle spans a clique")
{
    for (int n = 1; n <= 6; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            const Graph g = from_mask(n, mask);
            bool cycles_ok = true;
            for (const auto& c : simple_cycles(g))
                if (!is_clique(g, c)) {
                    cycles_ok = false;
                    break;
                }
            REQUIRE(is_forest_of_cliques(g) == cycles_ok);
        }
    }
}

TEST_CASE("leaf cliques")
{
    const auto k3 = leaf_cliques(Graph::complete(3));
    REQUIRE(k3.size() == 1);
    CHECK_FALSE(k3[0].cut_vertex);

    const auto p3 = leaf_cliques(Graph::path(3));
    REQUIRE(p3.size() == 2);
    CHECK(p3[0].clique == std::vector<Vertex>{0, 1});
    CHECK(p3[0].cut_vertex == 1);
    CHECK(p3[1].cut_vertex == 1);

    const Graph star = Graph::undirected(7, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}, {0, 5}, {0, 6}, {5, 6}});
    const auto leaves = leaf_cliques(star);
    REQUIRE(leaves.size() == 3);
    for (const auto& l : leaves)
        CHECK(l.cut_vertex == 0);

    CHECK_THROWS_AS(leaf_cliques(Graph::cycle(4)), PreconditionError);
}

TEST_CASE("clique elimination order peels every vertex once")
{
    test::Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        // forest of cliques: glue random cliques along a tree, plus extra components
        const int parts = test::uniform(rng, 1, 5);
        std::vector<std::pair<Vertex, Vertex>> edges;
        int n = 0;
        std::vector<Vertex> seen;
        for (int p = 0; p < parts; ++p) {
            const int size = test::uniform(rng, 1, 4);
            std::vector<Vertex> c;
            if (!seen.empty() && test::coin(rng, 0.7))
                c.push_back(seen[static_cast<std::size_t>(test::uniform(rng, 0, static_cast<int>(seen.size()) - 1))]);
            while (static_cast<int>(c.size()) < size)
                c.push_back(n++);
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j)
                    edges.emplace_back(c[i], c[j]);
            seen.insert(seen.end(), c.begin(), c.end());
        }
        const Graph g = Graph::undirected(n, edges);
        REQUIRE(is_forest_of_cliques(g));
        for (RootChoice root : {RootChoice::first_block, RootChoice::last_block}) {
            std::vector<char> gone(static_cast<std::size_t>(n), 0);
            for (const auto& step : clique_elimination_order(g, root)) {
                REQUIRE(is_clique(g, step.clique));
                for (Vertex v : step.clique)
                    REQUIRE_FALSE(gone[static_cast<std::size_t>(v)]);
                // no remaining neighbour outside the clique except through the cut vertex
                for (Vertex v : step.clique) {
                    if (v == step.cut_vertex)
                        continue;
                    for (Vertex w : g.neighbors(v))
                        REQUIRE((gone[static_cast<std::size_t>(w)] || std::count(step.clique.begin(), step.clique.end(), w) == 1));
                }
                if (step.cut_vertex) {
                    const Vertex c = *step.cut_vertex;
                    bool other = false;
                    for (Vertex w : g.neighbors(c))
                        if (!gone[static_cast<std::size_t>(w)] && std::count(step.clique.begin(), step.clique.end(), w) == 0)
                            other = true;
                    REQUIRE(other);
                }
                for (Vertex v : step.clique)
                    if (v != step.cut_vertex)
                        gone[static_cast<std::size_t>(v)] = 1;
            }
            for (char x : gone)
                REQUIRE(x);
        }
    }
}

TEST_CASE("subgraphs, boundary and components")
{
    const Graph k3 = Graph::complete(3);
    CHECK(boundary(k3, std::vector<Vertex>{0}).size() == 2);
    CHECK(induced(Graph::complete(4), std::vector<Vertex>{0, 2, 3}) == Graph::complete(3));
    CHECK(components(Graph::undirected(4, {{0, 1}, {2, 3}})).size() == 2);

    const Graph g = Graph::undirected(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const Graph h = delete_vertices(g, std::vector<Vertex>{1});
    CHECK(h.n() == 4);
    CHECK(std::vector<Vertex>(h.original_ids().begin(), h.original_ids().end()) == std::vector<Vertex>{0, 2, 3, 4});
    CHECK_THROWS(delete_vertices(g, std::vector<Vertex>{9}));

    test::Rng rng(3);
    for (int t = 0; t < 400; ++t) {
        const Graph r = test::random_connected(rng, test::uniform(rng, 1, 9), 0.5, t % 2 == 0);
        std::vector<Vertex> s, rest;
        for (Vertex v = 0; v < r.n(); ++v)
            (test::coin(rng, 0.5) ? s : rest).push_back(v);
        CHECK(static_cast<int>(boundary(r, s).size()) + edges_within(r, s) + edges_within(r, rest) == r.m());
        for (const auto& c : components(delete_vertices(r, s)))
            CHECK_FALSE(c.empty());
        const Graph sub = induced(r, s);
        for (const Edge& e : sub.edges()) {
            const Vertex a = sub.original_id(e.tail()), b = sub.original_id(e.head());
            CHECK(r.has_arc(a, b));
        }
    }
}
