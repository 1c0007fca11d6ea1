#include "apt/graph.hpp"

#include "apt/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace apt {

std::string to_string(GraphKind kind)
{
    if (kind.oriented && kind.labeled)
        return "oriented+labeled";
    if (kind.oriented)
        return "oriented";
    if (kind.labeled)
        return "labeled";
    return "plain";
}

Graph::Graph(int n, const std::vector<Arc>& arcs, GraphKind kind) : n_(n), kind_(kind)
{
    if (n < 0)
        throw PreconditionError("negative vertex count");
    std::set<std::pair<Vertex, Vertex>> seen;
    edges_.reserve(arcs.size());
    for (const Arc& a : arcs) {
        check_vertex(a.from);
        check_vertex(a.to);
        if (a.from == a.to)
            throw PreconditionError("self-loop at vertex " + std::to_string(a.from));
        const Vertex lo = std::min(a.from, a.to);
        const Vertex hi = std::max(a.from, a.to);
        if (!seen.emplace(lo, hi).second)
            throw PreconditionError("duplicate edge {" + std::to_string(lo) + "," + std::to_string(hi) + "}");
        if (kind.labeled != a.label.has_value())
            throw PreconditionError(kind.labeled ? "missing edge label" : "label on unlabeled graph");
        Edge e{lo, hi, {}};
        if (kind.oriented)
            e.attrs.orientation = a.from == lo ? Orientation::forward : Orientation::backward;
        e.attrs.label = a.label;
        edges_.push_back(e);
    }
    original_.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        original_[static_cast<std::size_t>(v)] = v;
    index();
}

Graph Graph::undirected(int n, const std::vector<std::pair<Vertex, Vertex>>& edges)
{
    std::vector<Arc> arcs;
    for (auto [a, b] : edges)
        arcs.push_back({a, b});
    return Graph(n, arcs);
}

Graph Graph::oriented(int n, const std::vector<std::pair<Vertex, Vertex>>& arcs)
{
    std::vector<Arc> list;
    for (auto [a, b] : arcs)
        list.push_back({a, b});
    return Graph(n, list, GraphKind{true, false});
}

Graph Graph::complete(int n)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            e.emplace_back(a, b);
    return undirected(n, e);
}

Graph Graph::cycle(int n)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a < n; ++a)
        e.emplace_back(a, (a + 1) % n);
    return undirected(n, e);
}

Graph Graph::path(int n)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a + 1 < n; ++a)
        e.emplace_back(a, a + 1);
    return undirected(n, e);
}

void Graph::check_vertex(Vertex v) const
{
    if (v < 0 || v >= n_)
        throw PreconditionError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
}

void Graph::index()
{
    adj_.assign(static_cast<std::size_t>(n_), {});
    adj_edges_.assign(static_cast<std::size_t>(n_), {});
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> tmp(static_cast<std::size_t>(n_));
    for (EdgeId id = 0; id < m(); ++id) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        tmp[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
        tmp[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
    }
    for (std::size_t v = 0; v < tmp.size(); ++v) {
        std::sort(tmp[v].begin(), tmp[v].end());
        for (auto [w, id] : tmp[v]) {
            adj_[v].push_back(w);
            adj_edges_[v].push_back(id);
        }
    }
}

std::optional<EdgeId> Graph::edge_id(Vertex a, Vertex b) const
{
    check_vertex(a);
    check_vertex(b);
    const auto& list = adj_[static_cast<std::size_t>(a)];
    const auto it = std::lower_bound(list.begin(), list.end(), b);
    if (it == list.end() || *it != b)
        return std::nullopt;
    return adj_edges_[static_cast<std::size_t>(a)][static_cast<std::size_t>(it - list.begin())];
}

bool Graph::has_arc(Vertex a, Vertex b) const
{
    const auto id = edge_id(a, b);
    return id && edge(*id).tail() == a;
}

Graph Graph::underlying() const
{
    Graph g = *this;
    g.kind_ = {};
    for (Edge& e : g.edges_)
        e.attrs = {};
    return g;
}

bool operator==(const Graph& a, const Graph& b)
{
    if (a.n_ != b.n_ || a.kind_ != b.kind_ || a.edges_.size() != b.edges_.size())
        return false;
    auto sorted = [](std::vector<Edge> e) {
        std::sort(e.begin(), e.end(), [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
        return e;
    };
    return sorted(a.edges_) == sorted(b.edges_);
}

// ---------------------------------------------------------------- text I/O

namespace {

struct Header {
    int n = 0;
    int m = 0;
    GraphKind kind;
    std::size_t line = 0;
};

std::vector<std::string> tokens(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

long long to_int(const std::string& token, std::size_t line)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size())
            throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + token + "'");
    }
}

Header parse_header(const std::vector<std::string>& tok, std::size_t line)
{
    if (tok.size() < 4 || tok[1] != "apt")
        throw ParseError(line, "header must be 'p apt <n> <m> [directed] [labeled]'");
    Header h;
    h.line = line;
    const long long n = to_int(tok[2], line);
    const long long m = to_int(tok[3], line);
    if (n < 0 || m < 0 || n > 100'000'000 || m > 1'000'000'000)
        throw ParseError(line, "vertex or edge count out of range");
    h.n = static_cast<int>(n);
    h.m = static_cast<int>(m);
    for (std::size_t i = 4; i < tok.size(); ++i) {
        if (tok[i] == "directed" && !h.kind.oriented)
            h.kind.oriented = true;
        else if (tok[i] == "labeled" && !h.kind.labeled)
            h.kind.labeled = true;
        else
            throw ParseError(line, "unknown header flag '" + tok[i] + "'");
    }
    return h;
}

/// Shared line scanner; calls on_edge(tag, u, v, label, line) with 0-based ids.
template <class OnEdge>
Header scan(std::string_view text, bool labels_allowed, OnEdge on_edge)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    std::optional<Header> header;
    int count = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto tok = tokens(raw);
        if (tok.empty() || tok[0] == "c")
            continue;
        if (tok[0] == "p") {
            if (header)
                throw ParseError(line, "duplicate header");
            header = parse_header(tok, line);
            if (header->kind.labeled && !labels_allowed)
                throw ParseError(line, "labels are not supported here");
            continue;
        }
        if (tok[0] != "e" && tok[0] != "a")
            throw ParseError(line, "unknown line type '" + tok[0] + "'");
        if (!header)
            throw ParseError(line, "missing header before first edge");
        const bool arc = tok[0] == "a";
        if (arc != header->kind.oriented)
            throw ParseError(line, arc ? "arc in undirected graph" : "undirected edge in directed graph");
        const std::size_t expect = header->kind.labeled ? 4 : 3;
        if (tok.size() != expect)
            throw ParseError(line, header->kind.labeled ? "expected '<e|a> u v label'" : "expected '<e|a> u v'");
        const long long u = to_int(tok[1], line);
        const long long v = to_int(tok[2], line);
        if (u < 1 || u > header->n || v < 1 || v > header->n)
            throw ParseError(line, "vertex id out of range 1.." + std::to_string(header->n));
        if (u == v)
            throw ParseError(line, "self-loop at vertex " + std::to_string(u));
        std::optional<int> label;
        if (header->kind.labeled)
            label = static_cast<int>(to_int(tok[3], line));
        on_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), label, line);
        ++count;
    }
    if (!header)
        throw ParseError(line == 0 ? 1 : line, "missing header");
    if (count != header->m)
        throw ParseError(header->line, "header declares " + std::to_string(header->m) + " edges, found " +
                                           std::to_string(count));
    return *header;
}

}  // namespace

Graph parse_graph(std::string_view text)
{
    std::vector<Graph::Arc> arcs;
    std::set<std::pair<Vertex, Vertex>> seen;
    const Header h = scan(text, true, [&](Vertex u, Vertex v, std::optional<int> label, std::size_t line) {
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
            throw ParseError(line, "duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
        arcs.push_back({u, v, label});
    });
    return Graph(h.n, arcs, h.kind);
}

Graph parse_graph(std::string_view text, GraphKind expected)
{
    Graph g = parse_graph(text);
    if (g.kind() != expected)
        throw ParseError(1, "expected a " + to_string(expected) + " graph, header declares " + to_string(g.kind()));
    return g;
}

Digraph parse_digraph(std::string_view text)
{
    Digraph d;
    std::set<std::pair<Vertex, Vertex>> seen;
    const Header h = scan(text, false, [&](Vertex u, Vertex v, std::optional<int>, std::size_t line) {
        if (!seen.emplace(u, v).second)
            throw ParseError(line, "duplicate arc " + std::to_string(u + 1) + " " + std::to_string(v + 1));
        d.arcs.emplace_back(u, v);
    });
    if (!h.kind.oriented)
        throw ParseError(h.line, "expected a directed graph");
    d.n = h.n;
    return d;
}

std::string write_graph(const Graph& g)
{
    std::ostringstream out;
    out << "p apt " << g.n() << ' ' << g.m();
    if (g.is_oriented())
        out << " directed";
    if (g.is_labeled())
        out << " labeled";
    out << '\n';
    for (const Edge& e : g.edges()) {
        out << (g.is_oriented() ? 'a' : 'e') << ' ' << e.tail() + 1 << ' ' << e.head() + 1;
        if (e.attrs.label)
            out << ' ' << *e.attrs.label;
        out << '\n';
    }
    return out.str();
}

std::string write_digraph(const Digraph& d)
{
    std::ostringstream out;
    out << "p apt " << d.n << ' ' << d.arcs.size() << " directed\n";
    for (auto [u, v] : d.arcs)
        out << "a " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ------------------------------------------------------------- structure

BlockDecomposition blocks(const Graph& g)
{
    const int n = g.n();
    std::vector<int> disc(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<EdgeId> edge_stack;
    std::vector<std::pair<std::vector<Vertex>, int>> found;

    struct Frame {
        Vertex v;
        EdgeId parent_edge;
        std::size_t next;
    };
    std::vector<Frame> frames;
    int timer = 0;

    auto pop_block = [&](EdgeId until) {
        std::vector<Vertex> verts;
        int count = 0;
        while (true) {
            const EdgeId e = edge_stack.back();
            edge_stack.pop_back();
            verts.push_back(g.edge(e).u);
            verts.push_back(g.edge(e).v);
            ++count;
            if (e == until)
                break;
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        found.emplace_back(std::move(verts), count);
    };

    for (Vertex root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] != -1)
            continue;
        if (g.degree(root) == 0) {
            disc[static_cast<std::size_t>(root)] = timer++;
            found.emplace_back(std::vector<Vertex>{root}, 0);
            continue;
        }
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        frames.push_back({root, -1, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto nbrs = g.neighbors(f.v);
            if (f.next < nbrs.size()) {
                const Vertex w = nbrs[f.next];
                const EdgeId e = g.incident(f.v)[f.next];
                ++f.next;
                if (e == f.parent_edge)
                    continue;
                const auto wi = static_cast<std::size_t>(w);
                const auto vi = static_cast<std::size_t>(f.v);
                if (disc[wi] == -1) {
                    edge_stack.push_back(e);
                    disc[wi] = low[wi] = timer++;
                    frames.push_back({w, e, 0});
                } else if (disc[wi] < disc[vi]) {
                    edge_stack.push_back(e);
                    low[vi] = std::min(low[vi], disc[wi]);
                }
                continue;
            }
            const Frame done = f;
            frames.pop_back();
            if (frames.empty())
                break;
            const auto p = static_cast<std::size_t>(frames.back().v);
            const auto d = static_cast<std::size_t>(done.v);
            low[p] = std::min(low[p], low[d]);
            if (low[d] >= disc[p])
                pop_block(done.parent_edge);
        }
    }

    std::sort(found.begin(), found.end());
    BlockDecomposition out;
    std::vector<int> membership(static_cast<std::size_t>(n), 0);
    for (auto& [verts, count] : found) {
        for (Vertex v : verts)
            ++membership[static_cast<std::size_t>(v)];
        out.blocks.push_back(std::move(verts));
        out.block_edges.push_back(count);
    }
    for (Vertex v = 0; v < n; ++v)
        if (membership[static_cast<std::size_t>(v)] >= 2)
            out.cut_vertices.push_back(v);
    for (std::size_t b = 0; b < out.blocks.size(); ++b)
        for (Vertex v : out.blocks[b])
            if (membership[static_cast<std::size_t>(v)] >= 2)
                out.forest_edges.emplace_back(static_cast<int>(b), v);
    return out;
}

std::vector<std::vector<Vertex>> components(const Graph& g)
{
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (seen[static_cast<std::size_t>(s)])
            continue;
        queue.assign(1, s);
        seen[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (Vertex w : g.neighbors(queue[i]))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
        std::sort(queue.begin(), queue.end());
        out.push_back(queue);
    }
    return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

bool is_clique(const Graph& g, std::span<const Vertex> vertices)
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (!g.has_edge(vertices[i], vertices[j]))
                return false;
    return true;
}

namespace {

bool block_is_clique(const BlockDecomposition& d, std::size_t b)
{
    const auto s = static_cast<long long>(d.blocks[b].size());
    return d.block_edges[b] == s * (s - 1) / 2;
}

}  // namespace

bool is_forest_of_cliques(const Graph& g)
{
    const BlockDecomposition d = blocks(g);
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        if (!block_is_clique(d, b))
            return false;
    return true;
}

std::vector<LeafClique> leaf_cliques(const Graph& g)
{
    const BlockDecomposition d = blocks(g);
    std::vector<int> cut_count(d.blocks.size(), 0);
    std::vector<std::optional<Vertex>> cut(d.blocks.size());
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        if (!block_is_clique(d, b))
            throw PreconditionError("leaf_cliques requires a forest of cliques");
    for (auto [b, v] : d.forest_edges) {
        ++cut_count[static_cast<std::size_t>(b)];
        cut[static_cast<std::size_t>(b)] = v;
    }
    std::vector<LeafClique> out;
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        if (cut_count[b] <= 1)
            out.push_back({d.blocks[b], cut_count[b] == 1 ? cut[b] : std::nullopt});
    return out;
}

std::vector<LeafClique> clique_elimination_order(const Graph& g, RootChoice root)
{
    const BlockDecomposition d = blocks(g);
    const std::size_t nb = d.blocks.size();
    for (std::size_t b = 0; b < nb; ++b)
        if (!block_is_clique(d, b))
            throw PreconditionError("clique elimination requires a forest of cliques");

    std::vector<std::vector<int>> blocks_of(static_cast<std::size_t>(g.n()));
    for (std::size_t b = 0; b < nb; ++b)
        for (Vertex v : d.blocks[b])
            blocks_of[static_cast<std::size_t>(v)].push_back(static_cast<int>(b));

    std::vector<int> component(static_cast<std::size_t>(g.n()), -1);
    const auto comps = components(g);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (Vertex v : comps[c])
            component[static_cast<std::size_t>(v)] = static_cast<int>(c);

    std::vector<int> root_of(comps.size(), -1);
    for (std::size_t b = 0; b < nb; ++b) {
        const auto c = static_cast<std::size_t>(component[static_cast<std::size_t>(d.blocks[b].front())]);
        if (root_of[c] == -1 || root == RootChoice::last_block)
            root_of[c] = static_cast<int>(b);
    }

    std::vector<LeafClique> order;
    std::vector<char> visited(nb, 0);
    struct Frame {
        int block;
        std::optional<Vertex> parent_cut;
        std::size_t vi;  // index into block's vertex list
        std::size_t bi;  // index into blocks_of[current vertex]
    };
    for (int r : root_of) {
        std::vector<Frame> stack{{r, std::nullopt, 0, 0}};
        visited[static_cast<std::size_t>(r)] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& verts = d.blocks[static_cast<std::size_t>(f.block)];
            bool descended = false;
            while (f.vi < verts.size() && !descended) {
                const Vertex c = verts[f.vi];
                const auto& around = blocks_of[static_cast<std::size_t>(c)];
                if (f.parent_cut == c || around.size() < 2 || f.bi >= around.size()) {
                    ++f.vi;
                    f.bi = 0;
                    continue;
                }
                const int child = around[f.bi++];
                if (!visited[static_cast<std::size_t>(child)]) {
                    visited[static_cast<std::size_t>(child)] = 1;
                    stack.push_back({child, c, 0, 0});
                    descended = true;
                }
            }
            if (descended)
                continue;
            order.push_back({verts, f.parent_cut});
            stack.pop_back();
        }
    }
    return order;
}

Graph delete_vertices(const Graph& g, std::span<const Vertex> removed)
{
    std::vector<char> gone(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : removed) {
        if (v < 0 || v >= g.n())
            throw PreconditionError("vertex " + std::to_string(v) + " out of range");
        gone[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<Vertex> new_id(static_cast<std::size_t>(g.n()), -1);
    Graph out;
    out.kind_ = g.kind_;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!gone[static_cast<std::size_t>(v)]) {
            new_id[static_cast<std::size_t>(v)] = out.n_++;
            out.original_.push_back(g.original_id(v));
        }
    for (const Edge& e : g.edges()) {
        const Vertex a = new_id[static_cast<std::size_t>(e.u)];
        const Vertex b = new_id[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0)
            out.edges_.push_back({a, b, e.attrs});
    }
    out.index();
    return out;
}

Graph induced(const Graph& g, std::span<const Vertex> kept)
{
    std::vector<char> keep(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : kept) {
        if (v < 0 || v >= g.n())
            throw PreconditionError("vertex " + std::to_string(v) + " out of range");
        keep[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<Vertex> removed;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!keep[static_cast<std::size_t>(v)])
            removed.push_back(v);
    return delete_vertices(g, removed);
}

namespace {

std::vector<char> membership(const Graph& g, std::span<const Vertex> s)
{
    std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : s) {
        if (v < 0 || v >= g.n())
            throw PreconditionError("vertex " + std::to_string(v) + " out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    return in;
}

}  // namespace

std::vector<EdgeId> boundary(const Graph& g, std::span<const Vertex> s)
{
    const auto in = membership(g, s);
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < g.m(); ++id) {
        const Edge& e = g.edge(id);
        if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)])
            out.push_back(id);
    }
    return out;
}

int edges_within(const Graph& g, std::span<const Vertex> s)
{
    const auto in = membership(g, s);
    int count = 0;
    for (const Edge& e : g.edges())
        if (in[static_cast<std::size_t>(e.u)] && in[static_cast<std::size_t>(e.v)])
            ++count;
    return count;
}

}  // namespace apt
