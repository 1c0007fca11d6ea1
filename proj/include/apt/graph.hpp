#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace apt {

using Vertex = int;
using EdgeId = int;

/// Direction of an arc relative to the stored endpoint order (u < v).
enum class Orientation : std::uint8_t { forward, backward };

struct EdgeAttrs {
    std::optional<Orientation> orientation;
    std::optional<int> label;

    friend bool operator==(const EdgeAttrs&, const EdgeAttrs&) = default;
};

/// Stored with u < v. For oriented graphs the arc runs tail() -> head().
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    EdgeAttrs attrs;

    Vertex tail() const { return attrs.orientation == Orientation::backward ? v : u; }
    Vertex head() const { return attrs.orientation == Orientation::backward ? u : v; }
    Vertex other(Vertex w) const { return w == u ? v : u; }

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct GraphKind {
    bool oriented = false;
    bool labeled = false;

    friend bool operator==(const GraphKind&, const GraphKind&) = default;
};

std::string to_string(GraphKind kind);

/// Simple graph, optionally oriented and/or edge labelled. Immutable once
/// built. Every graph remembers the id each vertex had in the graph it was
/// derived from, so vertex deletion keeps reports interpretable.
class Graph {
public:
    /// Input edge for the checked constructor. For oriented graphs the arc
    /// is from -> to; the pair order is irrelevant otherwise.
    struct Arc {
        Vertex from;
        Vertex to;
        std::optional<int> label = std::nullopt;
    };

    Graph() = default;

    /// Validates: ids in range, no self-loops, at most one edge per pair,
    /// labels present iff the kind is labelled. Throws PreconditionError.
    Graph(int n, const std::vector<Arc>& arcs, GraphKind kind = {});

    static Graph undirected(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);
    static Graph oriented(int n, const std::vector<std::pair<Vertex, Vertex>>& arcs);
    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int n);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    GraphKind kind() const { return kind_; }
    bool is_oriented() const { return kind_.oriented; }
    bool is_labeled() const { return kind_.labeled; }

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }

    /// Sorted neighbour list.
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    /// Edge ids parallel to neighbors(v).
    std::span<const EdgeId> incident(Vertex v) const { return adj_edges_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }
    std::optional<EdgeId> edge_id(Vertex a, Vertex b) const;
    /// True iff there is an arc a -> b (oriented graphs only).
    bool has_arc(Vertex a, Vertex b) const;

    Vertex original_id(Vertex v) const { return original_[static_cast<std::size_t>(v)]; }
    std::span<const Vertex> original_ids() const { return original_; }

    /// Same graph, with orientation and labels stripped.
    Graph underlying() const;

    /// Same vertex count, kind and edge set; edge order is ignored.
    friend bool operator==(const Graph& a, const Graph& b);

private:
    friend Graph delete_vertices(const Graph& g, std::span<const Vertex> removed);

    void index();
    void check_vertex(Vertex v) const;

    int n_ = 0;
    GraphKind kind_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::vector<EdgeId>> adj_edges_;
    std::vector<Vertex> original_;
};

/// Directed graph which may contain opposite arc pairs (u->v and v->u).
/// Used only by the max acyclic subdigraph route.
struct Digraph {
    int n = 0;
    std::vector<std::pair<Vertex, Vertex>> arcs;
};

// ---------------------------------------------------------------- text I/O

/// Extended DIMACS: `p apt <n> <m> [directed] [labeled]`, `e u v [label]`,
/// `a u v [label]`, `c comment`. Ids are 1-based in text. Throws ParseError.
Graph parse_graph(std::string_view text);
/// As above, but also requires the header to declare `expected`.
Graph parse_graph(std::string_view text, GraphKind expected);
/// Directed header required; opposite arcs allowed, labels rejected.
Digraph parse_digraph(std::string_view text);

/// Inverse of parse_graph for comment-free input.
std::string write_graph(const Graph& g);
std::string write_digraph(const Digraph& d);

std::string read_file(const std::string& path);

// ------------------------------------------------------------- structure

struct BlockDecomposition {
    /// Sorted vertex sets, ordered lexicographically. Isolated vertices form
    /// singleton blocks; bridges form two-vertex blocks.
    std::vector<std::vector<Vertex>> blocks;
    std::vector<Vertex> cut_vertices;
    /// Edge count of each block.
    std::vector<int> block_edges;
    /// Bipartite block forest: (block index, cut vertex) incidences.
    std::vector<std::pair<int, Vertex>> forest_edges;
};

/// Lowpoint DFS without recursion.
BlockDecomposition blocks(const Graph& g);

/// Sorted components, ordered by smallest vertex.
std::vector<std::vector<Vertex>> components(const Graph& g);
bool is_connected(const Graph& g);
bool is_clique(const Graph& g, std::span<const Vertex> vertices);

/// Every block induces a clique. Orientation and labels are ignored.
bool is_forest_of_cliques(const Graph& g);

struct LeafClique {
    std::vector<Vertex> clique;
    std::optional<Vertex> cut_vertex;
};

/// Blocks with at most one cut vertex. Requires a forest of cliques.
std::vector<LeafClique> leaf_cliques(const Graph& g);

enum class RootChoice { first_block, last_block };

/// Order in which leaf cliques can be peeled off until nothing is left.
/// A step with a cut vertex removes clique \ {cut}; a step without removes
/// the whole clique, which is then a component of what remains. Requires a
/// forest of cliques. The root choice only changes which block of each
/// component is peeled last.
std::vector<LeafClique> clique_elimination_order(const Graph& g,
                                                 RootChoice root = RootChoice::first_block);

Graph delete_vertices(const Graph& g, std::span<const Vertex> removed);
Graph induced(const Graph& g, std::span<const Vertex> kept);
/// Edges with exactly one end in s.
std::vector<EdgeId> boundary(const Graph& g, std::span<const Vertex> s);
/// Number of edges with both ends in s.
int edges_within(const Graph& g, std::span<const Vertex> s);

}  // namespace apt
