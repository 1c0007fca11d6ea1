#pragma once

#include "apt/graph.hpp"
#include "apt/property.hpp"
#include "apt/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace apt {

struct MatchingResult {
    long long value = 0;
    /// assignment[row] = column
    std::vector<int> assignment;
};

/// Maximum weight perfect matching of a square non-negative weight matrix
/// (Hungarian method, O(r^3)). Throws PreconditionError if not square.
MatchingResult max_weight_perfect_matching(const std::vector<std::vector<long long>>& weights);

struct StructuredOptions {
    /// Answer YES outright when a clique of G \ S is large enough that
    /// Spencer's tournament bound already yields the surplus.
    bool spencer = true;
    /// Threads for the outer loop over maps / orders of S.
    int jobs = 1;
    RootChoice root = RootChoice::first_block;
};

struct StructuredResult {
    bool yes = false;
    /// Exact optimum r; absent only when the Spencer shortcut decided.
    std::optional<long long> value;
    /// pt(G) + k
    Rational threshold;
    /// Realises exactly *value edges whenever value is present.
    std::optional<Witness> witness;
    bool spencer_shortcut = false;
};

/// Max number of edges of a subgraph of g with a homomorphism into g0,
/// given s such that g \ s is a forest of cliques. g and g0 must be plain
/// graphs; g0 vertex-transitive.
StructuredResult solve_hom_structured(const Graph& g, std::span<const Vertex> s, const Graph& g0, int k,
                                      const StructuredOptions& options = {});

/// Max acyclic subgraph of an oriented g, given s such that g \ s is a
/// forest of cliques (tournaments).
StructuredResult solve_acyclic_structured(const Graph& g, std::span<const Vertex> s, int k,
                                          const StructuredOptions& options = {});

/// Smallest b with 0.15 * b^(3/2) >= b/4 + k + 1/4, computed exactly; for
/// k >= 70 never more than k. Throws PreconditionError for k < 1.
long long spencer_threshold(int k);

/// Whether a tournament on b vertices inside G \ S proves YES, when its
/// removal splits G into `outside_components` components. Each component
/// beyond two costs a further 1/4 of surplus.
bool spencer_shortcut_applies(long long b, int k, int outside_components);

/// Building blocks of the leaf-clique elimination, exposed for testing.
namespace clique_step {

/// max over maps C -> V(g0) of (edges of C carried into g0) + sum of
/// rows[v][image(v)]. Uses multiset compositions plus one matching each.
/// `assignment`, when given, receives an optimal map.
long long hom_component(const Graph& g0, const std::vector<std::vector<long long>>& rows,
                        std::vector<Vertex>* assignment = nullptr);

/// For a leaf clique with cut vertex mapped to each v0 in turn: rows cover
/// C \ {cut}; result[v0] also counts the edges from the cut vertex.
std::vector<long long> hom_with_cut(const Graph& g0, const std::vector<std::vector<long long>>& rows,
                                    std::vector<std::vector<Vertex>>* assignments = nullptr);

/// A placement of clique vertices relative to the ordered deletion set:
/// `order` lists clique-local indices, `slot[i]` counts S-vertices before i.
struct Placement {
    std::vector<int> order;
    std::vector<int> slot;
};

/// Best arcs-along-order inside the clique plus rows[i][slot(i)], over all
/// orders of the clique with nondecreasing slots. arc[i][j] means i -> j.
/// If `fixed` is set, vertex fixed->first sits in slot fixed->second and its
/// row is ignored. Returns nullopt only if no placement exists.
std::optional<long long> acyclic_clique(const std::vector<std::vector<char>>& arc,
                                        const std::vector<std::vector<long long>>& rows,
                                        std::optional<std::pair<int, int>> fixed = std::nullopt,
                                        Placement* placement = nullptr);

}  // namespace clique_step

}  // namespace apt
