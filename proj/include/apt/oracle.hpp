#pragma once

#include "apt/graph.hpp"
#include "apt/property.hpp"
#include "apt/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace apt {

struct OracleBudget {
    /// Maps tried by exact_max_hom (n0^n).
    long long max_maps = 100'000'000;
    /// Vertex cap of the subset DP.
    int max_acyclic_vertices = 24;
};

struct ExactValue {
    long long value = 0;
    /// Optimal map (hom) or linear order (acyclic).
    std::vector<Vertex> certificate;
};

/// Max edges carried into g0 over all maps V(g) -> V(g0), labels and
/// orientations respected. Throws BudgetError over budget.max_maps.
ExactValue exact_max_hom(const Graph& g, const Graph& g0, const OracleBudget& budget = {});
/// Max cut by enumerating the 2^(n-1) bipartitions; plain graphs, n <= 30.
long long exact_max_cut(const Graph& g);
/// Max arcs pointing forward along a linear order. g must be oriented.
ExactValue exact_max_acyclic(const Graph& g, const OracleBudget& budget = {});
/// Same for a digraph that may have opposite arc pairs.
ExactValue exact_max_acyclic(const Digraph& d, const OracleBudget& budget = {});

/// Exact optimum for the property (hom or acyclic).
long long exact_value(const Graph& g, const PropertySpec& spec, const OracleBudget& budget = {});
/// exact_value(g) >= pt_bound(g, lambda) + k. g must be connected.
bool exact_apt_decide(const Graph& g, int k, const PropertySpec& spec, const OracleBudget& budget = {});
/// exact_max_acyclic(d) >= m/2 + k.
bool exact_mas_above_half(const Digraph& d, int k, const OracleBudget& budget = {});

/// All connected simple graphs on n labelled vertices (1 <= n <= 7), in
/// increasing order of their edge bitmask.
class ConnectedGraphs {
public:
    explicit ConnectedGraphs(int n);
    std::optional<Graph> next();

private:
    int n_;
    std::vector<std::pair<Vertex, Vertex>> pairs_;
    std::uint64_t mask_ = 0;
    std::uint64_t end_ = 0;
};

/// Membership predicate for the extendibility checker.
using Membership = std::function<bool(const Graph&)>;

struct ExtendibilityCounterexample {
    enum class Condition { inclusiveness, block_additivity, subgraph_extension };

    Condition condition = Condition::subgraph_extension;
    Graph g;
    /// subgraph_extension: the side S, and weights of boundary(g, s) edges
    /// in that order. Empty weights for the other conditions.
    std::vector<Vertex> s;
    std::vector<Rational> weights;
    /// Largest c(F) / c(delta(S)) over admissible F (subgraph_extension).
    Rational best_fraction;
    std::string detail;
};

std::string to_string(ExtendibilityCounterexample::Condition c);

struct ExtendibilityReport {
    long long graphs_tested = 0;
    long long cuts_tested = 0;
    long long weight_functions_tested = 0;
    std::optional<ExtendibilityCounterexample> counterexample;
};

/// Searches for a violation of strong lambda-extendibility among all graphs
/// on at most n_max vertices (up to isomorphism) of the given kind, with unit
/// weights plus `trials` random rational weight functions per cut. Finding
/// nothing proves nothing. Plain graphs up to 6 vertices, oriented up to 5.
ExtendibilityReport check_strong_extendibility(const Membership& member, const Rational& lambda, int n_max,
                                               int trials, std::uint64_t seed, GraphKind kind = {});

/// Re-checks a counterexample from scratch (exhaustive over F for
/// subgraph_extension). True if it is still a violation.
bool reverify(const ExtendibilityCounterexample& cx, const Membership& member, const Rational& lambda);

}  // namespace apt
