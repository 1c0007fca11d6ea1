#pragma once

#include "apt/graph.hpp"
#include "apt/property.hpp"
#include "apt/rational.hpp"
#include "apt/reduction.hpp"
#include "apt/structured.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apt {

struct Decision {
    bool yes = false;
    /// Only on YES answers reached through an exact solver.
    std::optional<Witness> witness;

    struct Diagnostics {
        Rational k_star;
        std::vector<Vertex> s;
        std::vector<RuleApplication> trace;
        /// "reduction", "structured-hom", "structured-acyclic", "spencer",
        /// "lower-bound" or "subset-dp".
        std::string solver;
        /// Exact optimum when the deciding solver computed one.
        std::optional<long long> value;
        Rational threshold;
        double reduce_seconds = 0;
        double solve_seconds = 0;

        // mas_above_half only
        int opposite_pairs = 0;
        int identifications = 0;
        int kernel_n = 0;
        bool exact_stage = false;
    } diagnostics;
};

struct DecideOptions {
    StructuredOptions structured;
};

/// Reduction followed by the structured solver of the property. Requires g
/// connected, of the kind the property is stated over, and k >= 1.
Decision apt_decide(const Graph& g, int k, const PropertySpec& spec, const DecideOptions& options = {});

/// Skips the reduction: s is supplied by the caller and must leave a forest
/// of cliques.
Decision decide_structured(const Graph& g, std::span<const Vertex> s, int k, const PropertySpec& spec,
                           const DecideOptions& options = {});

/// Does d have an acyclic subdigraph with at least m/2 + k arcs? d may hold
/// opposite arc pairs and be disconnected. A witness (order of V(d), arc
/// indices into d.arcs) is returned when the exact stage says YES.
Decision mas_above_half(const Digraph& d, int k);

}  // namespace apt
