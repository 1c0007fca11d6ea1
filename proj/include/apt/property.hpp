#pragma once

#include "apt/graph.hpp"
#include "apt/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace apt {

/// Which edges of an instance a homomorphism target can carry, given the
/// images of their endpoints. The label alphabet is exactly the labels that
/// occur in the target; instances using other labels are rejected.
class TargetRelation {
public:
    explicit TargetRelation(const Graph& target);

    int size() const { return n0_; }
    GraphKind kind() const { return kind_; }
    const std::vector<int>& labels() const { return labels_; }

    /// Throws PreconditionError on a kind mismatch or an unknown label.
    void check_instance(const Graph& g) const;

    /// Does the target realise edge e when e.u -> image_u and e.v -> image_v?
    bool realizes(const Edge& e, Vertex image_u, Vertex image_v) const;

private:
    int label_index(const Edge& e) const;

    int n0_ = 0;
    GraphKind kind_;
    std::vector<int> labels_;
    std::vector<char> rel_;  // [label][tail][head]
};

/// The property being solved for, together with its extendibility constant.
class PropertySpec {
public:
    enum class Variant { hom, acyclic };

    /// "Has a homomorphism into target". The target must have at least one
    /// edge and be vertex-transitive (checked up to 10 vertices).
    static PropertySpec hom(Graph target);
    static PropertySpec cut();
    static PropertySpec coloring(int q);
    static PropertySpec acyclic();

    Variant variant() const { return variant_; }
    bool is_hom() const { return variant_ == Variant::hom; }
    bool is_acyclic() const { return variant_ == Variant::acyclic; }
    /// Throws unless is_hom().
    const Graph& target() const;
    const Rational& lambda() const { return lambda_; }
    /// (1 - lambda) / 2
    Rational lambda_prime() const { return (Rational(1) - lambda_) / Rational(2); }
    /// Kind of the instances this property is stated over.
    GraphKind instance_kind() const;
    std::string name() const;

private:
    PropertySpec() = default;

    Variant variant_ = Variant::acyclic;
    std::optional<Graph> target_;
    Rational lambda_{1, 2};
    std::string name_;
};

/// Spanning subgraph H = (V, edges) plus what certifies H is in the property:
/// a vertex -> target-vertex map, or a linear order of all vertices.
struct Witness {
    enum class Kind { homomorphism, order };

    Kind kind = Kind::homomorphism;
    std::vector<EdgeId> edges;
    std::vector<Vertex> certificate;
};

/// lambda * m + (1 - lambda)/2 * (n - 1). Requires a connected graph.
Rational pt_bound(const Graph& g, const Rational& lambda);
/// Same formula from raw counts; the caller vouches for connectivity.
Rational pt_bound(long long n, long long m, const Rational& lambda);

/// d / n0, with d the least number of edges of one (label, direction)
/// class incident to a vertex of g0.
Rational hom_lambda(const Graph& g0);

/// Up to 10 vertices. Automorphisms respect labels and orientations.
bool is_vertex_transitive(const Graph& g0);

/// Edges of g carried into the target by map (vertex -> target vertex).
std::vector<EdgeId> realized_edges(const Graph& g, const TargetRelation& target, const std::vector<Vertex>& map);
/// Arcs of g that point forward along order (a permutation of V(g)).
std::vector<EdgeId> realized_arcs(const Graph& g, const std::vector<Vertex>& order);

struct MembershipOptions {
    /// Homomorphism membership is decided by backtracking.
    int max_hom_vertices = 20;
};

/// Certificate when g itself has the property, nullopt otherwise.
std::optional<Witness> is_member(const Graph& g, const PropertySpec& spec, const MembershipOptions& options = {});

}  // namespace apt
