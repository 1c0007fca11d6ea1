#pragma once

#include "apt/graph.hpp"
#include "apt/property.hpp"
#include "apt/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace apt {

/// One application of a reduction rule. All vertex ids are ids of the input
/// graph; they never change while rules are applied.
struct RuleApplication {
    int rule = 0;
    /// Rules 1 and 2: the separating vertex.
    Vertex v = -1;
    /// Rule 1: {X}; rule 2: the deleted clique components; rule 4: {C}.
    std::vector<std::vector<Vertex>> deleted;
    /// Rule 2: {v}; rule 3: {a, b, c}; rule 4: {x, y}.
    std::vector<Vertex> moved_to_s;
    /// Rule 4: the common outside neighbour of x and y.
    Vertex z = -1;
    /// 0, d * lambda', lambda', lambda' for rules 1..4.
    Rational k_delta;
    Rational k_before;
    Rational k_after;
    /// State version the application was computed against.
    std::uint64_t version = 0;

    /// Parameters as text, ids shifted by `offset` (1 for file ids).
    std::string params(int offset = 0) const;
    /// `rule=<id> params=<...> k_before=<p/q> k_after=<p/q>`
    std::string trace_line(int offset = 0) const;
};

/// The evolving tuple (G~, S~, k~). G~ is the input graph minus deleted
/// vertices; the rules only ever look at G~ \ S~, the "active" vertices.
class ReductionState {
public:
    /// Requires g connected, 0 < lambda < 1.
    ReductionState(Graph g, Rational k, Rational lambda);

    const Graph& graph() const { return *graph_; }
    bool is_active(Vertex v) const { return status_[static_cast<std::size_t>(v)] == Status::active; }
    bool is_deleted(Vertex v) const { return status_[static_cast<std::size_t>(v)] == Status::deleted; }
    bool in_s(Vertex v) const { return status_[static_cast<std::size_t>(v)] == Status::in_s; }
    int active_count() const { return active_count_; }

    std::vector<Vertex> active_vertices() const;
    std::vector<Vertex> s_set() const;
    /// G~ as a graph (original ids recorded).
    Graph current() const;
    /// G~ \ S~ as a graph (original ids recorded).
    Graph remainder() const;

    const Rational& k() const { return k_; }
    const Rational& lambda() const { return lambda_; }
    const Rational& lambda_prime() const { return lambda_prime_; }
    const std::vector<RuleApplication>& trace() const { return trace_; }
    std::uint64_t version() const { return version_; }

    /// Re-validates the application against this state, then performs it.
    /// Throws PreconditionError for a stale or invalid application.
    void apply(const RuleApplication& app);

private:
    enum class Status : std::uint8_t { active, in_s, deleted };

    void validate(const RuleApplication& app) const;

    std::shared_ptr<const Graph> graph_;
    std::vector<Status> status_;
    int active_count_ = 0;
    Rational k_;
    Rational lambda_;
    Rational lambda_prime_;
    std::vector<RuleApplication> trace_;
    std::uint64_t version_ = 0;
};

/// Each finder returns the lexicographically first application of its rule
/// on the current state, assuming earlier rules were found inapplicable.
std::optional<RuleApplication> find_rule1(const ReductionState& state);
std::optional<RuleApplication> find_rule2(const ReductionState& state);
std::optional<RuleApplication> find_rule3(const ReductionState& state);
/// Only returns applications of the restricted form where the deleted
/// component C is unique and N(x) \ C = N(y) \ C = {z}, z a cut vertex.
/// Throws InternalError if Rule 4 applies but never in that form.
std::optional<RuleApplication> find_rule4(const ReductionState& state);
/// Rules tried in the order 1, 2, 3, 4.
std::optional<RuleApplication> find_next_rule(const ReductionState& state);

struct ReductionResult {
    enum class Outcome { early_yes, decomposition };

    Outcome outcome = Outcome::decomposition;
    /// Vertices moved to S, sorted, input ids.
    std::vector<Vertex> s;
    Rational k_star;
    std::vector<RuleApplication> trace;

    bool early_yes() const { return outcome == Outcome::early_yes; }
};

/// Applies rules until at most one active vertex remains or k~ <= 0.
/// Requires g connected, k >= 1, 0 < lambda < 1.
ReductionResult reduce(const Graph& g, int k, const Rational& lambda);

struct Preprocessed {
    /// True when the reduction already proves a YES instance.
    bool yes = false;
    /// Deletion set leaving a forest of cliques; the untouched input k.
    std::vector<Vertex> s;
    int k = 0;
    ReductionResult reduction;
};

Preprocessed decide_or_decompose(const Graph& g, int k, const PropertySpec& spec);

}  // namespace apt
