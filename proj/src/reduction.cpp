#include "apt/reduction.hpp"

#include "apt/error.hpp"

#include <algorithm>
#include <sstream>

namespace apt {

namespace {

std::string join(const std::vector<Vertex>& vs, int offset)
{
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(vs[i] + offset);
    }
    return out;
}

/// Scratch BFS over the active vertices, with a few vertices masked out.
class ActiveSearch {
public:
    explicit ActiveSearch(const ReductionState& state)
        : state_(state), mark_(static_cast<std::size_t>(state.graph().n()), 0)
    {
    }

    /// Components of G~ \ (S~ u excluded), each sorted, ordered by least vertex.
    std::vector<std::vector<Vertex>> components(std::initializer_list<Vertex> excluded)
    {
        std::vector<std::vector<Vertex>> out;
        const Graph& g = state_.graph();
        ++stamp_;
        for (Vertex x : excluded)
            mark_[static_cast<std::size_t>(x)] = stamp_;
        for (Vertex s = 0; s < g.n(); ++s) {
            if (!state_.is_active(s) || mark_[static_cast<std::size_t>(s)] == stamp_)
                continue;
            std::vector<Vertex> comp{s};
            mark_[static_cast<std::size_t>(s)] = stamp_;
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (Vertex w : g.neighbors(comp[i]))
                    if (state_.is_active(w) && mark_[static_cast<std::size_t>(w)] != stamp_) {
                        mark_[static_cast<std::size_t>(w)] = stamp_;
                        comp.push_back(w);
                    }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    }

    bool connected_without(std::initializer_list<Vertex> excluded) { return components(excluded).size() <= 1; }

private:
    const ReductionState& state_;
    std::vector<unsigned> mark_;
    unsigned stamp_ = 0;
};

bool adjacent_to_all(const Graph& g, Vertex v, const std::vector<Vertex>& set)
{
    return std::all_of(set.begin(), set.end(), [&](Vertex w) { return g.has_edge(v, w); });
}

/// Active neighbours of v outside `skip`.
std::vector<Vertex> active_neighbors_outside(const ReductionState& state, Vertex v, const std::vector<Vertex>& skip)
{
    std::vector<Vertex> out;
    for (Vertex w : state.graph().neighbors(v))
        if (state.is_active(w) && !std::binary_search(skip.begin(), skip.end(), w))
            out.push_back(w);
    return out;
}

RuleApplication make(const ReductionState& state, int rule)
{
    RuleApplication app;
    app.rule = rule;
    app.version = state.version();
    return app;
}

struct Rule4Split {
    std::vector<std::vector<Vertex>> good;
    int bad = 0;
};

Rule4Split split_for_rule4(const Graph& g, const std::vector<std::vector<Vertex>>& comps, Vertex x, Vertex y)
{
    Rule4Split out;
    for (const auto& c : comps) {
        if (is_clique(g, c) && adjacent_to_all(g, x, c) && adjacent_to_all(g, y, c))
            out.good.push_back(c);
        else
            ++out.bad;
    }
    return out;
}

}  // namespace

// -------------------------------------------------------- RuleApplication

std::string RuleApplication::params(int offset) const
{
    std::ostringstream out;
    auto sets = [&](const std::vector<std::vector<Vertex>>& list) {
        for (const auto& s : list)
            out << '{' << join(s, offset) << '}';
    };
    switch (rule) {
    case 1:
        out << "v=" << v + offset << ",X=";
        sets(deleted);
        break;
    case 2:
        out << "v=" << v + offset << ",X=";
        sets(deleted);
        break;
    case 3:
        out << "a=" << moved_to_s.at(0) + offset << ",b=" << moved_to_s.at(1) + offset
            << ",c=" << moved_to_s.at(2) + offset;
        break;
    case 4:
        out << "x=" << moved_to_s.at(0) + offset << ",y=" << moved_to_s.at(1) + offset << ",C=";
        sets(deleted);
        out << ",z=" << z + offset;
        break;
    default:
        out << "?";
    }
    return out.str();
}

std::string RuleApplication::trace_line(int offset) const
{
    return "rule=" + std::to_string(rule) + " params=" + params(offset) + " k_before=" + k_before.str() +
           " k_after=" + k_after.str();
}

// --------------------------------------------------------- ReductionState

ReductionState::ReductionState(Graph g, Rational k, Rational lambda)
    : graph_(std::make_shared<const Graph>(std::move(g))),
      status_(static_cast<std::size_t>(graph_->n()), Status::active),
      active_count_(graph_->n()),
      k_(std::move(k)),
      lambda_(std::move(lambda))
{
    if (lambda_ <= Rational(0) || lambda_ >= Rational(1))
        throw PreconditionError("lambda must lie strictly between 0 and 1");
    if (!is_connected(*graph_))
        throw PreconditionError("reduction needs a connected graph");
    lambda_prime_ = (Rational(1) - lambda_) / Rational(2);
}

std::vector<Vertex> ReductionState::active_vertices() const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < graph_->n(); ++v)
        if (is_active(v))
            out.push_back(v);
    return out;
}

std::vector<Vertex> ReductionState::s_set() const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < graph_->n(); ++v)
        if (in_s(v))
            out.push_back(v);
    return out;
}

Graph ReductionState::current() const
{
    std::vector<Vertex> gone;
    for (Vertex v = 0; v < graph_->n(); ++v)
        if (is_deleted(v))
            gone.push_back(v);
    return delete_vertices(*graph_, gone);
}

Graph ReductionState::remainder() const { return induced(*graph_, active_vertices()); }

void ReductionState::validate(const RuleApplication& app) const
{
    if (app.version != version_)
        throw PreconditionError("stale rule application (state has changed)");
    const Graph& g = *graph_;
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw PreconditionError(std::string("invalid rule application: ") + what);
    };
    auto all_active = [&](const std::vector<Vertex>& vs) {
        return std::all_of(vs.begin(), vs.end(),
                           [&](Vertex v) { return v >= 0 && v < g.n() && is_active(v); });
    };
    ActiveSearch search(*this);

    switch (app.rule) {
    case 1: {
        require(app.v >= 0 && app.v < g.n() && is_active(app.v), "v not active");
        require(app.deleted.size() == 1 && app.moved_to_s.empty(), "rule 1 shape");
        const auto comps = search.components({app.v});
        const auto& x = app.deleted.front();
        require(std::find(comps.begin(), comps.end(), x) != comps.end(), "X is not a component");
        require(is_clique(g, x) && adjacent_to_all(g, app.v, x), "X + v is not a clique");
        require(app.k_delta == Rational(0), "rule 1 keeps k");
        break;
    }
    case 2: {
        require(app.v >= 0 && app.v < g.n() && is_active(app.v), "v not active");
        require(app.moved_to_s == std::vector<Vertex>{app.v}, "rule 2 moves v");
        const auto comps = search.components({app.v});
        std::vector<std::vector<Vertex>> cliques;
        int others = 0;
        for (const auto& c : comps)
            (is_clique(g, c) ? cliques.push_back(c) : void(++others));
        require(!cliques.empty() && others <= 1, "rule 2 condition");
        require(cliques == app.deleted, "rule 2 deletes exactly the clique components");
        require(app.k_delta == Rational(static_cast<long long>(cliques.size())) * lambda_prime_, "rule 2 delta");
        break;
    }
    case 3: {
        require(app.moved_to_s.size() == 3 && all_active(app.moved_to_s), "a, b, c active");
        const Vertex a = app.moved_to_s[0], b = app.moved_to_s[1], c = app.moved_to_s[2];
        require(a != c && g.has_edge(a, b) && g.has_edge(b, c) && !g.has_edge(a, c), "induced path a-b-c");
        require(search.connected_without({a, b, c}), "remainder connected");
        require(app.k_delta == lambda_prime_, "rule 3 delta");
        break;
    }
    case 4: {
        require(app.moved_to_s.size() == 2 && all_active(app.moved_to_s), "x, y active");
        const Vertex x = app.moved_to_s[0], y = app.moved_to_s[1];
        require(x != y && !g.has_edge(x, y), "x, y nonadjacent");
        const auto split = split_for_rule4(g, search.components({x, y}), x, y);
        require(!split.good.empty() && split.bad <= 1, "rule 4 condition");
        require(split.good == app.deleted, "rule 4 deletes exactly the qualifying components");
        require(app.k_delta == lambda_prime_, "rule 4 delta");
        break;
    }
    default:
        throw PreconditionError("unknown rule id");
    }
}

void ReductionState::apply(const RuleApplication& app)
{
    validate(app);
    for (const auto& set : app.deleted)
        for (Vertex v : set) {
            status_[static_cast<std::size_t>(v)] = Status::deleted;
            --active_count_;
        }
    for (Vertex v : app.moved_to_s) {
        status_[static_cast<std::size_t>(v)] = Status::in_s;
        --active_count_;
    }
    RuleApplication done = app;
    done.k_before = k_;
    k_ -= app.k_delta;
    done.k_after = k_;
    trace_.push_back(std::move(done));
    ++version_;
}

// ---------------------------------------------------------------- finders

std::optional<RuleApplication> find_rule1(const ReductionState& state)
{
    const Graph& g = state.graph();
    ActiveSearch search(state);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!state.is_active(v))
            continue;
        for (auto& x : search.components({v}))
            if (adjacent_to_all(g, v, x) && is_clique(g, x)) {
                RuleApplication app = make(state, 1);
                app.v = v;
                app.deleted.push_back(std::move(x));
                app.k_delta = Rational(0);
                return app;
            }
    }
    return std::nullopt;
}

std::optional<RuleApplication> find_rule2(const ReductionState& state)
{
    const Graph& g = state.graph();
    ActiveSearch search(state);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!state.is_active(v))
            continue;
        std::vector<std::vector<Vertex>> cliques;
        int others = 0;
        for (auto& c : search.components({v})) {
            if (is_clique(g, c))
                cliques.push_back(std::move(c));
            else
                ++others;
        }
        if (cliques.empty() || others > 1)
            continue;
        RuleApplication app = make(state, 2);
        app.v = v;
        app.moved_to_s = {v};
        app.k_delta = Rational(static_cast<long long>(cliques.size())) * state.lambda_prime();
        app.deleted = std::move(cliques);
        return app;
    }
    return std::nullopt;
}

std::optional<RuleApplication> find_rule3(const ReductionState& state)
{
    const Graph& g = state.graph();
    ActiveSearch search(state);
    for (Vertex a = 0; a < g.n(); ++a) {
        if (!state.is_active(a))
            continue;
        for (Vertex b : g.neighbors(a)) {
            if (!state.is_active(b))
                continue;
            for (Vertex c : g.neighbors(b)) {
                if (c == a || !state.is_active(c) || g.has_edge(a, c))
                    continue;
                if (!search.connected_without({a, b, c}))
                    continue;
                RuleApplication app = make(state, 3);
                app.moved_to_s = {a, b, c};
                app.k_delta = state.lambda_prime();
                return app;
            }
        }
    }
    return std::nullopt;
}

std::optional<RuleApplication> find_rule4(const ReductionState& state)
{
    const Graph& g = state.graph();
    ActiveSearch search(state);
    bool raw_applicable = false;
    for (Vertex x = 0; x < g.n(); ++x) {
        if (!state.is_active(x))
            continue;
        for (Vertex y = x + 1; y < g.n(); ++y) {
            if (!state.is_active(y) || g.has_edge(x, y))
                continue;
            auto split = split_for_rule4(g, search.components({x, y}), x, y);
            if (split.good.empty() || split.bad > 1)
                continue;
            raw_applicable = true;
            if (split.good.size() != 1 || split.good.front().size() < 2)
                continue;
            const auto& c = split.good.front();
            const auto nx = active_neighbors_outside(state, x, c);
            const auto ny = active_neighbors_outside(state, y, c);
            if (nx.size() != 1 || nx != ny)
                continue;
            const Vertex z = nx.front();
            if (search.connected_without({z}))
                continue;
            RuleApplication app = make(state, 4);
            app.moved_to_s = {x, y};
            app.deleted = std::move(split.good);
            app.z = z;
            app.k_delta = state.lambda_prime();
            return app;
        }
    }
    if (raw_applicable)
        throw InternalError("rule 4 applies but no application has a single common cut-vertex neighbour");
    return std::nullopt;
}

std::optional<RuleApplication> find_next_rule(const ReductionState& state)
{
    if (auto app = find_rule1(state))
        return app;
    if (auto app = find_rule2(state))
        return app;
    if (auto app = find_rule3(state))
        return app;
    return find_rule4(state);
}

// ------------------------------------------------------------------ reduce

ReductionResult reduce(const Graph& g, int k, const Rational& lambda)
{
    if (k < 1)
        throw PreconditionError("k must be at least 1");
    ReductionState state(g, Rational(k), lambda);
    while (state.active_count() >= 2 && state.k() > Rational(0)) {
        auto app = find_next_rule(state);
        if (!app)
            throw InternalError("no reduction rule applies to a connected graph with " +
                                std::to_string(state.active_count()) + " active vertices");
        state.apply(*app);
    }
    ReductionResult out;
    out.outcome = state.k() > Rational(0) ? ReductionResult::Outcome::decomposition
                                          : ReductionResult::Outcome::early_yes;
    out.s = state.s_set();
    out.k_star = state.k();
    out.trace = state.trace();
    return out;
}

Preprocessed decide_or_decompose(const Graph& g, int k, const PropertySpec& spec)
{
    Preprocessed out;
    out.reduction = reduce(g, k, spec.lambda());
    out.yes = out.reduction.early_yes();
    out.k = k;
    if (!out.yes)
        out.s = out.reduction.s;
    return out;
}

}  // namespace apt
