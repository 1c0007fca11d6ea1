#include "apt/error.hpp"
#include "apt/oracle.hpp"
#include "apt/reduction.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace apt;

namespace {

ReductionState fresh(const Graph& g, Rational k = 1, Rational lambda = Rational(1, 2))
{
    return ReductionState(g, k, lambda);
}

}  // namespace

TEST_CASE("rule 1")
{
    auto k3 = find_rule1(fresh(Graph::complete(3)));
    REQUIRE(k3);
    CHECK(k3->v == 0);
    CHECK(k3->deleted == std::vector<std::vector<Vertex>>{{1, 2}});

    auto p3 = find_rule1(fresh(Graph::path(3)));
    REQUIRE(p3);
    CHECK(p3->v == 1);
    CHECK(p3->deleted == std::vector<std::vector<Vertex>>{{0}});

    CHECK_FALSE(find_rule1(fresh(Graph::cycle(4))));

    auto st = fresh(Graph::complete(3));
    st.apply(*k3);
    CHECK(st.active_count() == 1);
    CHECK(st.k() == Rational(1));
    CHECK(st.s_set().empty());
}

TEST_CASE("rule 2")
{
    // v = 0 sees two corners of the triangle {1,2,3}; the other side 0-4-5-6-0 is a 4-cycle
    const Graph g = Graph::undirected(7, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 0}});
    CHECK_FALSE(find_rule1(fresh(g)));
    auto r = find_rule2(fresh(g));
    REQUIRE(r);
    CHECK(r->v == 0);
    CHECK(r->deleted == std::vector<std::vector<Vertex>>{{1, 2, 3}});
    CHECK(r->k_delta == Rational(1, 4));

    // two clique sides and one non-clique: d = 2
    const Graph h = Graph::undirected(10, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {4, 5}, {4, 6}, {5, 6},
                                          {0, 7}, {7, 8}, {8, 9}, {9, 0}});
    CHECK_FALSE(find_rule1(fresh(h)));
    auto st = fresh(h, 3);
    auto r2 = find_rule2(st);
    REQUIRE(r2);
    CHECK(r2->deleted.size() == 2);
    st.apply(*r2);
    CHECK(st.k() == Rational(5, 2));
    CHECK(st.s_set() == std::vector<Vertex>{0});

    CHECK_FALSE(find_next_rule(fresh(Graph::complete(3)))->rule != 1);
    const Graph star = Graph::undirected(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(find_next_rule(fresh(star))->rule == 1);
}

TEST_CASE("rule 3")
{
    auto c5 = find_rule3(fresh(Graph::cycle(5)));
    REQUIRE(c5);
    CHECK(c5->moved_to_s == std::vector<Vertex>{0, 1, 2});
    auto c4 = find_rule3(fresh(Graph::cycle(4)));
    REQUIRE(c4);
    CHECK(c4->moved_to_s == std::vector<Vertex>{0, 1, 2});
    CHECK_FALSE(find_rule3(fresh(Graph::complete(4))));
}

TEST_CASE("rule 4")
{
    // x=0 y=1 u=2 v=3 z=4 w=5
    const Graph g = Graph::undirected(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 4}, {4, 5}});
    auto r = find_rule4(fresh(g, 1, Rational(2, 3)));
    REQUIRE(r);
    CHECK(r->moved_to_s == std::vector<Vertex>{0, 1});
    CHECK(r->deleted == std::vector<std::vector<Vertex>>{{2, 3}});
    CHECK(r->z == 4);
    CHECK(r->k_delta == Rational(1, 6));
    CHECK(r->params(1) == "x=1,y=2,C={3,4},z=5");
    auto st = fresh(g, 1, Rational(2, 3));
    st.apply(*r);
    CHECK(st.k() == Rational(5, 6));
    CHECK(st.active_vertices() == std::vector<Vertex>{4, 5});
    CHECK(find_next_rule(fresh(Graph::cycle(5)))->rule == 3);

    // two copies of the gadget above sharing z: rules 1-3 do not apply
    const Graph twin = Graph::undirected(9, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
                                             {0, 5}, {0, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}});
    auto twin_state = fresh(twin, 5);
    const auto next = find_next_rule(twin_state);
    REQUIRE(next);
    CHECK(next->rule == 4);
    CHECK(next->params(1) == "x=2,y=3,C={4,5},z=1");
    twin_state.apply(*next);
    CHECK(twin_state.trace().back().trace_line(1) == "rule=4 params=x=2,y=3,C={4,5},z=1 k_before=5 k_after=19/4");
}

TEST_CASE("stale applications are rejected")
{
    auto st = fresh(Graph::cycle(5), 2);
    const auto app = *find_next_rule(st);
    st.apply(app);
    CHECK_THROWS_AS(st.apply(app), PreconditionError);
    auto bogus = *find_next_rule(st);
    bogus.v = 0;
    bogus.version = st.version();
    CHECK_THROWS_AS(st.apply(bogus), PreconditionError);
}

TEST_CASE("reduce examples")
{
    const auto k3 = reduce(Graph::complete(3), 1, Rational(1, 2));
    CHECK_FALSE(k3.early_yes());
    CHECK(k3.s.empty());
    CHECK(k3.k_star == Rational(1));

    const auto c5 = reduce(Graph::cycle(5), 1, Rational(1, 2));
    CHECK(c5.s == std::vector<Vertex>{0, 1, 2});
    CHECK(c5.k_star == Rational(3, 4));
    REQUIRE(c5.trace.size() == 2);
    CHECK(c5.trace[0].rule == 3);
    CHECK(c5.trace[1].rule == 1);
    CHECK(c5.trace[0].trace_line(1) == "rule=3 params=a=1,b=2,c=3 k_before=1 k_after=3/4");

    const auto p = reduce(Graph::path(100), 1, Rational(1, 2));
    CHECK_FALSE(p.early_yes());
    CHECK(p.s.empty());
    CHECK(p.k_star == Rational(1));
    for (const auto& app : p.trace)
        CHECK(app.rule == 1);

    const auto k1 = reduce(Graph(1, {}), 1, Rational(1, 2));
    CHECK(k1.trace.empty());
    CHECK(k1.k_star == Rational(1));

    CHECK_THROWS_AS(reduce(Graph::path(3), 0, Rational(1, 2)), PreconditionError);
    CHECK_THROWS_AS(reduce(Graph::undirected(3, {{0, 1}}), 1, Rational(1, 2)), PreconditionError);
    CHECK_THROWS_AS(reduce(Graph::path(3), 1, Rational(1)), PreconditionError);
}

TEST_CASE("trace invariants on random graphs")
{
    test::Rng rng(99);
    int early = 0;
    for (int t = 0; t < 1500; ++t) {
        const int n = test::uniform(rng, 1, 14);
        const Graph g = test::random_connected(rng, n, test::uniform(rng, 0, 10) / 20.0, t % 3 == 0);
        const Rational lambda = t % 2 ? Rational(1, 2) : Rational(2, 3);
        const int k = test::uniform(rng, 1, 4);
        ReductionState st(g, Rational(k), lambda);
        while (st.active_count() >= 2 && st.k() > Rational(0)) {
            const auto app = find_next_rule(st);
            REQUIRE(app);
            const int before = st.active_count();
            const auto s_before = st.s_set().size();
            const Rational k_before = st.k();
            st.apply(*app);
            REQUIRE(st.active_count() < before);
            REQUIRE(is_connected(st.remainder()));
            REQUIRE(st.k() <= k_before);
            const auto moved = static_cast<long long>(st.s_set().size() - s_before);
            REQUIRE(Rational(moved) <= Rational(3) * (k_before - st.k()) / st.lambda_prime());
            switch (app->rule) {
            case 1: REQUIRE(app->k_delta == Rational(0)); break;
            case 2: REQUIRE(app->k_delta == Rational(static_cast<std::int64_t>(app->deleted.size())) * st.lambda_prime()); break;
            default: REQUIRE(app->k_delta == st.lambda_prime());
            }
        }
        const auto r = reduce(g, k, lambda);
        REQUIRE(r.trace.size() == st.trace().size());
        early += r.early_yes() ? 1 : 0;
        if (!r.early_yes()) {
            REQUIRE(is_forest_of_cliques(delete_vertices(g, r.s)));
            REQUIRE(Rational(static_cast<std::int64_t>(r.s.size())) <= Rational(3) * (Rational(k) - r.k_star) / st.lambda_prime());
            if (r.k_star > Rational(0))
                REQUIRE(Rational(static_cast<std::int64_t>(r.s.size())) < Rational(6 * k) / (Rational(1) - lambda));
        }
    }
    CHECK(early > 0);
}

TEST_CASE("single rule applications are safe")
{
    // Child instance tight at k' = val - pt; the parent must reach k' + delta.
    test::Rng rng(1234);
    int checked = 0;
    while (checked < 300) {
        const Graph g = test::random_connected(rng, test::uniform(rng, 3, 8), test::uniform(rng, 2, 12) / 20.0);
        const bool cut = test::coin(rng, 0.5);
        const Graph target = Graph::complete(cut ? 2 : 3);
        const Rational lambda = hom_lambda(target);
        ReductionState st(g, Rational(100), lambda);
        while (st.active_count() >= 2) {
            const auto app = find_next_rule(st);
            REQUIRE(app);
            const Graph parent = st.remainder();
            st.apply(*app);
            const Graph child = st.remainder();
            const Rational k_child = Rational(exact_max_hom(child, target).value) - pt_bound(child, lambda);
            const Rational needed = pt_bound(parent, lambda) + k_child + app->k_delta;
            REQUIRE(Rational(exact_max_hom(parent, target).value) >= needed);
            ++checked;
        }
    }
}
