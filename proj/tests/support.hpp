#pragma once

#include "apt/graph.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

namespace apt::test {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p)
{
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

inline int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random spanning tree plus extra pairs with probability p; arcs get a
/// random direction when oriented.
inline Graph random_connected(Rng& rng, int n, double p, bool oriented = false)
{
    std::vector<std::vector<char>> used(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 1; i < n; ++i) {
        const Vertex a = perm[static_cast<std::size_t>(i)];
        const Vertex b = perm[static_cast<std::size_t>(uniform(rng, 0, i - 1))];
        used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = used[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
        pairs.emplace_back(a, b);
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] && coin(rng, p))
                pairs.emplace_back(a, b);
    if (!oriented)
        return Graph::undirected(n, pairs);
    for (auto& [a, b] : pairs)
        if (coin(rng, 0.5))
            std::swap(a, b);
    return Graph::oriented(n, pairs);
}

inline Graph random_tournament(Rng& rng, int n)
{
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            arcs.push_back(coin(rng, 0.5) ? std::pair{a, b} : std::pair{b, a});
    return Graph::oriented(n, arcs);
}

/// Arbitrary digraph: each unordered pair gets nothing, one arc, or both.
inline Digraph random_digraph(Rng& rng, int n, double p_arc, double p_pair)
{
    Digraph d{n, {}};
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (coin(rng, p_pair)) {
                d.arcs.emplace_back(a, b);
                d.arcs.emplace_back(b, a);
            } else if (coin(rng, p_arc)) {
                d.arcs.push_back(coin(rng, 0.5) ? std::pair{a, b} : std::pair{b, a});
            }
        }
    return d;
}

/// Disjoint union of random digraphs, 1..parts components.
inline Digraph random_multi_component_digraph(Rng& rng, int n, int parts)
{
    Digraph d{n, {}};
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        comp[static_cast<std::size_t>(v)] = v < parts ? v : uniform(rng, 0, parts - 1);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (comp[static_cast<std::size_t>(a)] != comp[static_cast<std::size_t>(b)])
                continue;
            const int r = uniform(rng, 0, 9);
            if (r < 2) {
                d.arcs.emplace_back(a, b);
                d.arcs.emplace_back(b, a);
            } else if (r < 7) {
                d.arcs.push_back(coin(rng, 0.5) ? std::pair{a, b} : std::pair{b, a});
            }
        }
    return d;
}

}  // namespace apt::test
