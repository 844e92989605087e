#pragma once

// Graph builders and seeded generators shared by the unit and acceptance
// suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ibds/graph.hpp"

namespace ibds::testing {

inline ContentionGraph complete_graph(std::size_t m)
{
    std::vector<Edge> e;
    for (VertexId u = 0; u < m; ++u)
        for (VertexId v = u + 1; v < m; ++v)
            e.emplace_back(u, v);
    return ContentionGraph::build(m, std::move(e));
}

inline ContentionGraph path_graph(std::size_t m)
{
    std::vector<Edge> e;
    for (VertexId v = 1; v < m; ++v)
        e.emplace_back(v - 1, v);
    return ContentionGraph::build(m, std::move(e));
}

inline ContentionGraph cycle_graph(std::size_t m)
{
    std::vector<Edge> e;
    for (VertexId v = 0; v < m; ++v)
        e.emplace_back(v, static_cast<VertexId>((v + 1) % m));
    return ContentionGraph::build(m, std::move(e));
}

inline ContentionGraph star_graph(std::size_t leaves)
{
    std::vector<Edge> e;
    for (VertexId v = 1; v <= leaves; ++v)
        e.emplace_back(0, v);
    return ContentionGraph::build(leaves + 1, std::move(e));
}

/// G(n, p) with a seeded engine.
inline ContentionGraph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (coin(rng))
                e.emplace_back(u, v);
    return ContentionGraph::build(n, std::move(e));
}

/// Random graph with every degree at most max_degree: random pairs are
/// proposed and accepted while both endpoints have spare degree.
inline ContentionGraph random_bounded_degree_graph(std::size_t n, std::size_t max_degree, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::vector<std::vector<VertexId>> adj(n);
    std::vector<Edge> e;
    const std::size_t attempts = n * max_degree;
    for (std::size_t i = 0; i < attempts; ++i) {
        VertexId u = pick(rng), v = pick(rng);
        if (u == v || adj[u].size() >= max_degree || adj[v].size() >= max_degree)
            continue;
        if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end())
            continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
        e.emplace_back(std::min(u, v), std::max(u, v));
    }
    return ContentionGraph::build(n, std::move(e));
}

} // namespace ibds::testing
