#include "ibds/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ibds/error.hpp"
#include "ibds/simd/kernels.hpp"

namespace ibds {

namespace {

struct Coords {
    std::vector<double> xs;
    std::vector<double> ys;

    explicit Coords(std::span<const GeoNode> nodes)
    {
        xs.reserve(nodes.size());
        ys.reserve(nodes.size());
        for (const auto& nd : nodes) {
            xs.push_back(nd.x);
            ys.push_back(nd.y);
        }
    }
};

void check_dense_ids(std::span<const GeoNode> nodes)
{
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id != i)
            throw InputError("node ids must be dense and ordered; found id " +
                             std::to_string(nodes[i].id) + " at position " + std::to_string(i));
}

simd::Point2 at(std::span<const GeoNode> nodes, NodeId i)
{
    return {nodes[i].x, nodes[i].y};
}

std::vector<std::vector<NodeId>> adjacency_of(std::size_t n, std::span<const Link> links)
{
    std::vector<std::vector<NodeId>> adj(n);
    for (const auto& [u, v] : links) {
        if (u >= n || v >= n || u == v)
            throw InputError("link (" + std::to_string(u) + ", " + std::to_string(v) + ") is invalid");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

} // namespace

std::vector<GeoNode> generate_nodes(std::size_t n, std::uint64_t seed)
{
    if (n == 0)
        throw InputError("node count must be at least 1");
    std::mt19937_64 rng(seed);
    // 53 random mantissa bits; avoids the implementation-defined
    // uniform_real_distribution so coordinates are portable.
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<GeoNode> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].id = static_cast<NodeId>(i);
        nodes[i].x = unit();
        nodes[i].y = unit();
    }
    return nodes;
}

double default_tx_radius(std::size_t n)
{
    if (n < 2)
        return 1.0;
    const double nn = static_cast<double>(n);
    return std::sqrt(2.0 * std::log(nn) / (std::numbers::pi * nn));
}

std::vector<Link> build_udg(std::span<const GeoNode> nodes, double tx_radius)
{
    if (!(tx_radius > 0.0))
        throw InputError("transmission radius must be positive");
    check_dense_ids(nodes);
    const Coords c(nodes);
    const auto& k = simd::active_kernels();
    const double r2 = tx_radius * tx_radius;
    std::vector<std::uint8_t> hit(nodes.size());
    std::vector<Link> edges;
    for (NodeId i = 0; i < nodes.size(); ++i) {
        const std::size_t rest = nodes.size() - i - 1;
        k.within_radius(std::span(c.xs).subspan(i + 1), std::span(c.ys).subspan(i + 1), at(nodes, i), r2,
                        std::span(hit).first(rest));
        for (std::size_t j = 0; j < rest; ++j)
            if (hit[j])
                edges.emplace_back(i, static_cast<NodeId>(i + 1 + j));
    }
    return edges;
}

std::vector<Link> rng_prune(std::span<const GeoNode> nodes, std::span<const Link> udg_edges)
{
    check_dense_ids(nodes);
    const auto adj = adjacency_of(nodes.size(), udg_edges);
    const auto& k = simd::active_kernels();

    std::vector<Link> kept;
    std::vector<NodeId> common;
    std::vector<double> wx, wy;
    for (Link e : udg_edges) {
        if (e.first > e.second)
            std::swap(e.first, e.second);
        const auto& [u, v] = e;
        common.clear();
        std::set_intersection(adj[u].begin(), adj[u].end(), adj[v].begin(), adj[v].end(),
                              std::back_inserter(common));
        wx.clear();
        wy.clear();
        for (NodeId w : common) {
            wx.push_back(nodes[w].x);
            wy.push_back(nodes[w].y);
        }
        const double d2 = simd::distance_sq(at(nodes, u), at(nodes, v));
        if (!k.lune_witness(wx, wy, at(nodes, u), at(nodes, v), d2))
            kept.push_back(e);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return kept;
}

GeoNetwork make_network(std::size_t n, std::uint64_t seed, std::optional<double> tx_radius,
                        std::optional<double> interference_radius)
{
    GeoNetwork net;
    net.nodes = generate_nodes(n, seed);
    net.tx_radius = tx_radius.value_or(default_tx_radius(n));
    net.interference_radius = interference_radius.value_or(net.tx_radius);
    if (net.interference_radius < net.tx_radius)
        throw InputError("interference radius must be at least the transmission radius");
    net.links = rng_prune(net.nodes, build_udg(net.nodes, net.tx_radius));
    return net;
}

bool links_interfere(const GeoNetwork& network, const Link& a, const Link& b)
{
    const double r2 = network.interference_radius * network.interference_radius;
    for (NodeId p : {a.first, a.second})
        for (NodeId q : {b.first, b.second})
            if (p == q || simd::distance_sq(at(network.nodes, p), at(network.nodes, q)) <= r2)
                return true;
    return false;
}

StreamGraph build_stream_graph(const GeoNetwork& network, std::uint32_t q)
{
    if (q == 0)
        throw InputError("streams per link must be at least 1");
    const auto& nodes = network.nodes;
    check_dense_ids(nodes);
    std::vector<Link> links = network.links;
    for (auto& l : links)
        if (l.first > l.second)
            std::swap(l.first, l.second);
    std::sort(links.begin(), links.end());
    if (std::adjacent_find(links.begin(), links.end()) != links.end())
        throw InputError("duplicate link in network");
    (void)adjacency_of(nodes.size(), links);

    // Physical nodes within interference range of each node (itself included).
    const Coords c(nodes);
    const auto& k = simd::active_kernels();
    const double r2 = network.interference_radius * network.interference_radius;
    std::vector<std::vector<NodeId>> near(nodes.size());
    std::vector<std::uint8_t> hit(nodes.size());
    for (NodeId i = 0; i < nodes.size(); ++i) {
        k.within_radius(c.xs, c.ys, at(nodes, i), r2, hit);
        for (NodeId j = 0; j < nodes.size(); ++j)
            if (hit[j] || j == i)
                near[i].push_back(j);
    }

    std::vector<std::vector<std::uint32_t>> incident(nodes.size());
    for (std::uint32_t l = 0; l < links.size(); ++l) {
        incident[links[l].first].push_back(l);
        incident[links[l].second].push_back(l);
    }

    StreamGraph out;
    const std::size_t n = links.size() * q;
    out.labels.resize(n);
    std::vector<Edge> edges;
    std::vector<VertexGroup> families;
    auto stream = [q](std::uint32_t link, std::uint32_t s) { return static_cast<VertexId>(link * q + s); };

    std::vector<std::uint32_t> partners;
    for (std::uint32_t a = 0; a < links.size(); ++a) {
        VertexGroup fam{a, {}};
        for (std::uint32_t s = 0; s < q; ++s) {
            out.labels[stream(a, s)] = {a, s, links[a]};
            fam.members.push_back(stream(a, s));
            for (std::uint32_t t = s + 1; t < q; ++t)
                edges.emplace_back(stream(a, s), stream(a, t));
        }
        families.push_back(std::move(fam));

        partners.clear();
        for (NodeId end : {links[a].first, links[a].second})
            for (NodeId p : near[end])
                for (std::uint32_t b : incident[p])
                    if (b > a)
                        partners.push_back(b);
        std::sort(partners.begin(), partners.end());
        partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
        for (std::uint32_t b : partners)
            for (std::uint32_t s = 0; s < q; ++s)
                for (std::uint32_t t = 0; t < q; ++t)
                    edges.emplace_back(stream(a, s), stream(b, t));
    }

    std::vector<VertexGroup> superfamilies;
    for (NodeId p = 0; p < nodes.size(); ++p) {
        if (incident[p].empty())
            continue;
        VertexGroup sf{p, {}};
        for (std::uint32_t l : incident[p])
            for (std::uint32_t s = 0; s < q; ++s)
                sf.members.push_back(stream(l, s));
        superfamilies.push_back(std::move(sf));
    }

    out.graph = ContentionGraph::build(n, std::move(edges), std::move(families), std::move(superfamilies));
    return out;
}

} // namespace ibds
