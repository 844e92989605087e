#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ibds/graph.hpp"

namespace ibds {

using NodeId = std::uint32_t;

/// Physical radio node in the unit square.
struct GeoNode {
    NodeId id = 0;
    double x = 0.0;
    double y = 0.0;

    bool operator==(const GeoNode&) const = default;
};

using Link = std::pair<NodeId, NodeId>; // first < second

struct GeoNetwork {
    std::vector<GeoNode> nodes;
    double tx_radius = 0.0;
    double interference_radius = 0.0;
    std::vector<Link> links; // sorted

    bool operator==(const GeoNetwork&) const = default;
};

/// Identity of one contention-graph vertex in terms of the physical network.
struct StreamLabel {
    std::uint32_t link_id = 0; // also the family id
    std::uint32_t stream_index = 0;
    Link endpoints;

    bool operator==(const StreamLabel&) const = default;
};

struct StreamGraph {
    ContentionGraph graph;
    std::vector<StreamLabel> labels; // indexed by VertexId
};

/// n points drawn independently and uniformly from [0,1]^2.
std::vector<GeoNode> generate_nodes(std::size_t n, std::uint64_t seed);

/// Connectivity-threshold radius sqrt(2 ln n / (pi n)) for n uniform points.
double default_tx_radius(std::size_t n);

/// Unit-disk graph: (u,v) with squared distance <= tx_radius^2.
std::vector<Link> build_udg(std::span<const GeoNode> nodes, double tx_radius);

/// Relative neighbourhood pruning. Drops (u,v) when some w adjacent to both
/// in `udg_edges` is strictly closer to each of u and v than they are to
/// each other. Output is a subset of the input.
std::vector<Link> rng_prune(std::span<const GeoNode> nodes, std::span<const Link> udg_edges);

/// generate_nodes + build_udg + rng_prune. Radii default to
/// default_tx_radius(n); interference radius defaults to the tx radius.
GeoNetwork make_network(std::size_t n, std::uint64_t seed, std::optional<double> tx_radius = {},
                        std::optional<double> interference_radius = {});

/// Expands each link into a q-clique of streams. Streams of distinct links
/// conflict when the links share a node or some endpoint pair lies within
/// the interference radius. One superfamily per physical node with links.
StreamGraph build_stream_graph(const GeoNetwork& network, std::uint32_t q);

/// Links interfere under the protocol model used by build_stream_graph.
bool links_interfere(const GeoNetwork& network, const Link& a, const Link& b);

} // namespace ibds
