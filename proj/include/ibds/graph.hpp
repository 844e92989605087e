#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ibds {

using VertexId = std::uint32_t;

using Edge = std::pair<VertexId, VertexId>;

/// A labelled vertex group as it appears in the graph file
/// (`family <id> : ...` or `superfamily <id> : ...`).
struct VertexGroup {
    std::int64_t id = 0;
    std::vector<VertexId> members; // sorted, unique

    bool operator==(const VertexGroup&) const = default;
};

/// Selected vertex set V' of an induced subgraph. Members are sorted and unique.
class ChosenSet {
public:
    ChosenSet() = default;
    explicit ChosenSet(std::vector<VertexId> members);

    std::span<const VertexId> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(VertexId v) const noexcept;

    /// Dense membership mask over [0, n).
    std::vector<char> mask(std::size_t n) const;

    bool operator==(const ChosenSet&) const = default;

private:
    std::vector<VertexId> members_;
};

/// Undirected stream contention graph. Immutable once built.
///
/// Families (streams of one MIMO link) must be cliques. Superfamilies
/// (streams sharing a physical node) must also be cliques and every family
/// member of a vertex must appear in each superfamily containing it. A vertex
/// belongs to at most one family but may sit in several superfamilies.
class ContentionGraph {
public:
    static constexpr std::int64_t kNoFamily = -1;

    ContentionGraph() = default;

    /// Validates and builds. Throws InputError on self-loops, duplicate
    /// edges, out-of-range ids or metadata that breaks the clique rules.
    static ContentionGraph build(std::size_t n, std::vector<Edge> edges,
                                 std::vector<VertexGroup> families = {},
                                 std::vector<VertexGroup> superfamilies = {});

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    std::span<const VertexId> neighbors(VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const;

    bool has_families() const noexcept { return !families_.empty(); }
    bool has_superfamilies() const noexcept { return !superfamilies_.empty(); }

    /// Family label of v, or kNoFamily.
    std::int64_t family_of(VertexId v) const;
    std::span<const VertexGroup> families() const noexcept { return families_; }
    std::span<const VertexGroup> superfamilies() const noexcept { return superfamilies_; }

    /// Indices into superfamilies() of the groups containing v.
    std::span<const std::uint32_t> superfamily_indices(VertexId v) const;

    /// Every vertex sharing a superfamily with v (v excluded), sorted.
    std::vector<VertexId> superfamily_members(VertexId v) const;
    bool same_superfamily(VertexId u, VertexId v) const;

    std::size_t max_family_size() const noexcept;
    std::size_t max_degree() const noexcept;

    /// Edge list with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const ContentionGraph&) const = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> neighbors_;
    std::vector<std::int64_t> family_;
    std::vector<VertexGroup> families_;
    std::vector<VertexGroup> superfamilies_;
    std::vector<std::size_t> sf_offsets_;
    std::vector<std::uint32_t> sf_index_;
};

std::size_t degree(const ContentionGraph& g, VertexId v);

/// Number of neighbours of v inside s.
std::size_t induced_degree(const ContentionGraph& g, const ChosenSet& s, VertexId v);

ContentionGraph parse_graph(std::string_view text);
std::string serialize_graph(const ContentionGraph& g);

ContentionGraph load_graph_file(const std::string& path);

} // namespace ibds
