#include "ibds/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ibds/error.hpp"

namespace ibds {

ChosenSet::ChosenSet(std::vector<VertexId> members) : members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool ChosenSet::contains(VertexId v) const noexcept
{
    return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<char> ChosenSet::mask(std::size_t n) const
{
    std::vector<char> m(n, 0);
    for (VertexId v : members_) {
        if (v >= n)
            throw InputError("chosen vertex " + std::to_string(v) + " outside graph of " +
                             std::to_string(n) + " vertices");
        m[v] = 1;
    }
    return m;
}

namespace {

void normalize_groups(std::vector<VertexGroup>& groups, std::size_t n, const char* kind)
{
    std::sort(groups.begin(), groups.end(),
              [](const VertexGroup& a, const VertexGroup& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < groups.size(); ++i) {
        auto& grp = groups[i];
        if (i > 0 && groups[i - 1].id == grp.id)
            throw InputError(std::string(kind) + " " + std::to_string(grp.id) + " declared twice");
        if (grp.members.empty())
            throw InputError(std::string(kind) + " " + std::to_string(grp.id) + " is empty");
        std::sort(grp.members.begin(), grp.members.end());
        grp.members.erase(std::unique(grp.members.begin(), grp.members.end()), grp.members.end());
        for (VertexId v : grp.members)
            if (v >= n)
                throw InputError(std::string(kind) + " " + std::to_string(grp.id) +
                                 " references vertex " + std::to_string(v) + " out of range");
    }
}

} // namespace

ContentionGraph ContentionGraph::build(std::size_t n, std::vector<Edge> edges,
                                       std::vector<VertexGroup> families,
                                       std::vector<VertexGroup> superfamilies)
{
    for (auto& e : edges) {
        if (e.first >= n || e.second >= n)
            throw InputError("edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) +
                             ") references a vertex out of range");
        if (e.first == e.second)
            throw InputError("self-loop on vertex " + std::to_string(e.first));
        if (e.first > e.second)
            std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        throw InputError("duplicate edge (" + std::to_string(dup->first) + ", " +
                         std::to_string(dup->second) + ")");

    ContentionGraph g;
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v)
        g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.neighbors_.resize(2 * edges.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted, so each list comes out sorted without a second pass
    // for the u-side; the v-side entries arrive in increasing u as well.
    for (const auto& [u, v] : edges) {
        g.neighbors_[fill[u]++] = v;
        g.neighbors_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v)
        std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));

    normalize_groups(families, n, "family");
    normalize_groups(superfamilies, n, "superfamily");

    g.family_.assign(families.empty() ? 0 : n, kNoFamily);
    for (const auto& fam : families) {
        for (VertexId v : fam.members) {
            if (g.family_[v] != kNoFamily)
                throw InputError("vertex " + std::to_string(v) + " belongs to families " +
                                 std::to_string(g.family_[v]) + " and " + std::to_string(fam.id));
            g.family_[v] = fam.id;
        }
    }
    g.families_ = std::move(families);
    g.superfamilies_ = std::move(superfamilies);

    auto check_clique = [&g](const VertexGroup& grp, const char* kind) {
        for (std::size_t i = 0; i < grp.members.size(); ++i)
            for (std::size_t j = i + 1; j < grp.members.size(); ++j)
                if (!g.adjacent(grp.members[i], grp.members[j]))
                    throw InputError(std::string(kind) + " " + std::to_string(grp.id) +
                                     " is not a clique");
    };
    for (const auto& fam : g.families_)
        check_clique(fam, "family");
    for (const auto& sf : g.superfamilies_)
        check_clique(sf, "superfamily");

    if (!g.superfamilies_.empty()) {
        std::vector<std::size_t> count(n, 0);
        for (const auto& sf : g.superfamilies_)
            for (VertexId v : sf.members)
                ++count[v];
        g.sf_offsets_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v)
            g.sf_offsets_[v + 1] = g.sf_offsets_[v] + count[v];
        g.sf_index_.resize(g.sf_offsets_[n]);
        std::vector<std::size_t> pos(g.sf_offsets_.begin(), g.sf_offsets_.end() - 1);
        for (std::uint32_t i = 0; i < g.superfamilies_.size(); ++i)
            for (VertexId v : g.superfamilies_[i].members)
                g.sf_index_[pos[v]++] = i;

        for (const auto& fam : g.families_) {
            for (VertexId v : fam.members) {
                for (std::uint32_t si : g.superfamily_indices(v)) {
                    const auto& sf = g.superfamilies_[si].members;
                    if (!std::includes(sf.begin(), sf.end(), fam.members.begin(), fam.members.end()))
                        throw InputError("family " + std::to_string(fam.id) +
                                         " is not contained in superfamily " +
                                         std::to_string(g.superfamilies_[si].id));
                }
            }
        }
    }
    return g;
}

std::span<const VertexId> ContentionGraph::neighbors(VertexId v) const
{
    if (v >= vertex_count())
        throw InputError("vertex " + std::to_string(v) + " out of range");
    return std::span<const VertexId>(neighbors_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool ContentionGraph::adjacent(VertexId u, VertexId v) const
{
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::int64_t ContentionGraph::family_of(VertexId v) const
{
    if (v >= vertex_count())
        throw InputError("vertex " + std::to_string(v) + " out of range");
    return family_.empty() ? kNoFamily : family_[v];
}

std::span<const std::uint32_t> ContentionGraph::superfamily_indices(VertexId v) const
{
    if (v >= vertex_count())
        throw InputError("vertex " + std::to_string(v) + " out of range");
    if (sf_offsets_.empty())
        return {};
    return std::span<const std::uint32_t>(sf_index_).subspan(sf_offsets_[v],
                                                             sf_offsets_[v + 1] - sf_offsets_[v]);
}

std::vector<VertexId> ContentionGraph::superfamily_members(VertexId v) const
{
    std::vector<VertexId> out;
    for (std::uint32_t si : superfamily_indices(v))
        for (VertexId u : superfamilies_[si].members)
            if (u != v)
                out.push_back(u);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ContentionGraph::same_superfamily(VertexId u, VertexId v) const
{
    auto a = superfamily_indices(u);
    auto b = superfamily_indices(v);
    for (std::uint32_t x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            return true;
    return false;
}

std::size_t ContentionGraph::max_family_size() const noexcept
{
    std::size_t best = 0;
    for (const auto& f : families_)
        best = std::max(best, f.members.size());
    return best;
}

std::size_t ContentionGraph::max_degree() const noexcept
{
    std::size_t best = 0;
    for (std::size_t v = 0; v + 1 < offsets_.size(); ++v)
        best = std::max(best, offsets_[v + 1] - offsets_[v]);
    return best;
}

std::vector<Edge> ContentionGraph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
        for (VertexId v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

std::size_t degree(const ContentionGraph& g, VertexId v)
{
    return g.neighbors(v).size();
}

std::size_t induced_degree(const ContentionGraph& g, const ChosenSet& s, VertexId v)
{
    std::size_t count = 0;
    for (VertexId u : g.neighbors(v))
        if (s.contains(u))
            ++count;
    return count;
}

// --- text format -----------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
std::optional<T> to_int(std::string_view tok)
{
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        return std::nullopt;
    return value;
}

struct PendingGroup {
    VertexGroup group;
    std::size_t line;
};

} // namespace

ContentionGraph parse_graph(std::string_view text)
{
    std::optional<std::pair<std::size_t, std::size_t>> header;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;
    std::vector<PendingGroup> families, superfamilies;
    std::size_t last_line = 0;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++lineno;

        auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#')
            continue;
        last_line = lineno;

        if (!header) {
            if (toks.size() != 2)
                throw ParseError(lineno, "expected header '<n> <m>'");
            auto n = to_int<std::size_t>(toks[0]);
            auto m = to_int<std::size_t>(toks[1]);
            if (!n || !m)
                throw ParseError(lineno, "malformed header");
            header.emplace(*n, *m);
            continue;
        }

        const auto n = header->first;
        if (toks[0] == "family" || toks[0] == "superfamily") {
            const bool is_family = toks[0] == "family";
            if (toks.size() < 4 || toks[2] != ":")
                throw ParseError(lineno, std::string("expected '") + std::string(toks[0]) +
                                             " <id> : <v1> ...'");
            auto id = to_int<std::int64_t>(toks[1]);
            if (!id)
                throw ParseError(lineno, "malformed group id");
            PendingGroup pg{{*id, {}}, lineno};
            for (std::size_t i = 3; i < toks.size(); ++i) {
                auto v = to_int<VertexId>(toks[i]);
                if (!v || *v >= n)
                    throw ParseError(lineno, "bad vertex '" + std::string(toks[i]) + "'");
                pg.group.members.push_back(*v);
            }
            (is_family ? families : superfamilies).push_back(std::move(pg));
            continue;
        }

        if (toks.size() != 2)
            throw ParseError(lineno, "expected edge '<u> <v>'");
        auto u = to_int<VertexId>(toks[0]);
        auto v = to_int<VertexId>(toks[1]);
        if (!u || !v)
            throw ParseError(lineno, "malformed edge");
        if (*u >= n || *v >= n)
            throw ParseError(lineno, "edge endpoint out of range");
        if (*u == *v)
            throw ParseError(lineno, "self-loop");
        if (*u > *v)
            throw ParseError(lineno, "asymmetric edge declaration (expected u < v)");
        edges.emplace_back(*u, *v);
        edge_lines.push_back(lineno);
    }

    if (!header)
        throw ParseError(lineno, "missing header");
    if (edges.size() != header->second)
        throw ParseError(last_line, "header declares " + std::to_string(header->second) +
                                        " edges but " + std::to_string(edges.size()) + " were given");

    {
        std::vector<std::size_t> order(edges.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
        for (std::size_t i = 1; i < order.size(); ++i)
            if (edges[order[i]] == edges[order[i - 1]])
                throw ParseError(edge_lines[order[i]], "duplicate edge");
    }

    // Re-run the structural checks group by group so errors carry the line
    // of the offending declaration.
    std::vector<VertexGroup> fam_groups, sf_groups;
    for (const auto& pg : families)
        fam_groups.push_back(pg.group);
    for (const auto& pg : superfamilies)
        sf_groups.push_back(pg.group);

    auto bare = ContentionGraph::build(header->first, edges);
    auto clique_check = [&bare](const PendingGroup& pg, const char* kind) {
        const auto& mem = pg.group.members;
        for (std::size_t i = 0; i < mem.size(); ++i)
            for (std::size_t j = i + 1; j < mem.size(); ++j)
                if (mem[i] != mem[j] && !bare.adjacent(mem[i], mem[j]))
                    throw ParseError(pg.line, std::string(kind) + " " + std::to_string(pg.group.id) +
                                                  " is not a clique");
    };
    for (const auto& pg : families)
        clique_check(pg, "family");
    for (const auto& pg : superfamilies)
        clique_check(pg, "superfamily");

    try {
        return ContentionGraph::build(header->first, std::move(edges), std::move(fam_groups),
                                      std::move(sf_groups));
    } catch (const InputError& e) {
        throw ParseError(last_line, e.what());
    }
}

std::string serialize_graph(const ContentionGraph& g)
{
    std::ostringstream os;
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges())
        os << u << ' ' << v << '\n';
    auto emit = [&os](const char* kind, std::span<const VertexGroup> groups) {
        for (const auto& grp : groups) {
            os << kind << ' ' << grp.id << " :";
            for (VertexId v : grp.members)
                os << ' ' << v;
            os << '\n';
        }
    };
    emit("family", g.families());
    emit("superfamily", g.superfamilies());
    return os.str();
}

ContentionGraph load_graph_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

} // namespace ibds
