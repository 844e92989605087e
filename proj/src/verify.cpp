#include "ibds/verify.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "ibds/error.hpp"

namespace ibds {

std::string_view to_string(ViolationKind k) noexcept
{
    switch (k) {
    case ViolationKind::degree_exceeded: return "degree_exceeded";
    case ViolationKind::not_maximal: return "not_maximal";
    case ViolationKind::superfamily_mix: return "superfamily_mix";
    case ViolationKind::family_cap_exceeded: return "family_cap_exceeded";
    }
    return "?";
}

std::string Violation::describe() const
{
    std::string s(to_string(kind));
    s += " at vertex " + std::to_string(witness);
    if (other)
        s += " and " + std::to_string(*other);
    return s;
}

namespace {

std::size_t count_in(const ContentionGraph& g, const std::vector<char>& in, VertexId v)
{
    std::size_t c = 0;
    for (VertexId u : g.neighbors(v))
        c += in[u] ? 1 : 0;
    return c;
}

void require_metadata(const ContentionGraph& g, Variant variant)
{
    if (variant == Variant::plain)
        return;
    if (!g.has_superfamilies())
        throw InputError("restriction check needs superfamily metadata");
    if (variant == Variant::restricted_capped && !g.has_families())
        throw InputError("family cap check needs family metadata");
}

bool families_match(const ContentionGraph& g, VertexId u, VertexId v)
{
    const auto f = g.family_of(u);
    return f != ContentionGraph::kNoFamily && f == g.family_of(v);
}

} // namespace

std::optional<Violation> check_degree_bound(const ContentionGraph& g, const ChosenSet& s, std::uint32_t k)
{
    const auto in = s.mask(g.vertex_count());
    for (VertexId v : s.members())
        if (count_in(g, in, v) > k)
            return Violation{ViolationKind::degree_exceeded, v, std::nullopt};
    return std::nullopt;
}

std::optional<Violation> check_restrictions(const ContentionGraph& g, const ChosenSet& s, Variant variant,
                                            std::uint32_t g_cap)
{
    require_metadata(g, variant);
    if (variant == Variant::plain)
        return std::nullopt;
    (void)s.mask(g.vertex_count());

    for (const auto& sf : g.superfamilies()) {
        std::optional<VertexId> first;
        for (VertexId v : sf.members) {
            if (!s.contains(v))
                continue;
            if (!first)
                first = v;
            else if (!families_match(g, *first, v))
                return Violation{ViolationKind::superfamily_mix, *first, v};
        }
    }

    if (variant == Variant::restricted_capped) {
        std::map<std::int64_t, std::size_t> per_family;
        for (VertexId v : s.members()) {
            const auto f = g.family_of(v);
            if (f != ContentionGraph::kNoFamily && ++per_family[f] > g_cap)
                return Violation{ViolationKind::family_cap_exceeded, v, std::nullopt};
        }
    }
    return std::nullopt;
}

std::optional<Violation> check_maximal(const ContentionGraph& g, const ChosenSet& s, std::uint32_t k,
                                       Variant variant, std::uint32_t g_cap)
{
    require_metadata(g, variant);
    const auto n = g.vertex_count();
    auto in = s.mask(n);

    std::map<std::int64_t, std::size_t> per_family;
    if (variant == Variant::restricted_capped)
        for (VertexId v : s.members())
            if (auto f = g.family_of(v); f != ContentionGraph::kNoFamily)
                ++per_family[f];

    for (VertexId w = 0; w < n; ++w) {
        if (in[w])
            continue;
        // Degree feasibility of s + {w}.
        bool blocked = count_in(g, in, w) > k;
        for (VertexId u : g.neighbors(w)) {
            if (blocked)
                break;
            if (in[u] && count_in(g, in, u) + 1 > k)
                blocked = true;
        }
        if (!blocked && variant != Variant::plain) {
            for (std::uint32_t si : g.superfamily_indices(w)) {
                for (VertexId u : g.superfamilies()[si].members)
                    if (in[u] && !families_match(g, u, w)) {
                        blocked = true;
                        break;
                    }
                if (blocked)
                    break;
            }
        }
        if (!blocked && variant == Variant::restricted_capped) {
            const auto f = g.family_of(w);
            if (f != ContentionGraph::kNoFamily) {
                auto it = per_family.find(f);
                if (it != per_family.end() && it->second + 1 > g_cap)
                    blocked = true;
            }
        }
        if (!blocked)
            return Violation{ViolationKind::not_maximal, w, std::nullopt};
    }
    return std::nullopt;
}

std::optional<Violation> verify_selection(const ContentionGraph& g, const ChosenSet& s, std::uint32_t k,
                                          Variant variant, std::uint32_t g_cap)
{
    if (auto v = check_degree_bound(g, s, k))
        return v;
    if (auto v = check_restrictions(g, s, variant, g_cap))
        return v;
    return check_maximal(g, s, k, variant, g_cap);
}

// --- brute force ------------------------------------------------------------

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const ContentionGraph& g)
{
    std::vector<Mask> adj(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (VertexId u : g.neighbors(v))
            adj[v] |= Mask{1} << u;
    return adj;
}

bool feasible(const std::vector<Mask>& adj, Mask set, std::uint32_t k)
{
    for (Mask rest = set; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (static_cast<std::uint32_t>(std::popcount(adj[v] & set)) > k)
            return false;
    }
    return true;
}

ChosenSet to_set(Mask m)
{
    std::vector<VertexId> out;
    for (; m; m &= m - 1)
        out.push_back(static_cast<VertexId>(std::countr_zero(m)));
    return ChosenSet(std::move(out));
}

class BranchAndBound {
public:
    BranchAndBound(const ContentionGraph& g, std::uint32_t k)
        : adj_(adjacency_masks(g)), k_(k), n_(g.vertex_count())
    {
        for (VertexId v = 0; v < n_; ++v)
            degree_.push_back(static_cast<int>(g.neighbors(v).size()));
    }

    Mask solve()
    {
        const Mask all = (Mask{1} << n_) - 1;
        std::vector<int> load(n_, 0);
        recurse(0, all, load);
        return best_;
    }

private:
    void recurse(Mask chosen, Mask open, std::vector<int>& load)
    {
        const int have = std::popcount(chosen);
        if (have + std::popcount(open) <= best_size_)
            return;
        if (!open) {
            best_ = chosen;
            best_size_ = have;
            return;
        }
        int v = -1;
        for (Mask rest = open; rest; rest &= rest - 1) {
            const int c = std::countr_zero(rest);
            if (v < 0 || degree_[c] > degree_[v])
                v = c;
        }
        const Mask bit = Mask{1} << v;

        bool can_take = load[v] <= static_cast<int>(k_);
        for (Mask nb = adj_[v] & chosen; can_take && nb; nb &= nb - 1)
            if (load[std::countr_zero(nb)] + 1 > static_cast<int>(k_))
                can_take = false;
        if (can_take) {
            for (Mask nb = adj_[v]; nb; nb &= nb - 1)
                ++load[std::countr_zero(nb)];
            recurse(chosen | bit, open & ~bit, load);
            for (Mask nb = adj_[v]; nb; nb &= nb - 1)
                --load[std::countr_zero(nb)];
        }
        recurse(chosen, open & ~bit, load);
    }

    std::vector<Mask> adj_;
    std::vector<int> degree_;
    std::uint32_t k_;
    std::size_t n_;
    Mask best_ = 0;
    int best_size_ = -1;
};

} // namespace

ExactResult exact_max_ibds(const ContentionGraph& g, std::uint32_t k)
{
    if (g.vertex_count() > kExactMaxVertices)
        throw InputError("exact search refused: " + std::to_string(g.vertex_count()) +
                         " vertices exceeds the limit of " + std::to_string(kExactMaxVertices));
    const Mask best = BranchAndBound(g, k).solve();
    return {static_cast<std::size_t>(std::popcount(best)), to_set(best)};
}

std::vector<ChosenSet> enumerate_maximal(const ContentionGraph& g, std::uint32_t k)
{
    const auto n = g.vertex_count();
    if (n > kEnumerateMaxVertices)
        throw InputError("enumeration refused: " + std::to_string(n) + " vertices exceeds the limit of " +
                         std::to_string(kEnumerateMaxVertices));
    const auto adj = adjacency_masks(g);
    const Mask end = Mask{1} << n;
    std::vector<char> ok(end, 0);
    for (Mask m = 0; m < end; ++m)
        ok[m] = feasible(adj, m, k) ? 1 : 0;

    std::vector<ChosenSet> out;
    for (Mask m = 0; m < end; ++m) {
        if (!ok[m])
            continue;
        bool maximal = true;
        for (std::size_t w = 0; w < n && maximal; ++w)
            if (!(m & (Mask{1} << w)) && ok[m | (Mask{1} << w)])
                maximal = false;
        if (maximal)
            out.push_back(to_set(m));
    }
    return out;
}

} // namespace ibds
