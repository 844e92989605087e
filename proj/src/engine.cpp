#include "ibds/engine.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "ibds/error.hpp"

namespace ibds {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool restricted(Variant v) noexcept
{
    return v != Variant::plain;
}

bool same_family(const ContentionGraph& g, VertexId u, VertexId v)
{
    const auto fu = g.family_of(u);
    return fu != ContentionGraph::kNoFamily && fu == g.family_of(v);
}

// In-place round executor. Scratch buffers persist across rounds.
class RoundEngine {
public:
    RoundEngine(const ContentionGraph& g, const RunConfig& cfg, std::vector<VertexState>& s)
        : g_(g), cfg_(cfg), s_(s)
    {
        const auto n = s_.size();
        if (n != g_.vertex_count())
            throw InputError("state vector has " + std::to_string(n) + " entries for a graph of " +
                             std::to_string(g_.vertex_count()) + " vertices");
        part_.resize(n);
        b_snap_.resize(n);
        next_r_.resize(n);
        dec_.resize(n);
        fam_hits_.resize(n);
        elim_.resize(n);
        halt_.resize(n);
    }

    bool any_active() const
    {
        return std::any_of(s_.begin(), s_.end(), [](const VertexState& v) { return !v.halted; });
    }

    RoundStats step(std::vector<VertexId>* chosen_out, std::vector<VertexId>* eliminated_out)
    {
        RoundStats st;
        const auto n = static_cast<VertexId>(s_.size());

        // Vertices with a > 0 take part in phases A-C; the rest only reach D.
        for (VertexId v = 0; v < n; ++v)
            part_[v] = !s_[v].halted && s_[v].a > 0;

        // Phase A: rank exchange.
        for (VertexId v = 0; v < n; ++v) {
            if (!part_[v])
                continue;
            bool minimal = true;
            for (VertexId u : g_.neighbors(v)) {
                if (!part_[u])
                    continue;
                ++st.messages;
                if (s_[u].r < s_[v].r)
                    minimal = false;
            }
            b_snap_[v] = s_[v].b || minimal;
        }
        for (VertexId v = 0; v < n; ++v)
            if (part_[v])
                s_[v].b = b_snap_[v];

        // Phase B: b exchange and rank advance.
        for (VertexId v = 0; v < n; ++v) {
            next_r_[v] = s_[v].r;
            if (!part_[v])
                continue;
            bool blocked = false;
            std::optional<Rank> next;
            for (VertexId u : g_.neighbors(v)) {
                if (!part_[u])
                    continue;
                ++st.messages;
                if (!b_snap_[u] && s_[u].r == s_[v].r)
                    blocked = true;
                if (s_[u].r > s_[v].r && (!next || s_[u].r < *next))
                    next = s_[u].r;
            }
            if (b_snap_[v] && !blocked && next)
                next_r_[v] = *next;
        }
        for (VertexId v = 0; v < n; ++v)
            s_[v].r = next_r_[v];

        // Phase C: selection and budget charges.
        std::fill(dec_.begin(), dec_.end(), 0);
        std::fill(fam_hits_.begin(), fam_hits_.end(), 0);
        std::fill(elim_.begin(), elim_.end(), 0);
        std::fill(halt_.begin(), halt_.end(), 0);
        const bool restrict = restricted(cfg_.variant);
        const bool capped = cfg_.variant == Variant::restricted_capped;
        for (VertexId v = 0; v < n; ++v) {
            if (!part_[v] || !b_snap_[v])
                continue;
            const bool joins = s_[v].b_hat == Selection::undecided;
            bool all_b = true;
            for (VertexId u : g_.neighbors(v))
                if (part_[u] && !b_snap_[u])
                    all_b = false;
            if (all_b)
                halt_[v] = 1;
            if (!joins)
                continue;

            s_[v].b_hat = Selection::chosen;
            ++st.newly_chosen;
            if (chosen_out)
                chosen_out->push_back(v);
            ++dec_[v];
            if (capped)
                ++fam_hits_[v];
            for (VertexId u : g_.neighbors(v)) {
                if (!part_[u])
                    continue;
                ++st.messages;
                ++dec_[u];
                if (restrict && g_.same_superfamily(u, v) && !same_family(g_, u, v))
                    elim_[u] = 1;
                if (capped && same_family(g_, u, v))
                    ++fam_hits_[u];
            }
        }
        for (VertexId v = 0; v < n; ++v) {
            if (!part_[v])
                continue;
            auto& sv = s_[v];
            sv.a -= dec_[v];
            sv.family_chosen += fam_hits_[v];
            const bool capped_out = capped && sv.family_chosen >= cfg_.g_cap;
            if (sv.b_hat == Selection::undecided && (elim_[v] || capped_out)) {
                eliminate(v, st, eliminated_out);
                continue;
            }
            if (halt_[v]) {
                sv.halted = true;
                ++st.halted;
            }
        }

        // Phase D: saturation.
        std::fill(elim_.begin(), elim_.end(), 0);
        std::fill(halt_.begin(), halt_.end(), 0);
        for (VertexId v = 0; v < n; ++v) {
            if (s_[v].halted || s_[v].a > 0)
                continue;
            halt_[v] = 1;
            if (s_[v].b_hat != Selection::chosen)
                continue;
            for (VertexId u : g_.neighbors(v)) {
                if (s_[u].halted)
                    continue;
                ++st.messages;
                if (s_[u].b_hat == Selection::undecided)
                    elim_[u] = 1;
            }
        }
        for (VertexId v = 0; v < n; ++v) {
            if (elim_[v]) {
                eliminate(v, st, eliminated_out);
            } else if (halt_[v]) {
                s_[v].halted = true;
                ++st.halted;
                if (s_[v].b_hat == Selection::undecided) {
                    ++st.newly_eliminated;
                    if (eliminated_out)
                        eliminated_out->push_back(v);
                }
            }
        }
        return st;
    }

private:
    void eliminate(VertexId v, RoundStats& st, std::vector<VertexId>* out)
    {
        auto& sv = s_[v];
        sv.b_hat = Selection::eliminated;
        sv.a = 0;
        sv.halted = true;
        ++st.newly_eliminated;
        ++st.halted;
        if (out)
            out->push_back(v);
    }

    const ContentionGraph& g_;
    const RunConfig& cfg_;
    std::vector<VertexState>& s_;
    std::vector<char> part_;
    std::vector<char> b_snap_;
    std::vector<Rank> next_r_;
    std::vector<std::int64_t> dec_;
    std::vector<std::uint32_t> fam_hits_;
    std::vector<char> elim_;
    std::vector<char> halt_;
};

} // namespace

std::string_view to_string(Variant v) noexcept
{
    switch (v) {
    case Variant::plain: return "plain";
    case Variant::restricted: return "r";
    case Variant::restricted_capped: return "rg";
    }
    return "?";
}

Variant parse_variant(std::string_view text)
{
    if (text == "plain")
        return Variant::plain;
    if (text == "r")
        return Variant::restricted;
    if (text == "rg")
        return Variant::restricted_capped;
    throw InputError("unknown variant '" + std::string(text) + "' (expected plain, r or rg)");
}

Rank initial_rank(std::uint64_t seed, VertexId v) noexcept
{
    return {splitmix64(seed ^ splitmix64(0x5851f42d4c957f2dULL + v)), v};
}

void validate_config(const ContentionGraph& g, const RunConfig& cfg)
{
    if (restricted(cfg.variant) && !g.has_superfamilies() && g.vertex_count() > 0)
        throw InputError("variant " + std::string(to_string(cfg.variant)) +
                         " needs superfamily metadata");
    if (cfg.variant == Variant::restricted_capped) {
        if (!g.has_families() && g.vertex_count() > 0)
            throw InputError("variant rg needs family metadata");
        if (cfg.g_cap < 1)
            throw InputError("family cap g must be at least 1");
        if (g.has_families() && cfg.g_cap > g.max_family_size())
            throw InputError("family cap g = " + std::to_string(cfg.g_cap) +
                             " exceeds the largest family (" + std::to_string(g.max_family_size()) + ")");
    }
}

std::vector<VertexState> init_states(const ContentionGraph& g, const RunConfig& cfg)
{
    std::vector<VertexState> s(g.vertex_count());
    for (VertexId v = 0; v < s.size(); ++v) {
        s[v].r = initial_rank(cfg.seed, v);
        s[v].a = static_cast<std::int64_t>(cfg.k) + 1;
    }
    return s;
}

RoundOutcome run_round(const ContentionGraph& g, std::span<const VertexState> states, const RunConfig& cfg)
{
    validate_config(g, cfg);
    RoundOutcome out;
    out.states.assign(states.begin(), states.end());
    RoundEngine eng(g, cfg, out.states);
    if (!eng.any_active())
        return out;
    out.messages = eng.step(&out.newly_chosen, &out.newly_eliminated).messages;
    return out;
}

RunResult run_to_completion(const ContentionGraph& g, const RunConfig& cfg)
{
    return run_to_completion(g, init_states(g, cfg), cfg);
}

RunResult run_to_completion(const ContentionGraph& g, std::vector<VertexState> states, const RunConfig& cfg)
{
    validate_config(g, cfg);
    RoundEngine eng(g, cfg, states);
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t limit = cfg.max_rounds ? std::min<std::uint64_t>(cfg.max_rounds, n) : n;

    RunResult res;
    while (eng.any_active()) {
        if (res.rounds == limit)
            throw InvariantViolation("run did not terminate within " + std::to_string(limit) +
                                     " rounds on " + std::to_string(n) + " vertices");
        auto st = eng.step(nullptr, nullptr);
        ++res.rounds;
        res.messages += st.messages;
        res.trace.push_back(st);
        for (VertexId v = 0; v < n; ++v)
            if (states[v].b_hat == Selection::chosen && states[v].a < 0)
                throw InvariantViolation("chosen vertex " + std::to_string(v) +
                                         " overran its budget in round " + std::to_string(res.rounds));
    }

    std::vector<VertexId> chosen;
    res.final_states.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        res.final_states.push_back({states[v].b_hat, states[v].a});
        if (states[v].b_hat == Selection::chosen)
            chosen.push_back(v);
    }
    res.chosen = ChosenSet(std::move(chosen));
    return res;
}

} // namespace ibds
