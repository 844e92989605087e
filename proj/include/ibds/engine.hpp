#pragma once

// Synchronous simulator for the distributed maximal induced bounded-degree
// subgraph algorithm and its family/superfamily restricted variants.
//
// A round runs four phases over every active vertex, each reading a snapshot
// taken at the phase start and committing at the phase barrier:
//   A  rank exchange; a vertex whose rank is <= every active neighbour's sets b
//   B  b exchange; a vertex with b = 1 advances its rank to the next larger
//      neighbour rank unless an undecided neighbour with b = 0 holds an equal one
//   C  undecided vertices with b = 1 join, charging the budget a of themselves
//      and every active neighbour; restricted variants eliminate conflicting
//      streams; a chosen vertex whose active neighbours all have b = 1 halts
//   D  vertices with a <= 0 halt; chosen ones first eliminate their undecided
//      neighbours

#include <compare>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ibds/graph.hpp"

namespace ibds {

/// Random token r(v). Ties in value are broken by the generating vertex, so
/// initial ranks are pairwise distinct.
struct Rank {
    std::uint64_t value = 0;
    VertexId origin = 0;

    auto operator<=>(const Rank&) const = default;
};

enum class Selection : std::int8_t { eliminated = 0, chosen = 1, undecided = -1 };

struct VertexState {
    Rank r;
    bool b = false;
    Selection b_hat = Selection::undecided;
    std::int64_t a = 0;
    bool halted = false;
    /// Chosen announcements heard from this vertex's own family (R_g only).
    std::uint32_t family_chosen = 0;

    bool operator==(const VertexState&) const = default;
};

enum class Variant { plain, restricted, restricted_capped };

std::string_view to_string(Variant v) noexcept;
/// Accepts "plain", "r", "rg" (case-sensitive). Throws InputError otherwise.
Variant parse_variant(std::string_view text);

struct RunConfig {
    std::uint32_t k = 0;
    Variant variant = Variant::plain;
    std::uint32_t g_cap = 1; // only read for restricted_capped
    std::uint64_t seed = 0;
    std::uint64_t max_rounds = 0; // 0: vertex count
};

struct FinalState {
    Selection b_hat = Selection::undecided;
    std::int64_t a = 0;

    bool operator==(const FinalState&) const = default;
};

struct RoundStats {
    std::uint32_t newly_chosen = 0;
    std::uint32_t newly_eliminated = 0;
    std::uint32_t halted = 0; // vertices that halted this round, any reason
    std::uint64_t messages = 0;

    bool operator==(const RoundStats&) const = default;
};

struct RunResult {
    ChosenSet chosen;
    std::uint64_t rounds = 0;
    std::uint64_t messages = 0;
    std::vector<FinalState> final_states;
    std::vector<RoundStats> trace;

    bool operator==(const RunResult&) const = default;
};

struct RoundOutcome {
    std::vector<VertexState> states;
    std::vector<VertexId> newly_chosen;
    std::vector<VertexId> newly_eliminated;
    std::uint64_t messages = 0;
};

/// Deterministic rank for vertex v under a run seed.
Rank initial_rank(std::uint64_t seed, VertexId v) noexcept;

/// Throws InputError when the variant needs metadata the graph lacks or the
/// family cap is out of range.
void validate_config(const ContentionGraph& g, const RunConfig& cfg);

std::vector<VertexState> init_states(const ContentionGraph& g, const RunConfig& cfg);

/// One synchronous round from an arbitrary state vector. A round on an
/// all-halted state returns it unchanged.
RoundOutcome run_round(const ContentionGraph& g, std::span<const VertexState> states,
                       const RunConfig& cfg);

/// Runs rounds until every vertex has halted. Throws InvariantViolation if a
/// run needs more than vertex-count rounds or max_rounds.
RunResult run_to_completion(const ContentionGraph& g, const RunConfig& cfg);

/// Same, starting from caller-supplied states (e.g. hand-picked ranks).
RunResult run_to_completion(const ContentionGraph& g, std::vector<VertexState> states,
                            const RunConfig& cfg);

} // namespace ibds
