#pragma once

// Independent checkers for selected subgraphs, plus brute-force oracles for
// small instances. None of this code shares logic with the round engine.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ibds/engine.hpp"
#include "ibds/graph.hpp"

namespace ibds {

enum class ViolationKind { degree_exceeded, not_maximal, superfamily_mix, family_cap_exceeded };

std::string_view to_string(ViolationKind k) noexcept;

struct Violation {
    ViolationKind kind;
    VertexId witness = 0;
    std::optional<VertexId> other; // second vertex for superfamily_mix

    std::string describe() const;
    bool operator==(const Violation&) const = default;
};

/// nullopt when every member of s has at most k neighbours in s.
std::optional<Violation> check_degree_bound(const ContentionGraph& g, const ChosenSet& s, std::uint32_t k);

/// nullopt when R / R_g membership rules hold. Throws InputError when the
/// graph lacks the metadata the variant needs. Plain variant always passes.
std::optional<Violation> check_restrictions(const ContentionGraph& g, const ChosenSet& s, Variant variant,
                                            std::uint32_t g_cap);

/// nullopt when no vertex outside s can be added while keeping s feasible
/// under the variant's rules. Assumes s itself is feasible.
std::optional<Violation> check_maximal(const ContentionGraph& g, const ChosenSet& s, std::uint32_t k,
                                       Variant variant = Variant::plain, std::uint32_t g_cap = 0);

/// All three checks in order; the first failure wins.
std::optional<Violation> verify_selection(const ContentionGraph& g, const ChosenSet& s, std::uint32_t k,
                                          Variant variant, std::uint32_t g_cap);

struct ExactResult {
    std::size_t size = 0;
    ChosenSet best;
};

inline constexpr std::size_t kExactMaxVertices = 24;
inline constexpr std::size_t kEnumerateMaxVertices = 15;

/// Maximum induced bounded-degree-k subgraph by branch and bound.
/// Refuses (InputError) above kExactMaxVertices.
ExactResult exact_max_ibds(const ContentionGraph& g, std::uint32_t k);

/// Every maximal feasible set (plain rules), by subset scan.
/// Refuses (InputError) above kEnumerateMaxVertices.
std::vector<ChosenSet> enumerate_maximal(const ContentionGraph& g, std::uint32_t k);

} // namespace ibds
