#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ibds/engine.hpp"
#include "ibds/error.hpp"
#include "ibds/geometry.hpp"

namespace ibds {

struct ExperimentConfig {
    std::vector<std::size_t> node_counts{100, 200, 500};
    std::uint32_t q = 2;
    std::vector<std::uint32_t> k_range{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<std::uint32_t> g_range{1};
    std::vector<Variant> variants{Variant::plain, Variant::restricted};
    std::uint32_t trials = 25;
    std::uint64_t base_seed = 1;
    std::optional<double> tx_radius;
    std::optional<double> interference_radius;
    std::string output_path;
    bool verify = true;
    /// When set, sweeps run on this contention-graph file instead of
    /// generated networks; node_counts and the radii are ignored.
    std::string graph_path;

    bool operator==(const ExperimentConfig&) const = default;
};

struct ExperimentRow {
    std::size_t n = 0;
    std::uint32_t q = 0;
    std::uint32_t k = 0;
    std::uint32_t g = 0;
    Variant variant = Variant::plain;
    double mean_size = 0.0;
    double stddev_size = 0.0;
    double mean_rounds = 0.0;
    std::uint32_t trials = 0;

    bool operator==(const ExperimentRow&) const = default;
};

/// A verifier rejected a run; carries the failing seed.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

/// Throws ConfigError naming the first bad field.
void validate(const ExperimentConfig& cfg);

/// Seed used for the ranks of trial t; placement uses base_seed + t.
std::uint64_t trial_rank_seed(std::uint64_t base_seed, std::uint32_t trial) noexcept;

/// Network + stream graph for one trial of an n-node sweep point.
StreamGraph trial_stream_graph(const ExperimentConfig& cfg, std::size_t n, std::uint32_t trial);

/// Every (n, variant, k, g) point, averaged over cfg.trials networks. The g
/// axis applies to variant rg only; other variants report g = q.
std::vector<ExperimentRow> run_sweep(const ExperimentConfig& cfg);

/// Percentage gain stream control must deliver to break even:
/// 100 * (q_ratio * size_a / size_b - 1).
double break_even_gain(double size_a, double size_b, double q_ratio);

inline constexpr std::string_view kCsvHeader = "n,q,k,g,variant,mean_size,stddev_size,mean_rounds,trials";

std::string format_csv(const std::vector<ExperimentRow>& rows);
void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path);

/// Fixed-width table for terminals.
std::string format_summary(const std::vector<ExperimentRow>& rows);

/// `key = value` lines, `#` comments. Lists are comma separated and accept
/// inclusive ranges such as `0..7`. Missing keys keep their defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string format_config(const ExperimentConfig& cfg);

/// Parses one list value ("1,2,5..7").
std::vector<std::uint64_t> parse_uint_list(std::string_view key, std::string_view value);

} // namespace ibds
