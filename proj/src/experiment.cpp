#include "ibds/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ibds/verify.hpp"

namespace ibds {

namespace {

std::string fmt_real(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::uint64_t parse_uint(std::string_view key, std::string_view tok)
{
    tok = trim(tok);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(tok) + "'");
    return v;
}

double parse_real(std::string_view key, std::string_view tok)
{
    tok = trim(tok);
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw ConfigError(std::string(key), "expected a real number, got '" + s + "'");
    return v;
}

template <typename T>
std::string join(const std::vector<T>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += ',';
        if constexpr (std::is_same_v<T, Variant>)
            out += to_string(xs[i]);
        else
            out += std::to_string(xs[i]);
    }
    return out;
}

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    double rounds = 0.0;
    std::uint32_t count = 0;

    void add(double size, double r)
    {
        sum += size;
        sum_sq += size * size;
        rounds += r;
        ++count;
    }
};

} // namespace

void validate(const ExperimentConfig& cfg)
{
    if (cfg.trials < 1)
        throw ConfigError("trials", "must be at least 1");
    if (cfg.q < 1)
        throw ConfigError("q", "must be at least 1");
    if (cfg.graph_path.empty()) {
        if (cfg.node_counts.empty())
            throw ConfigError("nodes", "list is empty");
        for (auto n : cfg.node_counts)
            if (n < 1)
                throw ConfigError("nodes", "node counts must be at least 1");
    }
    if (cfg.k_range.empty())
        throw ConfigError("k", "list is empty");
    if (cfg.variants.empty())
        throw ConfigError("variant", "list is empty");
    for (auto g : cfg.g_range)
        if (g < 1 || g > cfg.q)
            throw ConfigError("g", "family cap must lie in 1..q");
    for (auto v : cfg.variants)
        if (v == Variant::restricted_capped && cfg.g_range.empty())
            throw ConfigError("g", "variant rg needs at least one g");
    if (cfg.tx_radius && !(*cfg.tx_radius > 0.0))
        throw ConfigError("tx-radius", "must be positive");
    if (cfg.interference_radius) {
        if (!(*cfg.interference_radius > 0.0))
            throw ConfigError("interference-radius", "must be positive");
        if (cfg.tx_radius && *cfg.interference_radius < *cfg.tx_radius)
            throw ConfigError("interference-radius", "must be at least the transmission radius");
    }
}

std::uint64_t trial_rank_seed(std::uint64_t base_seed, std::uint32_t trial) noexcept
{
    // Distinct from the placement seed stream so ranks and coordinates do
    // not share a generator state.
    std::uint64_t x = base_seed * 0x9e3779b97f4a7c15ULL + trial + 0x632be59bd9b4e019ULL;
    x = (x ^ (x >> 33)) * 0xff51afd7ed558ccdULL;
    x = (x ^ (x >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return x ^ (x >> 33);
}

StreamGraph trial_stream_graph(const ExperimentConfig& cfg, std::size_t n, std::uint32_t trial)
{
    std::optional<double> interference = cfg.interference_radius;
    const auto net = make_network(n, cfg.base_seed + trial, cfg.tx_radius, interference);
    return build_stream_graph(net, cfg.q);
}

std::vector<ExperimentRow> run_sweep(const ExperimentConfig& cfg)
{
    validate(cfg);

    std::vector<ExperimentRow> rows;
    std::vector<std::size_t> sizes = cfg.node_counts;
    std::optional<ContentionGraph> fixed;
    if (!cfg.graph_path.empty()) {
        fixed = load_graph_file(cfg.graph_path);
        sizes = {fixed->vertex_count()};
    }

    for (std::size_t n : sizes) {
        std::vector<ContentionGraph> graphs;
        if (fixed) {
            graphs.assign(1, *fixed);
        } else {
            graphs.reserve(cfg.trials);
            for (std::uint32_t t = 0; t < cfg.trials; ++t)
                graphs.push_back(trial_stream_graph(cfg, n, t).graph);
        }
        const std::uint32_t q = fixed ? static_cast<std::uint32_t>(std::max<std::size_t>(fixed->max_family_size(), 1))
                                      : cfg.q;

        for (Variant variant : cfg.variants) {
            const std::vector<std::uint32_t> caps =
                variant == Variant::restricted_capped ? cfg.g_range : std::vector<std::uint32_t>{q};
            for (std::uint32_t k : cfg.k_range) {
                for (std::uint32_t g_cap : caps) {
                    Accumulator acc;
                    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
                        const auto& graph = graphs[fixed ? 0 : t];
                        RunConfig rc;
                        rc.k = k;
                        rc.variant = variant;
                        rc.g_cap = g_cap;
                        rc.seed = trial_rank_seed(cfg.base_seed, t);
                        const auto res = run_to_completion(graph, rc);
                        if (cfg.verify) {
                            if (auto bad = verify_selection(graph, res.chosen, k, variant, g_cap))
                                throw VerificationFailure(
                                    "verification failed (n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                    " g=" + std::to_string(g_cap) + " variant=" + std::string(to_string(variant)) +
                                    " trial=" + std::to_string(t) + " base_seed=" + std::to_string(cfg.base_seed) +
                                    " rank_seed=" + std::to_string(rc.seed) + "): " + bad->describe());
                        }
                        acc.add(static_cast<double>(res.chosen.size()), static_cast<double>(res.rounds));
                    }
                    ExperimentRow row;
                    row.n = n;
                    row.q = q;
                    row.k = k;
                    row.g = g_cap;
                    row.variant = variant;
                    row.trials = acc.count;
                    row.mean_size = acc.sum / acc.count;
                    row.mean_rounds = acc.rounds / acc.count;
                    if (acc.count > 1) {
                        const double var = (acc.sum_sq - acc.sum * acc.sum / acc.count) / (acc.count - 1);
                        row.stddev_size = var > 0.0 ? std::sqrt(var) : 0.0;
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

double break_even_gain(double size_a, double size_b, double q_ratio)
{
    if (size_b == 0.0)
        throw InputError("break-even gain needs a non-zero reference size");
    return 100.0 * (q_ratio * size_a / size_b - 1.0);
}

std::string format_csv(const std::vector<ExperimentRow>& rows)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',' + std::to_string(r.q) + ',' + std::to_string(r.k) + ',' +
               std::to_string(r.g) + ',' + std::string(to_string(r.variant)) + ',' + fmt_real(r.mean_size, 6) +
               ',' + fmt_real(r.stddev_size, 6) + ',' + fmt_real(r.mean_rounds, 6) + ',' +
               std::to_string(r.trials) + '\n';
    }
    return out;
}

void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot open '" + path + "' for writing");
    out << format_csv(rows);
    if (!out)
        throw InputError("write to '" + path + "' failed");
}

std::string format_summary(const std::vector<ExperimentRow>& rows)
{
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%6s %3s %3s %3s %-7s %12s %10s %10s %6s\n", "n", "q", "k", "g", "variant",
                  "mean_size", "stddev", "rounds", "trials");
    out += line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%6zu %3u %3u %3u %-7s %12.3f %10.3f %10.3f %6u\n", r.n, r.q, r.k, r.g,
                      std::string(to_string(r.variant)).c_str(), r.mean_size, r.stddev_size, r.mean_rounds,
                      r.trials);
        out += line;
    }
    return out;
}

std::vector<std::uint64_t> parse_uint_list(std::string_view key, std::string_view value)
{
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t comma = value.find(',', pos);
        auto item = trim(value.substr(pos, comma == std::string_view::npos ? value.size() - pos : comma - pos));
        pos = comma == std::string_view::npos ? value.size() + 1 : comma + 1;
        if (item.empty())
            throw ConfigError(std::string(key), "empty list element");
        if (auto dots = item.find(".."); dots != std::string_view::npos) {
            const auto lo = parse_uint(key, item.substr(0, dots));
            const auto hi = parse_uint(key, item.substr(dots + 2));
            if (hi < lo)
                throw ConfigError(std::string(key), "descending range '" + std::string(item) + "'");
            for (auto v = lo; v <= hi; ++v)
                out.push_back(v);
        } else {
            out.push_back(parse_uint(key, item));
        }
    }
    return out;
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig cfg;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(line), "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        for (auto& ch : key)
            if (ch == '_')
                ch = '-';

        auto to_u32 = [&key](std::uint64_t v) {
            if (v > 0xffffffffULL)
                throw ConfigError(key, "value out of range");
            return static_cast<std::uint32_t>(v);
        };
        if (key == "nodes") {
            cfg.node_counts.clear();
            for (auto v : parse_uint_list(key, value))
                cfg.node_counts.push_back(static_cast<std::size_t>(v));
        } else if (key == "q") {
            cfg.q = to_u32(parse_uint(key, value));
        } else if (key == "k") {
            cfg.k_range.clear();
            for (auto v : parse_uint_list(key, value))
                cfg.k_range.push_back(to_u32(v));
        } else if (key == "g") {
            cfg.g_range.clear();
            for (auto v : parse_uint_list(key, value))
                cfg.g_range.push_back(to_u32(v));
        } else if (key == "variant" || key == "variants") {
            cfg.variants.clear();
            std::size_t p = 0;
            while (p <= value.size()) {
                auto c = value.find(',', p);
                auto item = trim(value.substr(p, c == std::string_view::npos ? value.size() - p : c - p));
                p = c == std::string_view::npos ? value.size() + 1 : c + 1;
                try {
                    cfg.variants.push_back(parse_variant(item));
                } catch (const InputError& e) {
                    throw ConfigError(key, e.what());
                }
            }
        } else if (key == "trials") {
            cfg.trials = to_u32(parse_uint(key, value));
        } else if (key == "seed") {
            cfg.base_seed = parse_uint(key, value);
        } else if (key == "tx-radius") {
            cfg.tx_radius = parse_real(key, value);
        } else if (key == "interference-radius") {
            cfg.interference_radius = parse_real(key, value);
        } else if (key == "out") {
            cfg.output_path = std::string(value);
        } else if (key == "graph") {
            cfg.graph_path = std::string(value);
        } else if (key == "verify") {
            if (value == "strict")
                cfg.verify = true;
            else if (value == "off")
                cfg.verify = false;
            else
                throw ConfigError(key, "expected 'strict' or 'off'");
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& cfg)
{
    std::string out;
    out += "nodes = " + join(cfg.node_counts) + '\n';
    out += "q = " + std::to_string(cfg.q) + '\n';
    out += "k = " + join(cfg.k_range) + '\n';
    out += "g = " + join(cfg.g_range) + '\n';
    out += "variant = " + join(cfg.variants) + '\n';
    out += "trials = " + std::to_string(cfg.trials) + '\n';
    out += "seed = " + std::to_string(cfg.base_seed) + '\n';
    if (cfg.tx_radius)
        out += "tx-radius = " + fmt_real(*cfg.tx_radius, 17) + '\n';
    if (cfg.interference_radius)
        out += "interference-radius = " + fmt_real(*cfg.interference_radius, 17) + '\n';
    if (!cfg.output_path.empty())
        out += "out = " + cfg.output_path + '\n';
    if (!cfg.graph_path.empty())
        out += "graph = " + cfg.graph_path + '\n';
    out += std::string("verify = ") + (cfg.verify ? "strict" : "off") + '\n';
    return out;
}

} // namespace ibds
