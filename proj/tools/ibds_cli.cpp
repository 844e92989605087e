// Command-line driver for induced bounded-degree subgraph sweeps.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ibds/experiment.hpp"
#include "ibds/simd/kernels.hpp"

namespace {

std::vector<std::uint32_t> to_u32(const std::vector<std::uint64_t>& xs)
{
    return {xs.begin(), xs.end()};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Distributed maximal induced bounded-degree subgraph simulator"};

    std::string config_path, nodes, k, g, variant, verify, graph, out, isa;
    std::optional<std::uint32_t> q, trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> tx_radius, interference_radius;
    bool summary = false;
    std::vector<double> break_even;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--nodes", nodes, "node counts, e.g. 100,200,500");
    app.add_option("--q", q, "streams (antenna elements) per link");
    app.add_option("--k", k, "degree bounds, e.g. 0..7");
    app.add_option("--g", g, "family caps for variant rg, e.g. 1,2");
    app.add_option("--variant", variant, "plain, r, rg (comma separated)");
    app.add_option("--trials", trials, "random networks per point");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--tx-radius", tx_radius, "transmission radius (unit square)");
    app.add_option("--interference-radius", interference_radius, "interference radius");
    app.add_option("--out", out, "CSV output path (stdout when omitted)");
    app.add_option("--verify", verify, "strict or off")->check(CLI::IsMember({"strict", "off"}));
    app.add_option("--graph", graph, "run on a contention-graph file instead of generated networks");
    app.add_flag("--summary", summary, "print a plain-text table to stderr");
    app.add_option("--isa", isa, "force geometry kernels: scalar or avx2")
        ->check(CLI::IsMember({"scalar", "avx2"}));
    app.add_option("--break-even", break_even, "SIZE_A SIZE_B Q_RATIO: print break-even gain and exit")
        ->expected(3);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!break_even.empty()) {
            std::printf("%.6g\n", ibds::break_even_gain(break_even[0], break_even[1], break_even[2]));
            return 0;
        }
        if (!isa.empty() &&
            !ibds::simd::select_kernels(isa == "avx2" ? ibds::simd::Isa::avx2 : ibds::simd::Isa::scalar)) {
            std::cerr << "error: ISA '" << isa << "' is not available on this machine\n";
            return 2;
        }

        ibds::ExperimentConfig cfg = config_path.empty() ? ibds::ExperimentConfig{} : ibds::load_config(config_path);
        if (!nodes.empty()) {
            cfg.node_counts.clear();
            for (auto n : ibds::parse_uint_list("nodes", nodes))
                cfg.node_counts.push_back(static_cast<std::size_t>(n));
        }
        if (q)
            cfg.q = *q;
        if (!k.empty())
            cfg.k_range = to_u32(ibds::parse_uint_list("k", k));
        if (!g.empty())
            cfg.g_range = to_u32(ibds::parse_uint_list("g", g));
        if (!variant.empty()) {
            cfg.variants.clear();
            std::size_t pos = 0;
            while (pos <= variant.size()) {
                auto c = variant.find(',', pos);
                cfg.variants.push_back(ibds::parse_variant(
                    variant.substr(pos, c == std::string::npos ? std::string::npos : c - pos)));
                pos = c == std::string::npos ? variant.size() + 1 : c + 1;
            }
        }
        if (trials)
            cfg.trials = *trials;
        if (seed)
            cfg.base_seed = *seed;
        if (tx_radius)
            cfg.tx_radius = tx_radius;
        if (interference_radius)
            cfg.interference_radius = interference_radius;
        if (!out.empty())
            cfg.output_path = out;
        if (!verify.empty())
            cfg.verify = verify == "strict";
        if (!graph.empty())
            cfg.graph_path = graph;
        ibds::validate(cfg);

        const auto rows = ibds::run_sweep(cfg);
        if (cfg.output_path.empty())
            std::cout << ibds::format_csv(rows);
        else
            ibds::emit_csv(rows, cfg.output_path);
        if (summary)
            std::cerr << ibds::format_summary(rows);
    } catch (const ibds::VerificationFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
