#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ibds/error.hpp"
#include "ibds/experiment.hpp"

using namespace ibds;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string temp_path(const char* name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("break_even_gain")
{
    CHECK(break_even_gain(115, 189, 2) == doctest::Approx(21.693).epsilon(1e-4));
    CHECK(break_even_gain(37.5, 37.5, 1) == doctest::Approx(0.0));
    CHECK(break_even_gain(100, 200, 2) == doctest::Approx(0.0));
    CHECK_THROWS_AS(break_even_gain(1, 0, 2), InputError);
}

TEST_CASE("run_sweep")
{
    ExperimentConfig cfg;
    cfg.node_counts = {50};
    cfg.k_range = {0};
    cfg.variants = {Variant::plain};
    cfg.trials = 3;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 50);
    CHECK(rows[0].k == 0);
    CHECK(rows[0].trials == 3);
    CHECK(rows[0].mean_size > 0.0);
    CHECK(format_csv(run_sweep(cfg)) == format_csv(rows));

    SUBCASE("vacuous family cap reproduces variant r")
    {
        cfg.variants = {Variant::restricted, Variant::restricted_capped};
        cfg.k_range = {0, 1, 2, 3};
        cfg.g_range = {2};
        cfg.trials = 5;
        const auto r = run_sweep(cfg);
        REQUIRE(r.size() == 8);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(r[i].variant == Variant::restricted);
            CHECK(r[i + 4].variant == Variant::restricted_capped);
            CHECK(r[i].mean_size == r[i + 4].mean_size);
            CHECK(r[i].mean_rounds == r[i + 4].mean_rounds);
            CHECK(r[i].g == r[i + 4].g);
        }
    }

    SUBCASE("contention graph file input")
    {
        ExperimentConfig fc;
        fc.graph_path = std::string(IBDS_FIXTURE_DIR) + "/three_links.graph";
        fc.k_range = {0, 1, 5};
        fc.variants = {Variant::plain, Variant::restricted, Variant::restricted_capped};
        fc.g_range = {1};
        fc.trials = 4;
        const auto r = run_sweep(fc);
        REQUIRE(r.size() == 9);
        for (const auto& row : r) {
            CHECK(row.n == 6);
            CHECK(row.q == 2);
        }
        // Max degree in the fixture is 5, so plain k = 5 keeps every stream.
        CHECK(r[2].mean_size == 6.0);
        CHECK(r[0].mean_size >= 1.0);
    }

    SUBCASE("invalid configs")
    {
        ExperimentConfig bad = cfg;
        bad.trials = 0;
        CHECK_THROWS_AS(run_sweep(bad), ConfigError);
        bad = cfg;
        bad.g_range = {3};
        CHECK_THROWS_AS(run_sweep(bad), ConfigError);
    }
}

TEST_CASE("emit_csv")
{
    const auto path = temp_path("ibds_empty.csv");
    emit_csv({}, path);
    CHECK(slurp(path) == std::string(kCsvHeader) + "\n");

    ExperimentRow row{500, 2, 1, 2, Variant::restricted, 189.04, 4.123456789, 6.76, 25};
    CHECK(format_csv({row}) == std::string(kCsvHeader) + "\n500,2,1,2,r,189.04,4.12346,6.76,25\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(emit_csv({}, "/nonexistent-dir/x.csv"), InputError);
    CHECK(format_summary({row}).find("189.040") != std::string::npos);
}

TEST_CASE("config files")
{
    SUBCASE("defaults when keys are missing")
    {
        const auto cfg = parse_config("# nothing but a comment\nq = 4\n");
        CHECK(cfg.trials == 25);
        CHECK(cfg.q == 4);
        CHECK(cfg.node_counts == std::vector<std::size_t>{100, 200, 500});
    }
    SUBCASE("round trip")
    {
        ExperimentConfig cfg;
        cfg.node_counts = {64, 128};
        cfg.q = 4;
        cfg.k_range = {0, 2, 5};
        cfg.g_range = {1, 3};
        cfg.variants = {Variant::restricted_capped, Variant::plain};
        cfg.trials = 7;
        cfg.base_seed = 123456789012345ULL;
        cfg.tx_radius = 0.1234567890123;
        cfg.interference_radius = 0.2;
        cfg.output_path = "out.csv";
        cfg.verify = false;
        CHECK(parse_config(format_config(cfg)) == cfg);

        const auto path = temp_path("ibds_cfg.conf");
        {
            std::ofstream out(path);
            out << format_config(cfg);
        }
        CHECK(load_config(path) == cfg);
        std::remove(path.c_str());
    }
    SUBCASE("ranges, underscores and inline comments")
    {
        const auto cfg = parse_config("k = 0..3, 6   # sweep\ntx_radius = 0.25\nvariant = r, rg\ng = 1\n");
        CHECK(cfg.k_range == std::vector<std::uint32_t>{0, 1, 2, 3, 6});
        CHECK(cfg.tx_radius == 0.25);
        CHECK(cfg.variants == std::vector<Variant>{Variant::restricted, Variant::restricted_capped});
    }
    SUBCASE("errors name the key")
    {
        auto key_of = [](const char* text) -> std::string {
            try {
                parse_config(text);
            } catch (const ConfigError& e) {
                return e.key();
            }
            return "";
        };
        CHECK(key_of("colour = blue\n") == "colour");
        CHECK(key_of("trials = many\n") == "trials");
        CHECK(key_of("k = 5..2\n") == "k");
        CHECK(key_of("variant = fancy\n") == "variant");
        CHECK(key_of("verify = maybe\n") == "verify");
        CHECK(key_of("tx-radius = -1\n") == "tx-radius");
        CHECK(key_of("trials = 0\n") == "trials");
        CHECK_THROWS_AS(load_config("/nonexistent/cfg"), ConfigError);
    }
}
