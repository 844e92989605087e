#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "ibds/error.hpp"
#include "ibds/geometry.hpp"
#include "ibds/graph.hpp"
#include "support.hpp"

using namespace ibds;
using namespace ibds::testing;

namespace {

std::string read_fixture(const std::string& name)
{
    std::ifstream in(std::string(IBDS_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Independent canonical form: drop comments, sort edge lines numerically,
// order groups by kind then id with sorted members.
std::string canonical(const std::string& text)
{
    std::istringstream in(text);
    std::string line, header;
    std::vector<std::pair<long, long>> edges;
    std::vector<std::tuple<int, long, std::vector<long>>> groups;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (header.empty()) {
            header = line;
            continue;
        }
        if (first == "family" || first == "superfamily") {
            long id;
            std::string colon;
            ls >> id >> colon;
            std::vector<long> mem;
            for (long v; ls >> v;)
                mem.push_back(v);
            std::sort(mem.begin(), mem.end());
            groups.emplace_back(first == "family" ? 0 : 1, id, mem);
        } else {
            long v;
            ls >> v;
            edges.emplace_back(std::stol(first), v);
        }
    }
    std::sort(edges.begin(), edges.end());
    std::sort(groups.begin(), groups.end());
    std::ostringstream os;
    os << header << '\n';
    for (auto [u, v] : edges)
        os << u << ' ' << v << '\n';
    for (auto& [kind, id, mem] : groups) {
        os << (kind == 0 ? "family " : "superfamily ") << id << " :";
        for (long v : mem)
            os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

} // namespace

TEST_CASE("degree")
{
    CHECK(degree(ContentionGraph::build(1, {}), 0) == 0);
    CHECK(degree(complete_graph(3), 1) == 2);
    CHECK_THROWS_AS(degree(complete_graph(3), 3), InputError);

    // One isolated link with two streams: a 2-clique.
    GeoNetwork net;
    net.nodes = {{0, 0.1, 0.1}, {1, 0.2, 0.1}};
    net.tx_radius = net.interference_radius = 0.2;
    net.links = {{0, 1}};
    const auto sg = build_stream_graph(net, 2);
    REQUIRE(sg.graph.vertex_count() == 2);
    CHECK(degree(sg.graph, 0) == 1);
    CHECK(degree(sg.graph, 1) == 1);
}

TEST_CASE("induced_degree")
{
    const auto k4 = complete_graph(4);
    const ChosenSet all({0, 1, 2, 3});
    for (VertexId v = 0; v < 4; ++v)
        CHECK(induced_degree(k4, all, v) == 3);

    const auto p3 = path_graph(3);
    CHECK(induced_degree(p3, ChosenSet({0, 2}), 1) == 2);
    CHECK_THROWS_AS(induced_degree(p3, ChosenSet({0}), 7), InputError);

    SUBCASE("agrees with an explicit adjacency scan on random graphs")
    {
        std::mt19937_64 rng(11);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto g = random_graph(10, 0.4, seed);
            std::vector<VertexId> members;
            for (VertexId v = 0; v < 10; ++v)
                if (rng() & 1)
                    members.push_back(v);
            const ChosenSet s(members);
            for (VertexId v = 0; v < 10; ++v) {
                std::size_t expected = 0;
                for (VertexId u = 0; u < 10; ++u)
                    if (u != v && g.adjacent(u, v) && std::find(members.begin(), members.end(), u) != members.end())
                        ++expected;
                CHECK(induced_degree(g, s, v) == expected);
            }
        }
    }
}

TEST_CASE("structural invariants hold for random graphs")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = random_graph(25, 0.2, seed);
        const ChosenSet all = [&] {
            std::vector<VertexId> v(g.vertex_count());
            std::iota(v.begin(), v.end(), 0);
            return ChosenSet(v);
        }();
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            CHECK(induced_degree(g, all, v) == degree(g, v));
            auto nb = g.neighbors(v);
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
            for (VertexId u : nb) {
                CHECK(u != v);
                CHECK(g.adjacent(u, v));
            }
        }
    }
}

TEST_CASE("build rejects malformed input")
{
    CHECK_THROWS_AS(ContentionGraph::build(2, {{0, 0}}), InputError);
    CHECK_THROWS_AS(ContentionGraph::build(2, {{0, 2}}), InputError);
    CHECK_THROWS_AS(ContentionGraph::build(3, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(ContentionGraph::build(3, {{0, 1}}, {{0, {0, 1, 2}}}), InputError);
    CHECK_THROWS_AS(ContentionGraph::build(3, {{0, 1}, {1, 2}}, {{0, {0, 1}}, {1, {1, 2}}}), InputError);
    // family {0,1} not inside superfamily {1,2}
    CHECK_THROWS_AS(ContentionGraph::build(3, {{0, 1}, {1, 2}}, {{0, {0, 1}}}, {{5, {1, 2}}}), InputError);
}

TEST_CASE("parse_graph")
{
    SUBCASE("path")
    {
        const auto g = parse_graph("3 2\n0 1\n1 2\n");
        CHECK(g.vertex_count() == 3);
        CHECK(g == path_graph(3));
    }
    SUBCASE("family must be a clique")
    {
        try {
            parse_graph("3 1\n1 2\nfamily 0 : 0 1\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("family 0 is not a clique") != std::string::npos);
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("errors name the line")
    {
        auto line_of = [](const char* text) -> std::size_t {
            try {
                parse_graph(text);
            } catch (const ParseError& e) {
                return e.line();
            }
            return 0;
        };
        CHECK(line_of("3 2\n0 1\n2 1\n") == 3);          // u > v
        CHECK(line_of("# c\n3 2\n0 1\n0 x\n") == 4);     // malformed
        CHECK(line_of("3 2\n0 1\n0 1\n") == 3);          // duplicate
        CHECK(line_of("3 1\n0 5\n") == 2);               // out of range
        CHECK(line_of("3 2\n0 1\n") == 2);               // edge count
        CHECK(line_of("bogus\n") == 1);
        CHECK(line_of("") > 0);
    }
    SUBCASE("superfamily must be a clique")
    {
        CHECK_THROWS_AS(parse_graph("3 1\n0 1\nsuperfamily 4 : 0 2\n"), ParseError);
    }
}

TEST_CASE("serialize_graph round trip")
{
    const auto text = read_fixture("three_links.graph");
    const auto g = parse_graph(text);
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 11);
    CHECK(g.family_of(4) == 2);
    CHECK(g.superfamily_members(0) == std::vector<VertexId>{1, 2, 3});
    CHECK(g.same_superfamily(1, 2));
    CHECK_FALSE(g.same_superfamily(1, 4));

    CHECK(serialize_graph(g) == canonical(text));
    CHECK(parse_graph(serialize_graph(g)) == g);

    // Property: random graphs with random clique families survive a round trip.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = random_graph(15, 0.3, seed);
        std::vector<VertexGroup> fams;
        for (auto [u, v] : r.edges())
            if (fams.size() < 3 && std::none_of(fams.begin(), fams.end(), [&](const VertexGroup& f) {
                    return std::count(f.members.begin(), f.members.end(), u) ||
                           std::count(f.members.begin(), f.members.end(), v);
                }))
                fams.push_back({static_cast<std::int64_t>(fams.size() * 7), {u, v}});
        const auto g2 = ContentionGraph::build(15, r.edges(), fams);
        CHECK(parse_graph(serialize_graph(g2)) == g2);
    }
}
