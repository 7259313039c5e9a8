#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <set>

#include "lampsep/cayley.hpp"

using namespace lampsep;
using namespace lampsep::cayley;

namespace {

// Counts ball sizes per radius from the distance array.
std::vector<int> layer_prefix_sizes(const std::vector<int>& distance) {
    std::vector<int> sizes;
    for (const int d : distance) {
        if (d >= static_cast<int>(sizes.size())) sizes.resize(static_cast<std::size_t>(d) + 1, 0);
        ++sizes[static_cast<std::size_t>(d)];
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) sizes[i] += sizes[i - 1];
    return sizes;
}

BoundedDegreeGraph path_graph(int n) {
    BoundedDegreeGraph g;
    g.adj.resize(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i) {
        g.adj[static_cast<std::size_t>(i)].push_back(i + 1);
        g.adj[static_cast<std::size_t>(i + 1)].push_back(i);
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

} // namespace

TEST_CASE("ball growth matches independently computed sizes") {
    SUBCASE("two-state lamps") {
        const auto r = ball_of(LamplighterOps{2}, 8, default_vertex_cap);
        const std::vector<int> expect{1, 4, 10, 22, 44, 84, 155, 278, 490};
        CHECK(layer_prefix_sizes(r.distance) == expect);
        CHECK(r.graph.vertex_count() == 490);
    }
    SUBCASE("three-state lamps") {
        const auto r = ball_of(LamplighterOps{3}, 6, default_vertex_cap);
        const std::vector<int> expect{1, 5, 15, 41, 99, 229, 515};
        CHECK(layer_prefix_sizes(r.distance) == expect);
    }
    SUBCASE("integer lamps") {
        const auto r = ball_of(WreathZZOps{}, 4, default_vertex_cap);
        const std::vector<int> expect{1, 5, 17, 53, 153};
        CHECK(layer_prefix_sizes(r.distance) == expect);
    }
    SUBCASE("scaling extension p=2, q=1") {
        const auto r = ball_of(MpqOps{2, 1}, 4, default_vertex_cap);
        const std::vector<int> expect{1, 5, 17, 43, 93};
        CHECK(layer_prefix_sizes(r.distance) == expect);
    }
    SUBCASE("scaling extension p=3, q=2") {
        const auto r = ball_of(MpqOps{3, 2}, 4, default_vertex_cap);
        const std::vector<int> expect{1, 5, 17, 53, 139};
        CHECK(layer_prefix_sizes(r.distance) == expect);
    }
}

TEST_CASE("ball distances equal closed-form word lengths") {
    SUBCASE("two-state lamps") {
        const auto r = ball_of(LamplighterOps{2}, 6, default_vertex_cap);
        for (int v = 0; v < r.graph.vertex_count(); ++v)
            CHECK(groups::lamp_word_length(r.elements[static_cast<std::size_t>(v)]) ==
                  r.distance[static_cast<std::size_t>(v)]);
    }
    SUBCASE("three-state lamps") {
        const auto r = ball_of(LamplighterOps{3}, 5, default_vertex_cap);
        for (int v = 0; v < r.graph.vertex_count(); ++v)
            CHECK(groups::lamp_word_length(r.elements[static_cast<std::size_t>(v)]) ==
                  r.distance[static_cast<std::size_t>(v)]);
    }
    SUBCASE("integer lamps") {
        const auto r = ball_of(WreathZZOps{}, 4, default_vertex_cap);
        for (int v = 0; v < r.graph.vertex_count(); ++v)
            CHECK(groups::wreathzz_word_length(r.elements[static_cast<std::size_t>(v)]) ==
                  r.distance[static_cast<std::size_t>(v)]);
    }
}

TEST_CASE("ball structure") {
    const auto r = ball_of(LamplighterOps{2}, 3, default_vertex_cap);
    CHECK(r.graph.labels[0] == "lamps:{};pos:0");
    CHECK(r.distance[0] == 0);
    // First layer sorted by canonical encoding.
    CHECK(r.graph.labels[1] == "lamps:{0:1};pos:0");
    CHECK(r.graph.labels[2] == "lamps:{};pos:-1");
    CHECK(r.graph.labels[3] == "lamps:{};pos:1");
    CHECK(r.graph.max_degree() == 3);
    // The identity is adjacent to exactly the three generators.
    CHECK(r.graph.adj[0] == std::vector<int>{1, 2, 3});
    // The ball is connected.
    CHECK(connected_components(r.graph).size() == 1);
    // Every ball vertex at distance < radius has full degree.
    for (int v = 0; v < r.graph.vertex_count(); ++v)
        if (r.distance[static_cast<std::size_t>(v)] < 3)
            CHECK(r.graph.adj[static_cast<std::size_t>(v)].size() == 3);
    CHECK_NOTHROW(validate_graph(r.graph));
}

TEST_CASE("vertex cap is enforced") {
    CHECK_THROWS_AS(ball_of(LamplighterOps{2}, 5, 20), cap_exceeded_error);
    CHECK_NOTHROW(ball_of(LamplighterOps{2}, 2, 10));
    CHECK_THROWS_AS(ball_of(LamplighterOps{2}, -1, 10), precondition_error);
}

TEST_CASE("group spec dispatch") {
    CHECK(ball(make_group_spec("lamplighter", 2, 0, 0), 2).graph.vertex_count() == 10);
    CHECK(ball(make_group_spec("wreath-zz", 2, 0, 0), 2).graph.vertex_count() == 17);
    CHECK(ball(make_group_spec("mpq", 2, 2, 1), 2).graph.vertex_count() == 17);
    CHECK_THROWS_AS(make_group_spec("free", 2, 0, 0), precondition_error);
    CHECK_THROWS_AS(make_group_spec("lamplighter", 1, 0, 0), precondition_error);
    CHECK_THROWS_AS(make_group_spec("mpq", 2, 2, 4), precondition_error);
    CHECK(group_spec_name(make_group_spec("mpq", 2, 3, 2)) == "mpq(p=3,q=2)");
    const auto j = group_spec_to_json(make_group_spec("lamplighter", 3, 0, 0));
    CHECK(j.at("kind") == "lamplighter");
    CHECK(j.at("m") == 3);
}

TEST_CASE("graph validation catches broken invariants") {
    BoundedDegreeGraph g = path_graph(3);
    CHECK_NOTHROW(validate_graph(g));
    g.adj[0].push_back(2); // asymmetric edge
    CHECK_THROWS_AS(validate_graph(g), validation_error);
    BoundedDegreeGraph loop = path_graph(2);
    loop.adj[1].push_back(1);
    CHECK_THROWS_AS(validate_graph(loop), validation_error);
    BoundedDegreeGraph dup = path_graph(2);
    dup.adj[0] = {1, 1};
    CHECK_THROWS_AS(validate_graph(dup), validation_error);
}

TEST_CASE("components and induced subgraphs") {
    const BoundedDegreeGraph g = path_graph(5);
    CHECK(connected_components(g).size() == 1);
    const auto split = components_after_removal(g, {2});
    REQUIRE(split.size() == 2);
    CHECK(split[0] == VertexSubset{0, 1});
    CHECK(split[1] == VertexSubset{3, 4});

    const BoundedDegreeGraph sub = induced_subgraph(g, {0, 1, 3});
    CHECK(sub.vertex_count() == 3);
    CHECK(sub.edge_count() == 1); // only 0-1 survives
    CHECK(sub.adj[0] == std::vector<int>{1});
    CHECK(sub.adj[2].empty());
    CHECK_THROWS_AS(induced_subgraph(g, {1, 0}), precondition_error);
    CHECK_THROWS_AS(induced_subgraph(g, {0, 9}), precondition_error);
}

TEST_CASE("connected sampling is deterministic and connected") {
    const auto r = ball_of(LamplighterOps{2}, 5, default_vertex_cap);
    const VertexSubset a = sample_connected_subgraph(r.graph, 30, 42);
    const VertexSubset b = sample_connected_subgraph(r.graph, 30, 42);
    CHECK(a == b);
    CHECK(static_cast<int>(a.size()) == 30);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(connected_components(induced_subgraph(r.graph, a)).size() == 1);
    const VertexSubset c = sample_connected_subgraph(r.graph, 30, 43);
    CHECK(a != c); // different seed explores differently

    CHECK_NOTHROW(sample_connected_subgraph(r.graph, r.graph.vertex_count(), 1));
    CHECK_THROWS_AS(sample_connected_subgraph(r.graph, r.graph.vertex_count() + 1, 1),
                    precondition_error);
    CHECK_THROWS_AS(sample_connected_subgraph(r.graph, 0, 1), precondition_error);

    // Disconnected graph: requesting more than one component holds fails.
    BoundedDegreeGraph two;
    two.adj.resize(4);
    two.adj[0] = {1};
    two.adj[1] = {0};
    two.adj[2] = {3};
    two.adj[3] = {2};
    CHECK_THROWS_AS(sample_connected_subgraph(two, 3, 7), precondition_error);
}

TEST_CASE("edge list round trip") {
    const auto r = ball_of(LamplighterOps{2}, 3, default_vertex_cap);
    const std::string text = to_edgelist(r.graph);
    CHECK(text.substr(0, text.find('\n')) ==
          std::to_string(r.graph.vertex_count()) + " " + std::to_string(r.graph.edge_count()));
    const BoundedDegreeGraph back = parse_edgelist(text);
    CHECK(back.adj == r.graph.adj);
    CHECK_THROWS_AS(parse_edgelist("2 1\n0 2\n"), precondition_error);
    CHECK_THROWS_AS(parse_edgelist("2 2\n0 1\n"), precondition_error);
    CHECK_THROWS_AS(parse_edgelist("2 1\n0 1\n5\n"), precondition_error);
    CHECK_THROWS_AS(parse_edgelist("bogus"), precondition_error);
}

TEST_CASE("dot export") {
    const BoundedDegreeGraph g = path_graph(3);
    const std::string dot = to_dot(g, "P");
    CHECK(dot.find("graph P {") == 0);
    CHECK(dot.find("0 -- 1;") != std::string::npos);
    CHECK(dot.find("1 -- 2;") != std::string::npos);
    CHECK(dot.find("2 -- 0") == std::string::npos);

    const auto r = ball_of(LamplighterOps{2}, 1, default_vertex_cap);
    CHECK(to_dot(r.graph).find("label=\"lamps:{};pos:0\"") != std::string::npos);
}

TEST_CASE("graph json round trip") {
    const auto r = ball_of(LamplighterOps{2}, 3, default_vertex_cap);
    const nlohmann::json j = graph_to_json(r.graph);
    CHECK(j.at("vertices") == 22);
    const BoundedDegreeGraph back = graph_from_json(j);
    CHECK(back.adj == r.graph.adj);
    CHECK(back.labels == r.graph.labels);
    nlohmann::json bad = j;
    bad["edges"].push_back({0, 0});
    CHECK_THROWS_AS(graph_from_json(bad), precondition_error);
}
