#include <doctest.h>

#include <algorithm>
#include <random>

#include "gazegraph/graph.hpp"
#include "gazegraph/io.hpp"
#include "gazegraph/rng.hpp"
#include "helpers.hpp"

using namespace gazegraph;
using namespace testutil;

namespace {

SemanticScanpath path_of(const std::string& image, const std::string& obs,
                         std::vector<NodeKey> terms, Level level = Level::Object) {
    SemanticScanpath sp;
    sp.image_id = image;
    sp.observer_id = obs;
    sp.level = level;
    sp.terms = std::move(terms);
    for (std::size_t i = 0; i < sp.terms.size(); ++i)
        sp.source_spans.push_back({int(i), int(i)});
    return sp;
}

} // namespace

TEST_CASE("build_attention_graph counts consecutive pairs") {
    const std::vector<SemanticScanpath> paths{path_of("img", "o1", {"1", "2", "1"})};
    const auto g = build_attention_graph(paths);
    CHECK(g.observer_count == 1);
    CHECK(g.nodes == NodeSet{"1", "2"});
    REQUIRE(g.edge_counts.size() == 2);
    CHECK(g.edge_counts.at({"1", "2"}) == 1);
    CHECK(g.edge_counts.at({"2", "1"}) == 1);
    CHECK(node_intensity(g) == 2);
}

TEST_CASE("single-term scanpath contributes a self-loop") {
    const std::vector<SemanticScanpath> paths{path_of("img", "o1", {"3"})};
    const auto g = build_attention_graph(paths);
    REQUIRE(g.edge_counts.size() == 1);
    CHECK(g.edge_counts.at({"3", "3"}) == 1);
    CHECK(node_intensity(g) == 1);
}

TEST_CASE("build_attention_graph rejects mixed inputs") {
    std::vector<SemanticScanpath> paths{path_of("img", "o1", {"1", "2"}),
                                        path_of("other", "o2", {"1", "2"})};
    CHECK_THROWS_AS(build_attention_graph(paths), InputError);
    paths[1] = path_of("img", "o2", {"Touch"}, Level::Attribute);
    CHECK_THROWS_AS(build_attention_graph(paths), InputError);
    CHECK_THROWS_AS(build_attention_graph(std::vector<SemanticScanpath>{}), InputError);
}

TEST_CASE("edge_probability uses per-source outgoing totals") {
    // 4 shifts I->B, 5 shifts I->C pooled over observers: P(I->B) = 4/9
    std::vector<SemanticScanpath> paths;
    for (int i = 0; i < 4; ++i)
        paths.push_back(path_of("img", "o" + std::to_string(i), {"9", "2"}));
    for (int i = 0; i < 5; ++i)
        paths.push_back(path_of("img", "p" + std::to_string(i), {"9", "3"}));
    const auto g = build_attention_graph(paths);
    CHECK(edge_probability(g, "9", "2") == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    CHECK(edge_probability(g, "9", "3") == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(edge_probability(g, "9", "9") == 0.0);  // absent edge
    CHECK(edge_probability(g, "2", "9") == 0.0);  // node with no outgoing edge
    CHECK_THROWS_AS(edge_probability(g, "77", "2"), UnknownNodeError);

    const std::vector<SemanticScanpath> one{path_of("img", "o", {"1", "2"})};
    CHECK(edge_probability(build_attention_graph(one), "1", "2") == 1.0);
}

TEST_CASE("normalize_score_graph divides by the per-source maximum") {
    AttentionGraph g;
    g.image_id = "img";
    g.nodes = {"1", "2", "3"};
    g.edge_counts[{"1", "2"}] = 4;
    g.edge_counts[{"1", "3"}] = 2;
    g.observer_count = 1;
    const auto sg = normalize_score_graph(g);
    CHECK(sg.scores.at({"1", "2"}) == 1.0);
    CHECK(sg.scores.at({"1", "3"}) == 0.5);
    CHECK(sg.scores.size() == g.edge_counts.size());

    g.edge_counts.clear();
    g.edge_counts[{"1", "2"}] = 3;
    g.edge_counts[{"1", "3"}] = 3;
    const auto tied = normalize_score_graph(g);
    CHECK(tied.scores.at({"1", "2"}) == 1.0);
    CHECK(tied.scores.at({"1", "3"}) == 1.0);

    g.edge_counts.clear();
    g.edge_counts[{"2", "3"}] = 7;
    CHECK(normalize_score_graph(g).scores.at({"2", "3"}) == 1.0);
}

TEST_CASE("merge_to_attribute_graph sums counts and keeps self-loops") {
    const auto scene = make_block_scene("img", 40, 10, 4, {1, 2, 3, 4},
                                        {{1, {"Touch"}},
                                         {2, {"Touch"}},
                                         {3, {"Smell"}},
                                         {4, {"Smell"}}});
    AttentionGraph g;
    g.image_id = "img";
    g.nodes = {"1", "2", "3"};
    g.edge_counts[{"1", "2"}] = 2; // same attribute -> self-loop
    g.edge_counts[{"1", "3"}] = 3; // Touch -> Smell
    g.observer_count = 2;

    const auto merged = merge_to_attribute_graph(g, scene);
    CHECK(merged.level == Level::Attribute);
    CHECK(merged.observer_count == 2);
    CHECK(merged.nodes == NodeSet{"Smell", "Touch"});
    CHECK(merged.edge_counts.at({"Touch", "Touch"}) == 2);
    CHECK(merged.edge_counts.at({"Touch", "Smell"}) == 3);
    CHECK(node_intensity(merged) == node_intensity(g));

    // disjoint attributes: isomorphic relabeling
    const auto scene2 = make_block_scene("img", 40, 10, 4, {1, 2, 3, 4},
                                         {{1, {"A"}}, {2, {"B"}}, {3, {"C"}}, {4, {"D"}}});
    const auto relabeled = merge_to_attribute_graph(g, scene2);
    CHECK(relabeled.edge_counts.at({"A", "B"}) == 2);
    CHECK(relabeled.edge_counts.at({"A", "C"}) == 3);
    CHECK(relabeled.edge_counts.size() == g.edge_counts.size());

    AttentionGraph bad = g;
    bad.nodes.insert("99");
    CHECK_THROWS_AS(merge_to_attribute_graph(bad, scene), UnknownObjectError);
}

TEST_CASE("merged graph differs from rebuilt attribute scanpaths only in merged runs") {
    const auto scene = make_block_scene("img", 40, 10, 4, {1, 2, 3, 4},
                                        {{1, {"Touch"}},
                                         {2, {"Touch"}},
                                         {3, {"Smell"}},
                                         {4, {"Smell"}}});
    // object path 1 -> 2 -> 3: attribute path collapses Touch,Touch to one term
    const auto obj_paths = std::vector<SemanticScanpath>{path_of("img", "o", {"1", "2", "3"})};
    const auto merged = merge_to_attribute_graph(build_attention_graph(obj_paths), scene);
    const auto sp_att = to_attribute_scanpath(obj_paths[0], scene);
    const auto rebuilt = build_attention_graph(std::vector<SemanticScanpath>{sp_att});

    CHECK(merged.edge_counts.at({"Touch", "Touch"}) == 1); // kept as self-loop
    CHECK_FALSE(rebuilt.edge_counts.contains({"Touch", "Touch"}));
    CHECK(merged.edge_counts.at({"Touch", "Smell"}) ==
          rebuilt.edge_counts.at({"Touch", "Smell"}));
}

TEST_CASE("node_intensity sums counts; empty graph is 0") {
    CHECK(node_intensity(AttentionGraph{}) == 0);
}

TEST_CASE("property: probabilities sum to 1, scores max at 1, permutation invariance") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_graph(rng);
        for (const auto& u : g.nodes) {
            double sum = 0.0;
            double max_score = 0.0;
            bool has_out = false;
            const auto sg = normalize_score_graph(g);
            for (const auto& v : g.nodes) {
                sum += edge_probability(g, u, v);
                const auto it = sg.scores.find(EdgeKey{u, v});
                if (it != sg.scores.end()) {
                    has_out = true;
                    max_score = std::max(max_score, it->second);
                }
            }
            if (has_out) {
                CHECK(std::abs(sum - 1.0) <= 1e-12);
                CHECK(max_score == 1.0);
            }
        }
    }

    // permutation invariance over the scanpath list
    std::vector<SemanticScanpath> paths;
    for (int i = 0; i < 6; ++i)
        paths.push_back(path_of("img", "o" + std::to_string(i),
                                {object_node_key(1 + i % 3), object_node_key(1 + (i + 1) % 3)}));
    const auto g1 = build_attention_graph(paths);
    std::reverse(paths.begin(), paths.end());
    auto g2 = build_attention_graph(paths);
    CHECK(g1.edge_counts == g2.edge_counts);
    CHECK(g1.nodes == g2.nodes);

    // intensity identity: sum over observers of (len - 1), single terms count 1
    std::vector<SemanticScanpath> mixed{path_of("img", "a", {"1", "2", "3", "1"}),
                                        path_of("img", "b", {"2"}),
                                        path_of("img", "c", {"3", "2"})};
    CHECK(node_intensity(build_attention_graph(mixed)) == 3 + 1 + 1);
}

TEST_CASE("sample_scanpath: forced chain, max_len 1, determinism") {
    AttentionGraph g;
    g.image_id = "img";
    g.nodes = {"1", "2", "3"};
    g.edge_counts[{"1", "2"}] = 5;
    g.edge_counts[{"2", "3"}] = 2;
    g.observer_count = 1;

    const auto walk = sample_scanpath(g, "1", 3, 42);
    CHECK(walk.terms == std::vector<NodeKey>{"1", "2", "3"});
    const auto stopped = sample_scanpath(g, "1", 10, 42);
    CHECK(stopped.terms == std::vector<NodeKey>{"1", "2", "3"}); // 3 has no successor

    CHECK(sample_scanpath(g, "2", 1, 7).terms == std::vector<NodeKey>{"2"});
    CHECK_THROWS_AS(sample_scanpath(g, "9", 3, 0), UnknownNodeError);
    CHECK_THROWS_AS(sample_scanpath(g, "1", 0, 0), InputError);

    std::mt19937_64 rng(5);
    const auto big = random_graph(rng);
    const NodeKey start = *big.nodes.begin();
    const auto w1 = sample_scanpath(big, start, 20, 123);
    const auto w2 = sample_scanpath(big, start, 20, 123);
    CHECK(w1 == w2);
    for (std::size_t i = 0; i + 1 < w1.terms.size(); ++i)
        CHECK(big.edge_counts.contains({w1.terms[i], w1.terms[i + 1]}));
}

TEST_CASE("sample_scanpath successor frequencies follow edge probabilities") {
    AttentionGraph g;
    g.image_id = "img";
    g.nodes = {"1", "2", "3"};
    g.edge_counts[{"1", "2"}] = 4;
    g.edge_counts[{"1", "3"}] = 5;
    g.observer_count = 9;

    int hits = 0;
    const int n = 20000;
    for (int seed = 0; seed < n; ++seed)
        hits += sample_scanpath(g, "1", 2, seed).terms[1] == "2";
    CHECK(double(hits) / n == doctest::Approx(4.0 / 9.0).epsilon(0.03));
}
