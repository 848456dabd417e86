#include <doctest.h>

#include <cmath>
#include <random>

#include "gazegraph/classifier.hpp"
#include "gazegraph/graph.hpp"
#include "gazegraph/rng.hpp"
#include "helpers.hpp"

using namespace gazegraph;
using namespace testutil;

namespace {

// cohort over `n_images` copies of a 2x2 block scene with objects 1..4
CohortDataset make_cohort(int n_images) {
    CohortDataset ds;
    ds.group_a = "A";
    ds.group_b = "B";
    for (int i = 0; i < n_images; ++i) {
        const std::string image_id = "img" + std::to_string(i);
        ds.scenes.emplace(image_id, make_block_scene(image_id, 40, 40, 2, {1, 2, 3, 4}));
    }
    return ds;
}

void add_subject(CohortDataset& ds, const std::string& subject_id, const std::string& group,
                 const std::vector<int>& object_path) {
    auto& subject = ds.subjects[subject_id];
    subject.group = group;
    for (const auto& [image_id, scene] : ds.scenes)
        subject.fixations_by_image[image_id] =
            fixations_for_path(scene, subject_id, object_path);
}

GraphBuildConfig fast_cfg() {
    GraphBuildConfig cfg;
    cfg.with_saliency = false;
    return cfg;
}

} // namespace

TEST_CASE("build_group_graphs: single subject, single image") {
    auto ds = make_cohort(1);
    add_subject(ds, "s1", "A", {1, 2});
    add_subject(ds, "sB", "B", {3, 4});
    const auto graphs = build_group_graphs(ds, "A", std::nullopt, Level::Object, fast_cfg());
    REQUIRE(graphs.size() == 1);
    const auto& g = graphs.at("img0").graph;
    CHECK(g.edge_counts.size() == 1);
    CHECK(g.edge_counts.at({"1", "2"}) == 1);
    CHECK(graphs.at("img0").scores.scores.at({"1", "2"}) == 1.0);
}

TEST_CASE("build_group_graphs: excluding the only subject raises") {
    auto ds = make_cohort(1);
    add_subject(ds, "s1", "A", {1, 2});
    CHECK_THROWS_AS(build_group_graphs(ds, "A", std::optional<std::string>("s1"), Level::Object,
                                       fast_cfg()),
                    EmptyGroupError);
    CHECK_THROWS_AS(build_group_graphs(ds, "C", std::nullopt, Level::Object, fast_cfg()),
                    EmptyGroupError);
}

TEST_CASE("build_group_graphs: pooled counts equal the sum of per-subject counts") {
    std::mt19937_64 rng(31);
    auto ds = make_cohort(3);
    const int n_subjects = 5;
    for (int s = 0; s < n_subjects; ++s) {
        std::vector<int> path;
        int prev = 0;
        for (int i = 0; i < 8; ++i) {
            int next;
            do {
                next = 1 + int(uniform_index(rng, 4));
            } while (next == prev);
            path.push_back(next);
            prev = next;
        }
        add_subject(ds, "s" + std::to_string(s), "A", path);
    }
    add_subject(ds, "other", "B", {1, 2});

    const auto pooled = build_group_graphs(ds, "A", std::nullopt, Level::Object, fast_cfg());
    for (const auto& [image_id, ig] : pooled) {
        EdgeCounts summed;
        for (int s = 0; s < n_subjects; ++s) {
            CohortDataset solo = ds;
            solo.subjects.clear();
            solo.subjects["s" + std::to_string(s)] = ds.subjects.at("s" + std::to_string(s));
            const auto one =
                build_group_graphs(solo, "A", std::nullopt, Level::Object, fast_cfg());
            for (const auto& [edge, count] : one.at(image_id).graph.edge_counts)
                summed[edge] += count;
        }
        CHECK(ig.graph.edge_counts == summed);
    }
}

TEST_CASE("leave-one-out hygiene: the excluded subject's shifts are absent") {
    auto ds = make_cohort(2);
    add_subject(ds, "s1", "A", {1, 2, 1});
    add_subject(ds, "s2", "A", {1, 2});
    add_subject(ds, "marker", "A", {3, 4, 3}); // shifts nobody else makes
    add_subject(ds, "b1", "B", {1, 2});

    const auto with = build_group_graphs(ds, "A", std::nullopt, Level::Object, fast_cfg());
    CHECK(with.at("img0").graph.edge_counts.contains({"3", "4"}));

    const auto without =
        build_group_graphs(ds, "A", std::optional<std::string>("marker"), Level::Object,
                           fast_cfg());
    for (const auto& [image_id, ig] : without) {
        CHECK_FALSE(ig.graph.edge_counts.contains({"3", "4"}));
        CHECK_FALSE(ig.graph.nodes.contains("3"));
        // and the count deltas are exactly the marker's own shifts
        CHECK(node_intensity(with.at(image_id).graph) -
                  node_intensity(ig.graph) == 2);
    }
}

TEST_CASE("classify_subject: majority vote, ties skipped, margins break vote ties") {
    auto ds = make_cohort(5);
    add_subject(ds, "a1", "A", {1, 2, 1, 2});
    add_subject(ds, "a2", "A", {1, 2, 1});
    add_subject(ds, "b1", "B", {3, 4, 3, 4});
    add_subject(ds, "b2", "B", {3, 4, 3});

    const auto graphs_a = build_group_graphs(ds, "A", std::nullopt, Level::Object, fast_cfg());
    const auto graphs_b = build_group_graphs(ds, "B", std::nullopt, Level::Object, fast_cfg());

    // a fresh A-like subject votes A on every image
    CohortDataset probe = ds;
    add_subject(probe, "x", "A", {1, 2, 1});
    const auto paths = build_subject_scanpaths(probe, "x", Level::Object, fast_cfg());
    const auto outcome = classify_subject(paths, graphs_a, graphs_b, "A", "B", Metric::SScan);
    CHECK(outcome.predicted == "A");
    CHECK(outcome.votes_a == 5);
    CHECK(outcome.votes_b == 0);
    CHECK(outcome.skipped == 0);

    // disjoint edge sets: the other group's graphs score 0 everywhere
    for (const auto& [image_id, path] : paths) {
        CHECK(score_scanpath(path, graphs_b.at(image_id).scores).value == 0.0);
        CHECK(score_scanpath(path, graphs_a.at(image_id).scores).value > 0.0);
    }

    // a subject scoring identically on both sides is unclassifiable
    CohortDataset tied = ds;
    add_subject(tied, "t", "A", {2, 3}); // edge 2->3 exists in neither graph
    const auto tied_paths = build_subject_scanpaths(tied, "t", Level::Object, fast_cfg());
    CHECK_THROWS_AS(
        classify_subject(tied_paths, graphs_a, graphs_b, "A", "B", Metric::SScan),
        UnclassifiableError);
}

TEST_CASE("classify_subject: images with equal scores never change the prediction") {
    auto ds = make_cohort(3);
    add_subject(ds, "a1", "A", {1, 2, 1});
    add_subject(ds, "a2", "A", {1, 2});
    add_subject(ds, "b1", "B", {3, 4, 3});
    add_subject(ds, "b2", "B", {3, 4});

    auto graphs_a = build_group_graphs(ds, "A", std::nullopt, Level::Object, fast_cfg());
    auto graphs_b = build_group_graphs(ds, "B", std::nullopt, Level::Object, fast_cfg());

    CohortDataset probe = ds;
    add_subject(probe, "x", "A", {1, 2});
    const auto paths = build_subject_scanpaths(probe, "x", Level::Object, fast_cfg());
    const auto base = classify_subject(paths, graphs_a, graphs_b, "A", "B", Metric::SScan);

    // give both groups an identical graph on an extra image
    const std::string extra = "extra";
    CohortDataset with_extra = probe;
    with_extra.scenes.emplace(extra, make_block_scene(extra, 40, 40, 2, {1, 2, 3, 4}));
    auto& subject = with_extra.subjects.at("x");
    subject.fixations_by_image[extra] =
        fixations_for_path(with_extra.scenes.at(extra), "x", {1, 2});
    ImageGraphs same;
    same.graph = graphs_a.begin()->second.graph;
    same.scores = graphs_a.begin()->second.scores;
    graphs_a.emplace(extra, same);
    graphs_b.emplace(extra, same);

    const auto paths2 = build_subject_scanpaths(with_extra, "x", Level::Object, fast_cfg());
    const auto with_tie = classify_subject(paths2, graphs_a, graphs_b, "A", "B", Metric::SScan);
    CHECK(with_tie.predicted == base.predicted);
    CHECK(with_tie.votes_a == base.votes_a); // the equal-scoring image is skipped
    CHECK(with_tie.skipped == base.skipped + 1);
}

TEST_CASE("loso_evaluate: separable cohorts reach accuracy 1.0") {
    auto ds = make_cohort(6);
    for (int s = 0; s < 4; ++s) add_subject(ds, "a" + std::to_string(s), "A", {1, 2, 1, 2});
    for (int s = 0; s < 4; ++s) add_subject(ds, "b" + std::to_string(s), "B", {3, 4, 3, 4});

    const auto report = loso_evaluate(ds, Level::Object, Metric::SScan, fast_cfg());
    CHECK(report.accuracy == 1.0);
    CHECK(report.correct == 8);
    CHECK(report.total == 8);
    CHECK(report.format_accuracy() == "1.00 (8/8)");
    for (const auto& [subject_id, r] : report.per_subject) {
        CHECK(r.predicted_group == r.true_group);
        CHECK(r.votes_a + r.votes_b + r.skipped == 6);
    }
}

TEST_CASE("loso_evaluate needs two subjects per group") {
    auto ds = make_cohort(2);
    add_subject(ds, "a1", "A", {1, 2});
    add_subject(ds, "b1", "B", {3, 4});
    add_subject(ds, "b2", "B", {3, 4});
    CHECK_THROWS_AS(loso_evaluate(ds, Level::Object, Metric::SScan, fast_cfg()), InputError);
}

TEST_CASE("group_node_intensity: means and Welch statistic") {
    auto ds = make_cohort(4);
    // group A: 10 shifts per image per graph (2 subjects x 5 shifts)
    add_subject(ds, "a1", "A", {1, 2, 1, 2, 1, 2});
    add_subject(ds, "a2", "A", {2, 1, 2, 1, 2, 1});
    // group B: 5 shifts per image (1 subject with 5 shifts... needs 2 subjects)
    add_subject(ds, "b1", "B", {3, 4, 3});
    add_subject(ds, "b2", "B", {4, 3, 4});

    const auto report = group_node_intensity(ds, "A", Level::Object, fast_cfg());
    CHECK(report.mean == doctest::Approx(10.0));
    CHECK(report.other_mean == doctest::Approx(4.0));
    for (const auto& [image_id, v] : report.intensities) CHECK(v == 10);
    for (const auto& [image_id, v] : report.other_intensities) CHECK(v == 4);

    // identical groups: zero mean difference
    auto same = make_cohort(3);
    add_subject(same, "a1", "A", {1, 2});
    add_subject(same, "a2", "A", {2, 3});
    add_subject(same, "b1", "B", {1, 2});
    add_subject(same, "b2", "B", {2, 3});
    const auto eq = group_node_intensity(same, "A", Level::Object, fast_cfg());
    CHECK(eq.mean == eq.other_mean);

    // Welch statistic against the reference formula
    std::mt19937_64 rng(8);
    std::vector<double> xs, ys;
    for (int i = 0; i < 12; ++i) xs.push_back(uniform_double(rng) * 10);
    for (int i = 0; i < 9; ++i) ys.push_back(uniform_double(rng) * 8 + 1);
    const auto [t, dof] = welch_t_test(xs, ys);
    const auto [ot, odof] = oracle_welch(xs, ys);
    CHECK(t == doctest::Approx(ot).epsilon(1e-12));
    CHECK(dof == doctest::Approx(odof).epsilon(1e-12));
}

TEST_CASE("loso hygiene end to end: a subject's data never scores itself") {
    // every A subject shares path [1,2]; the marker adds a unique 2->4 shift.
    // if the marker leaked into its own fold the 2->4 edge would score 1.0
    // against "its" group graph; with hygiene it scores 0 on both sides.
    auto ds = make_cohort(2);
    add_subject(ds, "a1", "A", {1, 2});
    add_subject(ds, "a2", "A", {1, 2});
    add_subject(ds, "marker", "A", {2, 4});
    add_subject(ds, "b1", "B", {1, 2});
    add_subject(ds, "b2", "B", {1, 2});

    const auto report = loso_evaluate(ds, Level::Object, Metric::SScan, fast_cfg());
    const auto& marker = report.per_subject.at("marker");
    CHECK(marker.predicted_group.empty()); // 0 vs 0 on every image -> unclassifiable
    CHECK(marker.votes_a == 0);
    CHECK(marker.votes_b == 0);
}
