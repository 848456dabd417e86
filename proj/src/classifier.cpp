#include "gazegraph/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "gazegraph/graph.hpp"

namespace gazegraph {

std::string to_string(Metric m) {
    return m == Metric::SScan ? "s_scan" : "s_scan_weighted";
}

Metric metric_from_string(const std::string& s) {
    if (s == "s_scan") return Metric::SScan;
    if (s == "s_scan_weighted") return Metric::SScanWeighted;
    throw ParseError("unknown metric '" + s + "' (expected 's_scan' or 's_scan_weighted')");
}

GroupGraphs build_group_graphs(const CohortDataset& ds, const std::string& group,
                               const std::optional<std::string>& exclude_subject, Level level,
                               const GraphBuildConfig& cfg) {
    // image -> scanpaths and fixations of all non-excluded group subjects
    std::map<std::string, std::vector<SemanticScanpath>> paths_by_image;
    std::map<std::string, std::vector<Fixation>> fixations_by_image;
    bool any_subject = false;

    for (const auto& [subject_id, data] : ds.subjects) {
        if (data.group != group) continue;
        if (exclude_subject && subject_id == *exclude_subject) continue;
        any_subject = true;
        for (const auto& [image_id, fixations] : data.fixations_by_image) {
            const auto scene_it = ds.scenes.find(image_id);
            if (scene_it == ds.scenes.end())
                throw InputError("no scene for image '" + image_id + "'");
            auto& pool = fixations_by_image[image_id];
            pool.insert(pool.end(), fixations.begin(), fixations.end());
            try {
                auto sp = build_object_scanpath(fixations, scene_it->second, cfg.tolerance_px);
                if (level == Level::Attribute) sp = to_attribute_scanpath(sp, scene_it->second);
                paths_by_image[image_id].push_back(std::move(sp));
            } catch (const EmptyScanpathError&) {
                // subject contributed nothing usable on this image
            }
        }
    }
    if (!any_subject)
        throw EmptyGroupError("group '" + group + "' has no non-excluded subject");

    GroupGraphs graphs;
    for (auto& [image_id, paths] : paths_by_image) {
        const Scene& scene = ds.scenes.at(image_id);
        ImageGraphs ig;
        ig.graph = build_attention_graph(paths);
        ig.scores = normalize_score_graph(ig.graph);
        if (cfg.with_saliency) {
            const auto density = fixation_density(fixations_by_image.at(image_id), image_id,
                                                  scene.width, scene.height, cfg.sigma_px);
            ig.saliency = object_saliency(density, scene, level);
        }
        graphs.emplace(image_id, std::move(ig));
    }
    if (graphs.empty())
        throw EmptyGroupError("group '" + group + "' yielded no usable scanpath on any image");
    return graphs;
}

std::map<std::string, SemanticScanpath> build_subject_scanpaths(const CohortDataset& ds,
                                                                const std::string& subject_id,
                                                                Level level,
                                                                const GraphBuildConfig& cfg) {
    const auto it = ds.subjects.find(subject_id);
    if (it == ds.subjects.end()) throw InputError("unknown subject '" + subject_id + "'");

    std::map<std::string, SemanticScanpath> paths;
    for (const auto& [image_id, fixations] : it->second.fixations_by_image) {
        const auto scene_it = ds.scenes.find(image_id);
        if (scene_it == ds.scenes.end())
            throw InputError("no scene for image '" + image_id + "'");
        try {
            auto sp = build_object_scanpath(fixations, scene_it->second, cfg.tolerance_px);
            if (level == Level::Attribute) sp = to_attribute_scanpath(sp, scene_it->second);
            paths.emplace(image_id, std::move(sp));
        } catch (const EmptyScanpathError&) {
        }
    }
    return paths;
}

namespace {

double score_against(const SemanticScanpath& path, const ImageGraphs& ig, Metric metric) {
    if (metric == Metric::SScan) return score_scanpath(path, ig.scores).value;
    return score_scanpath_weighted(path, ig.scores, ig.saliency).value;
}

} // namespace

ClassifyOutcome classify_subject(const std::map<std::string, SemanticScanpath>& subject_paths,
                                 const GroupGraphs& graphs_a, const GroupGraphs& graphs_b,
                                 const std::string& label_a, const std::string& label_b,
                                 Metric metric) {
    ClassifyOutcome outcome;
    for (const auto& [image_id, path] : subject_paths) {
        const auto ita = graphs_a.find(image_id);
        const auto itb = graphs_b.find(image_id);
        if (ita == graphs_a.end() || itb == graphs_b.end() || path.terms.size() < 2) {
            ++outcome.skipped;
            continue;
        }
        const double score_a = score_against(path, ita->second, metric);
        const double score_b = score_against(path, itb->second, metric);
        if (score_a == score_b) {
            ++outcome.skipped; // tie carries no information
            continue;
        }
        if (score_a > score_b)
            ++outcome.votes_a;
        else
            ++outcome.votes_b;
        outcome.margin_sum += score_a - score_b;
    }
    if (outcome.votes_a + outcome.votes_b == 0)
        throw UnclassifiableError("no scoreable image for subject");

    if (outcome.votes_a != outcome.votes_b)
        outcome.predicted = outcome.votes_a > outcome.votes_b ? label_a : label_b;
    else if (outcome.margin_sum != 0.0)
        outcome.predicted = outcome.margin_sum > 0.0 ? label_a : label_b;
    else
        outcome.predicted = label_a;
    return outcome;
}

std::string ClassificationReport::format_accuracy() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f (%d/%d)", accuracy, correct, total);
    return buf;
}

ClassificationReport loso_evaluate(const CohortDataset& ds, Level level, Metric metric,
                                   const GraphBuildConfig& cfg) {
    int count_a = 0;
    int count_b = 0;
    for (const auto& [id, data] : ds.subjects) {
        if (data.group == ds.group_a)
            ++count_a;
        else if (data.group == ds.group_b)
            ++count_b;
        else
            throw InputError("subject '" + id + "' has group '" + data.group +
                             "' which is neither '" + ds.group_a + "' nor '" + ds.group_b + "'");
    }
    if (count_a < 2 || count_b < 2)
        throw InputError("leave-one-subject-out needs at least two subjects per group");

    GraphBuildConfig build_cfg = cfg;
    build_cfg.with_saliency = metric == Metric::SScanWeighted;

    // The held-out subject never contributed to the opposite group, so its
    // graphs are built once and shared across folds.
    const GroupGraphs full_a = build_group_graphs(ds, ds.group_a, std::nullopt, level, build_cfg);
    const GroupGraphs full_b = build_group_graphs(ds, ds.group_b, std::nullopt, level, build_cfg);

    ClassificationReport report;
    for (const auto& [subject_id, data] : ds.subjects) {
        const bool in_a = data.group == ds.group_a;
        const GroupGraphs own =
            build_group_graphs(ds, data.group, subject_id, level, build_cfg);
        const GroupGraphs& graphs_a = in_a ? own : full_a;
        const GroupGraphs& graphs_b = in_a ? full_b : own;

        SubjectResult result;
        result.true_group = data.group;
        const auto paths = build_subject_scanpaths(ds, subject_id, level, build_cfg);
        try {
            const auto outcome =
                classify_subject(paths, graphs_a, graphs_b, ds.group_a, ds.group_b, metric);
            result.predicted_group = outcome.predicted;
            result.votes_a = outcome.votes_a;
            result.votes_b = outcome.votes_b;
            result.skipped = outcome.skipped;
        } catch (const UnclassifiableError&) {
            result.skipped = static_cast<int>(paths.size());
        }
        if (result.predicted_group == result.true_group) ++report.correct;
        ++report.total;
        report.per_subject.emplace(subject_id, std::move(result));
    }
    report.accuracy = report.total == 0 ? 0.0 : double(report.correct) / double(report.total);
    return report;
}

std::pair<double, double> welch_t_test(const std::vector<double>& a,
                                       const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw InputError("Welch t test needs at least two samples per group");
    const auto n1 = static_cast<double>(a.size());
    const auto n2 = static_cast<double>(b.size());
    double m1 = 0.0, m2 = 0.0;
    for (const double v : a) m1 += v;
    for (const double v : b) m2 += v;
    m1 /= n1;
    m2 /= n2;
    double s1 = 0.0, s2 = 0.0;
    for (const double v : a) s1 += (v - m1) * (v - m1);
    for (const double v : b) s2 += (v - m2) * (v - m2);
    s1 /= n1 - 1.0;
    s2 /= n2 - 1.0;

    const double se2 = s1 / n1 + s2 / n2;
    if (se2 == 0.0) {
        // degenerate: no variance at all; equal means give t = 0
        const double t = m1 == m2 ? 0.0
                                  : std::copysign(std::numeric_limits<double>::infinity(),
                                                  m1 - m2);
        return {t, n1 + n2 - 2.0};
    }
    const double t = (m1 - m2) / std::sqrt(se2);
    const double dof = se2 * se2 /
                       ((s1 / n1) * (s1 / n1) / (n1 - 1.0) + (s2 / n2) * (s2 / n2) / (n2 - 1.0));
    return {t, dof};
}

GroupIntensityReport group_node_intensity(const CohortDataset& ds, const std::string& group,
                                          Level level, const GraphBuildConfig& cfg) {
    const std::string other = group == ds.group_a ? ds.group_b : ds.group_a;

    GraphBuildConfig build_cfg = cfg;
    build_cfg.with_saliency = false; // intensities use counts only

    GroupIntensityReport report;
    report.group = group;
    report.other_group = other;

    std::vector<double> ours;
    std::vector<double> theirs;
    for (const auto& [image_id, ig] : build_group_graphs(ds, group, std::nullopt, level, build_cfg)) {
        const auto intensity = node_intensity(ig.graph);
        report.intensities[image_id] = intensity;
        ours.push_back(static_cast<double>(intensity));
    }
    for (const auto& [image_id, ig] : build_group_graphs(ds, other, std::nullopt, level, build_cfg)) {
        const auto intensity = node_intensity(ig.graph);
        report.other_intensities[image_id] = intensity;
        theirs.push_back(static_cast<double>(intensity));
    }

    for (const double v : ours) report.mean += v;
    if (!ours.empty()) report.mean /= static_cast<double>(ours.size());
    for (const double v : theirs) report.other_mean += v;
    if (!theirs.empty()) report.other_mean /= static_cast<double>(theirs.size());

    if (ours.size() >= 2 && theirs.size() >= 2) {
        const auto [t, dof] = welch_t_test(ours, theirs);
        report.welch_t = t;
        report.welch_dof = dof;
    }
    return report;
}

} // namespace gazegraph
