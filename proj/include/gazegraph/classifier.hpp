#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gazegraph/metrics.hpp"
#include "gazegraph/scanpath.hpp"
#include "gazegraph/types.hpp"

namespace gazegraph {

enum class Metric { SScan, SScanWeighted };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);

/// Per-subject eye-tracking data: the subject's group and its fixation
/// sequence on each viewed image.
struct SubjectData {
    std::string group;
    std::map<std::string, std::vector<Fixation>> fixations_by_image;
};

/// Two labeled cohorts viewing a shared set of scenes.
struct CohortDataset {
    std::string group_a;
    std::string group_b;
    std::map<std::string, SubjectData> subjects;
    std::map<std::string, Scene> scenes;
};

struct GraphBuildConfig {
    double tolerance_px = kDefaultTolerancePx;
    double sigma_px = kDefaultSigmaPx;
    bool with_saliency = true; // skip density maps when only S_scan is needed
};

/// Everything needed to score a path against one group on one image.
struct ImageGraphs {
    AttentionGraph graph;
    ScoreGraph scores;
    ObjectSaliency saliency;
};
using GroupGraphs = std::map<std::string, ImageGraphs>; // by image id

/// Builds one group's per-image attention graphs, score graphs and group
/// saliency, pooling every non-excluded subject of the group. Images where
/// no subject retained a scanpath are absent from the result. Throws
/// EmptyGroupError when nothing is buildable.
GroupGraphs build_group_graphs(const CohortDataset& ds, const std::string& group,
                               const std::optional<std::string>& exclude_subject, Level level,
                               const GraphBuildConfig& cfg);

/// Builds one subject's scanpaths at the given level, skipping images where
/// everything was discarded.
std::map<std::string, SemanticScanpath> build_subject_scanpaths(const CohortDataset& ds,
                                                                const std::string& subject_id,
                                                                Level level,
                                                                const GraphBuildConfig& cfg);

/// Votes one subject between the two groups: each image scores the subject's
/// path against both groups' score graphs and votes for the higher one.
/// Equal scores, degenerate paths and images lacking a graph on either side
/// are skipped. Vote ties break to the larger summed score margin, then to
/// group a. Throws UnclassifiableError when no image was scoreable.
struct ClassifyOutcome {
    std::string predicted;
    int votes_a = 0;
    int votes_b = 0;
    int skipped = 0;
    double margin_sum = 0.0; // sum over voted images of (score_a - score_b)
};
ClassifyOutcome classify_subject(const std::map<std::string, SemanticScanpath>& subject_paths,
                                 const GroupGraphs& graphs_a, const GroupGraphs& graphs_b,
                                 const std::string& label_a, const std::string& label_b,
                                 Metric metric);

struct SubjectResult {
    std::string true_group;
    std::string predicted_group; // empty when unclassifiable
    int votes_a = 0;
    int votes_b = 0;
    int skipped = 0;
};

struct ClassificationReport {
    std::map<std::string, SubjectResult> per_subject;
    int correct = 0;
    int total = 0;
    double accuracy = 0.0;

    /// "0.80 (33/41)" style summary.
    std::string format_accuracy() const;
};

/// Leave-one-subject-out evaluation: each subject is scored against its own
/// group's graphs rebuilt without it and the other group's full graphs.
/// Unclassifiable subjects are recorded with an empty prediction and count
/// as incorrect.
ClassificationReport loso_evaluate(const CohortDataset& ds, Level level, Metric metric,
                                   const GraphBuildConfig& cfg);

/// Per-image node intensities of both groups' graphs plus a Welch two-sample
/// t statistic on the group difference. Significance thresholds are left to
/// the caller.
struct GroupIntensityReport {
    std::string group;
    std::string other_group;
    std::map<std::string, std::int64_t> intensities;       // per image, `group`
    std::map<std::string, std::int64_t> other_intensities; // per image, other group
    double mean = 0.0;
    double other_mean = 0.0;
    double welch_t = 0.0;
    double welch_dof = 0.0;
};
GroupIntensityReport group_node_intensity(const CohortDataset& ds, const std::string& group,
                                          Level level, const GraphBuildConfig& cfg);

/// Welch's unequal-variance t statistic and degrees of freedom.
std::pair<double, double> welch_t_test(const std::vector<double>& a,
                                       const std::vector<double>& b);

} // namespace gazegraph
