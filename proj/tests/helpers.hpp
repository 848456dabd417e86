#pragma once

// Synthetic data builders and independent reference implementations shared
// by the unit and acceptance suites. The oracles deliberately avoid the
// library's code paths: full-raster scans, direct formula evaluation.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gazegraph/metrics.hpp"
#include "gazegraph/scanpath.hpp"
#include "gazegraph/types.hpp"

namespace testutil {

using namespace gazegraph;

Scene make_scene(std::string image_id, int width, int height,
                 std::vector<std::uint16_t> labels,
                 std::map<int, std::set<std::string>> attributes = {});

/// Scene fully tiled by a grid x grid arrangement of blocks; block_labels is
/// row-major with grid*grid entries, 0 meaning background.
Scene make_block_scene(std::string image_id, int width, int height, int grid,
                       const std::vector<int>& block_labels,
                       std::map<int, std::set<std::string>> attributes = {});

/// Center of the first raster pixel carrying `object_id`.
std::pair<double, double> point_inside(const Scene& scene, int object_id);

Fixation fix(std::string image_id, std::string observer_id, int seq, double x, double y,
             double duration_ms = 0.0);

/// One fixation inside each listed object, in order.
std::vector<Fixation> fixations_for_path(const Scene& scene, const std::string& observer_id,
                                         const std::vector<int>& object_ids);

// --- oracles ---

/// Full-raster nearest labeled pixel (same pixel-center convention, ties to
/// the smallest object id).
std::optional<NearestObject> oracle_nearest(const Scene& scene, double x, double y);

struct OracleTerm {
    NodeKey key;
    int first;
    int last;
};

/// Reference filter-then-collapse: assign every fixation (raster hit, else
/// full-scan nearest within tolerance), drop discards, then run-length
/// collapse what remains.
std::vector<OracleTerm> oracle_collapse(std::span<const Fixation> fixations, const Scene& scene,
                                        double tolerance_px);

/// Direct evaluation of the saliency-weighted path score.
double oracle_weighted_score(const std::vector<NodeKey>& terms, const EdgeScores& scores,
                             const std::map<NodeKey, double, NodeKeyLess>& lambda);

/// Per-pixel accumulation of density into object ids.
std::map<int, double> oracle_saliency(const DensityMap& density, const Scene& scene);

std::pair<double, double> oracle_welch(const std::vector<double>& a,
                                       const std::vector<double>& b);

/// Exact two-sided-free binomial upper tail: P[Bin(n, 0.5) >= k].
double binomial_upper_tail(int n, int k);

// --- random generators for property tests ---

AttentionGraph random_graph(std::mt19937_64& rng, int max_nodes = 12);

/// Random rectangle-based scene; all listed objects have at least one pixel.
Scene random_scene(std::mt19937_64& rng, int width, int height, int max_objects = 5);

} // namespace testutil
