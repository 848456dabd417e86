#pragma once

#include <span>
#include <string>
#include <vector>

#include "gazegraph/types.hpp"

namespace gazegraph {

constexpr double kDefaultSigmaPx = 24.0; // about one degree of visual angle

/// Normalized fixation density over a scene's pixel grid. Values sum to 1
/// after normalization, or are all zero when there were no fixations.
struct DensityMap {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::vector<double> values; // row-major

    double at(int col, int row) const {
        return values[static_cast<std::size_t>(row) * width + col];
    }

    bool operator==(const DensityMap&) const = default;
};

/// Sum of isotropic Gaussian bumps (truncated at 3 sigma) centered on each
/// fixation, normalized to total mass 1. Density is sampled at pixel
/// centers.
DensityMap fixation_density(std::span<const Fixation> fixations, const std::string& image_id,
                            int width, int height, double sigma_px = kDefaultSigmaPx);

/// Per-node saliency: density mass accumulated over each object's pixels,
/// background excluded. At attribute level, member objects pool into their
/// canonical attribute key.
ObjectSaliency object_saliency(const DensityMap& density, const Scene& scene,
                               Level level = Level::Object);

/// Score of one scanpath against a score graph, with the per-edge terms
/// that produced it. `value` is sum(score_i * weight_i) / sum(weight_i):
/// weights are all 1 for the plain score and the source node's saliency for
/// the weighted one.
struct ScanScore {
    struct EdgeTerm {
        NodeKey source;
        NodeKey target;
        double score = 0.0;  // 0 for edges or nodes absent from the graph
        double weight = 1.0; // 1, or the source node's saliency
    };
    double value = 0.0;
    std::vector<EdgeTerm> per_edge;
};

/// Mean score of the path's consecutive shifts in the score graph; missing
/// connections count 0. Throws DegenerateScanpathError for paths with fewer
/// than two terms.
ScanScore score_scanpath(const SemanticScanpath& p, const ScoreGraph& sg);

/// Saliency-weighted variant: each shift's score is weighted by its source
/// node's saliency and the total is normalized by the summed weights. A path
/// whose sources carry zero saliency scores 0.
ScanScore score_scanpath_weighted(const SemanticScanpath& p, const ScoreGraph& sg,
                                  const ObjectSaliency& saliency);

} // namespace gazegraph
