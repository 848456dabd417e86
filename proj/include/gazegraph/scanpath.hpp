#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazegraph/types.hpp"

namespace gazegraph {

constexpr double kDefaultTolerancePx = 30.0;

/// Where a fixation landed relative to the scene's objects.
struct FixationAssignment {
    enum class Outcome { Inside, Near, Discarded };

    std::string image_id;
    std::string observer_id;
    int seq_index = 0;
    Outcome outcome = Outcome::Discarded;
    int object_id = 0;        // valid for Inside and Near
    double distance_px = 0.0; // 0 for Inside; nearest-object distance otherwise

    bool retained() const { return outcome != Outcome::Discarded; }
};

/// Nearest labeled pixel to (x, y), by Euclidean distance to pixel centers.
/// Ties between equidistant objects break to the smallest object id. Empty
/// when the raster has no labeled pixel at all.
struct NearestObject {
    int object_id = 0;
    double distance_px = 0.0;
};
std::optional<NearestObject> nearest_labeled_pixel(const Scene& scene, double x, double y);

/// Assigns one fixation: inside the object whose raster pixel it lands on,
/// near the closest object within tolerance_px, discarded beyond that.
/// A distance exactly equal to the tolerance is retained.
FixationAssignment assign_fixation(const Fixation& f, const Scene& scene,
                                   double tolerance_px = kDefaultTolerancePx);

/// Builds the object-level scanpath of one observer: discarded fixations are
/// removed first, then consecutive same-object assignments collapse into one
/// term. A discard between two same-object fixations does not split the run.
/// Throws EmptyScanpathError when nothing is retained.
SemanticScanpath build_object_scanpath(std::span<const Fixation> fixations, const Scene& scene,
                                       double tolerance_px = kDefaultTolerancePx);

/// Collapse step on precomputed assignments; exposed for reuse by the
/// baselines and for testing against the brute-force reference.
SemanticScanpath collapse_assignments(std::span<const FixationAssignment> assignments,
                                      const std::string& image_id,
                                      const std::string& observer_id);

/// Regroups an object-level scanpath at attribute level: each object id maps
/// to its canonical attribute key, adjacent equal keys merge, source spans
/// concatenate.
SemanticScanpath to_attribute_scanpath(const SemanticScanpath& sp, const Scene& scene);

/// Fraction of fixations retained (outcome != discarded) per image and
/// overall, at the given tolerance.
struct CoverageStats {
    std::map<std::string, double> per_image;
    double overall = 0.0;
    std::int64_t retained = 0;
    std::int64_t total = 0;
};
CoverageStats coverage_statistic(std::span<const Fixation> fixations,
                                 const std::map<std::string, Scene>& scenes,
                                 double tolerance_px = kDefaultTolerancePx);

} // namespace gazegraph
