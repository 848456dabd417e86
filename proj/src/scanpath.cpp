#include "gazegraph/scanpath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gazegraph {

namespace {

// Scans the window of pixels within +-radius of (floor(x), floor(y)) and
// returns the best (squared distance, object id) candidate, comparing
// distances to pixel centers at (col + 0.5, row + 0.5).
struct Candidate {
    double d2;
    int object_id;
};

std::optional<Candidate> scan_window(const Scene& scene, double x, double y, int radius) {
    const int cx = static_cast<int>(std::floor(x));
    const int cy = static_cast<int>(std::floor(y));
    const int row_lo = std::max(0, cy - radius);
    const int row_hi = std::min(scene.height - 1, cy + radius);
    const int col_lo = std::max(0, cx - radius);
    const int col_hi = std::min(scene.width - 1, cx + radius);

    std::optional<Candidate> best;
    for (int row = row_lo; row <= row_hi; ++row) {
        for (int col = col_lo; col <= col_hi; ++col) {
            const int label = scene.label_at(col, row);
            if (label == 0) continue;
            const double dx = (col + 0.5) - x;
            const double dy = (row + 0.5) - y;
            const double d2 = dx * dx + dy * dy;
            if (!best || d2 < best->d2 || (d2 == best->d2 && label < best->object_id))
                best = Candidate{d2, label};
        }
    }
    return best;
}

} // namespace

std::optional<NearestObject> nearest_labeled_pixel(const Scene& scene, double x, double y) {
    const int full = std::max(scene.width, scene.height);
    int radius = 34; // covers the default tolerance in one pass
    while (true) {
        const auto best = scan_window(scene, x, y, radius);
        // A window of half-width r is guaranteed to contain every pixel whose
        // center lies within r - 2 of the query point.
        if (best && std::sqrt(best->d2) <= radius - 2.0)
            return NearestObject{best->object_id, std::sqrt(best->d2)};
        if (radius >= full) {
            if (!best) return std::nullopt;
            return NearestObject{best->object_id, std::sqrt(best->d2)};
        }
        radius = best ? static_cast<int>(std::ceil(std::sqrt(best->d2))) + 2
                      : std::min(radius * 2, full);
    }
}

FixationAssignment assign_fixation(const Fixation& f, const Scene& scene, double tolerance_px) {
    if (!scene.in_bounds(f.x, f.y))
        throw BoundsError("fixation out of bounds: image=" + f.image_id +
                          " observer=" + f.observer_id + " seq=" + std::to_string(f.seq_index) +
                          " at (" + std::to_string(f.x) + ", " + std::to_string(f.y) + ")");

    FixationAssignment a;
    a.image_id = f.image_id;
    a.observer_id = f.observer_id;
    a.seq_index = f.seq_index;

    const int col = static_cast<int>(std::floor(f.x));
    const int row = static_cast<int>(std::floor(f.y));
    const int label = scene.label_at(col, row);
    if (label != 0) {
        a.outcome = FixationAssignment::Outcome::Inside;
        a.object_id = label;
        return a;
    }

    const auto nearest = nearest_labeled_pixel(scene, f.x, f.y);
    if (!nearest) {
        a.outcome = FixationAssignment::Outcome::Discarded;
        a.distance_px = std::numeric_limits<double>::infinity();
        return a;
    }
    a.distance_px = nearest->distance_px;
    if (nearest->distance_px <= tolerance_px) { // boundary distance is retained
        a.outcome = FixationAssignment::Outcome::Near;
        a.object_id = nearest->object_id;
    } else {
        a.outcome = FixationAssignment::Outcome::Discarded;
    }
    return a;
}

SemanticScanpath collapse_assignments(std::span<const FixationAssignment> assignments,
                                      const std::string& image_id,
                                      const std::string& observer_id) {
    SemanticScanpath sp;
    sp.image_id = image_id;
    sp.observer_id = observer_id;
    sp.level = Level::Object;

    for (const auto& a : assignments) {
        if (!a.retained()) continue;
        const NodeKey key = object_node_key(a.object_id);
        if (!sp.terms.empty() && sp.terms.back() == key) {
            sp.source_spans.back().last = a.seq_index;
        } else {
            sp.terms.push_back(key);
            sp.source_spans.push_back({a.seq_index, a.seq_index});
        }
    }
    if (sp.terms.empty())
        throw EmptyScanpathError(observer_id, "all fixations discarded for observer '" +
                                                  observer_id + "' on image '" + image_id + "'");
    return sp;
}

SemanticScanpath build_object_scanpath(std::span<const Fixation> fixations, const Scene& scene,
                                       double tolerance_px) {
    if (fixations.empty())
        throw EmptyScanpathError("", "no fixations given for image '" + scene.image_id + "'");
    const auto& first = fixations.front();
    for (std::size_t i = 0; i < fixations.size(); ++i) {
        const auto& f = fixations[i];
        if (f.image_id != first.image_id || f.observer_id != first.observer_id)
            throw InputError("fixations mix observers or images: (" + first.image_id + ", " +
                             first.observer_id + ") vs (" + f.image_id + ", " + f.observer_id +
                             ")");
        if (i > 0 && fixations[i - 1].seq_index >= f.seq_index)
            throw InputError("fixations not sorted by seq_index for observer '" +
                             first.observer_id + "' on image '" + first.image_id + "'");
    }
    if (first.image_id != scene.image_id)
        throw InputError("fixations for image '" + first.image_id +
                         "' assigned against scene '" + scene.image_id + "'");

    std::vector<FixationAssignment> assignments;
    assignments.reserve(fixations.size());
    for (const auto& f : fixations)
        assignments.push_back(assign_fixation(f, scene, tolerance_px));
    return collapse_assignments(assignments, first.image_id, first.observer_id);
}

SemanticScanpath to_attribute_scanpath(const SemanticScanpath& sp, const Scene& scene) {
    if (sp.level != Level::Object)
        throw InputError("to_attribute_scanpath expects an object-level scanpath");

    SemanticScanpath out;
    out.image_id = sp.image_id;
    out.observer_id = sp.observer_id;
    out.level = Level::Attribute;

    for (std::size_t i = 0; i < sp.terms.size(); ++i) {
        const NodeKey key = scene.attribute_key_of(object_id_from_key(sp.terms[i]));
        if (!out.terms.empty() && out.terms.back() == key) {
            out.source_spans.back().last = sp.source_spans[i].last;
        } else {
            out.terms.push_back(key);
            out.source_spans.push_back(sp.source_spans[i]);
        }
    }
    return out;
}

CoverageStats coverage_statistic(std::span<const Fixation> fixations,
                                 const std::map<std::string, Scene>& scenes,
                                 double tolerance_px) {
    CoverageStats stats;
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts; // retained, total
    for (const auto& f : fixations) {
        const auto it = scenes.find(f.image_id);
        if (it == scenes.end())
            throw InputError("no scene for image '" + f.image_id + "'");
        auto& [retained, total] = counts[f.image_id];
        ++total;
        if (assign_fixation(f, it->second, tolerance_px).retained()) ++retained;
    }
    for (const auto& [image_id, c] : counts) {
        stats.per_image[image_id] = c.second == 0 ? 0.0 : double(c.first) / double(c.second);
        stats.retained += c.first;
        stats.total += c.second;
    }
    stats.overall = stats.total == 0 ? 0.0 : double(stats.retained) / double(stats.total);
    return stats;
}

} // namespace gazegraph
