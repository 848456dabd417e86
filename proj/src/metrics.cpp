#include "gazegraph/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace gazegraph {

DensityMap fixation_density(std::span<const Fixation> fixations, const std::string& image_id,
                            int width, int height, double sigma_px) {
    if (width <= 0 || height <= 0) throw InputError("density map needs positive dimensions");
    if (sigma_px <= 0.0) throw InputError("sigma_px must be positive");

    DensityMap map;
    map.image_id = image_id;
    map.width = width;
    map.height = height;
    map.values.assign(static_cast<std::size_t>(width) * height, 0.0);

    const double radius = 3.0 * sigma_px;
    const double radius2 = radius * radius;
    const double inv_two_sigma2 = 1.0 / (2.0 * sigma_px * sigma_px);

    for (const auto& f : fixations) {
        const int col_lo = std::max(0, static_cast<int>(std::floor(f.x - radius)) - 1);
        const int col_hi = std::min(width - 1, static_cast<int>(std::ceil(f.x + radius)) + 1);
        const int row_lo = std::max(0, static_cast<int>(std::floor(f.y - radius)) - 1);
        const int row_hi = std::min(height - 1, static_cast<int>(std::ceil(f.y + radius)) + 1);
        for (int row = row_lo; row <= row_hi; ++row) {
            for (int col = col_lo; col <= col_hi; ++col) {
                const double dx = (col + 0.5) - f.x;
                const double dy = (row + 0.5) - f.y;
                const double d2 = dx * dx + dy * dy;
                if (d2 > radius2) continue;
                map.values[static_cast<std::size_t>(row) * width + col] +=
                    std::exp(-d2 * inv_two_sigma2);
            }
        }
    }

    double total = 0.0;
    for (const double v : map.values) total += v;
    if (total > 0.0)
        for (double& v : map.values) v /= total;
    return map;
}

ObjectSaliency object_saliency(const DensityMap& density, const Scene& scene, Level level) {
    if (density.width != scene.width || density.height != scene.height)
        throw InputError("density map " + std::to_string(density.width) + "x" +
                         std::to_string(density.height) + " does not match scene " +
                         std::to_string(scene.width) + "x" + std::to_string(scene.height));

    std::map<int, double> per_object;
    for (int row = 0; row < scene.height; ++row) {
        for (int col = 0; col < scene.width; ++col) {
            const int label = scene.label_at(col, row);
            if (label == 0) continue;
            per_object[label] += density.at(col, row);
        }
    }

    ObjectSaliency sal;
    sal.image_id = scene.image_id;
    for (const auto& [id, mass] : per_object) {
        const NodeKey key =
            level == Level::Object ? object_node_key(id) : scene.attribute_key_of(id);
        sal.values[key] += mass;
    }
    return sal;
}

namespace {

double lookup_score(const ScoreGraph& sg, const NodeKey& src, const NodeKey& dst) {
    const auto it = sg.scores.find(EdgeKey{src, dst});
    return it == sg.scores.end() ? 0.0 : it->second; // missing connection scores 0
}

ScanScore score_path(const SemanticScanpath& p, const ScoreGraph& sg,
                     const ObjectSaliency* saliency) {
    if (p.terms.size() < 2)
        throw DegenerateScanpathError("scanpath of observer '" + p.observer_id + "' on image '" +
                                      p.image_id + "' has fewer than two terms");
    if (p.level != sg.level)
        throw InputError("scanpath level " + to_string(p.level) + " does not match graph level " +
                         to_string(sg.level));

    ScanScore result;
    double weighted_sum = 0.0;
    double weight_total = 0.0;
    for (std::size_t t = 0; t + 1 < p.terms.size(); ++t) {
        ScanScore::EdgeTerm term;
        term.source = p.terms[t];
        term.target = p.terms[t + 1];
        term.score = lookup_score(sg, term.source, term.target);
        if (saliency) {
            const auto it = saliency->values.find(term.source);
            term.weight = it == saliency->values.end() ? 0.0 : it->second;
        }
        weighted_sum += term.score * term.weight;
        weight_total += term.weight;
        result.per_edge.push_back(std::move(term));
    }
    result.value = weight_total == 0.0 ? 0.0 : weighted_sum / weight_total;
    return result;
}

} // namespace

ScanScore score_scanpath(const SemanticScanpath& p, const ScoreGraph& sg) {
    return score_path(p, sg, nullptr);
}

ScanScore score_scanpath_weighted(const SemanticScanpath& p, const ScoreGraph& sg,
                                  const ObjectSaliency& saliency) {
    return score_path(p, sg, &saliency);
}

} // namespace gazegraph
