#include "gazegraph/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gazegraph/rng.hpp"

namespace gazegraph {

SemanticScanpath chance_scanpath(const Scene& scene, int n_points, std::uint64_t seed,
                                 double tolerance_px) {
    if (n_points < 1) throw InputError("chance baseline needs n_points >= 1");

    std::mt19937_64 rng(seed);
    std::vector<Fixation> points;
    points.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        Fixation f;
        f.image_id = scene.image_id;
        f.observer_id = "chance:" + std::to_string(seed);
        f.seq_index = i;
        f.x = uniform_double(rng) * scene.width;
        f.y = uniform_double(rng) * scene.height;
        points.push_back(f);
    }
    return build_object_scanpath(points, scene, tolerance_px);
}

SemanticScanpath random_scanpath(std::span<const Fixation> donor, const Scene& target_scene,
                                 double tolerance_px) {
    if (donor.empty()) throw InputError("random baseline needs a non-empty donor sequence");
    if (donor.front().image_id == target_scene.image_id)
        throw InputError("random baseline donor must come from a different image than '" +
                         target_scene.image_id + "'");

    // largest coordinates still inside [0, width) x [0, height)
    const double max_x = std::nextafter(static_cast<double>(target_scene.width), 0.0);
    const double max_y = std::nextafter(static_cast<double>(target_scene.height), 0.0);

    std::vector<Fixation> remapped;
    remapped.reserve(donor.size());
    int seq = 0;
    for (const auto& d : donor) {
        Fixation f;
        f.image_id = target_scene.image_id;
        f.observer_id = d.observer_id;
        f.seq_index = seq++;
        f.x = std::clamp(d.x, 0.0, max_x);
        f.y = std::clamp(d.y, 0.0, max_y);
        f.duration_ms = d.duration_ms;
        remapped.push_back(f);
    }
    return build_object_scanpath(remapped, target_scene, tolerance_px);
}

} // namespace gazegraph
