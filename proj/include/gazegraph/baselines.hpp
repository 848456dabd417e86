#pragma once

#include <cstdint>
#include <span>

#include "gazegraph/scanpath.hpp"
#include "gazegraph/types.hpp"

namespace gazegraph {

/// Chance baseline: n_points positions drawn uniformly over the image space
/// with a seeded PRNG, then pushed through the usual assignment, discard and
/// collapse pipeline. Throws EmptyScanpathError when every point lands
/// beyond tolerance.
SemanticScanpath chance_scanpath(const Scene& scene, int n_points, std::uint64_t seed,
                                 double tolerance_px = kDefaultTolerancePx);

/// Random baseline: the fixations of one observer viewing a DIFFERENT image
/// are clamped into the target's bounds and re-assigned against the target
/// scene's annotation. Donor order is preserved; seq indices are re-based.
SemanticScanpath random_scanpath(std::span<const Fixation> donor, const Scene& target_scene,
                                 double tolerance_px = kDefaultTolerancePx);

} // namespace gazegraph
