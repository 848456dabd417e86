#pragma once

#include <cstdint>
#include <span>

#include "gazegraph/types.hpp"

namespace gazegraph {

/// Pools semantic scanpaths of one image and level into an attention graph:
/// every consecutive term pair adds one to its edge count, and a scanpath
/// with a single term contributes a self-loop on that node. Nodes are the
/// nodes that appear in at least one scanpath.
AttentionGraph build_attention_graph(std::span<const SemanticScanpath> scanpaths);

/// Probability of shifting from u to v: count(u,v) over u's total outgoing
/// count. 0 for an absent edge; throws UnknownNodeError for unknown u.
double edge_probability(const AttentionGraph& g, const NodeKey& u, const NodeKey& v);

/// Score view of the graph: each source node's outgoing counts divided by
/// their maximum, so the per-source max score is exactly 1.
ScoreGraph normalize_score_graph(const AttentionGraph& g);

/// Relabels object nodes to their canonical attribute keys and sums counts.
/// Edges whose endpoints map to the same key become self-loops and are kept,
/// so node intensity is conserved. Note this differs from rebuilding the
/// graph out of attribute-level scanpaths, where adjacent same-attribute
/// objects merge into one term before counting.
AttentionGraph merge_to_attribute_graph(const AttentionGraph& g, const Scene& scene);

/// Total number of gaze shifts in the graph: sum of all edge counts,
/// self-loops included.
std::int64_t node_intensity(const AttentionGraph& g);

/// Seeded random walk from `start`, choosing successors with probability
/// edge_probability. Stops at max_len terms or at a node with no outgoing
/// edge. The same seed reproduces the same walk.
SemanticScanpath sample_scanpath(const AttentionGraph& g, const NodeKey& start, int max_len,
                                 std::uint64_t seed);

} // namespace gazegraph
