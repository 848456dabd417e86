#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gazegraph/errors.hpp"

namespace gazegraph {

/// Semantic level of a scanpath or graph: raw object ids vs. grouped
/// attribute classes.
enum class Level { Object, Attribute };

std::string to_string(Level level);
Level level_from_string(const std::string& s);

/// Node identity in scanpaths and graphs. Object-level nodes are decimal
/// object ids ("1", "2", ...); attribute-level nodes are canonical attribute
/// keys (sorted names joined by " & ", "None" for unlabeled objects).
using NodeKey = std::string;

NodeKey object_node_key(int object_id);
NodeKey attribute_node_key(const std::set<std::string>& attributes);

/// Parses an object-level node key back to the object id.
int object_id_from_key(const NodeKey& key);

/// Canonical node order: all-digit keys sort numerically and before any
/// other key; everything else sorts lexicographically. Gives 1 < 2 < 10 for
/// object ids and alphabetical order for attribute keys.
bool node_key_less(const NodeKey& a, const NodeKey& b);

struct NodeKeyLess {
    using is_transparent = void;
    bool operator()(const NodeKey& a, const NodeKey& b) const { return node_key_less(a, b); }
};

using EdgeKey = std::pair<NodeKey, NodeKey>; // (source, target)

struct EdgeKeyLess {
    using is_transparent = void;
    bool operator()(const EdgeKey& a, const EdgeKey& b) const {
        if (a.first != b.first) return node_key_less(a.first, b.first);
        return node_key_less(a.second, b.second);
    }
    // source-only lookups: a bare NodeKey stands for "any edge out of it"
    bool operator()(const EdgeKey& a, const NodeKey& src) const {
        return node_key_less(a.first, src);
    }
    bool operator()(const NodeKey& src, const EdgeKey& b) const {
        return node_key_less(src, b.first);
    }
};

using NodeSet = std::set<NodeKey, NodeKeyLess>;

/// One gaze sample: position in pixels (x = column, y = row, origin
/// top-left), order within one viewing, and an optional duration. Durations
/// are carried through serialization but used by no metric.
struct Fixation {
    std::string image_id;
    std::string observer_id;
    int seq_index = 0;
    double x = 0.0;
    double y = 0.0;
    double duration_ms = 0.0;

    bool operator==(const Fixation&) const = default;
};

/// An annotated object: id, attribute set (empty = the "None" class), and
/// the number of raster pixels carrying the id.
struct ObjectInfo {
    int object_id = 0;
    std::set<std::string> attributes;
    std::int64_t pixel_count = 0;

    bool operator==(const ObjectInfo&) const = default;
};

/// A stimulus: dimensions, per-pixel object labels (0 = background), and
/// the object table. No image pixels are stored, only labels.
struct Scene {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> labels; // row-major, size width*height
    std::map<int, ObjectInfo> objects; // keyed by object_id

    std::uint16_t label_at(int col, int row) const {
        return labels[static_cast<std::size_t>(row) * width + col];
    }
    bool in_bounds(double x, double y) const {
        return x >= 0.0 && y >= 0.0 && x < width && y < height;
    }

    /// Canonical attribute key of an object; throws UnknownObjectError.
    NodeKey attribute_key_of(int object_id) const;

    bool operator==(const Scene&) const = default;
};

/// Checks all Scene/ObjectInfo invariants. Violations are returned as data,
/// one description per problem; an empty list means the scene is consistent.
std::vector<std::string> validate_scene(const Scene& scene);

/// Inclusive range of raw seq_index values that produced one scanpath term.
struct SourceSpan {
    int first = 0;
    int last = 0;

    bool operator==(const SourceSpan&) const = default;
};

/// Ordered node sequence of one observer on one image, with adjacent
/// same-node fixations merged and review shifts (non-adjacent repeats) kept.
struct SemanticScanpath {
    std::string image_id;
    std::string observer_id;
    Level level = Level::Object;
    std::vector<NodeKey> terms;
    std::vector<SourceSpan> source_spans; // parallel to terms

    bool operator==(const SemanticScanpath&) const = default;
};

using EdgeCounts = std::map<EdgeKey, std::int64_t, EdgeKeyLess>;

/// Weighted directed graph of gaze shifts pooled over observers. Raw shift
/// counts are the stored representation; probabilities and scores are
/// derived views.
struct AttentionGraph {
    std::string image_id;
    Level level = Level::Object;
    NodeSet nodes;
    EdgeCounts edge_counts; // absent edge = count 0
    int observer_count = 0;

    bool operator==(const AttentionGraph&) const = default;
};

using EdgeScores = std::map<EdgeKey, double, EdgeKeyLess>;

/// Attention graph with each source node's outgoing weights divided by
/// their maximum, giving per-edge scores in (0, 1].
struct ScoreGraph {
    std::string image_id;
    Level level = Level::Object;
    EdgeScores scores; // same key set as the originating graph's counts

    bool operator==(const ScoreGraph&) const = default;
};

/// Per-node saliency: total normalized fixation density inside each node's
/// region. Background density is excluded, so values sum to at most 1.
struct ObjectSaliency {
    std::string image_id;
    std::map<NodeKey, double, NodeKeyLess> values;

    bool operator==(const ObjectSaliency&) const = default;
};

} // namespace gazegraph
