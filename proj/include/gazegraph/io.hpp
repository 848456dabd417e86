#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazegraph/types.hpp"

namespace gazegraph {

// All writers are canonical: the same value always serializes to the same
// bytes (sorted keys, floats at 9 significant digits).

/// Formats a double with 9 significant digits ("%.9g").
std::string format_sig9(double v);

// --- fixations: CSV with header image_id,observer_id,seq_index,x,y,duration_ms

/// Parses a fixation CSV. Rows may arrive in any order; they are grouped and
/// sorted per (image, observer) by seq_index. The duration column may be
/// omitted. Duplicate or non-contiguous seq_index values raise
/// ValidationError; malformed rows raise ParseError with the line number.
std::vector<Fixation> load_fixations(const std::filesystem::path& path);
std::vector<Fixation> parse_fixations(std::istream& in, const std::string& source_name);

void save_fixations(std::span<const Fixation> fixations, const std::filesystem::path& path);
std::string fixations_to_csv(std::span<const Fixation> fixations);

// --- scenes: 16-bit PGM raster (P2/P5) or JSON run-length form

/// Loads a scene from a .pgm label raster or a .json run-length document
/// {"image_id", "width", "height", "runs": [[label, length], ...],
///  "attributes": {"<id>": [names...]}} (attributes optional). A separate
/// attributes file ({"<id>": [names...]}) merges on top when given. Objects
/// without an entry keep an empty attribute set — the "None" class.
Scene load_scene(const std::filesystem::path& raster_path,
                 const std::optional<std::filesystem::path>& attributes_path = std::nullopt);

/// Canonical scene serialization (JSON run-length form, attributes embedded).
void save_scene(const Scene& scene, const std::filesystem::path& path);
std::string scene_to_json(const Scene& scene);

/// Binary 16-bit PGM writer for the label raster (objects table not stored).
void save_scene_pgm(const Scene& scene, const std::filesystem::path& path);

// --- scanpaths: JSON lines, one record per observer-image

std::vector<SemanticScanpath> load_scanpaths(const std::filesystem::path& path);
std::vector<SemanticScanpath> parse_scanpaths(std::istream& in, const std::string& source_name);

void save_scanpaths(std::span<const SemanticScanpath> scanpaths,
                    const std::filesystem::path& path);
std::string scanpaths_to_jsonl(std::span<const SemanticScanpath> scanpaths);

// --- graphs

enum class GraphFormat { Json, Dot, AdjacencyCsv };
enum class WeightView { Counts, Probability, Score };

GraphFormat graph_format_from_string(const std::string& s);
WeightView weight_view_from_string(const std::string& s);

/// Renders a graph to text. The JSON form carries all three weight views per
/// edge and is the round-trip format; dot and adjacency CSV use the chosen
/// view as the edge weight.
std::string export_graph(const AttentionGraph& g, GraphFormat format,
                         WeightView view = WeightView::Counts);

AttentionGraph load_graph(const std::filesystem::path& path);
AttentionGraph parse_graph_json(const std::string& text, const std::string& source_name);

/// Reads the score fields of an exported graph JSON back into a ScoreGraph.
ScoreGraph load_score_graph(const std::filesystem::path& path);

// --- saliency

std::string saliency_to_json(const ObjectSaliency& sal);
void save_saliency(const ObjectSaliency& sal, const std::filesystem::path& path);
ObjectSaliency load_saliency(const std::filesystem::path& path);

// --- dataset manifest

/// Points at a dataset's files plus its processing parameters. Relative
/// paths resolve against the manifest's directory. The coordinate note, when
/// present, must state the convention this toolkit assumes.
struct DatasetManifest {
    std::string dataset;
    std::filesystem::path fixations_path;
    std::filesystem::path scenes_dir;
    std::optional<std::filesystem::path> attributes_path;
    double tolerance_px = 30.0;
    double sigma_px = 24.0;
    std::string coordinates; // e.g. "x=column, y=row, origin top-left"
};

extern const char* const kCoordinateConvention;

DatasetManifest load_manifest(const std::filesystem::path& path);

/// A dataset pulled into memory: validated fixations plus scenes for every
/// referenced image. When `subjects_by_index` is set, observer ids within
/// each image are replaced by their 1-based order of first appearance
/// ("s1", "s2", ...), for corpora that number sequences instead of naming
/// subjects.
struct LoadedDataset {
    DatasetManifest manifest;
    std::vector<Fixation> fixations;
    std::map<std::string, Scene> scenes;
};
LoadedDataset load_dataset(const std::filesystem::path& manifest_path,
                           bool subjects_by_index = false);

/// Groups fixations by (image_id, observer_id); each value is sorted by
/// seq_index already.
std::map<std::pair<std::string, std::string>, std::vector<Fixation>>
group_fixations(std::span<const Fixation> fixations);

} // namespace gazegraph
