#include "gazegraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gazegraph/graph.hpp"

namespace gazegraph {

using nlohmann::json;

const char* const kCoordinateConvention = "x=column, y=row, origin top-left";

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
}

std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double_field(const std::string& s, const std::string& what, int line_no,
                          const std::string& source) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source + ":" + std::to_string(line_no) + ": non-numeric " + what +
                         " '" + s + "'");
    }
}

int parse_int_field(const std::string& s, const std::string& what, int line_no,
                    const std::string& source) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source + ":" + std::to_string(line_no) + ": non-numeric " + what +
                         " '" + s + "'");
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

// --- fixations -------------------------------------------------------------

std::vector<Fixation> parse_fixations(std::istream& in, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(source_name + ": empty file, expected a header line");
    line = strip_cr(line);
    const bool with_duration = line == "image_id,observer_id,seq_index,x,y,duration_ms";
    if (!with_duration && line != "image_id,observer_id,seq_index,x,y")
        throw ParseError(source_name +
                         ":1: missing or malformed header (expected "
                         "'image_id,observer_id,seq_index,x,y[,duration_ms]')");
    const std::size_t expected_fields = with_duration ? 6 : 5;

    // groups in order of first appearance; rows sorted by seq within group
    std::vector<std::pair<std::string, std::string>> group_order;
    std::map<std::pair<std::string, std::string>, std::vector<Fixation>> groups;

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != expected_fields)
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(expected_fields) + " fields, got " +
                             std::to_string(fields.size()));
        Fixation f;
        f.image_id = fields[0];
        f.observer_id = fields[1];
        f.seq_index = parse_int_field(fields[2], "seq_index", line_no, source_name);
        f.x = parse_double_field(fields[3], "x", line_no, source_name);
        f.y = parse_double_field(fields[4], "y", line_no, source_name);
        if (with_duration)
            f.duration_ms = parse_double_field(fields[5], "duration_ms", line_no, source_name);
        if (f.seq_index < 0)
            throw ParseError(source_name + ":" + std::to_string(line_no) +
                             ": negative seq_index");
        if (f.duration_ms < 0)
            throw ParseError(source_name + ":" + std::to_string(line_no) +
                             ": negative duration_ms");

        const auto key = std::make_pair(f.image_id, f.observer_id);
        if (!groups.contains(key)) group_order.push_back(key);
        groups[key].push_back(std::move(f));
    }

    std::vector<Fixation> result;
    for (const auto& key : group_order) {
        auto& rows = groups[key];
        std::sort(rows.begin(), rows.end(),
                  [](const Fixation& a, const Fixation& b) { return a.seq_index < b.seq_index; });
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0 && rows[i].seq_index == rows[i - 1].seq_index)
                throw ValidationError(source_name + ": duplicate seq_index " +
                                      std::to_string(rows[i].seq_index) + " for observer '" +
                                      key.second + "' on image '" + key.first + "'");
            if (rows[i].seq_index != static_cast<int>(i))
                throw ValidationError(source_name + ": seq_index values for observer '" +
                                      key.second + "' on image '" + key.first +
                                      "' are not a contiguous 0-based run");
        }
        result.insert(result.end(), rows.begin(), rows.end());
    }
    return result;
}

std::vector<Fixation> load_fixations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return parse_fixations(in, path.string());
}

std::string fixations_to_csv(std::span<const Fixation> fixations) {
    std::vector<const Fixation*> sorted;
    sorted.reserve(fixations.size());
    for (const auto& f : fixations) sorted.push_back(&f);
    std::sort(sorted.begin(), sorted.end(), [](const Fixation* a, const Fixation* b) {
        return std::tie(a->image_id, a->observer_id, a->seq_index) <
               std::tie(b->image_id, b->observer_id, b->seq_index);
    });

    std::string out = "image_id,observer_id,seq_index,x,y,duration_ms\n";
    for (const auto* f : sorted) {
        out += f->image_id;
        out += ',';
        out += f->observer_id;
        out += ',';
        out += std::to_string(f->seq_index);
        out += ',';
        out += format_sig9(f->x);
        out += ',';
        out += format_sig9(f->y);
        out += ',';
        out += format_sig9(f->duration_ms);
        out += '\n';
    }
    return out;
}

void save_fixations(std::span<const Fixation> fixations, const std::filesystem::path& path) {
    write_file(path, fixations_to_csv(fixations));
}

// --- scenes ----------------------------------------------------------------

namespace {

// PGM token reader that skips whitespace and # comments
class PgmTokenizer {
public:
    explicit PgmTokenizer(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    std::string next() {
        std::string token;
        char c;
        while (in_.get(c)) {
            if (c == '#') {
                std::string skip;
                std::getline(in_, skip);
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!token.empty()) return token;
                continue;
            }
            token += c;
        }
        if (token.empty()) throw ParseError(source_ + ": truncated PGM header");
        return token;
    }

    int next_int() {
        const std::string t = next();
        try {
            return std::stoi(t);
        } catch (const std::exception&) {
            throw ParseError(source_ + ": non-numeric PGM header token '" + t + "'");
        }
    }

private:
    std::istream& in_;
    std::string source_;
};

Scene scene_from_raster(std::string image_id, int width, int height,
                        std::vector<std::uint16_t> labels) {
    if (width <= 0 || height <= 0)
        throw ValidationError("scene '" + image_id + "': dimensions must be positive");
    Scene scene;
    scene.image_id = std::move(image_id);
    scene.width = width;
    scene.height = height;
    scene.labels = std::move(labels);
    for (const auto label : scene.labels) {
        if (label == 0) continue;
        auto& info = scene.objects[label];
        info.object_id = label;
        ++info.pixel_count;
    }
    return scene;
}

Scene load_scene_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    const std::string source = path.string();

    PgmTokenizer tok(in, source);
    const std::string magic = tok.next();
    if (magic != "P2" && magic != "P5")
        throw ParseError(source + ": not a PGM label raster (magic '" + magic + "')");
    const int width = tok.next_int();
    const int height = tok.next_int();
    const int maxval = tok.next_int();
    if (width <= 0 || height <= 0)
        throw ParseError(source + ": non-positive dimensions");
    if (maxval <= 0 || maxval > 65535)
        throw ParseError(source + ": maxval " + std::to_string(maxval) +
                         " outside the 16-bit range");

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint16_t> labels(n);
    if (magic == "P2") {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = tok.next_int();
            if (v < 0 || v > maxval)
                throw ParseError(source + ": sample " + std::to_string(v) + " exceeds maxval");
            labels[i] = static_cast<std::uint16_t>(v);
        }
    } else {
        // exactly one whitespace byte separates the header from binary data
        const int bytes = maxval < 256 ? 1 : 2;
        std::vector<char> raw(n * bytes);
        in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size()))
            throw ParseError(source + ": truncated PGM pixel data");
        for (std::size_t i = 0; i < n; ++i) {
            if (bytes == 1) {
                labels[i] = static_cast<unsigned char>(raw[i]);
            } else { // most significant byte first
                labels[i] = static_cast<std::uint16_t>(
                    (static_cast<unsigned char>(raw[2 * i]) << 8) |
                    static_cast<unsigned char>(raw[2 * i + 1]));
            }
        }
    }
    return scene_from_raster(path.stem().string(), width, height, std::move(labels));
}

std::map<int, std::set<std::string>> parse_attribute_map(const json& j, const std::string& source) {
    if (!j.is_object()) throw ParseError(source + ": attribute map must be a JSON object");
    std::map<int, std::set<std::string>> attrs;
    for (const auto& [key, value] : j.items()) {
        int id = 0;
        try {
            std::size_t pos = 0;
            id = std::stoi(key, &pos);
            if (pos != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw ParseError(source + ": attribute key '" + key + "' is not an object id");
        }
        if (!value.is_array())
            throw ParseError(source + ": attributes of object " + key + " must be an array");
        std::set<std::string> names;
        for (const auto& name : value) {
            if (!name.is_string())
                throw ParseError(source + ": attribute names must be strings (object " + key +
                                 ")");
            names.insert(name.get<std::string>());
        }
        attrs[id] = std::move(names);
    }
    return attrs;
}

void apply_attributes(Scene& scene, const std::map<int, std::set<std::string>>& attrs,
                      const std::string& source) {
    std::vector<int> unknown;
    for (const auto& [id, names] : attrs) {
        const auto it = scene.objects.find(id);
        if (it == scene.objects.end()) {
            unknown.push_back(id);
            continue;
        }
        it->second.attributes = names;
    }
    if (!unknown.empty()) {
        std::string ids;
        for (const int id : unknown) {
            if (!ids.empty()) ids += ", ";
            ids += std::to_string(id);
        }
        throw ValidationError(source + ": attributes reference objects absent from scene '" +
                              scene.image_id + "': " + ids);
    }
}

Scene load_scene_json(const std::filesystem::path& path) {
    const std::string source = path.string();
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("width") || !j.contains("height") || !j.contains("runs"))
        throw ParseError(source + ": scene JSON needs width, height and runs");

    const std::string image_id =
        j.contains("image_id") ? j.at("image_id").get<std::string>() : path.stem().string();
    const int width = j.at("width").get<int>();
    const int height = j.at("height").get<int>();
    if (width <= 0 || height <= 0) throw ParseError(source + ": non-positive dimensions");

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint16_t> labels;
    labels.reserve(n);
    for (const auto& run : j.at("runs")) {
        if (!run.is_array() || run.size() != 2)
            throw ParseError(source + ": each run must be [label, length]");
        const long long label = run[0].get<long long>();
        const long long length = run[1].get<long long>();
        if (label < 0 || label > 65535)
            throw ParseError(source + ": run label " + std::to_string(label) +
                             " outside the 16-bit range");
        if (length <= 0) throw ParseError(source + ": run length must be positive");
        if (labels.size() + static_cast<std::size_t>(length) > n)
            throw ValidationError(source + ": runs cover more than width*height pixels");
        labels.insert(labels.end(), static_cast<std::size_t>(length),
                      static_cast<std::uint16_t>(label));
    }
    if (labels.size() != n)
        throw ValidationError(source + ": runs cover " + std::to_string(labels.size()) +
                              " pixels, expected " + std::to_string(n));

    Scene scene = scene_from_raster(image_id, width, height, std::move(labels));
    if (j.contains("attributes"))
        apply_attributes(scene, parse_attribute_map(j.at("attributes"), source), source);
    return scene;
}

} // namespace

Scene load_scene(const std::filesystem::path& raster_path,
                 const std::optional<std::filesystem::path>& attributes_path) {
    Scene scene;
    const auto ext = raster_path.extension().string();
    if (ext == ".json") {
        scene = load_scene_json(raster_path);
    } else if (ext == ".pgm") {
        scene = load_scene_pgm(raster_path);
    } else {
        throw ParseError("unsupported scene raster format '" + ext + "' for '" +
                         raster_path.string() + "' (expected .pgm or .json)");
    }
    if (attributes_path) {
        const std::string source = attributes_path->string();
        json j;
        try {
            j = json::parse(read_file(*attributes_path));
        } catch (const json::exception& e) {
            throw ParseError(source + ": " + e.what());
        }
        apply_attributes(scene, parse_attribute_map(j, source), source);
    }
    return scene;
}

std::string scene_to_json(const Scene& scene) {
    std::string out = "{";
    bool any_attrs = false;
    for (const auto& [id, info] : scene.objects)
        if (!info.attributes.empty()) any_attrs = true;
    if (any_attrs) {
        out += "\"attributes\":{";
        bool first = true;
        for (const auto& [id, info] : scene.objects) {
            if (info.attributes.empty()) continue;
            if (!first) out += ',';
            first = false;
            out += '"' + std::to_string(id) + "\":[";
            bool first_name = true;
            for (const auto& name : info.attributes) {
                if (!first_name) out += ',';
                first_name = false;
                out += '"' + escape_json(name) + '"';
            }
            out += ']';
        }
        out += "},";
    }
    out += "\"height\":" + std::to_string(scene.height);
    out += ",\"image_id\":\"" + escape_json(scene.image_id) + "\"";
    out += ",\"runs\":[";
    std::size_t i = 0;
    const std::size_t n = scene.labels.size();
    bool first_run = true;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scene.labels[j] == scene.labels[i]) ++j;
        if (!first_run) out += ',';
        first_run = false;
        out += '[' + std::to_string(scene.labels[i]) + ',' + std::to_string(j - i) + ']';
        i = j;
    }
    out += "],\"width\":" + std::to_string(scene.width);
    out += "}\n";
    return out;
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
    write_file(path, scene_to_json(scene));
}

void save_scene_pgm(const Scene& scene, const std::filesystem::path& path) {
    std::string out = "P5\n" + std::to_string(scene.width) + " " + std::to_string(scene.height) +
                      "\n65535\n";
    out.reserve(out.size() + scene.labels.size() * 2);
    for (const auto label : scene.labels) {
        out += static_cast<char>(label >> 8);
        out += static_cast<char>(label & 0xff);
    }
    write_file(path, out);
}

// --- scanpaths ---------------------------------------------------------------

std::string scanpaths_to_jsonl(std::span<const SemanticScanpath> scanpaths) {
    std::string out;
    for (const auto& sp : scanpaths) {
        out += "{\"image_id\":\"" + escape_json(sp.image_id) + "\"";
        out += ",\"level\":\"" + to_string(sp.level) + "\"";
        out += ",\"observer_id\":\"" + escape_json(sp.observer_id) + "\"";
        out += ",\"source_spans\":[";
        for (std::size_t i = 0; i < sp.source_spans.size(); ++i) {
            if (i) out += ',';
            out += '[' + std::to_string(sp.source_spans[i].first) + ',' +
                   std::to_string(sp.source_spans[i].last) + ']';
        }
        out += "],\"terms\":[";
        for (std::size_t i = 0; i < sp.terms.size(); ++i) {
            if (i) out += ',';
            out += '"' + escape_json(sp.terms[i]) + '"';
        }
        out += "]}\n";
    }
    return out;
}

void save_scanpaths(std::span<const SemanticScanpath> scanpaths,
                    const std::filesystem::path& path) {
    write_file(path, scanpaths_to_jsonl(scanpaths));
}

std::vector<SemanticScanpath> parse_scanpaths(std::istream& in, const std::string& source_name) {
    std::vector<SemanticScanpath> result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
        }
        SemanticScanpath sp;
        try {
            sp.image_id = j.at("image_id").get<std::string>();
            sp.observer_id = j.at("observer_id").get<std::string>();
            sp.level = level_from_string(j.at("level").get<std::string>());
            for (const auto& t : j.at("terms")) sp.terms.push_back(t.get<std::string>());
            for (const auto& s : j.at("source_spans")) {
                if (!s.is_array() || s.size() != 2)
                    throw ParseError("source_spans entries must be [first, last]");
                sp.source_spans.push_back({s[0].get<int>(), s[1].get<int>()});
            }
        } catch (const json::exception& e) {
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (sp.terms.empty())
            throw ValidationError(source_name + ":" + std::to_string(line_no) +
                                  ": scanpath has no terms");
        if (sp.terms.size() != sp.source_spans.size())
            throw ValidationError(source_name + ":" + std::to_string(line_no) +
                                  ": terms and source_spans lengths differ");
        for (std::size_t i = 1; i < sp.terms.size(); ++i)
            if (sp.terms[i] == sp.terms[i - 1])
                throw ValidationError(source_name + ":" + std::to_string(line_no) +
                                      ": adjacent duplicate term '" + sp.terms[i] + "'");
        result.push_back(std::move(sp));
    }
    return result;
}

std::vector<SemanticScanpath> load_scanpaths(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return parse_scanpaths(in, path.string());
}

// --- graphs ------------------------------------------------------------------

GraphFormat graph_format_from_string(const std::string& s) {
    if (s == "json") return GraphFormat::Json;
    if (s == "dot") return GraphFormat::Dot;
    if (s == "adjacency_csv" || s == "csv") return GraphFormat::AdjacencyCsv;
    throw ParseError("unknown graph format '" + s + "'");
}

WeightView weight_view_from_string(const std::string& s) {
    if (s == "counts") return WeightView::Counts;
    if (s == "probability") return WeightView::Probability;
    if (s == "score") return WeightView::Score;
    throw ParseError("unknown weight view '" + s + "'");
}

namespace {

struct EdgeViews {
    std::map<NodeKey, std::int64_t, NodeKeyLess> out_total;
    std::map<NodeKey, std::int64_t, NodeKeyLess> out_max;
};

EdgeViews edge_views(const AttentionGraph& g) {
    EdgeViews v;
    for (const auto& [edge, count] : g.edge_counts) {
        v.out_total[edge.first] += count;
        auto& m = v.out_max[edge.first];
        m = std::max(m, count);
    }
    return v;
}

std::string weight_cell(std::int64_t count, std::int64_t total, std::int64_t max_count,
                        WeightView view) {
    switch (view) {
        case WeightView::Counts: return std::to_string(count);
        case WeightView::Probability:
            return format_sig9(total == 0 ? 0.0 : double(count) / double(total));
        case WeightView::Score:
            return format_sig9(max_count == 0 ? 0.0 : double(count) / double(max_count));
    }
    return {};
}

std::string export_graph_json(const AttentionGraph& g) {
    const EdgeViews views = edge_views(g);
    std::string out = "{\"edges\":[";
    bool first = true;
    for (const auto& [edge, count] : g.edge_counts) {
        if (!first) out += ',';
        first = false;
        out += "{\"count\":" + std::to_string(count);
        out += ",\"dst\":\"" + escape_json(edge.second) + "\"";
        out += ",\"probability\":" +
               format_sig9(double(count) / double(views.out_total.at(edge.first)));
        out += ",\"score\":" + format_sig9(double(count) / double(views.out_max.at(edge.first)));
        out += ",\"src\":\"" + escape_json(edge.first) + "\"}";
    }
    out += "],\"image_id\":\"" + escape_json(g.image_id) + "\"";
    out += ",\"level\":\"" + to_string(g.level) + "\"";
    out += ",\"nodes\":[";
    bool first_node = true;
    for (const auto& node : g.nodes) {
        if (!first_node) out += ',';
        first_node = false;
        out += '"' + escape_json(node) + '"';
    }
    out += "],\"observer_count\":" + std::to_string(g.observer_count) + "}\n";
    return out;
}

std::string quote_dot(const NodeKey& k) {
    std::string out = "\"";
    for (const char c : k) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string export_graph_dot(const AttentionGraph& g, WeightView view) {
    const EdgeViews views = edge_views(g);
    std::string out = "digraph " + quote_dot(g.image_id) + " {\n";
    for (const auto& node : g.nodes) out += "  " + quote_dot(node) + ";\n";
    for (const auto& [edge, count] : g.edge_counts) {
        out += "  " + quote_dot(edge.first) + " -> " + quote_dot(edge.second);
        out += " [label=\"" +
               weight_cell(count, views.out_total.at(edge.first), views.out_max.at(edge.first),
                           view) +
               "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string export_graph_csv(const AttentionGraph& g, WeightView view) {
    const EdgeViews views = edge_views(g);
    std::string out;
    for (const auto& node : g.nodes) out += ',' + quote_csv(node);
    out += '\n';
    for (const auto& src : g.nodes) {
        out += quote_csv(src);
        const auto total = views.out_total.contains(src) ? views.out_total.at(src) : 0;
        const auto maxc = views.out_max.contains(src) ? views.out_max.at(src) : 0;
        for (const auto& dst : g.nodes) {
            const auto it = g.edge_counts.find(EdgeKey{src, dst});
            const std::int64_t count = it == g.edge_counts.end() ? 0 : it->second;
            out += ',' + weight_cell(count, total, maxc, view);
        }
        out += '\n';
    }
    return out;
}

} // namespace

std::string export_graph(const AttentionGraph& g, GraphFormat format, WeightView view) {
    switch (format) {
        case GraphFormat::Json: return export_graph_json(g);
        case GraphFormat::Dot: return export_graph_dot(g, view);
        case GraphFormat::AdjacencyCsv: return export_graph_csv(g, view);
    }
    return {};
}

AttentionGraph parse_graph_json(const std::string& text, const std::string& source_name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(source_name + ": " + e.what());
    }
    AttentionGraph g;
    try {
        g.image_id = j.at("image_id").get<std::string>();
        g.level = level_from_string(j.at("level").get<std::string>());
        g.observer_count = j.at("observer_count").get<int>();
        for (const auto& node : j.at("nodes")) g.nodes.insert(node.get<std::string>());
        for (const auto& edge : j.at("edges")) {
            const auto src = edge.at("src").get<std::string>();
            const auto dst = edge.at("dst").get<std::string>();
            const auto count = edge.at("count").get<std::int64_t>();
            if (count < 1)
                throw ValidationError(source_name + ": edge " + src + "->" + dst +
                                      " has non-positive count");
            if (!g.nodes.contains(src) || !g.nodes.contains(dst))
                throw ValidationError(source_name + ": edge " + src + "->" + dst +
                                      " references a node missing from nodes");
            g.edge_counts[{src, dst}] += count;
        }
    } catch (const json::exception& e) {
        throw ParseError(source_name + ": " + e.what());
    }
    return g;
}

AttentionGraph load_graph(const std::filesystem::path& path) {
    return parse_graph_json(read_file(path), path.string());
}

ScoreGraph load_score_graph(const std::filesystem::path& path) {
    const std::string source = path.string();
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    ScoreGraph sg;
    try {
        sg.image_id = j.at("image_id").get<std::string>();
        sg.level = level_from_string(j.at("level").get<std::string>());
        for (const auto& edge : j.at("edges")) {
            sg.scores[{edge.at("src").get<std::string>(), edge.at("dst").get<std::string>()}] =
                edge.at("score").get<double>();
        }
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    return sg;
}

// --- saliency ----------------------------------------------------------------

std::string saliency_to_json(const ObjectSaliency& sal) {
    std::string out = "{\"image_id\":\"" + escape_json(sal.image_id) + "\",\"values\":{";
    bool first = true;
    for (const auto& [node, value] : sal.values) {
        if (!first) out += ',';
        first = false;
        out += '"' + escape_json(node) + "\":" + format_sig9(value);
    }
    out += "}}\n";
    return out;
}

void save_saliency(const ObjectSaliency& sal, const std::filesystem::path& path) {
    write_file(path, saliency_to_json(sal));
}

ObjectSaliency load_saliency(const std::filesystem::path& path) {
    const std::string source = path.string();
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    ObjectSaliency sal;
    try {
        sal.image_id = j.at("image_id").get<std::string>();
        for (const auto& [node, value] : j.at("values").items())
            sal.values[node] = value.get<double>();
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    return sal;
}

// --- manifest ----------------------------------------------------------------

DatasetManifest load_manifest(const std::filesystem::path& path) {
    const std::string source = path.string();
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }

    DatasetManifest m;
    const auto base = path.parent_path();
    try {
        m.dataset = j.at("dataset").get<std::string>();
        m.fixations_path = base / j.at("fixations").get<std::string>();
        m.scenes_dir = base / j.at("scenes_dir").get<std::string>();
        if (j.contains("attributes"))
            m.attributes_path = base / j.at("attributes").get<std::string>();
        if (j.contains("tolerance_px")) m.tolerance_px = j.at("tolerance_px").get<double>();
        if (j.contains("sigma_px")) m.sigma_px = j.at("sigma_px").get<double>();
        if (j.contains("coordinates")) m.coordinates = j.at("coordinates").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }

    if (m.tolerance_px <= 0) throw ValidationError(source + ": tolerance_px must be positive");
    if (m.sigma_px <= 0) throw ValidationError(source + ": sigma_px must be positive");
    if (!m.coordinates.empty() && m.coordinates != kCoordinateConvention)
        throw ValidationError(source + ": coordinate convention '" + m.coordinates +
                              "' differs from the assumed '" + kCoordinateConvention + "'");
    if (!std::filesystem::exists(m.fixations_path))
        throw ValidationError(source + ": fixations file '" + m.fixations_path.string() +
                              "' does not exist");
    if (!std::filesystem::is_directory(m.scenes_dir))
        throw ValidationError(source + ": scenes_dir '" + m.scenes_dir.string() +
                              "' is not a directory");
    if (m.attributes_path && !std::filesystem::exists(*m.attributes_path))
        throw ValidationError(source + ": attributes file '" + m.attributes_path->string() +
                              "' does not exist");
    return m;
}

namespace {

void rename_subjects_by_index(std::vector<Fixation>& fixations) {
    // i-th distinct observer per image (file order) becomes subject "s<i>"
    std::map<std::string, std::map<std::string, std::string>> mapping; // image -> obs -> name
    for (auto& f : fixations) {
        auto& per_image = mapping[f.image_id];
        auto it = per_image.find(f.observer_id);
        if (it == per_image.end()) {
            const std::string name = "s" + std::to_string(per_image.size() + 1);
            it = per_image.emplace(f.observer_id, name).first;
        }
        f.observer_id = it->second;
    }
}

} // namespace

LoadedDataset load_dataset(const std::filesystem::path& manifest_path, bool subjects_by_index) {
    LoadedDataset ds;
    ds.manifest = load_manifest(manifest_path);
    ds.fixations = load_fixations(ds.manifest.fixations_path);
    if (subjects_by_index) rename_subjects_by_index(ds.fixations);

    json dataset_attrs;
    if (ds.manifest.attributes_path) {
        try {
            dataset_attrs = json::parse(read_file(*ds.manifest.attributes_path));
        } catch (const json::exception& e) {
            throw ParseError(ds.manifest.attributes_path->string() + ": " + e.what());
        }
        if (!dataset_attrs.is_object())
            throw ParseError(ds.manifest.attributes_path->string() +
                             ": expected {image_id: {object_id: [names...]}}");
    }

    std::vector<std::filesystem::path> raster_paths;
    for (const auto& entry : std::filesystem::directory_iterator(ds.manifest.scenes_dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension().string();
        if (ext == ".pgm" || ext == ".json") raster_paths.push_back(entry.path());
    }
    std::sort(raster_paths.begin(), raster_paths.end());
    for (const auto& raster : raster_paths) {
        Scene scene = load_scene(raster);
        if (ds.manifest.attributes_path && dataset_attrs.contains(scene.image_id))
            apply_attributes(scene,
                             parse_attribute_map(dataset_attrs.at(scene.image_id),
                                                 ds.manifest.attributes_path->string()),
                             ds.manifest.attributes_path->string());
        const auto violations = validate_scene(scene);
        if (!violations.empty()) {
            std::string msg = "scene '" + scene.image_id + "' is inconsistent:";
            for (const auto& v : violations) msg += "\n  " + v;
            throw ValidationError(msg);
        }
        ds.scenes.emplace(scene.image_id, std::move(scene));
    }

    for (const auto& f : ds.fixations) {
        const auto it = ds.scenes.find(f.image_id);
        if (it == ds.scenes.end())
            throw ValidationError("fixation references image '" + f.image_id +
                                  "' with no scene in '" + ds.manifest.scenes_dir.string() + "'");
        if (!it->second.in_bounds(f.x, f.y))
            throw ValidationError("fixation out of bounds: image=" + f.image_id +
                                  " observer=" + f.observer_id +
                                  " seq=" + std::to_string(f.seq_index) + " at (" +
                                  format_sig9(f.x) + ", " + format_sig9(f.y) + ") in " +
                                  std::to_string(it->second.width) + "x" +
                                  std::to_string(it->second.height));
    }
    return ds;
}

std::map<std::pair<std::string, std::string>, std::vector<Fixation>>
group_fixations(std::span<const Fixation> fixations) {
    std::map<std::pair<std::string, std::string>, std::vector<Fixation>> groups;
    for (const auto& f : fixations) groups[{f.image_id, f.observer_id}].push_back(f);
    for (auto& [key, rows] : groups)
        std::sort(rows.begin(), rows.end(),
                  [](const Fixation& a, const Fixation& b) { return a.seq_index < b.seq_index; });
    return groups;
}

} // namespace gazegraph
