#include "gazegraph/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace gazegraph {

std::string to_string(Level level) {
    return level == Level::Object ? "object" : "attribute";
}

Level level_from_string(const std::string& s) {
    if (s == "object") return Level::Object;
    if (s == "attribute") return Level::Attribute;
    throw ParseError("unknown level '" + s + "' (expected 'object' or 'attribute')");
}

NodeKey object_node_key(int object_id) {
    return std::to_string(object_id);
}

NodeKey attribute_node_key(const std::set<std::string>& attributes) {
    if (attributes.empty()) return "None";
    std::string key;
    for (const auto& name : attributes) { // std::set iterates sorted
        if (!key.empty()) key += " & ";
        key += name;
    }
    return key;
}

int object_id_from_key(const NodeKey& key) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc{} || ptr != key.data() + key.size())
        throw UnknownObjectError("node key '" + key + "' is not an object id");
    return value;
}

namespace {

bool all_digits(const NodeKey& k) {
    return !k.empty() &&
           std::all_of(k.begin(), k.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

bool node_key_less(const NodeKey& a, const NodeKey& b) {
    const bool na = all_digits(a);
    const bool nb = all_digits(b);
    if (na != nb) return na; // numeric keys sort first
    if (na && nb) {
        // numeric compare without overflow: shorter digit string is smaller
        const auto sa = a.find_first_not_of('0');
        const auto sb = b.find_first_not_of('0');
        const auto la = sa == std::string::npos ? 0 : a.size() - sa;
        const auto lb = sb == std::string::npos ? 0 : b.size() - sb;
        if (la != lb) return la < lb;
        const int cmp = a.compare(sa == std::string::npos ? a.size() : sa, la,
                                  b, sb == std::string::npos ? b.size() : sb, lb);
        if (cmp != 0) return cmp < 0;
        return a < b; // leading zeros as tiebreak, keeps the order strict
    }
    return a < b;
}

NodeKey Scene::attribute_key_of(int object_id) const {
    const auto it = objects.find(object_id);
    if (it == objects.end())
        throw UnknownObjectError("object " + std::to_string(object_id) +
                                 " not present in scene '" + image_id + "'");
    return attribute_node_key(it->second.attributes);
}

std::vector<std::string> validate_scene(const Scene& scene) {
    std::vector<std::string> violations;

    if (scene.width <= 0) violations.push_back("width must be positive");
    if (scene.height <= 0) violations.push_back("height must be positive");
    const std::size_t expected =
        scene.width > 0 && scene.height > 0
            ? static_cast<std::size_t>(scene.width) * static_cast<std::size_t>(scene.height)
            : 0;
    if (scene.labels.size() != expected) {
        violations.push_back("label raster has " + std::to_string(scene.labels.size()) +
                             " pixels, expected " + std::to_string(expected));
        return violations; // pixel-based checks would be meaningless
    }

    std::map<int, std::int64_t> raster_counts;
    for (const auto label : scene.labels)
        if (label != 0) ++raster_counts[label];

    for (const auto& [label, count] : raster_counts) {
        if (!scene.objects.contains(label))
            violations.push_back("raster label " + std::to_string(label) +
                                 " missing from objects");
    }
    for (const auto& [id, info] : scene.objects) {
        if (id <= 0) {
            violations.push_back("object id " + std::to_string(id) +
                                 " invalid: ids must be positive");
            continue;
        }
        if (info.object_id != id)
            violations.push_back("object table key " + std::to_string(id) +
                                 " disagrees with object_id " +
                                 std::to_string(info.object_id));
        const auto it = raster_counts.find(id);
        if (it == raster_counts.end()) {
            violations.push_back("object " + std::to_string(id) + " absent from raster");
            continue;
        }
        if (info.pixel_count != it->second)
            violations.push_back("pixel_count mismatch for object " + std::to_string(id) +
                                 ": listed " + std::to_string(info.pixel_count) +
                                 ", raster has " + std::to_string(it->second));
    }
    return violations;
}

} // namespace gazegraph
