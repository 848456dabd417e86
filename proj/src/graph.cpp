#include "gazegraph/graph.hpp"

#include <random>

#include "gazegraph/rng.hpp"

namespace gazegraph {

AttentionGraph build_attention_graph(std::span<const SemanticScanpath> scanpaths) {
    if (scanpaths.empty()) throw InputError("cannot build a graph from zero scanpaths");

    AttentionGraph g;
    g.image_id = scanpaths.front().image_id;
    g.level = scanpaths.front().level;
    g.observer_count = static_cast<int>(scanpaths.size());

    for (const auto& sp : scanpaths) {
        if (sp.image_id != g.image_id)
            throw InputError("scanpaths mix images: '" + g.image_id + "' vs '" + sp.image_id +
                             "'");
        if (sp.level != g.level)
            throw InputError("scanpaths mix levels on image '" + g.image_id + "'");
        if (sp.terms.empty())
            throw InputError("empty scanpath for observer '" + sp.observer_id + "'");

        for (const auto& term : sp.terms) g.nodes.insert(term);
        if (sp.terms.size() == 1) {
            ++g.edge_counts[{sp.terms[0], sp.terms[0]}]; // all fixations on one object
        } else {
            for (std::size_t t = 0; t + 1 < sp.terms.size(); ++t)
                ++g.edge_counts[{sp.terms[t], sp.terms[t + 1]}];
        }
    }
    return g;
}

double edge_probability(const AttentionGraph& g, const NodeKey& u, const NodeKey& v) {
    if (!g.nodes.contains(u))
        throw UnknownNodeError("node '" + u + "' not in graph for image '" + g.image_id + "'");
    std::int64_t total = 0;
    std::int64_t edge = 0;
    for (auto it = g.edge_counts.lower_bound(u);
         it != g.edge_counts.end() && it->first.first == u; ++it) {
        total += it->second;
        if (it->first.second == v) edge = it->second;
    }
    return total == 0 ? 0.0 : static_cast<double>(edge) / static_cast<double>(total);
}

ScoreGraph normalize_score_graph(const AttentionGraph& g) {
    ScoreGraph sg;
    sg.image_id = g.image_id;
    sg.level = g.level;

    auto it = g.edge_counts.begin();
    while (it != g.edge_counts.end()) {
        const NodeKey& source = it->first.first;
        auto end = it;
        std::int64_t max_count = 0;
        for (; end != g.edge_counts.end() && end->first.first == source; ++end)
            max_count = std::max(max_count, end->second);
        for (; it != end; ++it)
            sg.scores[it->first] =
                static_cast<double>(it->second) / static_cast<double>(max_count);
    }
    return sg;
}

AttentionGraph merge_to_attribute_graph(const AttentionGraph& g, const Scene& scene) {
    if (g.level != Level::Object)
        throw InputError("merge_to_attribute_graph expects an object-level graph");

    AttentionGraph out;
    out.image_id = g.image_id;
    out.level = Level::Attribute;
    out.observer_count = g.observer_count;

    for (const auto& node : g.nodes)
        out.nodes.insert(scene.attribute_key_of(object_id_from_key(node)));
    for (const auto& [edge, count] : g.edge_counts) {
        const NodeKey src = scene.attribute_key_of(object_id_from_key(edge.first));
        const NodeKey dst = scene.attribute_key_of(object_id_from_key(edge.second));
        out.edge_counts[{src, dst}] += count;
    }
    return out;
}

std::int64_t node_intensity(const AttentionGraph& g) {
    std::int64_t total = 0;
    for (const auto& [edge, count] : g.edge_counts) total += count;
    return total;
}

SemanticScanpath sample_scanpath(const AttentionGraph& g, const NodeKey& start, int max_len,
                                 std::uint64_t seed) {
    if (!g.nodes.contains(start))
        throw UnknownNodeError("start node '" + start + "' not in graph for image '" +
                               g.image_id + "'");
    if (max_len < 1) throw InputError("max_len must be positive");

    SemanticScanpath sp;
    sp.image_id = g.image_id;
    sp.observer_id = "walk:" + std::to_string(seed);
    sp.level = g.level;

    std::mt19937_64 rng(seed);
    NodeKey current = start;
    for (int step = 0;; ++step) {
        sp.terms.push_back(current);
        sp.source_spans.push_back({step, step});
        if (step + 1 >= max_len) break;

        // successors in canonical order; weighted draw over raw counts
        std::vector<std::pair<const NodeKey*, std::int64_t>> successors;
        std::int64_t total = 0;
        for (auto it = g.edge_counts.lower_bound(current);
             it != g.edge_counts.end() && it->first.first == current; ++it) {
            successors.emplace_back(&it->first.second, it->second);
            total += it->second;
        }
        if (successors.empty()) break;

        auto pick = static_cast<std::int64_t>(uniform_index(rng, static_cast<std::uint64_t>(total)));
        for (const auto& [node, count] : successors) {
            pick -= count;
            if (pick < 0) {
                current = *node;
                break;
            }
        }
    }
    return sp;
}

} // namespace gazegraph
