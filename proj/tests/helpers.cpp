#include "helpers.hpp"

#include <algorithm>
#include <cmath>

#include "gazegraph/rng.hpp"

namespace testutil {

Scene make_scene(std::string image_id, int width, int height,
                 std::vector<std::uint16_t> labels,
                 std::map<int, std::set<std::string>> attributes) {
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
    for (auto& [id, names] : attributes) {
        if (scene.objects.contains(id)) scene.objects[id].attributes = names;
    }
    return scene;
}

Scene make_block_scene(std::string image_id, int width, int height, int grid,
                       const std::vector<int>& block_labels,
                       std::map<int, std::set<std::string>> attributes) {
    std::vector<std::uint16_t> labels(static_cast<std::size_t>(width) * height, 0);
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            const int br = std::min(grid - 1, row * grid / height);
            const int bc = std::min(grid - 1, col * grid / width);
            const int label = block_labels[static_cast<std::size_t>(br) * grid + bc];
            labels[static_cast<std::size_t>(row) * width + col] =
                static_cast<std::uint16_t>(label);
        }
    }
    return make_scene(std::move(image_id), width, height, std::move(labels),
                      std::move(attributes));
}

std::pair<double, double> point_inside(const Scene& scene, int object_id) {
    for (int row = 0; row < scene.height; ++row)
        for (int col = 0; col < scene.width; ++col)
            if (scene.label_at(col, row) == object_id)
                return {col + 0.5, row + 0.5};
    throw std::runtime_error("object " + std::to_string(object_id) + " has no pixel");
}

Fixation fix(std::string image_id, std::string observer_id, int seq, double x, double y,
             double duration_ms) {
    Fixation f;
    f.image_id = std::move(image_id);
    f.observer_id = std::move(observer_id);
    f.seq_index = seq;
    f.x = x;
    f.y = y;
    f.duration_ms = duration_ms;
    return f;
}

std::vector<Fixation> fixations_for_path(const Scene& scene, const std::string& observer_id,
                                         const std::vector<int>& object_ids) {
    std::vector<Fixation> out;
    int seq = 0;
    for (const int id : object_ids) {
        const auto [x, y] = point_inside(scene, id);
        out.push_back(fix(scene.image_id, observer_id, seq++, x, y));
    }
    return out;
}

std::optional<NearestObject> oracle_nearest(const Scene& scene, double x, double y) {
    std::optional<std::pair<double, int>> best; // (d2, id)
    for (int row = 0; row < scene.height; ++row) {
        for (int col = 0; col < scene.width; ++col) {
            const int label = scene.label_at(col, row);
            if (label == 0) continue;
            const double dx = (col + 0.5) - x;
            const double dy = (row + 0.5) - y;
            const double d2 = dx * dx + dy * dy;
            if (!best || d2 < best->first || (d2 == best->first && label < best->second))
                best = {d2, label};
        }
    }
    if (!best) return std::nullopt;
    return NearestObject{best->second, std::sqrt(best->first)};
}

std::vector<OracleTerm> oracle_collapse(std::span<const Fixation> fixations, const Scene& scene,
                                        double tolerance_px) {
    struct Retained {
        int object_id;
        int seq;
    };
    std::vector<Retained> retained;
    for (const auto& f : fixations) {
        const int col = static_cast<int>(std::floor(f.x));
        const int row = static_cast<int>(std::floor(f.y));
        const int label = scene.label_at(col, row);
        if (label != 0) {
            retained.push_back({label, f.seq_index});
            continue;
        }
        const auto nearest = oracle_nearest(scene, f.x, f.y);
        if (nearest && nearest->distance_px <= tolerance_px)
            retained.push_back({nearest->object_id, f.seq_index});
    }

    std::vector<OracleTerm> terms;
    for (const auto& r : retained) {
        const NodeKey key = object_node_key(r.object_id);
        if (!terms.empty() && terms.back().key == key)
            terms.back().last = r.seq;
        else
            terms.push_back({key, r.seq, r.seq});
    }
    return terms;
}

double oracle_weighted_score(const std::vector<NodeKey>& terms, const EdgeScores& scores,
                             const std::map<NodeKey, double, NodeKeyLess>& lambda) {
    const std::size_t K = terms.size();
    double numerator = 0.0;
    double mu = 0.0;
    for (std::size_t t = 0; t + 1 < K; ++t) {
        const auto lam_it = lambda.find(terms[t]);
        const double lam = lam_it == lambda.end() ? 0.0 : lam_it->second;
        const auto w_it = scores.find(EdgeKey{terms[t], terms[t + 1]});
        const double w = w_it == scores.end() ? 0.0 : w_it->second;
        numerator += lam * w;
        mu += lam;
    }
    return mu == 0.0 ? 0.0 : numerator / mu;
}

std::map<int, double> oracle_saliency(const DensityMap& density, const Scene& scene) {
    std::map<int, double> out;
    for (int row = 0; row < scene.height; ++row)
        for (int col = 0; col < scene.width; ++col)
            if (const int label = scene.label_at(col, row); label != 0)
                out[label] += density.at(col, row);
    return out;
}

std::pair<double, double> oracle_welch(const std::vector<double>& a,
                                       const std::vector<double>& b) {
    const double n1 = double(a.size());
    const double n2 = double(b.size());
    double m1 = 0, m2 = 0;
    for (double v : a) m1 += v / n1;
    for (double v : b) m2 += v / n2;
    double v1 = 0, v2 = 0;
    for (double v : a) v1 += (v - m1) * (v - m1) / (n1 - 1);
    for (double v : b) v2 += (v - m2) * (v - m2) / (n2 - 1);
    const double se1 = v1 / n1;
    const double se2 = v2 / n2;
    const double t = (m1 - m2) / std::sqrt(se1 + se2);
    const double dof =
        (se1 + se2) * (se1 + se2) / (se1 * se1 / (n1 - 1) + se2 * se2 / (n2 - 1));
    return {t, dof};
}

double binomial_upper_tail(int n, int k) {
    // sum_{j=k}^{n} C(n, j) / 2^n, evaluated with running products
    double tail = 0.0;
    double log_c = 0.0; // log C(n, j) built incrementally from j = 0
    std::vector<double> log_choose(n + 1);
    for (int j = 1; j <= n; ++j) {
        log_c += std::log(double(n - j + 1)) - std::log(double(j));
        log_choose[j] = log_c;
    }
    const double log_half_n = n * std::log(0.5);
    for (int j = std::max(0, k); j <= n; ++j)
        tail += std::exp(log_choose[j] + log_half_n);
    return tail;
}

AttentionGraph random_graph(std::mt19937_64& rng, int max_nodes) {
    AttentionGraph g;
    g.image_id = "rand" + std::to_string(rng() % 1000);
    g.level = Level::Object;
    const int n = 2 + int(uniform_index(rng, std::uint64_t(max_nodes - 1)));
    std::vector<NodeKey> keys;
    for (int i = 0; i < n; ++i) {
        keys.push_back(object_node_key(i + 1));
        g.nodes.insert(keys.back());
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (uniform_double(rng) < 0.45)
                g.edge_counts[{keys[i], keys[j]}] = 1 + std::int64_t(uniform_index(rng, 9));
        }
    }
    if (g.edge_counts.empty()) g.edge_counts[{keys[0], keys[1]}] = 1;
    g.observer_count = 1 + int(uniform_index(rng, 7));
    return g;
}

Scene random_scene(std::mt19937_64& rng, int width, int height, int max_objects) {
    std::vector<std::uint16_t> labels(static_cast<std::size_t>(width) * height, 0);
    const int n = 1 + int(uniform_index(rng, std::uint64_t(max_objects)));
    for (int id = 1; id <= n; ++id) {
        const int x0 = int(uniform_index(rng, width));
        const int y0 = int(uniform_index(rng, height));
        const int w = 1 + int(uniform_index(rng, std::uint64_t(width - x0)));
        const int h = 1 + int(uniform_index(rng, std::uint64_t(height - y0)));
        for (int row = y0; row < y0 + h; ++row)
            for (int col = x0; col < x0 + w; ++col)
                labels[static_cast<std::size_t>(row) * width + col] =
                    static_cast<std::uint16_t>(id);
    }
    // later rectangles may fully cover earlier ones; keep only surviving ids
    return make_scene("rand_scene", width, height, std::move(labels));
}

} // namespace testutil
