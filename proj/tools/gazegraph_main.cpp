// Command-line surface for the gaze-graph toolkit: scanpath encoding, graph
// construction and export, scanpath scoring, baselines, cohort
// classification, statistics and graph sampling.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gazegraph/baselines.hpp"
#include "gazegraph/classifier.hpp"
#include "gazegraph/graph.hpp"
#include "gazegraph/io.hpp"
#include "gazegraph/metrics.hpp"
#include "gazegraph/rng.hpp"
#include "gazegraph/scanpath.hpp"

namespace gg = gazegraph;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
    double tolerance_px = -1.0; // <0 = take the manifest value
    double sigma_px = -1.0;
    std::string level = "object";
    std::string metric = "s_scan";
    std::uint64_t seed = 0;
    std::string output;
};

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty() || output_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw gg::Error("cannot write '" + output_path + "'");
    out << text;
}

double pick(double flag_value, double manifest_value) {
    return flag_value > 0 ? flag_value : manifest_value;
}

gg::Level parse_level(const std::string& s) { return gg::level_from_string(s); }

// builds every observer's scanpath for one loaded dataset, at the given level
std::vector<gg::SemanticScanpath> build_all_scanpaths(const gg::LoadedDataset& ds,
                                                      gg::Level level, double tolerance_px) {
    std::vector<gg::SemanticScanpath> result;
    for (const auto& [key, rows] : gg::group_fixations(ds.fixations)) {
        const gg::Scene& scene = ds.scenes.at(key.first);
        try {
            auto sp = gg::build_object_scanpath(rows, scene, tolerance_px);
            if (level == gg::Level::Attribute) sp = gg::to_attribute_scanpath(sp, scene);
            result.push_back(std::move(sp));
        } catch (const gg::EmptyScanpathError&) {
            std::cerr << "note: observer '" << key.second << "' on image '" << key.first
                      << "' has no retained fixation, skipped\n";
        }
    }
    return result;
}

int run_build_scanpaths(const GlobalOpts& opts, const std::string& manifest_path,
                        bool subjects_by_index) {
    const auto ds = gg::load_dataset(manifest_path, subjects_by_index);
    const double tol = pick(opts.tolerance_px, ds.manifest.tolerance_px);
    const auto scanpaths = build_all_scanpaths(ds, parse_level(opts.level), tol);
    emit(gg::scanpaths_to_jsonl(scanpaths), opts.output);
    return 0;
}

int run_build_graph(const GlobalOpts& opts, const std::string& scanpaths_path,
                    const std::string& image_filter, const std::string& format_name,
                    const std::string& view_name) {
    const auto format = gg::graph_format_from_string(format_name);
    const auto view = gg::weight_view_from_string(view_name);

    std::map<std::string, std::vector<gg::SemanticScanpath>> by_image;
    for (auto& sp : gg::load_scanpaths(scanpaths_path)) {
        if (!image_filter.empty() && sp.image_id != image_filter) continue;
        by_image[sp.image_id].push_back(std::move(sp));
    }
    if (by_image.empty())
        throw gg::InputError(image_filter.empty()
                                 ? "no scanpaths in '" + scanpaths_path + "'"
                                 : "no scanpaths for image '" + image_filter + "'");

    const char* ext = format == gg::GraphFormat::Json  ? ".json"
                      : format == gg::GraphFormat::Dot ? ".dot"
                                                       : ".csv";
    if (by_image.size() == 1) {
        const auto& [image_id, paths] = *by_image.begin();
        emit(gg::export_graph(gg::build_attention_graph(paths), format, view), opts.output);
        return 0;
    }
    if (opts.output.empty())
        throw gg::InputError("multiple images in input: --output must name a directory");
    fs::create_directories(opts.output);
    for (const auto& [image_id, paths] : by_image) {
        const auto path = fs::path(opts.output) / (image_id + ext);
        emit(gg::export_graph(gg::build_attention_graph(paths), format, view), path.string());
    }
    return 0;
}

int run_score(const GlobalOpts& opts, const std::string& graph_path,
              const std::string& scanpaths_path, const std::string& saliency_path) {
    const auto graph = gg::load_graph(graph_path);
    const auto scores = gg::normalize_score_graph(graph);
    const bool weighted = opts.metric == "s_scan_weighted" || opts.metric == "both";
    const bool plain = opts.metric == "s_scan" || opts.metric == "both";

    gg::ObjectSaliency saliency;
    if (weighted) {
        if (saliency_path.empty())
            throw gg::InputError("--saliency is required for the weighted metric");
        saliency = gg::load_saliency(saliency_path);
    }

    std::string table = "image_id\tobserver_id";
    if (plain) table += "\ts_scan";
    if (weighted) table += "\ts_scan_weighted";
    table += '\n';

    for (const auto& sp : gg::load_scanpaths(scanpaths_path)) {
        if (sp.image_id != graph.image_id) {
            std::cerr << "note: scanpath for image '" << sp.image_id
                      << "' does not match graph image '" << graph.image_id << "', skipped\n";
            continue;
        }
        try {
            std::string row = sp.image_id + '\t' + sp.observer_id;
            if (plain) row += '\t' + gg::format_sig9(gg::score_scanpath(sp, scores).value);
            if (weighted)
                row += '\t' +
                       gg::format_sig9(gg::score_scanpath_weighted(sp, scores, saliency).value);
            table += row + '\n';
        } catch (const gg::DegenerateScanpathError& e) {
            std::cerr << "note: " << e.what() << ", skipped\n";
        }
    }
    emit(table, opts.output);
    return 0;
}

struct ImageTruth {
    gg::ScoreGraph scores;
    gg::ObjectSaliency saliency;
};

int run_eval(const GlobalOpts& opts, const std::string& manifest_path,
             const std::string& predictions_path, bool human_loo) {
    const auto ds = gg::load_dataset(manifest_path);
    const double tol = pick(opts.tolerance_px, ds.manifest.tolerance_px);
    const double sigma = pick(opts.sigma_px, ds.manifest.sigma_px);
    const auto level = parse_level(opts.level);
    const bool weighted = opts.metric == "s_scan_weighted" || opts.metric == "both";
    const bool plain = opts.metric == "s_scan" || opts.metric == "both";

    // ground truth per image: score graph over all observers, saliency from
    // all their fixations
    std::map<std::string, std::vector<gg::SemanticScanpath>> human_by_image;
    for (auto& sp : build_all_scanpaths(ds, level, tol))
        human_by_image[sp.image_id].push_back(std::move(sp));
    std::map<std::string, std::vector<gg::Fixation>> fixations_by_image;
    for (const auto& f : ds.fixations) fixations_by_image[f.image_id].push_back(f);

    std::map<std::string, ImageTruth> truth;
    for (const auto& [image_id, paths] : human_by_image) {
        ImageTruth t;
        t.scores = gg::normalize_score_graph(gg::build_attention_graph(paths));
        if (weighted) {
            const gg::Scene& scene = ds.scenes.at(image_id);
            t.saliency = gg::object_saliency(
                gg::fixation_density(fixations_by_image.at(image_id), image_id, scene.width,
                                     scene.height, sigma),
                scene, level);
        }
        truth.emplace(image_id, std::move(t));
    }

    // predictions: raw fixation CSV goes through the same encoding pipeline
    std::vector<gg::SemanticScanpath> predictions;
    if (fs::path(predictions_path).extension() == ".csv") {
        for (const auto& [key, rows] :
             gg::group_fixations(gg::load_fixations(predictions_path))) {
            const auto scene_it = ds.scenes.find(key.first);
            if (scene_it == ds.scenes.end())
                throw gg::ValidationError("prediction references image '" + key.first +
                                          "' with no scene");
            try {
                auto sp = gg::build_object_scanpath(rows, scene_it->second, tol);
                if (level == gg::Level::Attribute)
                    sp = gg::to_attribute_scanpath(sp, scene_it->second);
                predictions.push_back(std::move(sp));
            } catch (const gg::EmptyScanpathError& e) {
                std::cerr << "note: " << e.what() << ", skipped\n";
            }
        }
    } else {
        predictions = gg::load_scanpaths(predictions_path);
    }

    struct Acc {
        double sum = 0;
        int n = 0;
    };
    std::map<std::string, Acc> plain_acc, weighted_acc;
    std::map<std::string, int> path_counts;
    for (const auto& sp : predictions) {
        const auto it = truth.find(sp.image_id);
        if (it == truth.end()) {
            std::cerr << "note: no ground-truth graph for image '" << sp.image_id
                      << "', skipped\n";
            continue;
        }
        if (sp.level != it->second.scores.level)
            throw gg::InputError("prediction level does not match --level for image '" +
                                 sp.image_id + "'");
        try {
            if (plain) {
                plain_acc[sp.image_id].sum += gg::score_scanpath(sp, it->second.scores).value;
                ++plain_acc[sp.image_id].n;
            }
            if (weighted) {
                weighted_acc[sp.image_id].sum +=
                    gg::score_scanpath_weighted(sp, it->second.scores, it->second.saliency)
                        .value;
                ++weighted_acc[sp.image_id].n;
            }
            ++path_counts[sp.image_id];
        } catch (const gg::DegenerateScanpathError& e) {
            std::cerr << "note: " << e.what() << ", skipped\n";
        }
    }

    std::string table = "image_id\tn_paths";
    if (plain) table += "\ts_scan";
    if (weighted) table += "\ts_scan_weighted";
    table += '\n';
    double plain_total = 0, weighted_total = 0;
    int image_count = 0;
    for (const auto& [image_id, n] : path_counts) {
        table += image_id + '\t' + std::to_string(n);
        if (plain) {
            const double mean = plain_acc[image_id].sum / plain_acc[image_id].n;
            plain_total += mean;
            table += '\t' + gg::format_sig9(mean);
        }
        if (weighted) {
            const double mean = weighted_acc[image_id].sum / weighted_acc[image_id].n;
            weighted_total += mean;
            table += '\t' + gg::format_sig9(mean);
        }
        table += '\n';
        ++image_count;
    }
    if (image_count > 0) {
        table += "MEAN\t" + std::to_string(image_count);
        if (plain) table += '\t' + gg::format_sig9(plain_total / image_count);
        if (weighted) table += '\t' + gg::format_sig9(weighted_total / image_count);
        table += '\n';
    }

    if (human_loo) {
        double h_plain = 0, h_weighted = 0;
        int h_images = 0;
        for (const auto& [image_id, paths] : human_by_image) {
            if (paths.size() < 2) continue;
            const gg::Scene& scene = ds.scenes.at(image_id);
            double img_plain = 0, img_weighted = 0;
            int n = 0;
            for (std::size_t held = 0; held < paths.size(); ++held) {
                std::vector<gg::SemanticScanpath> rest;
                for (std::size_t i = 0; i < paths.size(); ++i)
                    if (i != held) rest.push_back(paths[i]);
                const auto sg = gg::normalize_score_graph(gg::build_attention_graph(rest));
                try {
                    if (plain) img_plain += gg::score_scanpath(paths[held], sg).value;
                    if (weighted) {
                        std::vector<gg::Fixation> rest_fix;
                        for (const auto& f : fixations_by_image.at(image_id))
                            if (f.observer_id != paths[held].observer_id)
                                rest_fix.push_back(f);
                        const auto sal = gg::object_saliency(
                            gg::fixation_density(rest_fix, image_id, scene.width, scene.height,
                                                 sigma),
                            scene, level);
                        img_weighted += gg::score_scanpath_weighted(paths[held], sg, sal).value;
                    }
                    ++n;
                } catch (const gg::DegenerateScanpathError&) {
                }
            }
            if (n == 0) continue;
            h_plain += img_plain / n;
            h_weighted += img_weighted / n;
            ++h_images;
        }
        if (h_images > 0) {
            table += "HUMAN_LOO\t" + std::to_string(h_images);
            if (plain) table += '\t' + gg::format_sig9(h_plain / h_images);
            if (weighted) table += '\t' + gg::format_sig9(h_weighted / h_images);
            table += '\n';
        }
    }
    emit(table, opts.output);
    return 0;
}

int run_baseline(const GlobalOpts& opts, const std::string& manifest_path,
                 const std::string& kind, int n_points) {
    const auto ds = gg::load_dataset(manifest_path);
    const double tol = pick(opts.tolerance_px, ds.manifest.tolerance_px);
    const auto level = parse_level(opts.level);

    const auto groups = gg::group_fixations(ds.fixations);
    std::vector<gg::SemanticScanpath> out;

    for (const auto& [image_id, scene] : ds.scenes) {
        try {
            std::optional<gg::SemanticScanpath> sp;
            if (kind == "chance") {
                int n = n_points;
                if (n <= 0) { // median human fixation count for this image
                    std::vector<int> counts;
                    for (const auto& [key, rows] : groups)
                        if (key.first == image_id) counts.push_back(int(rows.size()));
                    if (counts.empty()) {
                        std::cerr << "note: no human fixations on image '" << image_id
                                  << "' and no --n-points, skipped\n";
                        continue;
                    }
                    std::sort(counts.begin(), counts.end());
                    n = counts[(counts.size() - 1) / 2];
                }
                sp = gg::chance_scanpath(scene, n, gg::derive_seed(opts.seed, image_id), tol);
            } else if (kind == "random") {
                std::vector<const std::vector<gg::Fixation>*> pool;
                for (const auto& [key, rows] : groups)
                    if (key.first != image_id && !rows.empty()) pool.push_back(&rows);
                if (pool.empty()) {
                    std::cerr << "note: no donor sequence for image '" << image_id
                              << "', skipped\n";
                    continue;
                }
                std::mt19937_64 rng(gg::derive_seed(opts.seed, image_id));
                const auto& donor = *pool[gg::uniform_index(rng, pool.size())];
                sp = gg::random_scanpath(donor, scene, tol);
            } else {
                throw gg::ParseError("unknown baseline kind '" + kind +
                                     "' (expected 'chance' or 'random')");
            }
            if (level == gg::Level::Attribute) *sp = gg::to_attribute_scanpath(*sp, scene);
            out.push_back(std::move(*sp));
        } catch (const gg::EmptyScanpathError& e) {
            std::cerr << "note: " << e.what() << ", skipped\n";
        }
    }
    emit(gg::scanpaths_to_jsonl(out), opts.output);
    return 0;
}

gg::CohortDataset make_cohort(const gg::LoadedDataset& a, const gg::LoadedDataset& b,
                              const std::string& label_a, const std::string& label_b) {
    if (label_a == label_b) throw gg::InputError("group labels must differ");
    gg::CohortDataset ds;
    ds.group_a = label_a;
    ds.group_b = label_b;
    ds.scenes = a.scenes;
    for (const auto& [image_id, scene] : b.scenes) ds.scenes.emplace(image_id, scene);

    const auto add = [&ds](const gg::LoadedDataset& src, const std::string& label) {
        for (const auto& [key, rows] : gg::group_fixations(src.fixations)) {
            auto& subject = ds.subjects[label + ":" + key.second];
            subject.group = label;
            subject.fixations_by_image[key.first] = rows;
        }
    };
    add(a, label_a);
    add(b, label_b);
    return ds;
}

std::string report_to_json(const gg::ClassificationReport& report) {
    std::string out = "{\"accuracy\":" + gg::format_sig9(report.accuracy);
    out += ",\"correct\":" + std::to_string(report.correct);
    out += ",\"per_subject\":{";
    bool first = true;
    for (const auto& [subject_id, r] : report.per_subject) {
        if (!first) out += ',';
        first = false;
        out += '"' + subject_id + "\":{\"predicted_group\":\"" + r.predicted_group + "\"";
        out += ",\"skipped\":" + std::to_string(r.skipped);
        out += ",\"true_group\":\"" + r.true_group + "\"";
        out += ",\"votes_a\":" + std::to_string(r.votes_a);
        out += ",\"votes_b\":" + std::to_string(r.votes_b) + "}";
    }
    out += "},\"summary\":\"" + report.format_accuracy() + "\"";
    out += ",\"total\":" + std::to_string(report.total) + "}\n";
    return out;
}

int run_classify(const GlobalOpts& opts, const std::string& manifest_a,
                 const std::string& manifest_b, std::string label_a, std::string label_b,
                 bool subjects_by_index) {
    if (opts.metric == "both")
        throw gg::InputError("classify votes on one metric: use s_scan or s_scan_weighted");
    const auto a = gg::load_dataset(manifest_a, subjects_by_index);
    const auto b = gg::load_dataset(manifest_b, subjects_by_index);
    if (label_a.empty()) label_a = a.manifest.dataset;
    if (label_b.empty()) label_b = b.manifest.dataset;

    gg::GraphBuildConfig cfg;
    cfg.tolerance_px = pick(opts.tolerance_px, a.manifest.tolerance_px);
    cfg.sigma_px = pick(opts.sigma_px, a.manifest.sigma_px);
    if (a.manifest.tolerance_px != b.manifest.tolerance_px ||
        a.manifest.sigma_px != b.manifest.sigma_px)
        std::cerr << "note: manifests disagree on tolerance/sigma; using " << cfg.tolerance_px
                  << "/" << cfg.sigma_px << "\n";

    const auto ds = make_cohort(a, b, label_a, label_b);
    const auto report = gg::loso_evaluate(ds, parse_level(opts.level),
                                          gg::metric_from_string(opts.metric), cfg);
    std::cout << "accuracy " << report.format_accuracy() << "\n";
    if (!opts.output.empty()) emit(report_to_json(report), opts.output);
    return 0;
}

int run_stats_coverage(const GlobalOpts& opts, const std::string& manifest_path) {
    const auto ds = gg::load_dataset(manifest_path);
    const double tol = pick(opts.tolerance_px, ds.manifest.tolerance_px);
    const auto stats = gg::coverage_statistic(ds.fixations, ds.scenes, tol);

    std::string table = "image_id\tretained_fraction\n";
    for (const auto& [image_id, fraction] : stats.per_image)
        table += image_id + '\t' + gg::format_sig9(fraction) + '\n';
    table += "OVERALL\t" + gg::format_sig9(stats.overall) + "\t(" +
             std::to_string(stats.retained) + "/" + std::to_string(stats.total) + ")\n";
    emit(table, opts.output);
    return 0;
}

int run_stats_intensity(const GlobalOpts& opts, const std::string& manifest_a,
                        const std::string& manifest_b, std::string label_a, std::string label_b,
                        bool subjects_by_index) {
    const auto a = gg::load_dataset(manifest_a, subjects_by_index);
    const auto b = gg::load_dataset(manifest_b, subjects_by_index);
    if (label_a.empty()) label_a = a.manifest.dataset;
    if (label_b.empty()) label_b = b.manifest.dataset;

    gg::GraphBuildConfig cfg;
    cfg.tolerance_px = pick(opts.tolerance_px, a.manifest.tolerance_px);
    cfg.sigma_px = pick(opts.sigma_px, a.manifest.sigma_px);

    const auto ds = make_cohort(a, b, label_a, label_b);
    const auto report = gg::group_node_intensity(ds, label_a, parse_level(opts.level), cfg);

    std::string table = "image_id\t" + label_a + "\t" + label_b + "\n";
    for (const auto& [image_id, intensity] : report.intensities) {
        table += image_id + '\t' + std::to_string(intensity) + '\t';
        const auto it = report.other_intensities.find(image_id);
        table += it == report.other_intensities.end() ? "-" : std::to_string(it->second);
        table += '\n';
    }
    table += "MEAN\t" + gg::format_sig9(report.mean) + '\t' +
             gg::format_sig9(report.other_mean) + '\n';
    table += "WELCH_T\t" + gg::format_sig9(report.welch_t) + "\tdof\t" +
             gg::format_sig9(report.welch_dof) + '\n';
    emit(table, opts.output);
    return 0;
}

int run_sample(const GlobalOpts& opts, const std::string& graph_path, const std::string& start,
               int max_len, int count) {
    const auto graph = gg::load_graph(graph_path);
    std::vector<gg::SemanticScanpath> walks;
    for (int i = 0; i < count; ++i)
        walks.push_back(gg::sample_scanpath(graph, start, max_len, opts.seed + i));
    emit(gg::scanpaths_to_jsonl(walks), opts.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaze-graph toolkit: semantic scanpaths, attention graphs, scoring"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts opts;
    app.add_option("--tolerance-px", opts.tolerance_px,
                   "max distance from an object before a fixation is discarded");
    app.add_option("--sigma-px", opts.sigma_px, "Gaussian sigma for fixation density");
    app.add_option("--level", opts.level, "semantic level: object|attribute")
        ->check(CLI::IsMember({"object", "attribute"}));
    app.add_option("--metric", opts.metric, "score metric: s_scan|s_scan_weighted|both")
        ->check(CLI::IsMember({"s_scan", "s_scan_weighted", "both"}));
    app.add_option("--seed", opts.seed, "PRNG seed");
    app.add_option("--output,-o", opts.output, "output file (default stdout)");

    std::string manifest, manifest_b, scanpaths_path, graph_path, saliency_path, image_filter;
    std::string format_name = "json", view_name = "counts", kind, start_node;
    std::string label_a, label_b, predictions_path;
    bool subjects_by_index = false, human_loo = false;
    int n_points = 0, max_len = 10, count = 1;

    auto* sc_build =
        app.add_subcommand("build-scanpaths", "encode raw fixations into semantic scanpaths");
    sc_build->add_option("--manifest", manifest, "dataset manifest")->required();
    sc_build->add_flag("--subjects-by-index", subjects_by_index,
                       "rename observers to their per-image sequence index");

    auto* sc_graph = app.add_subcommand("build-graph", "build attention graphs from scanpaths");
    sc_graph->add_option("--scanpaths", scanpaths_path, "scanpath JSONL file")->required();
    sc_graph->add_option("--image", image_filter, "restrict to one image id");
    sc_graph->add_option("--format", format_name, "json|dot|adjacency_csv");
    sc_graph->add_option("--weight-view", view_name, "counts|probability|score");

    auto* sc_score = app.add_subcommand("score", "score predicted scanpaths against a graph");
    sc_score->add_option("--graph", graph_path, "graph JSON file")->required();
    sc_score->add_option("--scanpaths", scanpaths_path, "predicted scanpath JSONL")->required();
    sc_score->add_option("--saliency", saliency_path, "saliency JSON for the weighted metric");

    auto* sc_eval = app.add_subcommand("eval", "batch-evaluate predictions against human data");
    sc_eval->add_option("--manifest", manifest, "dataset manifest (human ground truth)")
        ->required();
    sc_eval
        ->add_option("--predictions", predictions_path,
                     "predicted fixations (.csv) or scanpaths (.jsonl)")
        ->required();
    sc_eval->add_flag("--human-loo", human_loo,
                      "also report leave-one-observer-out human scores");

    auto* sc_base = app.add_subcommand("baseline", "generate chance or random baselines");
    sc_base->add_option("--manifest", manifest, "dataset manifest")->required();
    sc_base->add_option("--kind", kind, "chance|random")->required();
    sc_base->add_option("--n-points", n_points,
                        "points per chance scanpath (default: per-image median human count)");

    auto* sc_classify =
        app.add_subcommand("classify", "leave-one-subject-out cohort classification");
    sc_classify->add_option("--manifest-a", manifest, "cohort A manifest")->required();
    sc_classify->add_option("--manifest-b", manifest_b, "cohort B manifest")->required();
    sc_classify->add_option("--label-a", label_a, "cohort A label (default: dataset name)");
    sc_classify->add_option("--label-b", label_b, "cohort B label (default: dataset name)");
    sc_classify->add_flag("--subjects-by-index", subjects_by_index,
                          "subjects are numbered per-image sequences");

    auto* sc_stats = app.add_subcommand("stats", "dataset statistics");
    sc_stats->require_subcommand(1);
    auto* sc_cov = sc_stats->add_subcommand("coverage", "retained-fixation fractions");
    sc_cov->add_option("--manifest", manifest, "dataset manifest")->required();
    auto* sc_int =
        sc_stats->add_subcommand("intensity", "node-intensity comparison between two cohorts");
    sc_int->add_option("--manifest-a", manifest, "cohort A manifest")->required();
    sc_int->add_option("--manifest-b", manifest_b, "cohort B manifest")->required();
    sc_int->add_option("--label-a", label_a, "cohort A label");
    sc_int->add_option("--label-b", label_b, "cohort B label");
    sc_int->add_flag("--subjects-by-index", subjects_by_index,
                     "subjects are numbered per-image sequences");

    auto* sc_sample = app.add_subcommand("sample", "sample scanpaths from a graph");
    sc_sample->add_option("--graph", graph_path, "graph JSON file")->required();
    sc_sample->add_option("--start", start_node, "start node key")->required();
    sc_sample->add_option("--max-len", max_len, "maximum number of terms");
    sc_sample->add_option("--count", count, "number of walks (walk i uses seed+i)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (sc_build->parsed()) return run_build_scanpaths(opts, manifest, subjects_by_index);
        if (sc_graph->parsed())
            return run_build_graph(opts, scanpaths_path, image_filter, format_name, view_name);
        if (sc_score->parsed())
            return run_score(opts, graph_path, scanpaths_path, saliency_path);
        if (sc_eval->parsed()) return run_eval(opts, manifest, predictions_path, human_loo);
        if (sc_base->parsed()) return run_baseline(opts, manifest, kind, n_points);
        if (sc_classify->parsed())
            return run_classify(opts, manifest, manifest_b, label_a, label_b,
                                subjects_by_index);
        if (sc_stats->parsed()) {
            if (sc_cov->parsed()) return run_stats_coverage(opts, manifest);
            if (sc_int->parsed())
                return run_stats_intensity(opts, manifest, manifest_b, label_a, label_b,
                                           subjects_by_index);
        }
        if (sc_sample->parsed()) return run_sample(opts, graph_path, start_node, max_len, count);
    } catch (const gg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
