// narrative: command-line front end for sentiment arc extraction, story
// shape classification, corpus clustering and narrative structure tagging.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "narrative/arcshape.hpp"
#include "narrative/cluster.hpp"
#include "narrative/corpus.hpp"
#include "narrative/error.hpp"
#include "narrative/io.hpp"
#include "narrative/lexicon.hpp"
#include "narrative/sentiment.hpp"
#include "narrative/structure.hpp"
#include "narrative/svg.hpp"
#include "narrative/text.hpp"

namespace fs = std::filesystem;
using namespace narrative;

namespace {

// Exit codes: 0 success, 1 usage or input-set error, 2 missing resource.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMissing = 2;

struct RunConfig {
    std::string lexicon_path;
    std::string dimension = "arousal";
    std::size_t window_size = 500;
    int context = 10;
    std::string stop_list_path;
    double band_delta = 0.0;
    std::size_t smooth_w = 5;
    std::size_t lowpass_m = 5;
    std::size_t resample_L = 100;
    std::string output_dir;
    std::string manifest_path;
};

RunConfig load_config_file(const fs::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": invalid config JSON: " + e.what());
    }
    if (!j.is_object()) throw FormatError(path.string() + ": config must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "lexicon_path") cfg.lexicon_path = value.get<std::string>();
            else if (key == "dimension") cfg.dimension = value.get<std::string>();
            else if (key == "window_size") cfg.window_size = value.get<std::size_t>();
            else if (key == "context") cfg.context = value.get<int>();
            else if (key == "stop_list_path") cfg.stop_list_path = value.get<std::string>();
            else if (key == "band_delta") cfg.band_delta = value.get<double>();
            else if (key == "smooth_w") cfg.smooth_w = value.get<std::size_t>();
            else if (key == "lowpass_m") cfg.lowpass_m = value.get<std::size_t>();
            else if (key == "resample_L") cfg.resample_L = value.get<std::size_t>();
            else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
            else if (key == "manifest_path") cfg.manifest_path = value.get<std::string>();
            else throw FormatError(path.string() + ": unknown config key \"" + key + "\"");
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + ": bad value for \"" + key + "\": " + e.what());
        }
    }
    return cfg;
}

// Flag values that override the config file when present.
struct ConfigFlags {
    std::optional<std::string> lexicon_path, dimension, stop_list_path, output_dir, manifest_path;
    std::optional<std::size_t> window_size, smooth_w, lowpass_m, resample_L;
    std::optional<int> context;
    std::optional<double> band_delta;
    std::string lexicon_format = "ranked";

    void add_common(CLI::App* cmd) {
        cmd->add_option("--lexicon", lexicon_path, "Lexicon file (see docs/formats.md)");
        cmd->add_option("--lexicon-format", lexicon_format,
                        "ranked (Word,Ranking,Arousal,Valence,Dominance) or nrc "
                        "(word,valence,arousal,dominance)")
            ->check(CLI::IsMember({"ranked", "nrc"}));
        cmd->add_option("--dimension", dimension, "Scoring dimension: valence|arousal|dominance");
        cmd->add_option("--stop-list", stop_list_path, "Stop word list, one word per line");
        cmd->add_option("--band-delta", band_delta,
                        "Exclude words with |score - 0.5| < delta on the scoring dimension");
        cmd->add_option("--window", window_size, "Words per segment");
        cmd->add_option("--context", context, "Trailing segments accumulated per score");
        cmd->add_option("--out", output_dir, "Output directory");
        cmd->add_option("--manifest", manifest_path, "Corpus manifest (id, title, path)");
    }
    void add_shaping(CLI::App* cmd) {
        cmd->add_option("--smooth-w", smooth_w, "Moving-average window (odd)");
        cmd->add_option("--lowpass-m", lowpass_m, "Retained low frequencies");
        cmd->add_option("--resample-L", resample_L, "Common arc length");
    }

    RunConfig resolve(const std::string& config_path) const {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (lexicon_path) cfg.lexicon_path = *lexicon_path;
        if (dimension) cfg.dimension = *dimension;
        if (stop_list_path) cfg.stop_list_path = *stop_list_path;
        if (output_dir) cfg.output_dir = *output_dir;
        if (manifest_path) cfg.manifest_path = *manifest_path;
        if (window_size) cfg.window_size = *window_size;
        if (smooth_w) cfg.smooth_w = *smooth_w;
        if (lowpass_m) cfg.lowpass_m = *lowpass_m;
        if (resample_L) cfg.resample_L = *resample_L;
        if (context) cfg.context = *context;
        if (band_delta) cfg.band_delta = *band_delta;
        return cfg;
    }
};

std::string sanitize_id(const std::string& id) {
    std::string out;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? std::string("doc") : out;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

arcshape::PipelineOptions shaping_options(const RunConfig& cfg) {
    arcshape::PipelineOptions opt;
    opt.smooth_w = cfg.smooth_w;
    opt.lowpass_m = cfg.lowpass_m;
    opt.resample_L = cfg.resample_L;
    return opt;
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
    ConfigFlags flags;
    std::string config_path;
    std::vector<std::string> inputs;
    std::string format = "csv";
    unsigned workers = 1;
};

int run_score(const ScoreArgs& args) {
    const RunConfig cfg = args.flags.resolve(args.config_path);
    if (cfg.lexicon_path.empty()) throw InvalidArgument("no lexicon configured (--lexicon)");
    if (cfg.output_dir.empty()) throw InvalidArgument("no output directory configured (--out)");

    const lexicon::ColumnMap columns = args.flags.lexicon_format == "nrc"
                                           ? lexicon::nrc_vad_columns()
                                           : lexicon::ColumnMap{};
    const lexicon::Lexicon lex = lexicon::load_lexicon(cfg.lexicon_path, columns);
    const lexicon::Dimension dim = lexicon::dimension_from_name(cfg.dimension);
    const lexicon::ScoreVector scores = lexicon::score_vector(lex, dim);
    std::set<std::string> stop_words;
    if (!cfg.stop_list_path.empty()) stop_words = lexicon::load_word_set(cfg.stop_list_path);
    const lexicon::StopMask mask = lexicon::stop_mask(lex, dim, cfg.band_delta, stop_words);

    struct Doc {
        std::string id;
        fs::path path;
    };
    std::vector<Doc> docs;
    if (!cfg.manifest_path.empty()) {
        for (const auto& entry : corpus::load_manifest(cfg.manifest_path)) {
            docs.push_back({entry.id, entry.path});
        }
    }
    for (const std::string& input : args.inputs) {
        docs.push_back({fs::path(input).stem().string(), fs::path(input)});
    }
    if (docs.empty()) {
        std::cerr << "error: no documents\n";
        return kExitUsage;
    }

    fs::create_directories(cfg.output_dir);

    enum class Outcome { Scored, Skipped, Missing };
    struct Result {
        Outcome outcome = Outcome::Scored;
        std::string message;
    };
    std::vector<Result> results(docs.size());

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= docs.size()) return;
            const Doc& doc = docs[i];
            try {
                const std::string raw = io::read_file(doc.path);
                const corpus::WordList words = corpus::tokenize(raw, doc.id);
                const corpus::Segmentation segs = corpus::segment(words, cfg.window_size);
                if (segs.segments.empty()) {
                    results[i] = {Outcome::Skipped,
                                  doc.id + ": shorter than one window (" +
                                      std::to_string(words.words.size()) + " words), skipped"};
                    continue;
                }
                std::vector<corpus::FreqVector> rows;
                rows.reserve(segs.segments.size());
                for (const corpus::Segment& seg : segs.segments) {
                    rows.push_back(corpus::frequency_vector(seg, lex));
                }
                const corpus::SegmentMatrix matrix =
                    corpus::stack(std::move(rows), cfg.window_size);
                const sentiment::SentimentArc arc =
                    sentiment::arc(matrix, scores, mask, cfg.context);

                const fs::path base = fs::path(cfg.output_dir) / sanitize_id(doc.id);
                if (args.format == "csv" || args.format == "both") {
                    sentiment::write_arc_csv(arc, base.string() + ".csv");
                }
                if (args.format == "json" || args.format == "both") {
                    sentiment::write_arc_json(arc, cfg.window_size, lexicon::to_string(dim),
                                              base.string() + ".json");
                }
                results[i] = {Outcome::Scored,
                              doc.id + ": " + std::to_string(arc.points.size()) + " segments"};
            } catch (const IoError& e) {
                results[i] = {Outcome::Missing, doc.id + ": " + e.what()};
            }
        }
    };

    const unsigned n_workers = std::max(1u, args.workers);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::size_t scored = 0, skipped = 0, missing = 0;
    for (const Result& r : results) {
        switch (r.outcome) {
            case Outcome::Scored:
                ++scored;
                std::cout << r.message << "\n";
                break;
            case Outcome::Skipped:
                ++skipped;
                std::cerr << "warning: " << r.message << "\n";
                break;
            case Outcome::Missing:
                ++missing;
                std::cerr << "error: " << r.message << "\n";
                break;
        }
    }
    std::cout << "scored " << scored << " of " << docs.size() << " documents\n";
    if (missing > 0) return kExitMissing;
    if (scored == 0) {
        std::cerr << "error: no documents scored\n";
        return kExitUsage;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// arcs on disk

std::vector<sentiment::SentimentArc> read_arc_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    std::vector<fs::path> files;
    std::set<std::string> json_stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".json") json_stems.insert(entry.path().stem().string());
        if (ext == ".csv" || ext == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<sentiment::SentimentArc> arcs;
    for (const fs::path& file : files) {
        // A CSV/JSON pair from `score --format both` is one document.
        if (file.extension() == ".csv" && json_stems.contains(file.stem().string())) continue;
        sentiment::SentimentArc arc = sentiment::read_arc(file);
        if (arc.doc.empty()) arc.doc = file.stem().string();
        arcs.push_back(std::move(arc));
    }
    return arcs;
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterArgs {
    ConfigFlags flags;
    std::string config_path;
    std::string arcs_dir;
    std::size_t k = 3;
    bool raw_means = false;
    std::size_t dendro_depth = 0;
};

int run_cluster(const ClusterArgs& args) {
    const RunConfig cfg = args.flags.resolve(args.config_path);
    if (cfg.output_dir.empty()) throw InvalidArgument("no output directory configured (--out)");
    const arcshape::PipelineOptions shaping = shaping_options(cfg);

    std::vector<arcshape::NormalizedArc> normalized;
    std::vector<std::vector<double>> raw;
    std::vector<std::string> ids;
    for (const sentiment::SentimentArc& arc : read_arc_dir(args.arcs_dir)) {
        if (arc.defined_count() == 0) {
            std::cerr << "warning: " << arc.doc << ": no defined scores, excluded\n";
            continue;
        }
        normalized.push_back(arcshape::normalize_pipeline(arc, shaping));
        if (args.raw_means) raw.push_back(arcshape::condition_pipeline(arc, shaping));
        ids.push_back(arc.doc);
    }
    if (normalized.size() < 2) {
        std::cerr << "error: need at least 2 arcs to cluster, found " << normalized.size()
                  << "\n";
        return kExitUsage;
    }

    const cluster::DistanceMatrix d = cluster::distance_matrix(normalized);
    const cluster::Linkage linkage = cluster::ward_linkage(d);
    const cluster::ClusterAssignment assignment = cluster::cut(linkage, args.k);

    fs::create_directories(cfg.output_dir);
    const fs::path out_dir(cfg.output_dir);

    {
        std::string csv = "doc_id,cluster_id\n";
        for (std::size_t i = 0; i < ids.size(); ++i) {
            csv += io::escape_field(ids[i], ',') + "," + std::to_string(assignment.labels[i]) +
                   "\n";
        }
        io::atomic_write(out_dir / "assignments.csv", csv);
    }

    // Conditioned, z-normalized arcs as a matrix for external analysis.
    {
        std::string csv = "doc_id";
        const std::size_t L = normalized.front().values.size();
        for (std::size_t i = 0; i < L; ++i) csv += ",v" + std::to_string(i);
        csv += "\n";
        for (std::size_t i = 0; i < ids.size(); ++i) {
            csv += io::escape_field(ids[i], ',');
            for (double v : normalized[i].values) csv += "," + format_double(v);
            csv += "\n";
        }
        io::atomic_write(out_dir / "normalized_arcs.csv", csv);
    }

    const nlohmann::json tree = cluster::dendrogram_json(linkage, ids);
    io::atomic_write(out_dir / "dendrogram.json", tree.dump(2) + "\n");

    svg::DendrogramOptions dopt;
    dopt.title = "Ward linkage over " + std::to_string(ids.size()) + " arcs";
    dopt.max_depth = args.dendro_depth;
    io::atomic_write(out_dir / "dendrogram.svg", svg::dendrogram(linkage, ids, dopt));

    // Cluster means over normalized arcs by default; --raw-means switches the
    // averaged series (the assignment itself always comes from normalized arcs).
    std::map<std::size_t, std::vector<double>> means;
    if (args.raw_means) {
        std::vector<arcshape::NormalizedArc> raw_arcs(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            raw_arcs[i].doc = ids[i];
            raw_arcs[i].values = raw[i];
        }
        means = cluster::cluster_means(raw_arcs, assignment);
    } else {
        means = cluster::cluster_means(normalized, assignment);
    }

    {
        std::string csv = "cluster_id";
        const std::size_t L = means.begin()->second.size();
        for (std::size_t i = 0; i < L; ++i) csv += ",v" + std::to_string(i);
        csv += "\n";
        for (const auto& [label, mean] : means) {
            csv += std::to_string(label);
            for (double v : mean) csv += "," + format_double(v);
            csv += "\n";
        }
        io::atomic_write(out_dir / "cluster_means.csv", csv);
    }

    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
        members[assignment.labels[i]].push_back(i);
    }
    for (const auto& [label, mean] : means) {
        std::vector<svg::Series> series;
        for (std::size_t i : members[label]) {
            svg::Series s;
            s.name = ids[i];
            s.values = args.raw_means ? raw[i] : normalized[i].values;
            s.color = "#bbbbbb";
            s.stroke_width = 1.0;
            series.push_back(std::move(s));
        }
        svg::Series mean_series;
        mean_series.name = "mean";
        mean_series.values = mean;
        mean_series.color = "#d62728";
        mean_series.stroke_width = 2.5;
        series.push_back(std::move(mean_series));

        svg::ChartOptions copt;
        copt.title = "Cluster " + std::to_string(label) + " (" +
                     std::to_string(members[label].size()) + " arcs)";
        copt.x_label = "narrative progression";
        copt.y_label = args.raw_means ? "score" : "normalized score";

        char name[32];
        std::snprintf(name, sizeof(name), "cluster_%03zu.svg", label);
        io::atomic_write(out_dir / name, svg::line_chart(series, copt));
    }

    std::cout << "clustered " << ids.size() << " arcs into " << args.k << " clusters\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// classify-arc

struct ClassifyArgs {
    ConfigFlags flags;
    std::string config_path;
    std::string arcs_dir;
    std::string out_file;
};

int run_classify(const ClassifyArgs& args) {
    const RunConfig cfg = args.flags.resolve(args.config_path);
    const arcshape::PipelineOptions shaping = shaping_options(cfg);

    const auto arcs = read_arc_dir(args.arcs_dir);
    if (arcs.empty()) {
        std::cerr << "error: no arc files in " << args.arcs_dir << "\n";
        return kExitUsage;
    }

    std::string csv = "doc_id,label";
    for (arcshape::Shape s : arcshape::kAllShapes) {
        csv += ",dist_" + std::string(arcshape::to_string(s));
    }
    csv += "\n";

    std::size_t classified = 0;
    for (const sentiment::SentimentArc& arc : arcs) {
        if (arc.defined_count() < 4) {
            std::cerr << "warning: " << arc.doc << ": fewer than 4 defined points, skipped\n";
            continue;
        }
        const arcshape::NormalizedArc norm = arcshape::normalize_pipeline(arc, shaping);
        const arcshape::ArcLabel label = arcshape::classify_arc(norm);
        csv += io::escape_field(arc.doc, ',') + "," +
               std::string(arcshape::to_string(label.label));
        for (double dist : label.distances) csv += "," + format_double(dist);
        csv += "\n";
        ++classified;
    }

    io::atomic_write(args.out_file, csv);
    std::cout << "classified " << classified << " of " << arcs.size() << " arcs\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// structure

struct StructureTrainArgs {
    std::string data_path;
    std::string model_path;
    std::string report_path;
    double alpha = 1.0;
    double ratio = 0.8;
    std::uint64_t seed = 42;
};

int run_structure_train(const StructureTrainArgs& args) {
    if (args.alpha <= 0.0) throw InvalidArgument("--alpha must be > 0");
    if (args.ratio <= 0.0 || args.ratio > 1.0) throw InvalidArgument("--ratio must be in (0, 1]");

    const auto data = structure::load_labeled_data(args.data_path);
    if (data.empty()) throw FormatError(args.data_path + ": no training rows");

    std::vector<structure::LabeledSegment> train_set, held_out;
    if (args.ratio >= 1.0) {
        train_set = data;
    } else {
        // Stratified split so every category appears on both sides.
        std::map<std::string, std::vector<std::size_t>> by_category;
        for (std::size_t i = 0; i < data.size(); ++i) by_category[data[i].label].push_back(i);

        std::mt19937_64 rng(args.seed);
        std::vector<std::size_t> train_idx, test_idx;
        for (auto& [category, indices] : by_category) {
            if (indices.size() < 2) {
                throw InvalidArgument("category coverage: \"" + category +
                                      "\" needs at least 2 examples for a held-out split");
            }
            std::shuffle(indices.begin(), indices.end(), rng);
            const auto n_train = std::clamp<std::size_t>(
                static_cast<std::size_t>(std::llround(args.ratio * static_cast<double>(indices.size()))),
                1, indices.size() - 1);
            train_idx.insert(train_idx.end(), indices.begin(),
                             indices.begin() + static_cast<std::ptrdiff_t>(n_train));
            test_idx.insert(test_idx.end(),
                            indices.begin() + static_cast<std::ptrdiff_t>(n_train),
                            indices.end());
        }
        // Original file order fixes the category order of the model.
        std::sort(train_idx.begin(), train_idx.end());
        std::sort(test_idx.begin(), test_idx.end());
        for (std::size_t i : train_idx) train_set.push_back(data[i]);
        for (std::size_t i : test_idx) held_out.push_back(data[i]);
    }

    const structure::StructureModel model = structure::StructureModel::train(train_set, args.alpha);
    structure::save_model(model, args.model_path);
    std::cout << "trained on " << train_set.size() << " segments, " << model.categories().size()
              << " categories, vocabulary " << model.vocabulary_size() << "\n";

    if (!held_out.empty()) {
        const structure::EvalReport report = structure::evaluate(model, held_out);
        std::cout << "held-out accuracy: " << report.accuracy << " (" << held_out.size()
                  << " segments)\n";
        if (!args.report_path.empty()) {
            io::atomic_write(args.report_path, report.to_json().dump(2) + "\n");
        }
    }
    return kExitOk;
}

struct StructurePredictArgs {
    ConfigFlags flags;
    std::string config_path;
    std::string model_path;
    std::string input_path;
    std::string out_file;
};

int run_structure_predict(const StructurePredictArgs& args) {
    const RunConfig cfg = args.flags.resolve(args.config_path);
    const structure::StructureModel model = structure::load_model(args.model_path);

    std::vector<std::pair<std::string, std::string>> segments;  // id, text
    const fs::path input(args.input_path);
    if (input.extension() == ".csv" || input.extension() == ".tsv") {
        const io::Table table = io::read_delimited(input);
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& row = table.rows[r];
            // Accept both (id, text) probe files and (label, text) training files.
            if (r == 0 && row.size() >= 2 && (row[0] == "id" || row[0] == "label") &&
                row[1] == "text") {
                continue;
            }
            if (row.size() < 2) {
                throw FormatError(input.string() + ": row " + std::to_string(r + 1) +
                                  " needs id and text columns");
            }
            segments.emplace_back(row[0], row[1]);
        }
    } else {
        // Raw text: window it like the scoring pipeline does.
        const corpus::WordList words =
            corpus::tokenize(io::read_file(input), input.stem().string());
        const corpus::Segmentation segs = corpus::segment(words, cfg.window_size);
        for (const corpus::Segment& seg : segs.segments) {
            std::string text;
            for (const std::string& w : seg.words) {
                if (!text.empty()) text += ' ';
                text += w;
            }
            segments.emplace_back(seg.doc + ":" + std::to_string(seg.index), std::move(text));
        }
    }
    if (segments.empty()) {
        std::cerr << "error: no segments to tag\n";
        return kExitUsage;
    }

    std::string csv = "segment_id,label";
    for (const std::string& category : model.categories()) csv += ",log_" + category;
    csv += "\n";
    for (const auto& [id, text] : segments) {
        const structure::StructurePrediction p = structure::predict(model, text);
        csv += io::escape_field(id, ',') + "," + p.label;
        for (double score : p.log_scores) csv += "," + format_double(score);
        csv += "\n";
    }
    io::atomic_write(args.out_file, csv);
    std::cout << "tagged " << segments.size() << " segments\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// plot

struct PlotArgs {
    std::string kind = "arc";
    std::string input;
    std::string out_file;
    std::string title;
};

int run_plot(const PlotArgs& args) {
    if (args.kind == "arc") {
        const sentiment::SentimentArc arc = sentiment::read_arc(args.input);
        if (arc.points.empty() || arc.defined_count() == 0) {
            throw FormatError(args.input + ": empty arc, nothing to plot");
        }
        const sentiment::SentimentArc filled = sentiment::interpolate_gaps(arc);
        svg::Series s;
        s.name = filled.doc;
        for (const sentiment::ArcPoint& p : filled.points) s.values.push_back(*p.score);

        svg::ChartOptions opt;
        opt.title = args.title.empty() ? filled.doc : args.title;
        opt.x_label = "narrative progression (segments)";
        opt.y_label = "sentiment score";
        io::atomic_write(args.out_file, svg::line_chart({s}, opt));
    } else if (args.kind == "cluster-mean") {
        const io::Table table = io::read_delimited(args.input);
        std::vector<svg::Series> series;
        static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
        std::size_t color = 0;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& row = table.rows[r];
            if (r == 0 && !row.empty() && row[0] == "cluster_id") continue;
            if (row.size() < 2) continue;
            svg::Series s;
            s.name = "cluster " + row[0];
            for (std::size_t c = 1; c < row.size(); ++c) s.values.push_back(std::stod(row[c]));
            s.color = kPalette[color++ % std::size(kPalette)];
            series.push_back(std::move(s));
        }
        if (series.empty()) throw FormatError(args.input + ": no cluster means to plot");
        svg::ChartOptions opt;
        opt.title = args.title.empty() ? "Cluster mean arcs" : args.title;
        opt.x_label = "narrative progression";
        opt.y_label = "score";
        io::atomic_write(args.out_file, svg::line_chart(series, opt));
    } else if (args.kind == "dendrogram") {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(io::read_file(args.input));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(args.input + ": invalid dendrogram JSON: " + e.what());
        }
        const cluster::Linkage linkage = cluster::linkage_from_json(j);
        const std::vector<std::string> labels = cluster::leaf_labels_from_json(j);
        svg::DendrogramOptions opt;
        opt.title = args.title.empty() ? "Dendrogram" : args.title;
        io::atomic_write(args.out_file, svg::dendrogram(linkage, labels, opt));
    } else {
        throw InvalidArgument("unknown plot kind: " + args.kind);
    }
    std::cout << "wrote " << args.out_file << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// pipeline

struct PipelineArgs {
    ConfigFlags flags;
    std::string config_path;
    std::size_t k = 3;
    unsigned workers = 1;
};

int run_pipeline(const PipelineArgs& args) {
    const RunConfig cfg = args.flags.resolve(args.config_path);
    if (cfg.output_dir.empty()) throw InvalidArgument("no output directory configured (--out)");
    if (cfg.manifest_path.empty()) throw InvalidArgument("pipeline needs a manifest");

    const fs::path out_dir(cfg.output_dir);
    const fs::path arcs_dir = out_dir / "arcs";

    ScoreArgs score;
    score.flags = args.flags;
    score.config_path = args.config_path;
    score.flags.output_dir = arcs_dir.string();
    score.workers = args.workers;
    if (const int rc = run_score(score); rc != kExitOk) return rc;

    ClassifyArgs classify;
    classify.flags = args.flags;
    classify.config_path = args.config_path;
    classify.arcs_dir = arcs_dir.string();
    classify.out_file = (out_dir / "arc_labels.csv").string();
    if (const int rc = run_classify(classify); rc != kExitOk) return rc;

    ClusterArgs clusterize;
    clusterize.flags = args.flags;
    clusterize.config_path = args.config_path;
    clusterize.flags.output_dir = (out_dir / "clusters").string();
    clusterize.arcs_dir = arcs_dir.string();
    clusterize.k = args.k;
    if (const int rc = run_cluster(clusterize); rc != kExitOk) return rc;

    std::cout << "pipeline complete: " << out_dir.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sentiment arc extraction, story shape classification and clustering"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file")
        ->envname("NARRATIVE_CONFIG");

    ScoreArgs score;
    auto* score_cmd = app.add_subcommand("score", "Score documents into sentiment arcs");
    score.flags.add_common(score_cmd);
    score_cmd->add_option("inputs", score.inputs, "Text files to score");
    score_cmd->add_option("--format", score.format, "Arc file format: csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    score_cmd->add_option("--workers", score.workers, "Parallel workers");

    ClusterArgs clusterize;
    auto* cluster_cmd = app.add_subcommand("cluster", "Ward-cluster arcs across a corpus");
    clusterize.flags.add_common(cluster_cmd);
    clusterize.flags.add_shaping(cluster_cmd);
    cluster_cmd->add_option("--arcs", clusterize.arcs_dir, "Directory of arc files")->required();
    cluster_cmd->add_option("--k", clusterize.k, "Number of flat clusters")->required();
    cluster_cmd->add_flag("--raw-means", clusterize.raw_means,
                          "Average conditioned (not z-normalized) arcs");
    cluster_cmd->add_option("--dendro-depth", clusterize.dendro_depth,
                            "Collapse dendrogram below this depth (0 = full)");

    ClassifyArgs classify;
    auto* classify_cmd =
        app.add_subcommand("classify-arc", "Label arcs with the six story shapes");
    classify.flags.add_common(classify_cmd);
    classify.flags.add_shaping(classify_cmd);
    classify_cmd->add_option("--arcs", classify.arcs_dir, "Directory of arc files")->required();
    classify_cmd->add_option("--out-file", classify.out_file, "Labels CSV path")->required();

    auto* structure_cmd = app.add_subcommand("structure", "Narrative structure tagging");
    structure_cmd->require_subcommand(1);

    StructureTrainArgs train;
    auto* train_cmd = structure_cmd->add_subcommand("train", "Train the segment classifier");
    train_cmd->add_option("--data", train.data_path, "Labeled segments CSV (label, text)")
        ->required();
    train_cmd->add_option("--model-out", train.model_path, "Model JSON path")->required();
    train_cmd->add_option("--report", train.report_path, "Held-out evaluation report JSON");
    train_cmd->add_option("--alpha", train.alpha, "Additive smoothing");
    train_cmd->add_option("--ratio", train.ratio, "Train fraction (1.0 = no held-out split)");
    train_cmd->add_option("--seed", train.seed, "Split shuffle seed");

    StructurePredictArgs predict;
    auto* predict_cmd = structure_cmd->add_subcommand("predict", "Tag segments with categories");
    predict.flags.add_common(predict_cmd);
    predict_cmd->add_option("--model", predict.model_path, "Model JSON path")->required();
    predict_cmd->add_option("--input", predict.input_path, "Segments CSV (id, text) or raw text")
        ->required();
    predict_cmd->add_option("--out-file", predict.out_file, "Predictions CSV path")->required();

    PlotArgs plot;
    auto* plot_cmd = app.add_subcommand("plot", "Render arcs, cluster means or dendrograms");
    plot_cmd->add_option("--kind", plot.kind, "arc|cluster-mean|dendrogram")
        ->check(CLI::IsMember({"arc", "cluster-mean", "dendrogram"}));
    plot_cmd->add_option("--in", plot.input, "Input file")->required();
    plot_cmd->add_option("--out-file", plot.out_file, "Output SVG path")->required();
    plot_cmd->add_option("--title", plot.title, "Chart title");

    PipelineArgs pipeline;
    auto* pipeline_cmd =
        app.add_subcommand("pipeline", "score + classify-arc + cluster in one pass");
    pipeline.flags.add_common(pipeline_cmd);
    pipeline.flags.add_shaping(pipeline_cmd);
    pipeline_cmd->add_option("--k", pipeline.k, "Number of flat clusters");
    pipeline_cmd->add_option("--workers", pipeline.workers, "Parallel workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (score_cmd->parsed()) {
            score.config_path = config_path;
            return run_score(score);
        }
        if (cluster_cmd->parsed()) {
            clusterize.config_path = config_path;
            return run_cluster(clusterize);
        }
        if (classify_cmd->parsed()) {
            classify.config_path = config_path;
            return run_classify(classify);
        }
        if (structure_cmd->parsed()) {
            if (train_cmd->parsed()) return run_structure_train(train);
            if (predict_cmd->parsed()) {
                predict.config_path = config_path;
                return run_structure_predict(predict);
            }
        }
        if (plot_cmd->parsed()) return run_plot(plot);
        if (pipeline_cmd->parsed()) {
            pipeline.config_path = config_path;
            return run_pipeline(pipeline);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissing;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
