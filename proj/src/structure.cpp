#include "narrative/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "narrative/corpus.hpp"
#include "narrative/error.hpp"
#include "narrative/io.hpp"

namespace narrative::structure {

namespace {
constexpr int kModelVersion = 1;
constexpr const char* kModelSchema = "narrative-structure-model";
}  // namespace

StructureModel StructureModel::train(const std::vector<LabeledSegment>& data, double alpha) {
    if (alpha <= 0.0) throw InvalidArgument("smoothing alpha must be > 0");
    if (data.empty()) throw InvalidArgument("training data is empty");

    StructureModel model;
    model.alpha_ = alpha;

    // Category order = first appearance. It is part of the model contract
    // (prediction ties resolve in this order).
    std::map<std::string, std::size_t> category_index;
    std::vector<std::vector<std::string>> tokenized(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i].label.empty()) throw FormatError("segment with empty category label");
        if (!category_index.contains(data[i].label)) {
            category_index[data[i].label] = model.categories_.size();
            model.categories_.push_back(data[i].label);
        }
        tokenized[i] = corpus::tokenize(data[i].text).words;
        for (const std::string& w : tokenized[i]) {
            if (!model.vocab_.contains(w)) {
                model.vocab_[w] = model.vocab_words_.size();
                model.vocab_words_.push_back(w);
            }
        }
    }
    if (model.vocab_.empty()) throw FormatError("training data contains no words");

    const std::size_t n_cat = model.categories_.size();
    const std::size_t n_vocab = model.vocab_words_.size();

    std::vector<std::int64_t> doc_counts(n_cat, 0);
    std::vector<std::vector<std::int64_t>> word_counts(n_cat,
                                                       std::vector<std::int64_t>(n_vocab, 0));
    std::vector<std::int64_t> total_words(n_cat, 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::size_t c = category_index[data[i].label];
        ++doc_counts[c];
        for (const std::string& w : tokenized[i]) {
            ++word_counts[c][model.vocab_[w]];
            ++total_words[c];
        }
    }

    model.log_priors_.resize(n_cat);
    model.log_likelihoods_.assign(n_cat, std::vector<double>(n_vocab, 0.0));
    const double log_total_docs = std::log(static_cast<double>(data.size()));
    for (std::size_t c = 0; c < n_cat; ++c) {
        model.log_priors_[c] = std::log(static_cast<double>(doc_counts[c])) - log_total_docs;
        const double denom =
            static_cast<double>(total_words[c]) + alpha * static_cast<double>(n_vocab);
        for (std::size_t f = 0; f < n_vocab; ++f) {
            model.log_likelihoods_[c][f] =
                std::log((static_cast<double>(word_counts[c][f]) + alpha) / denom);
        }
    }
    return model;
}

StructurePrediction predict(const StructureModel& model, std::string_view text) {
    const std::size_t n_cat = model.categories().size();
    StructurePrediction prediction;
    prediction.log_scores.resize(n_cat);
    for (std::size_t c = 0; c < n_cat; ++c) prediction.log_scores[c] = model.log_prior(c);

    const auto words = corpus::tokenize(text).words;
    std::map<std::string, std::int64_t> counts;
    for (const std::string& w : words) ++counts[w];

    for (const auto& [word, count] : counts) {
        const auto it = model.vocabulary().find(word);
        if (it == model.vocabulary().end()) continue;  // unseen words carry no evidence
        for (std::size_t c = 0; c < n_cat; ++c) {
            prediction.log_scores[c] +=
                static_cast<double>(count) * model.log_likelihood(c, it->second);
        }
    }

    std::size_t best = 0;
    for (std::size_t c = 1; c < n_cat; ++c) {
        if (prediction.log_scores[c] > prediction.log_scores[best]) best = c;
    }
    prediction.label = model.categories()[best];
    return prediction;
}

nlohmann::json StructureModel::to_json() const {
    nlohmann::json j;
    j["schema"] = kModelSchema;
    j["version"] = kModelVersion;
    j["alpha"] = alpha_;
    nlohmann::json cats = nlohmann::json::array();
    for (std::size_t c = 0; c < categories_.size(); ++c) {
        cats.push_back({{"name", categories_[c]}, {"index", c}, {"log_prior", log_priors_[c]}});
    }
    j["categories"] = std::move(cats);
    j["vocabulary"] = vocab_words_;
    j["log_likelihoods"] = log_likelihoods_;
    return j;
}

StructureModel StructureModel::from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("schema", "") != kModelSchema) {
        throw FormatError("not a structure model file");
    }
    if (j.value("version", -1) != kModelVersion) {
        throw FormatError("unsupported model version");
    }

    StructureModel model;
    try {
        model.alpha_ = j.at("alpha").get<double>();
        const auto& cats = j.at("categories");
        for (std::size_t c = 0; c < cats.size(); ++c) {
            // The stored index pins category order; a reordered file is invalid.
            if (cats[c].at("index").get<std::size_t>() != c) {
                throw FormatError("category order does not match stored indices");
            }
            model.categories_.push_back(cats[c].at("name").get<std::string>());
            model.log_priors_.push_back(cats[c].at("log_prior").get<double>());
        }
        model.vocab_words_ = j.at("vocabulary").get<std::vector<std::string>>();
        for (std::size_t f = 0; f < model.vocab_words_.size(); ++f) {
            model.vocab_[model.vocab_words_[f]] = f;
        }
        model.log_likelihoods_ = j.at("log_likelihoods").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model schema violation: ") + e.what());
    }

    if (model.categories_.empty() || model.vocab_words_.empty() ||
        model.log_likelihoods_.size() != model.categories_.size()) {
        throw FormatError("model schema violation: inconsistent shapes");
    }
    for (const auto& row : model.log_likelihoods_) {
        if (row.size() != model.vocab_words_.size()) {
            throw FormatError("model schema violation: likelihood row length");
        }
        double total = 0.0;
        for (double ll : row) total += std::exp(ll);
        if (std::abs(total - 1.0) > 1e-6) {
            throw FormatError("model schema violation: likelihoods do not normalize");
        }
    }
    return model;
}

void save_model(const StructureModel& model, const std::filesystem::path& path) {
    io::atomic_write(path, model.to_json().dump(2) + "\n");
}

StructureModel load_model(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": invalid model JSON: " + e.what());
    }
    return StructureModel::from_json(j);
}

std::vector<LabeledSegment> load_labeled_data(const std::filesystem::path& path) {
    const io::Table table = io::read_delimited(path);
    std::vector<LabeledSegment> data;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (r == 0 && row.size() >= 2 && row[0] == "label" && row[1] == "text") continue;
        if (row.size() < 2) {
            throw FormatError(path.string() + ": row " + std::to_string(r + 1) +
                              " needs label and text columns");
        }
        data.push_back({row[0], row[1]});
    }
    return data;
}

EvalReport evaluate(const StructureModel& model, const std::vector<LabeledSegment>& data) {
    EvalReport report;
    report.total = data.size();

    std::map<std::string, std::size_t> support, correct, predicted_as;
    std::size_t hits = 0;
    for (const LabeledSegment& seg : data) {
        const StructurePrediction p = predict(model, seg.text);
        ++support[seg.label];
        ++predicted_as[p.label];
        if (p.label == seg.label) {
            ++hits;
            ++correct[seg.label];
        }
    }
    report.accuracy = data.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(data.size());

    for (const std::string& category : model.categories()) {
        ClassMetrics m;
        m.category = category;
        m.support = support[category];
        const std::size_t tp = correct[category];
        m.precision = predicted_as[category] > 0
                          ? static_cast<double>(tp) / static_cast<double>(predicted_as[category])
                          : 0.0;
        m.recall = m.support > 0 ? static_cast<double>(tp) / static_cast<double>(m.support) : 0.0;
        report.per_class.push_back(std::move(m));
    }
    return report;
}

nlohmann::json EvalReport::to_json() const {
    nlohmann::json j;
    j["accuracy"] = accuracy;
    j["total"] = total;
    nlohmann::json classes = nlohmann::json::array();
    for (const ClassMetrics& m : per_class) {
        classes.push_back({{"category", m.category},
                           {"support", m.support},
                           {"precision", m.precision},
                           {"recall", m.recall}});
    }
    j["per_class"] = std::move(classes);
    return j;
}

}  // namespace narrative::structure
