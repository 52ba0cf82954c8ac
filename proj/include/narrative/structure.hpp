#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace narrative::structure {

struct LabeledSegment {
    std::string label;
    std::string text;
};

/// Multinomial bag-of-words classifier with additive smoothing. Category
/// order is fixed at training time (first appearance in the data) and is
/// part of the model contract: prediction ties resolve in that order.
class StructureModel {
public:
    static StructureModel train(const std::vector<LabeledSegment>& data, double alpha = 1.0);

    const std::vector<std::string>& categories() const { return categories_; }
    const std::unordered_map<std::string, std::size_t>& vocabulary() const { return vocab_; }
    std::size_t vocabulary_size() const { return vocab_.size(); }
    double alpha() const { return alpha_; }
    double log_prior(std::size_t category) const { return log_priors_[category]; }
    double log_likelihood(std::size_t category, std::size_t feature) const {
        return log_likelihoods_[category][feature];
    }

    nlohmann::json to_json() const;
    static StructureModel from_json(const nlohmann::json& j);

private:
    StructureModel() = default;

    std::vector<std::string> categories_;
    std::unordered_map<std::string, std::size_t> vocab_;  // word -> feature index
    std::vector<std::string> vocab_words_;                // feature index -> word
    std::vector<double> log_priors_;
    std::vector<std::vector<double>> log_likelihoods_;    // [category][feature]
    double alpha_ = 1.0;
};

struct StructurePrediction {
    std::string label;
    std::vector<double> log_scores;  // aligned to model category order
};

/// log_scores[c] = log_prior[c] + sum over in-vocabulary words of
/// count(word) * log_likelihood[c][word]; unseen words carry no evidence.
StructurePrediction predict(const StructureModel& model, std::string_view text);

// Versioned JSON model file; see docs/formats.md.
void save_model(const StructureModel& model, const std::filesystem::path& path);
StructureModel load_model(const std::filesystem::path& path);

/// Two-column delimiter-separated training data: label, text.
std::vector<LabeledSegment> load_labeled_data(const std::filesystem::path& path);

struct ClassMetrics {
    std::string category;
    std::size_t support = 0;
    double precision = 0.0;
    double recall = 0.0;
};

struct EvalReport {
    double accuracy = 0.0;
    std::size_t total = 0;
    std::vector<ClassMetrics> per_class;

    nlohmann::json to_json() const;
};

EvalReport evaluate(const StructureModel& model, const std::vector<LabeledSegment>& data);

}  // namespace narrative::structure
