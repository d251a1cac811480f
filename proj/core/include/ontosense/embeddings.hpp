#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ontosense/lexicon.hpp"
#include "ontosense/senses.hpp"

namespace osn {

inline constexpr double kDefaultSimilarityThreshold = 0.7;
inline constexpr std::size_t kDefaultMinCluster = 1;

/// Word -> dense vector map with a fixed dimension. Immutable after construction.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;
  // `words.size() * dim == values.size()`; words unique and non-empty.
  EmbeddingSpace(std::size_t dim, std::vector<std::string> words, std::vector<double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }

  bool contains(std::string_view word) const;
  std::optional<std::size_t> index_of(std::string_view word) const;
  std::span<const double> vector(std::size_t index) const;
  double norm(std::size_t index) const { return norms_[index]; }

  // Copy with vector i multiplied by factors[i] (factors.size() == size()).
  EmbeddingSpace scaled(std::span<const double> factors) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<double> values_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// word2vec text format: "<count> <dim>" then "<word> <f1> ... <f_dim>" per line.
EmbeddingSpace read_vectors(std::istream& in, const std::string& source = "");
EmbeddingSpace load_vectors(const std::filesystem::path& path);

// Throws NotFoundError for out-of-vocabulary words, Error for zero vectors.
double cosine(const EmbeddingSpace& space, std::string_view a, std::string_view b);

struct LabeledWord {
  std::string word;
  SenseCode sense;
};

struct ClusterMember {
  std::string word;
  double cosine = 0.0;
  SenseCode sense;
};

struct SimilarityCluster {
  std::string target;
  double threshold = kDefaultSimilarityThreshold;
  std::vector<ClusterMember> members;  // descending cosine, then word
  std::size_t excluded_labels = 0;     // labeled words with no vector (OOV or zero)
};

// All labeled words w != target with cosine(target, w) >= threshold.
SimilarityCluster neighbors(const EmbeddingSpace& space, std::string_view target,
                            std::span<const LabeledWord> labeled, double threshold = kDefaultSimilarityThreshold);

struct VoteCount {
  SenseCode sense;
  std::size_t count = 0;
  double cosine_sum = 0.0;
};

struct PropagationResult {
  std::string target;
  Pos pos = Pos::Verb;
  SenseCode proposed_sense = VerbSense::ME;
  SimilarityCluster cluster;
  std::vector<VoteCount> votes;  // canonical inventory order, only codes with count > 0
  bool tie_broken = false;
};

struct NoProposal {
  std::string target;
  Pos pos = Pos::Verb;
  SimilarityCluster cluster;
  std::size_t min_cluster = kDefaultMinCluster;
};

using PropagationOutcome = std::variant<PropagationResult, NoProposal>;

// Labeled pool for `pos`: one label per lemma, taken from its sense_index 1
// entry (primary sense for verbs, the class for adverbs).
std::vector<LabeledWord> labeled_pool(const Lexicon& lexicon, Pos pos);

// Majority vote over the similarity cluster. Ties go to the greatest summed
// cosine, then to the lexicographically smallest code. Never modifies the
// lexicon. Throws NotFoundError if the target has no vector, Error if the
// target already has an entry for `pos` or pos is not verb/adverb.
PropagationOutcome propagate_sense(const EmbeddingSpace& space, std::string_view target, const Lexicon& lexicon,
                                   Pos pos, double threshold = kDefaultSimilarityThreshold,
                                   std::size_t min_cluster = kDefaultMinCluster);

// Vote step alone, exposed for callers that already hold a cluster.
std::optional<PropagationResult> vote(const SimilarityCluster& cluster, Pos pos, std::size_t min_cluster);

struct TargetReport {
  std::string target;
  std::optional<PropagationOutcome> outcome;  // empty when `error` is set
  std::string error;
  std::optional<SenseCode> gold;  // gold primary sense, when a gold lexicon has one
  bool correct = false;
};

struct PropagationReport {
  Pos pos = Pos::Verb;
  double threshold = kDefaultSimilarityThreshold;
  std::size_t min_cluster = kDefaultMinCluster;
  std::vector<TargetReport> targets;
  std::size_t proposals = 0;
  std::size_t no_proposals = 0;
  std::size_t errors = 0;
  std::size_t excluded_labels = 0;  // labeled words without geometry
  bool has_gold = false;
  std::size_t attempted = 0;  // proposals that have a gold label
  std::size_t correct = 0;

  // correct / attempted * 100; nullopt when nothing was attempted.
  std::optional<double> accuracy() const;
};

PropagationReport propagation_report(const EmbeddingSpace& space, std::span<const std::string> targets,
                                     const Lexicon& lexicon, Pos pos,
                                     double threshold = kDefaultSimilarityThreshold,
                                     std::size_t min_cluster = kDefaultMinCluster,
                                     const Lexicon* gold = nullptr);

// 100 * correct / attempted rounded to `decimals` places ("61.056").
std::string format_accuracy(std::size_t correct, std::size_t attempted, int decimals = 3);

}  // namespace osn
