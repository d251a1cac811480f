#include "ontosense/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "ontosense/error.hpp"
#include "ontosense/unicode.hpp"

namespace osn {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  // strtod accepts the decimal and exponent forms word2vec writers produce.
  std::string buf(text);
  char* end = nullptr;
  const double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos) return std::nullopt;
  try {
    return static_cast<std::size_t>(std::stoull(std::string(text)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

double cosine_at(const EmbeddingSpace& space, std::size_t a, std::size_t b) {
  if (a == b) return 1.0;
  return clamp_unit(dot(space.vector(a), space.vector(b)) / (space.norm(a) * space.norm(b)));
}

std::size_t require_word(const EmbeddingSpace& space, std::string_view word) {
  const auto index = space.index_of(word);
  if (!index) throw NotFoundError("'" + std::string(word) + "' is not in the embedding vocabulary");
  if (space.norm(*index) == 0.0) throw Error("'" + std::string(word) + "' has a zero vector");
  return *index;
}

}  // namespace

EmbeddingSpace::EmbeddingSpace(std::size_t dim, std::vector<std::string> words, std::vector<double> values)
    : dim_(dim), words_(std::move(words)), values_(std::move(values)) {
  if (dim_ == 0) throw Error("embedding dimension must be positive");
  if (values_.size() != words_.size() * dim_) throw Error("embedding value count does not match words x dim");
  norms_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw Error("empty word in embedding vocabulary");
    if (!index_.emplace(words_[i], i).second) throw Error("duplicate word '" + words_[i] + "'");
    const auto v = vector(i);
    norms_.push_back(std::sqrt(dot(v, v)));
  }
}

bool EmbeddingSpace::contains(std::string_view word) const { return index_of(word).has_value(); }

std::optional<std::size_t> EmbeddingSpace::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) {
    if (!unicode::is_valid_utf8(word)) return std::nullopt;
    it = index_.find(unicode::nfc(word));
    if (it == index_.end()) return std::nullopt;
  }
  return it->second;
}

std::span<const double> EmbeddingSpace::vector(std::size_t index) const {
  return std::span<const double>(values_).subspan(index * dim_, dim_);
}

EmbeddingSpace EmbeddingSpace::scaled(std::span<const double> factors) const {
  if (factors.size() != words_.size()) throw Error("one scale factor per word required");
  std::vector<double> values = values_;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::size_t d = 0; d < dim_; ++d) values[i * dim_ + d] *= factors[i];
  }
  return EmbeddingSpace(dim_, words_, std::move(values));
}

EmbeddingSpace read_vectors(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing '<vocab_count> <dim>' header");
  const auto header = split_spaces(line);
  const auto count = header.size() == 2 ? parse_count(header[0]) : std::nullopt;
  const auto dim = header.size() == 2 ? parse_count(header[1]) : std::nullopt;
  if (!count || !dim || *dim == 0) throw ParseError(source, 1, "malformed header, expected '<vocab_count> <dim>'");

  std::vector<std::string> words;
  std::vector<double> values;
  words.reserve(*count);
  values.reserve(*count * *dim);
  std::unordered_map<std::string, std::size_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (!unicode::is_valid_utf8(fields[0])) throw ParseError(source, line_no, "word is not valid UTF-8");
    std::string word = unicode::nfc(fields[0]);
    if (words.size() == *count) {
      throw ParseError(source, line_no, "more rows than the declared vocabulary size " + std::to_string(*count));
    }
    if (fields.size() - 1 != *dim) {
      throw ParseError(source, line_no,
                       "word '" + word + "' has " + std::to_string(fields.size() - 1) + " components, expected " +
                           std::to_string(*dim));
    }
    for (std::size_t d = 1; d < fields.size(); ++d) {
      const auto value = parse_double(fields[d]);
      if (!value) {
        throw ParseError(source, line_no,
                         "word '" + word + "': non-numeric component '" + std::string(fields[d]) + "'");
      }
      values.push_back(*value);
    }
    const auto [it, inserted] = seen.emplace(word, line_no);
    if (!inserted) {
      throw ParseError(source, line_no,
                       "duplicate word '" + word + "' (first on line " + std::to_string(it->second) + ")");
    }
    words.push_back(std::move(word));
  }
  if (words.size() != *count) {
    throw ParseError(source, line_no,
                     "header declares " + std::to_string(*count) + " words but file has " +
                         std::to_string(words.size()));
  }
  return EmbeddingSpace(*dim, std::move(words), std::move(values));
}

EmbeddingSpace load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_vectors(in, path.string());
}

double cosine(const EmbeddingSpace& space, std::string_view a, std::string_view b) {
  return cosine_at(space, require_word(space, a), require_word(space, b));
}

SimilarityCluster neighbors(const EmbeddingSpace& space, std::string_view target,
                            std::span<const LabeledWord> labeled, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw Error("similarity threshold must lie in (0, 1]");
  const std::size_t t = require_word(space, target);

  SimilarityCluster cluster;
  cluster.target = space.words()[t];
  cluster.threshold = threshold;
  for (const auto& item : labeled) {
    const auto w = space.index_of(item.word);
    if (!w || space.norm(*w) == 0.0) {
      ++cluster.excluded_labels;
      continue;
    }
    if (*w == t) continue;
    const double c = cosine_at(space, t, *w);
    if (c >= threshold) cluster.members.push_back({space.words()[*w], c, item.sense});
  }
  std::sort(cluster.members.begin(), cluster.members.end(), [](const ClusterMember& a, const ClusterMember& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    return a.word < b.word;
  });
  return cluster;
}

std::vector<LabeledWord> labeled_pool(const Lexicon& lexicon, Pos pos) {
  std::vector<LabeledWord> pool;
  for (const auto& e : lexicon.entries()) {
    if (e.pos == pos && e.sense_index == 1) pool.push_back({e.lemma, e.primary_sense});
  }
  return pool;
}

std::optional<PropagationResult> vote(const SimilarityCluster& cluster, Pos pos, std::size_t min_cluster) {
  if (cluster.members.empty() || cluster.members.size() < min_cluster) return std::nullopt;

  std::vector<VoteCount> tally;
  for (std::size_t i = 0; i < inventory_size(pos); ++i) tally.push_back({SenseCode::at(pos, i), 0, 0.0});
  for (const auto& m : cluster.members) {
    if (m.sense.pos() != pos) throw Error("cluster member '" + m.word + "' carries a sense of another pos");
    auto& slot = tally[m.sense.index()];
    ++slot.count;
    slot.cosine_sum += m.cosine;
  }
  std::erase_if(tally, [](const VoteCount& v) { return v.count == 0; });

  const std::size_t top = std::max_element(tally.begin(), tally.end(), [](const VoteCount& a, const VoteCount& b) {
                            return a.count < b.count;
                          })->count;
  const VoteCount* best = nullptr;
  std::size_t tied = 0;
  for (const auto& v : tally) {
    if (v.count != top) continue;
    ++tied;
    if (best == nullptr || v.cosine_sum > best->cosine_sum ||
        (v.cosine_sum == best->cosine_sum && v.sense.code() < best->sense.code())) {
      best = &v;
    }
  }

  PropagationResult result;
  result.target = cluster.target;
  result.pos = pos;
  result.proposed_sense = best->sense;
  result.cluster = cluster;
  result.votes = std::move(tally);
  result.tie_broken = tied > 1;
  return result;
}

PropagationOutcome propagate_sense(const EmbeddingSpace& space, std::string_view target, const Lexicon& lexicon,
                                   Pos pos, double threshold, std::size_t min_cluster) {
  if (pos != Pos::Verb && pos != Pos::Adverb) throw Error("sense propagation supports verbs and adverbs only");
  const std::size_t t = require_word(space, target);
  const std::string& word = space.words()[t];
  if (lexicon.sense_count(word, pos) > 0) {
    throw Error("'" + word + "' already has a " + std::string(to_string(pos)) + " entry");
  }
  const auto pool = labeled_pool(lexicon, pos);
  SimilarityCluster cluster = neighbors(space, word, pool, threshold);
  if (auto result = vote(cluster, pos, min_cluster)) return std::move(*result);
  return NoProposal{word, pos, std::move(cluster), min_cluster};
}

std::optional<double> PropagationReport::accuracy() const {
  if (attempted == 0) return std::nullopt;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(attempted);
}

PropagationReport propagation_report(const EmbeddingSpace& space, std::span<const std::string> targets,
                                     const Lexicon& lexicon, Pos pos, double threshold, std::size_t min_cluster,
                                     const Lexicon* gold) {
  if (targets.empty()) throw Error("no propagation targets");
  PropagationReport report;
  report.pos = pos;
  report.threshold = threshold;
  report.min_cluster = min_cluster;
  report.has_gold = gold != nullptr;

  for (const auto& pooled : labeled_pool(lexicon, pos)) {
    const auto w = space.index_of(pooled.word);
    if (!w || space.norm(*w) == 0.0) ++report.excluded_labels;
  }

  for (const auto& target : targets) {
    TargetReport row;
    row.target = target;
    try {
      row.outcome = propagate_sense(space, target, lexicon, pos, threshold, min_cluster);
      row.target = std::visit([](const auto& o) { return o.target; }, *row.outcome);
    } catch (const Error& e) {
      row.error = e.what();
      ++report.errors;
      report.targets.push_back(std::move(row));
      continue;
    }
    if (gold != nullptr && unicode::is_valid_utf8(row.target)) {
      if (const auto* g = gold->find(unicode::nfc(row.target), pos, 1)) row.gold = g->primary_sense;
    }
    if (const auto* result = std::get_if<PropagationResult>(&*row.outcome)) {
      ++report.proposals;
      if (row.gold) {
        ++report.attempted;
        row.correct = result->proposed_sense == *row.gold;
        if (row.correct) ++report.correct;
      }
    } else {
      ++report.no_proposals;
    }
    report.targets.push_back(std::move(row));
  }
  return report;
}

std::string format_accuracy(std::size_t correct, std::size_t attempted, int decimals) {
  if (attempted == 0) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, 100.0 * static_cast<double>(correct) / static_cast<double>(attempted));
  return buf;
}

}  // namespace osn
