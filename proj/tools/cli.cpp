#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "ontosense/corpus.hpp"
#include "ontosense/embeddings.hpp"
#include "ontosense/error.hpp"
#include "ontosense/lexicon.hpp"
#include "ontosense/service/proposal.hpp"
#include "ontosense/service/server.hpp"
#include "ontosense/unicode.hpp"
#include "ontosense/validation.hpp"

namespace osn::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  std::string lexicon;
  std::string lang = "hi";
  std::string vectors;
  std::vector<std::string> corpus;
  std::string pos = "verb";
  std::string which = "primary";
  double tau = kDefaultSimilarityThreshold;
  std::size_t min_cluster = kDefaultMinCluster;
  std::size_t min_freq = kDefaultMinVerbFrequency;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string out;
  std::string format = "tsv";
  std::string gold;
  std::string targets_file;
  std::vector<std::string> targets;
  std::string annotations;
  std::string name;
  std::vector<std::string> profiles;
  std::string config;
  int precision = -1;
};

std::string fixed(double v, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

Language language_of(const Options& o) {
  auto lang = parse_language(o.lang);
  if (!lang) throw Error("unknown language '" + o.lang + "'");
  return *lang;
}

Pos pos_of(const Options& o) {
  auto pos = parse_pos(o.pos);
  if (!pos) throw Error("unknown part of speech '" + o.pos + "'");
  return *pos;
}

Lexicon lexicon_of(const Options& o) {
  if (o.lexicon.empty()) throw Error("--lexicon is required");
  return load_lexicon(o.lexicon, language_of(o));
}

std::vector<ParsedSentence> corpus_of(const Options& o) {
  if (o.corpus.empty()) throw Error("--corpus is required");
  std::vector<ParsedSentence> all;
  for (const auto& path : o.corpus) {
    auto part = parse_conllu(path);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return all;
}

// Writes to --out when given, else to stdout.
class Sink {
 public:
  Sink(const Options& o, std::ostream& out) : out_(&out) {
    if (!o.out.empty()) {
      file_.open(o.out, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot write " + o.out);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void finish() {
    out_->flush();
    if (!*out_) throw Error("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void check_format(const Options& o) {
  if (o.format != "tsv" && o.format != "json") throw Error("unknown format '" + o.format + "'");
}

void lexicon_validate(const Options& o, std::ostream& out) {
  auto lexicon = lexicon_of(o);
  std::size_t counts[3] = {};
  for (const auto& e : lexicon.entries()) ++counts[static_cast<int>(e.pos)];
  out << "ok\t" << lexicon.size() << " entries\tverb=" << counts[0] << "\tadverb=" << counts[1]
      << "\tadjective=" << counts[2] << '\n';
}

void lexicon_stats(const Options& o, std::ostream& out) {
  check_format(o);
  auto which = parse_which(o.which);
  if (!which) throw Error("unknown --which '" + o.which + "'");
  auto dist = sense_distribution(lexicon_of(o), pos_of(o), *which);
  int decimals = o.precision < 0 ? 2 : o.precision;
  Sink sink(o, out);
  auto& s = sink.stream();
  if (o.format == "json") {
    json shares = json::object();
    for (const auto& share : dist.shares)
      shares[std::string(share.code.code())] = {{"count", share.count}, {"percent", share.percent}};
    json j = {{"pos", to_string(dist.pos)}, {"which", to_string(dist.which)}, {"total", dist.total},
              {"shares", shares}};
    s << j.dump(2) << '\n';
  } else {
    s << "sense\tlabel\tcount\tpercent\n";
    for (const auto& share : dist.shares)
      s << share.code.code() << '\t' << share.code.label() << '\t' << share.count << '\t'
        << fixed(share.percent, decimals) << '\n';
    s << "# total\t" << dist.total << '\n';
  }
  sink.finish();
}

std::vector<std::string> read_targets(const Options& o) {
  std::vector<std::string> targets;
  auto add = [&](std::string word) {
    if (word.empty()) return;
    targets.push_back(unicode::nfc(word));
  };
  if (!o.targets_file.empty()) {
    std::ifstream in(o.targets_file, std::ios::binary);
    if (!in) throw Error("cannot open " + o.targets_file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      auto last = line.find_last_not_of(" \t");
      add(line.substr(first, last - first + 1));
    }
  }
  for (const auto& t : o.targets) add(t);
  if (targets.empty()) throw Error("no targets given (use --targets FILE or positional words)");
  return targets;
}

std::string vote_summary(const PropagationResult& r) {
  std::string s;
  for (const auto& v : r.votes) {
    if (!s.empty()) s += ',';
    s += std::string(v.sense.code()) + ':' + std::to_string(v.count);
  }
  return s;
}

void propagate(const Options& o, std::ostream& out) {
  check_format(o);
  if (o.vectors.empty()) throw Error("--vectors is required");
  auto language = language_of(o);
  auto lexicon = lexicon_of(o);
  auto pos = pos_of(o);
  auto space = load_vectors(o.vectors);
  auto targets = read_targets(o);
  std::optional<Lexicon> gold;
  if (!o.gold.empty()) gold = load_lexicon(o.gold, language);
  auto report = propagation_report(space, targets, lexicon, pos, o.tau, o.min_cluster, gold ? &*gold : nullptr);

  std::size_t already = 0;
  for (const auto& t : targets)
    if (lexicon.sense_count(t, pos) > 0) ++already;

  Sink sink(o, out);
  auto& s = sink.stream();
  if (o.format == "json") {
    json proposals = json::array(), none = json::array(), errors = json::array();
    for (const auto& t : report.targets) {
      if (!t.outcome) {
        errors.push_back({{"target", t.target}, {"error", t.error}});
      } else if (auto* r = std::get_if<PropagationResult>(&*t.outcome)) {
        proposals.push_back(service::draft_to_json(service::draft_from_propagation(*r, lexicon, language)));
      } else {
        const auto& np = std::get<NoProposal>(*t.outcome);
        none.push_back({{"target", np.target}, {"cluster_size", np.cluster.members.size()},
                        {"min_cluster", np.min_cluster}});
      }
    }
    json j = {{"pos", to_string(pos)},          {"threshold", o.tau},  {"min_cluster", o.min_cluster},
              {"sampled", targets.size()},      {"already_labeled", already},
              {"excluded_labels", report.excluded_labels},
              {"proposals", proposals},         {"no_proposal", none}, {"errors", errors}};
    if (report.has_gold) {
      j["attempted"] = report.attempted;
      j["correct"] = report.correct;
      auto acc = report.accuracy();
      j["accuracy"] = acc ? json(*acc) : json(nullptr);
    }
    s << j.dump(2) << '\n';
  } else {
    s << "target\tstatus\tproposed\tcluster_size\tvotes\ttie_broken\tgold\tcorrect\n";
    for (const auto& t : report.targets) {
      s << t.target << '\t';
      std::string gold_code = t.gold ? std::string(t.gold->code()) : "-";
      if (!t.outcome) {
        s << "error\t-\t-\t-\t-\t" << gold_code << "\t-\n";
      } else if (auto* r = std::get_if<PropagationResult>(&*t.outcome)) {
        s << "proposed\t" << r->proposed_sense.code() << '\t' << r->cluster.members.size() << '\t'
          << vote_summary(*r) << '\t' << (r->tie_broken ? "yes" : "no") << '\t' << gold_code << '\t'
          << (t.gold ? (t.correct ? "yes" : "no") : "-") << '\n';
      } else {
        const auto& np = std::get<NoProposal>(*t.outcome);
        s << "no_proposal\t-\t" << np.cluster.members.size() << "\t-\t-\t" << gold_code << "\t-\n";
      }
    }
    for (const auto& t : report.targets)
      if (!t.outcome) s << "# error\t" << t.target << '\t' << t.error << '\n';
    s << "# excluded_labels\t" << report.excluded_labels << '\n';
    s << "#\n# pos\tsampled\talready_labeled\tattempted\tcorrect\taccuracy\n";
    s << "# " << to_string(pos) << '\t' << targets.size() << '\t' << already << '\t';
    if (report.has_gold) {
      int decimals = o.precision < 0 ? 3 : o.precision;
      s << report.attempted << '\t' << report.correct << '\t'
        << (report.attempted ? format_accuracy(report.correct, report.attempted, decimals) + "%" : "-") << '\n';
    } else {
      s << report.proposals << "\t-\t-\n";
    }
  }
  sink.finish();
}

void kappa(const Options& o, std::ostream& out) {
  check_format(o);
  if (o.annotations.empty()) throw Error("annotation file is required");
  auto result = cohen_kappa(load_annotations(o.annotations));
  int decimals = o.precision < 0 ? 2 : o.precision;
  Sink sink(o, out);
  if (o.format == "json") {
    json j = {{"n", result.n},   {"agreements", result.agreements}, {"p_o", result.p_o},
              {"p_e", result.p_e}, {"kappa", result.kappa},           {"band", agreement_band(result.kappa)}};
    sink.stream() << j.dump(2) << '\n';
  } else {
    write_kappa_tsv(result, sink.stream(), decimals);
  }
  sink.finish();
}

void sample(const Options& o, std::ostream& out) {
  check_format(o);
  auto ids = draw_sample(lexicon_of(o), pos_of(o), o.n, o.seed);
  Sink sink(o, out);
  if (o.format == "json") {
    sink.stream() << json{{"seed", o.seed}, {"pos", o.pos}, {"items", ids}}.dump(2) << '\n';
  } else {
    sink.stream() << "item_id\n";
    for (const auto& id : ids) sink.stream() << id << '\n';
  }
  sink.finish();
}

json profile_json(const AdverbialProfile& p) {
  json percent = json::object(), counts = json::object();
  for (std::size_t k = 0; k < kAdverbClassCount; ++k) {
    auto code = std::string(SenseCode::at(Pos::Adverb, k).code());
    percent[code] = p.class_percent[k];
    counts[code] = p.class_counts[k];
  }
  return {{"verb", p.verb},   {"frequency", p.verb_freq}, {"percent", percent}, {"counts", counts},
          {"unknown_adverbs", p.unknown_adverb_count},       {"no_known_adverbs", p.no_known_adverbs()}};
}

void profile_adverbs(const Options& o, std::ostream& out) {
  check_format(o);
  auto lexicon = lexicon_of(o);
  auto profiles = adverbial_profiles(corpus_of(o), lexicon, o.min_freq);
  Sink sink(o, out);
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& p : profiles) rows.push_back(profile_json(p));
    sink.stream() << json{{"min_freq", o.min_freq}, {"verbs", rows}}.dump(2) << '\n';
  } else {
    write_adverbial_profiles(profiles, sink.stream());
  }
  sink.finish();
}

void karaka(const Options& o, std::ostream& out) {
  check_format(o);
  auto matrix = karaka_matrix(corpus_of(o), lexicon_of(o));
  Sink sink(o, out);
  if (o.format == "json") {
    json rows = json::object();
    for (std::size_t v = 0; v < kVerbSenseCount; ++v) {
      json row = json::object();
      for (std::size_t k = 0; k < kKarakaCount; ++k)
        row[std::string(code_of(static_cast<Karaka>(k)))] = {{"count", matrix.counts[v][k]},
                                                             {"row_percent", matrix.row_percent[v][k]}};
      rows[std::string(SenseCode::at(Pos::Verb, v).code())] = row;
    }
    sink.stream() << json{{"edges", matrix.edges}, {"skipped_edges", matrix.skipped_edges}, {"matrix", rows}}.dump(2)
                  << '\n';
  } else {
    write_karaka_matrix(matrix, sink.stream());
  }
  sink.finish();
}

void profile_senses(const Options& o, std::ostream& out) {
  check_format(o);
  auto name = o.name.empty() ? fs::path(o.corpus.empty() ? "corpus" : o.corpus.front()).stem().string() : o.name;
  auto profile = sense_type_profile(corpus_of(o), lexicon_of(o), name);
  Sink sink(o, out);
  if (o.format == "json") {
    json counts = json::object(), percent = json::object();
    for (std::size_t v = 0; v < kVerbSenseCount; ++v) {
      auto code = std::string(SenseCode::at(Pos::Verb, v).code());
      counts[code] = profile.counts[v];
      percent[code] = profile.percent[v];
    }
    sink.stream() << json{{"corpus", profile.corpus},  {"token_total", profile.token_total},
                          {"counts", counts},          {"percent", percent},
                          {"out_of_lexicon", profile.out_of_lexicon}}
                         .dump(2)
                  << '\n';
  } else {
    write_sense_profile(profile, sink.stream());
  }
  sink.finish();
}

std::string first_line(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void compare(const Options& o, std::ostream& out) {
  check_format(o);
  if (o.profiles.size() != 2) throw Error("compare takes exactly two profile files");
  const auto& pa = o.profiles[0];
  const auto& pb = o.profiles[1];
  auto header_a = first_line(pa), header_b = first_line(pb);
  if (header_a != header_b) throw Error("profiles are of different kinds: " + pa + ", " + pb);
  Sink sink(o, out);
  auto& s = sink.stream();
  if (header_a == kSenseProfileHeader) {
    std::ifstream in_a(pa, std::ios::binary), in_b(pb, std::ios::binary);
    auto cmp = compare_corpora(read_sense_profile(in_a, pa), read_sense_profile(in_b, pb));
    if (o.format == "json") {
      json rows = json::array();
      for (const auto& r : cmp.rows)
        rows.push_back({{"sense", SenseCode(r.sense).code()},
                        {"label", SenseCode(r.sense).label()},
                        {"count_a", r.count_a},
                        {"count_b", r.count_b},
                        {"total_a", r.total_a},
                        {"total_b", r.total_b},
                        {"log_likelihood", r.ll},
                        {"direction", r.direction == Direction::Equal
                                          ? std::string("equal")
                                          : "overused-in-" +
                                                (r.direction == Direction::OverusedInA ? cmp.name_a : cmp.name_b)}});
      s << json{{"corpus_a", cmp.name_a}, {"corpus_b", cmp.name_b}, {"rows", rows}}.dump(2) << '\n';
    } else {
      write_comparison(cmp, s);
    }
  } else if (header_a == kAdverbialProfileHeader) {
    std::ifstream in_a(pa, std::ios::binary), in_b(pb, std::ios::binary);
    auto a = read_adverbial_profiles(in_a, pa);
    auto b = read_adverbial_profiles(in_b, pb);
    auto cmp = author_adverb_comparison(a, b);
    if (o.format == "json") {
      json rows = json::array();
      for (const auto& r : cmp.rows)
        rows.push_back({{"verb", r.verb}, {"classes_a", join_class_labels(r.side_a)},
                        {"classes_b", join_class_labels(r.side_b)}});
      s << json{{"rows", rows}, {"only_in_a", cmp.only_a}, {"only_in_b", cmp.only_b}}.dump(2) << '\n';
    } else {
      write_adverb_comparison(cmp, s);
    }
  } else {
    throw Error(pa + ":1: not a sense-type or adverbial profile");
  }
  sink.finish();
}

void serve(const Options& o) {
  if (o.config.empty()) throw Error("--config is required");
  auto config = service::ServiceConfig::load(o.config);
  config.apply_environment();
  if (service::run_service(config) != 0) throw Error("service stopped with an error");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sense-type lexicon toolkit", "ontosense"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto add_lexicon = [&](CLI::App* cmd) {
    cmd->add_option("--lexicon", o.lexicon, "Lexicon TSV file");
    cmd->add_option("--lang", o.lang, "Language code (hi, te, en)")->capture_default_str();
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Output file (default stdout)");
    cmd->add_option("--format", o.format, "tsv or json")->capture_default_str();
  };
  auto add_corpus = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", o.corpus, "CoNLL-U file (repeatable)")->take_all();
  };

  auto* lexicon_cmd = app.add_subcommand("lexicon", "Lexicon file operations");
  lexicon_cmd->require_subcommand(1);
  auto* validate_cmd = lexicon_cmd->add_subcommand("validate", "Check a lexicon file");
  add_lexicon(validate_cmd);
  auto* stats_cmd = lexicon_cmd->add_subcommand("stats", "Sense distribution for one part of speech");
  add_lexicon(stats_cmd);
  stats_cmd->add_option("--pos", o.pos, "verb, adverb or adjective")->capture_default_str();
  stats_cmd->add_option("--which", o.which, "primary or secondary")->capture_default_str();
  stats_cmd->add_option("--precision", o.precision, "Decimal places");
  add_output(stats_cmd);

  auto* propagate_cmd = app.add_subcommand("propagate", "Propose senses for unlabeled words from embeddings");
  add_lexicon(propagate_cmd);
  propagate_cmd->add_option("--vectors", o.vectors, "word2vec text file");
  propagate_cmd->add_option("--targets", o.targets_file, "File of target words, one per line");
  propagate_cmd->add_option("words", o.targets, "Target words");
  propagate_cmd->add_option("--pos", o.pos, "verb or adverb")->capture_default_str();
  propagate_cmd->add_option("--tau", o.tau, "Cosine similarity threshold")->capture_default_str();
  propagate_cmd->add_option("--min-cluster", o.min_cluster, "Minimum cluster size")->capture_default_str();
  propagate_cmd->add_option("--gold", o.gold, "Gold lexicon TSV for accuracy");
  propagate_cmd->add_option("--precision", o.precision, "Decimal places of the accuracy");
  add_output(propagate_cmd);

  auto* kappa_cmd = app.add_subcommand("kappa", "Cohen's kappa over paired annotations");
  kappa_cmd->add_option("annotations", o.annotations, "Annotation TSV (item_id, label_a, label_b)");
  kappa_cmd->add_option("--precision", o.precision, "Decimal places");
  add_output(kappa_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "Draw an evaluation sample of lexicon items");
  add_lexicon(sample_cmd);
  sample_cmd->add_option("--pos", o.pos, "Part of speech")->capture_default_str();
  sample_cmd->add_option("--n", o.n, "Sample size")->required();
  sample_cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  add_output(sample_cmd);

  auto* adverbs_cmd = app.add_subcommand("profile-adverbs", "Adverb class profile of frequent verbs");
  add_lexicon(adverbs_cmd);
  add_corpus(adverbs_cmd);
  adverbs_cmd->add_option("--min-freq", o.min_freq, "Keep verbs seen more often than this")->capture_default_str();
  add_output(adverbs_cmd);

  auto* karaka_cmd = app.add_subcommand("karaka", "Sense-type by karaka matrix");
  add_lexicon(karaka_cmd);
  add_corpus(karaka_cmd);
  add_output(karaka_cmd);

  auto* senses_cmd = app.add_subcommand("profile-senses", "Verb sense-type distribution of a corpus");
  add_lexicon(senses_cmd);
  add_corpus(senses_cmd);
  senses_cmd->add_option("--name", o.name, "Corpus name (default: first corpus file stem)");
  add_output(senses_cmd);

  auto* compare_cmd = app.add_subcommand("compare", "Compare two sense-type or adverbial profiles");
  compare_cmd->add_option("profiles", o.profiles, "Two profile TSV files")->expected(2);
  add_output(compare_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", o.config, "Service JSON config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (app.get_subcommands().empty() && argc > 1 && argv[1][0] != '-')
      err << "ontosense: unknown subcommand '" << argv[1] << "'\n";
    else
      err << "ontosense: " << e.what() << '\n';
    const CLI::App* cmd = &app;
    while (!cmd->get_subcommands().empty()) cmd = cmd->get_subcommands().front();
    err << cmd->help();
    return 2;
  }

  try {
    if (validate_cmd->parsed()) lexicon_validate(o, out);
    else if (stats_cmd->parsed()) lexicon_stats(o, out);
    else if (propagate_cmd->parsed()) propagate(o, out);
    else if (kappa_cmd->parsed()) kappa(o, out);
    else if (sample_cmd->parsed()) sample(o, out);
    else if (adverbs_cmd->parsed()) profile_adverbs(o, out);
    else if (karaka_cmd->parsed()) karaka(o, out);
    else if (senses_cmd->parsed()) profile_senses(o, out);
    else if (compare_cmd->parsed()) compare(o, out);
    else if (serve_cmd->parsed()) serve(o);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (auto& c : msg)
      if (c == '\n') c = ' ';
    err << "ontosense: error: " << msg << '\n';
    return 1;
  }
  return 0;
}

}  // namespace osn::cli
