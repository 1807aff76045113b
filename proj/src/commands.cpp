#include "negcorpus/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "negcorpus/agreement.hpp"
#include "negcorpus/csv.hpp"
#include "negcorpus/evaluation.hpp"
#include "negcorpus/token_stream.hpp"

namespace negcorpus {

namespace fs = std::filesystem;

void apply_config_file(RunConfig& config, const fs::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("config file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw Error("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "input") config.input_dir = value.get<std::string>();
    else if (key == "conllu") config.conllu_dir = value.get<std::string>();
    else if (key == "patterns") config.patterns_path = value.get<std::string>();
    else if (key == "lexicon") config.lexicon_path = value.get<std::string>();
    else if (key == "policy") config.policy = value.get<std::string>();
    else if (key == "max_gap") config.max_gap = value.get<int>();
    else if (key == "variants") config.variants = value.get<bool>();
    else if (key == "context") config.context = value.get<int>();
    else if (key == "out") config.out_dir = value.get<std::string>();
    else if (key == "markers") config.markers = value.get<std::vector<std::string>>();
    else throw Error("config file: unknown key '" + key + "'");
  }
}

OverlapPolicy parse_policy(const std::string& name) {
  if (name == "longest") return OverlapPolicy::longest();
  if (name == "report-all") return OverlapPolicy::report_all();
  throw Error("unknown overlap policy '" + name +
              "' (expected 'longest' or 'report-all')");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  static std::mt19937_64 rng(std::random_device{}());
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(rng());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<fs::path> list_input_files(const fs::path& dir,
                                       const std::string& extension) {
  if (!fs::is_directory(dir))
    throw Error("input directory does not exist: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

const std::vector<std::string>& marker_patterns_for(const RunConfig& config) {
  return config.markers.empty() ? default_marker_patterns() : config.markers;
}

nlohmann::ordered_json metadata_to_json(const SpeakerMetadata& m) {
  nlohmann::ordered_json j;
  j["interview_id"] = m.interview_id;
  j["location"] = m.location ? nlohmann::ordered_json(*m.location) : nullptr;
  j["gender"] = m.gender ? nlohmann::ordered_json(*m.gender) : nullptr;
  j["age"] = m.age ? nlohmann::ordered_json(*m.age) : nullptr;
  j["city_of_origin"] =
      m.city_of_origin ? nlohmann::ordered_json(*m.city_of_origin) : nullptr;
  j["city_of_residence"] =
      m.city_of_residence ? nlohmann::ordered_json(*m.city_of_residence) : nullptr;
  j["undergrad_period"] =
      m.undergrad_period ? nlohmann::ordered_json(*m.undergrad_period) : nullptr;
  j["role"] = m.role ? nlohmann::ordered_json(std::string(to_string(*m.role)))
                     : nullptr;
  return j;
}

nlohmann::ordered_json document_to_json(const IngestedFile& file) {
  nlohmann::ordered_json j;
  j["metadata"] = metadata_to_json(file.document.metadata);
  j["raw_char_count"] = file.document.raw_char_count;
  j["cleaned_char_count"] = file.document.cleaned_char_count;
  nlohmann::ordered_json utterances = nlohmann::ordered_json::array();
  for (const auto& u : file.document.utterances) {
    nlohmann::ordered_json uj;
    uj["index"] = u.index;
    uj["text"] = u.text;
    uj["line_start"] = u.source_line_span.first;
    uj["line_end"] = u.source_line_span.second;
    uj["ends_with_question"] = u.ends_with_question;
    utterances.push_back(uj);
  }
  j["utterances"] = utterances;
  nlohmann::ordered_json removals = nlohmann::ordered_json::array();
  for (const auto& r : file.removals) {
    nlohmann::ordered_json rj;
    rj["offset"] = r.offset;
    rj["text"] = r.text;
    removals.push_back(rj);
  }
  j["removals"] = removals;
  return j;
}

}  // namespace

TaggedCorpus load_tagged_corpus(const RunConfig& config) {
  const bool has_input = config.input_dir.has_value();
  const bool has_conllu = config.conllu_dir.has_value();
  if (has_input == has_conllu)
    throw Error("exactly one of --input (transcripts) or --conllu must be given");

  TaggedCorpus corpus;
  if (has_input) {
    VerbLexicon lexicon = VerbLexicon::load(config.lexicon_path);
    auto files = list_input_files(*config.input_dir, ".txt");
    if (files.empty()) throw Error("no input files in " + *config.input_dir);
    for (const auto& path : files) {
      IngestedFile file =
          ingest_text(read_file(path), HeaderSchema::default_schema(),
                      marker_patterns_for(config));
      TaggedDocument doc;
      doc.metadata = std::move(file.document.metadata);
      for (const auto& utt : file.document.utterances)
        doc.utterances.push_back(tag_with_lexicon(utt, lexicon));
      corpus.push_back(std::move(doc));
    }
  } else {
    auto files = list_input_files(*config.conllu_dir, ".conllu");
    if (files.empty()) throw Error("no input files in " + *config.conllu_dir);
    for (const auto& path : files) {
      TaggedDocument doc;
      doc.metadata.interview_id = path.stem().string();
      doc.utterances = read_conllu(read_file(path));
      corpus.push_back(std::move(doc));
    }
  }
  return corpus;
}

int cmd_ingest(const RunConfig& config) {
  if (!config.input_dir) {
    std::cerr << "error: ingest requires --input\n";
    return 1;
  }
  std::vector<fs::path> files;
  try {
    files = list_input_files(*config.input_dir, ".txt");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (files.empty()) {
    std::cerr << "error: no input files in " << *config.input_dir << "\n";
    return 1;
  }

  int failures = 0;
  std::size_t ok_count = 0, removal_count = 0;
  for (const auto& path : files) {
    try {
      IngestedFile file =
          ingest_text(read_file(path), HeaderSchema::default_schema(),
                      marker_patterns_for(config));
      removal_count += file.removals.size();
      fs::path out = fs::path(config.out_dir) / (path.stem().string() + ".json");
      write_file_atomic(out, document_to_json(file).dump(2) + "\n");
      ++ok_count;
    } catch (const Error& e) {
      std::cerr << "error: " << path.string() << ": " << e.what() << "\n";
      ++failures;
    }
  }
  std::cout << "ingested " << ok_count << " file(s) -> " << config.out_dir
            << " (" << removal_count << " removal(s) recorded)\n";
  return failures == 0 ? 0 : 1;
}

int cmd_classify(const RunConfig& config) {
  try {
    TaggedCorpus corpus = load_tagged_corpus(config);
    auto patterns = load_patterns_json(read_file(config.patterns_path));

    ClassifyOptions options;
    options.policy = parse_policy(config.policy);
    options.context_window = config.context;
    options.variants_enabled = config.variants;
    options.max_gap_override = config.max_gap;

    ClassifyResult result = classify_corpus(corpus, patterns, options);
    const bool report_all =
        options.policy.kind == OverlapPolicy::Kind::report_all;

    write_file_atomic(fs::path(config.out_dir) / "occurrences.csv",
                      occurrences_to_csv(result.occurrences, report_all));
    write_file_atomic(fs::path(config.out_dir) / "summary.json",
                      summary_to_json(result.summary));

    std::size_t utterance_count = 0;
    for (const auto& doc : corpus) utterance_count += doc.utterances.size();
    std::cout << "classified " << result.occurrences.size()
              << " occurrence(s) from " << utterance_count
              << " utterance(s) in " << corpus.size() << " file(s); total nao = "
              << result.summary.total_nao_tokens << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_agree(const RunConfig& config, const std::string& annotations_csv) {
  try {
    AnnotationMatrix matrix =
        annotation_matrix_from_csv(read_file(annotations_csv));
    AgreementReport report = compute_agreement(matrix);

    write_file_atomic(fs::path(config.out_dir) / "agreement.json",
                      agreement_report_to_json(report, matrix));

    // Majority labels double as evaluation gold; ties are left out.
    std::string gold = csv::write_row({"item_id", "label"});
    for (const auto& [item, label] : report.unified.unified)
      if (label) gold += csv::write_row({item, *label});
    write_file_atomic(fs::path(config.out_dir) / "unified_gold.csv", gold);

    if (report.fleiss) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f", *report.fleiss);
      std::cout << "fleiss kappa = " << buf;
    } else {
      std::cout << "fleiss kappa = undefined";
    }
    std::cout << " (" << matrix.item_ids.size() << " item(s), "
              << matrix.annotator_ids.size() << " annotator(s), "
              << report.unified.tie_count << " tie(s))\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

// Accepts either an (item_id,label) CSV or a classify occurrences CSV, in
// which case the eval item key interview_id:utterance_index:start is
// synthesized from its columns.
std::map<std::string, std::string> load_label_map(const std::string& path) {
  auto rows = csv::parse(read_file(path));
  if (rows.size() < 2)
    throw Error(path + ": no label rows");
  const auto& header = rows.front();
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };

  auto item_col = column("item_id");
  auto label_col = column("label");
  if (!label_col)
    throw Error(path + ": no 'label' column");

  std::map<std::string, std::string> out;
  auto insert_checked = [&](const std::string& item, const std::string& label,
                            std::size_t row_no) {
    if (!out.emplace(item, label).second)
      throw Error(path + ": duplicate item id '" + item + "' at row " +
                  std::to_string(row_no));
  };

  if (item_col) {
    for (std::size_t r = 1; r < rows.size(); ++r)
      insert_checked(rows[r][*item_col], rows[r][*label_col], r + 1);
    return out;
  }

  auto id_col = column("interview_id");
  auto utt_col = column("utterance_index");
  auto start_col = column("start");
  if (!id_col || !utt_col || !start_col)
    throw Error(path +
                ": expected columns item_id,label or "
                "interview_id,utterance_index,start,label");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string item =
        row[*id_col] + ":" + row[*utt_col] + ":" + row[*start_col];
    insert_checked(item, row[*label_col], r + 1);
  }
  return out;
}

}  // namespace

int cmd_eval(const RunConfig& config, const std::string& gold_csv,
             const std::string& predicted_csv) {
  try {
    auto gold = load_label_map(gold_csv);
    auto predicted = load_label_map(predicted_csv);
    AlignResult aligned = align(gold, predicted);

    std::set<std::string> category_set;
    for (const auto& p : aligned.pairs) {
      category_set.insert(p.gold);
      category_set.insert(p.predicted);
    }
    std::vector<std::string> categories(category_set.begin(),
                                        category_set.end());

    ConfusionMatrix cm = confusion(aligned.pairs, categories);
    MetricsReport report = metrics(cm);

    write_file_atomic(fs::path(config.out_dir) / "metrics.json",
                      metrics_to_json(report));
    write_file_atomic(fs::path(config.out_dir) / "confusion.csv",
                      confusion_to_csv(cm));

    std::cout << metrics_human_table(report);
    if (!aligned.gold_only.empty() || !aligned.predicted_only.empty()) {
      std::cout << "uncovered gold items: " << aligned.gold_only.size()
                << ", spurious predicted items: "
                << aligned.predicted_only.size() << "\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace negcorpus
