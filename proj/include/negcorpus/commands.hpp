#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "negcorpus/errors.hpp"
#include "negcorpus/neg_classifier.hpp"

// Command implementations behind the CLI: ingest, classify, agree, eval.
// Kept apart from argument parsing so tests can drive them directly.
namespace negcorpus {

struct RunConfig {
  std::optional<std::string> input_dir;   // transcript .txt directory
  std::optional<std::string> conllu_dir;  // pre-tagged .conllu directory
  std::string patterns_path = "data/patterns/neg_table1.json";
  std::string lexicon_path = "data/lexicon/pt_verbs.tsv";
  std::string policy = "longest";  // longest | report-all
  std::optional<int> max_gap;
  bool variants = false;
  int context = 5;
  std::string out_dir = "out";
  std::vector<std::string> markers;  // empty = defaults
};

// Reads a JSON config file into `config`. Keys mirror the CLI flags:
// input, conllu, patterns, lexicon, policy, max_gap, variants, context,
// out, markers.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

OverlapPolicy parse_policy(const std::string& name);

std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so parallel
// runs never interleave partial output.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

// Sorted regular files in `dir` with the given extension.
std::vector<std::filesystem::path> list_input_files(
    const std::filesystem::path& dir, const std::string& extension);

// Loads transcripts (or CoNLL-U files) and tags them per the config.
TaggedCorpus load_tagged_corpus(const RunConfig& config);

// Exit code 0 on success; errors are printed to stderr.
int cmd_ingest(const RunConfig& config);
int cmd_classify(const RunConfig& config);
int cmd_agree(const RunConfig& config, const std::string& annotations_csv);
int cmd_eval(const RunConfig& config, const std::string& gold_csv,
             const std::string& predicted_csv);

}  // namespace negcorpus
