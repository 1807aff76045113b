// negcorpus command-line tool: ingest transcripts, classify verbal negation
// structures, compute inter-annotator agreement, and score classifications
// against gold labels.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "negcorpus/commands.hpp"
#include "negcorpus/errors.hpp"

namespace {

struct CliValues {
  std::string config_path;
  std::string input_dir;
  std::string conllu_dir;
  std::string patterns_path;
  std::string lexicon_path;
  std::string policy;
  int max_gap = 0;
  bool variants = false;
  int context = 5;
  std::string out_dir;
  std::vector<std::string> markers;
};

// Shared flags; each subcommand gets the subset it understands. Precedence
// is defaults < config file < explicitly passed flags.
void add_common_options(CLI::App* cmd, CliValues& v, bool io_flags) {
  cmd->add_option("--config", v.config_path, "JSON config file");
  cmd->add_option("--out", v.out_dir, "output directory");
  if (!io_flags) return;
  cmd->add_option("--input", v.input_dir, "directory of transcript .txt files");
  cmd->add_option("--markers", v.markers,
                  "disfluency marker regex (repeatable, replaces defaults)");
}

negcorpus::RunConfig build_config(const CLI::App* cmd, const CliValues& v) {
  negcorpus::RunConfig config;
  if (cmd->count("--config") > 0)
    negcorpus::apply_config_file(config, v.config_path);

  auto passed = [&](const std::string& flag) {
    return cmd->get_option_no_throw(flag) && cmd->count(flag) > 0;
  };
  if (passed("--input")) config.input_dir = v.input_dir;
  if (passed("--conllu")) config.conllu_dir = v.conllu_dir;
  if (passed("--patterns")) config.patterns_path = v.patterns_path;
  if (passed("--lexicon")) config.lexicon_path = v.lexicon_path;
  if (passed("--policy")) config.policy = v.policy;
  if (passed("--max-gap")) config.max_gap = v.max_gap;
  if (passed("--variants")) config.variants = v.variants;
  if (passed("--context")) config.context = v.context;
  if (passed("--out")) config.out_dir = v.out_dir;
  if (passed("--markers")) config.markers = v.markers;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brazilian Portuguese verbal negation structures in transcribed "
               "speech: detection, classification and evaluation"};
  app.require_subcommand(1);

  CliValues v;
  int exit_code = 0;

  auto* ingest = app.add_subcommand(
      "ingest", "parse transcript files into cleaned utterance JSON");
  add_common_options(ingest, v, true);
  ingest->callback([&] {
    exit_code = negcorpus::cmd_ingest(build_config(ingest, v));
  });

  auto* classify = app.add_subcommand(
      "classify", "find and classify NEG1/NEG2/NEG3 occurrences");
  add_common_options(classify, v, true);
  classify->add_option("--conllu", v.conllu_dir,
                       "directory of pre-tagged .conllu files");
  classify->add_option("--patterns", v.patterns_path, "pattern JSON file");
  classify->add_option("--lexicon", v.lexicon_path, "verb lexicon TSV file");
  classify->add_option("--policy", v.policy,
                       "overlap policy: longest | report-all");
  classify->add_option("--max-gap", v.max_gap,
                       "override max wildcard gap for every pattern");
  classify->add_flag("--variants", v.variants,
                     "treat written-register 'n'/'ñ' as 'não'");
  classify->add_option("--context", v.context,
                       "context window tokens on each side");
  classify->callback([&] {
    exit_code = negcorpus::cmd_classify(build_config(classify, v));
  });

  std::string annotations_csv;
  auto* agree = app.add_subcommand(
      "agree", "inter-annotator agreement from an annotation CSV");
  add_common_options(agree, v, false);
  agree->add_option("annotations", annotations_csv,
                    "CSV: item_id plus one label column per annotator")
      ->required();
  agree->callback([&] {
    exit_code = negcorpus::cmd_agree(build_config(agree, v), annotations_csv);
  });

  std::string gold_csv, predicted_csv;
  auto* eval = app.add_subcommand(
      "eval", "score predicted labels against gold labels");
  add_common_options(eval, v, false);
  eval->add_option("gold", gold_csv, "gold label CSV")->required();
  eval->add_option("predicted", predicted_csv, "predicted label CSV")
      ->required();
  eval->callback([&] {
    exit_code =
        negcorpus::cmd_eval(build_config(eval, v), gold_csv, predicted_csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const negcorpus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
