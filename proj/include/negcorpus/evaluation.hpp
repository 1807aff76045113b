#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "negcorpus/errors.hpp"

// Scoring of tool classifications against unified gold labels: confusion
// matrix, per-class precision/recall/F1, accuracy, and tool-vs-gold kappa
// (delegated to the agreement module).
namespace negcorpus {

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  using Error::Error;
};

struct LabelPair {
  std::string gold;
  std::string predicted;
};

struct AlignResult {
  std::vector<std::string> item_ids;  // shared keys, ascending
  std::vector<LabelPair> pairs;       // same order as item_ids
  std::vector<std::string> gold_only;       // uncovered items
  std::vector<std::string> predicted_only;  // spurious items
};

// Pairs labels over the intersection of item keys; one-sided items are
// reported, never silently dropped. Empty intersection is an error.
AlignResult align(const std::map<std::string, std::string>& gold,
                  const std::map<std::string, std::string>& predicted);

struct ConfusionMatrix {
  std::vector<std::string> categories;
  // counts[gold][predicted]
  std::vector<std::vector<std::size_t>> counts;

  std::size_t total() const;
};

ConfusionMatrix confusion(const std::vector<LabelPair>& pairs,
                          const std::vector<std::string>& categories);

struct ClassMetrics {
  std::optional<double> precision;  // nullopt on a 0/0 cell
  std::optional<double> recall;
  std::optional<double> f1;
};

struct MetricsReport {
  std::map<std::string, ClassMetrics> per_class;
  std::map<std::string, std::size_t> support;  // gold row sums
  double accuracy = 0.0;
  std::optional<double> macro_f1;  // over classes with a defined F1
  int undefined_class_count = 0;   // classes excluded from macro_f1
  std::optional<double> kappa_vs_gold;
  std::size_t total = 0;
};

// precision_k = cm[k][k] / column sum, recall_k = cm[k][k] / row sum,
// accuracy = trace / total. kappa_vs_gold comes from
// agreement::cohen_kappa on the pair sequences the matrix encodes.
MetricsReport metrics(const ConfusionMatrix& cm);

std::string metrics_to_json(const MetricsReport& report);
std::string confusion_to_csv(const ConfusionMatrix& cm);

// Per-class table plus accuracy and kappa, 2 decimal places.
std::string metrics_human_table(const MetricsReport& report);

}  // namespace negcorpus
