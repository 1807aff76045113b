#include "negcorpus/evaluation.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "negcorpus/agreement.hpp"
#include "negcorpus/csv.hpp"

namespace negcorpus {

AlignResult align(const std::map<std::string, std::string>& gold,
                  const std::map<std::string, std::string>& predicted) {
  AlignResult out;
  for (const auto& [item, label] : gold) {
    auto it = predicted.find(item);
    if (it == predicted.end()) {
      out.gold_only.push_back(item);
    } else {
      out.item_ids.push_back(item);
      out.pairs.push_back({label, it->second});
    }
  }
  for (const auto& [item, label] : predicted)
    if (!gold.count(item)) out.predicted_only.push_back(item);
  if (out.pairs.empty())
    throw EmptyIntersection("gold and predicted share no item ids");
  return out;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : counts)
    for (std::size_t c : row) t += c;
  return t;
}

ConfusionMatrix confusion(const std::vector<LabelPair>& pairs,
                          const std::vector<std::string>& categories) {
  ConfusionMatrix cm;
  cm.categories = categories;
  cm.counts.assign(categories.size(),
                   std::vector<std::size_t>(categories.size(), 0));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < categories.size(); ++i) index[categories[i]] = i;

  for (const auto& p : pairs) {
    auto g = index.find(p.gold);
    auto q = index.find(p.predicted);
    if (g == index.end())
      throw UnknownLabel("gold label '" + p.gold + "' not in category list");
    if (q == index.end())
      throw UnknownLabel("predicted label '" + p.predicted +
                         "' not in category list");
    ++cm.counts[g->second][q->second];
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::size_t k = cm.categories.size();
  const std::size_t total = cm.total();
  if (k == 0 || total == 0) throw EmptyMatrix("confusion matrix is empty");

  MetricsReport report;
  report.total = total;

  std::size_t trace = 0;
  for (std::size_t i = 0; i < k; ++i) trace += cm.counts[i][i];
  report.accuracy = static_cast<double>(trace) / static_cast<double>(total);

  double f1_sum = 0.0;
  int f1_defined = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row_sum += cm.counts[i][j];
      col_sum += cm.counts[j][i];
    }
    report.support[cm.categories[i]] = row_sum;

    ClassMetrics m;
    const double tp = static_cast<double>(cm.counts[i][i]);
    if (col_sum > 0) m.precision = tp / static_cast<double>(col_sum);
    if (row_sum > 0) m.recall = tp / static_cast<double>(row_sum);
    if (m.precision && m.recall) {
      const double p = *m.precision, r = *m.recall;
      m.f1 = (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
      f1_sum += *m.f1;
      ++f1_defined;
    } else {
      ++report.undefined_class_count;
    }
    report.per_class[cm.categories[i]] = m;
  }
  if (f1_defined > 0) report.macro_f1 = f1_sum / f1_defined;

  // Single source of truth for kappa: expand the matrix back into the pair
  // sequences and hand them to the agreement module.
  std::vector<std::string> gold_seq, pred_seq;
  gold_seq.reserve(total);
  pred_seq.reserve(total);
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t c = 0; c < cm.counts[g][p]; ++c) {
        gold_seq.push_back(cm.categories[g]);
        pred_seq.push_back(cm.categories[p]);
      }
  report.kappa_vs_gold = cohen_kappa(gold_seq, pred_seq);
  return report;
}

namespace {

nlohmann::ordered_json json_or_null(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace

std::string metrics_to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["total"] = report.total;
  j["accuracy"] = report.accuracy;
  j["macro_f1"] = json_or_null(report.macro_f1);
  j["undefined_classes"] = report.undefined_class_count;
  j["kappa_vs_gold"] = json_or_null(report.kappa_vs_gold);
  nlohmann::ordered_json per_class;
  for (const auto& [label, m] : report.per_class) {
    nlohmann::ordered_json entry;
    entry["precision"] = json_or_null(m.precision);
    entry["recall"] = json_or_null(m.recall);
    entry["f1"] = json_or_null(m.f1);
    entry["support"] = report.support.at(label);
    per_class[label] = entry;
  }
  j["per_class"] = per_class;
  return j.dump(2) + "\n";
}

std::string confusion_to_csv(const ConfusionMatrix& cm) {
  std::vector<std::string> header = {""};
  header.insert(header.end(), cm.categories.begin(), cm.categories.end());
  std::string out = csv::write_row(header);
  for (std::size_t i = 0; i < cm.categories.size(); ++i) {
    std::vector<std::string> row = {cm.categories[i]};
    for (std::size_t j = 0; j < cm.categories.size(); ++j)
      row.push_back(std::to_string(cm.counts[i][j]));
    out += csv::write_row(row);
  }
  return out;
}

namespace {

std::string fmt2(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

}  // namespace

std::string metrics_human_table(const MetricsReport& report) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-10s %9s %9s %9s %9s\n", "class",
                "precision", "recall", "f1", "support");
  out += buf;
  for (const auto& [label, m] : report.per_class) {
    std::snprintf(buf, sizeof(buf), "%-10s %9s %9s %9s %9zu\n", label.c_str(),
                  fmt2(m.precision).c_str(), fmt2(m.recall).c_str(),
                  fmt2(m.f1).c_str(), report.support.at(label));
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-10s %9.2f   (n=%zu)\n", "accuracy",
                report.accuracy, report.total);
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-10s %9s\n", "kappa",
                fmt2(report.kappa_vs_gold).c_str());
  out += buf;
  return out;
}

}  // namespace negcorpus
