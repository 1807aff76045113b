#include "negcorpus/agreement.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "negcorpus/csv.hpp"

namespace negcorpus {

namespace {

void check_grid(const AnnotationMatrix& m) {
  if (m.labels.empty() || m.item_ids.size() != m.labels.size())
    throw EmptyMatrix("annotation matrix has no items");
  if (m.annotator_ids.size() < 2)
    throw EmptyMatrix("annotation matrix needs at least 2 annotators");
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    if (m.labels[i].size() != m.annotator_ids.size())
      throw RaggedMatrix("item '" + m.item_ids[i] + "' has " +
                         std::to_string(m.labels[i].size()) + " labels, expected " +
                         std::to_string(m.annotator_ids.size()));
  }
}

}  // namespace

std::optional<double> fleiss_kappa(const AnnotationMatrix& m) {
  check_grid(m);
  const double n_items = static_cast<double>(m.labels.size());
  const double n_raters = static_cast<double>(m.annotator_ids.size());

  std::set<std::string> categories;
  for (const auto& row : m.labels)
    for (const auto& label : row) categories.insert(label);
  if (categories.size() < 2) return std::nullopt;  // P̄e = 1 exactly

  std::map<std::string, double> overall;  // category proportions p_k
  double p_bar = 0.0;
  for (const auto& row : m.labels) {
    std::map<std::string, int> counts;
    for (const auto& label : row) {
      ++counts[label];
      overall[label] += 1.0;
    }
    double sum_sq = 0.0;
    for (const auto& [label, c] : counts) sum_sq += static_cast<double>(c) * c;
    p_bar += (sum_sq - n_raters) / (n_raters * (n_raters - 1.0));
  }
  p_bar /= n_items;

  double p_e = 0.0;
  for (auto& [label, total] : overall) {
    double p = total / (n_items * n_raters);
    p_e += p * p;
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

std::optional<double> cohen_kappa(std::span<const std::string> a,
                                  std::span<const std::string> b) {
  if (a.size() != b.size())
    throw LengthMismatch("label sequences differ in length: " +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  if (a.empty()) throw EmptyMatrix("label sequences are empty");

  const double n = static_cast<double>(a.size());
  std::map<std::string, double> pa, pb;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  // p_e = 1 exactly iff both sequences are constant on the same category.
  if (pa.size() == 1 && pb.size() == 1 && pa.begin()->first == pb.begin()->first)
    return std::nullopt;

  double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [label, count_a] : pa) {
    auto it = pb.find(label);
    if (it != pb.end()) p_e += (count_a / n) * (it->second / n);
  }
  return (p_o - p_e) / (1.0 - p_e);
}

UnifyResult majority_unify(const AnnotationMatrix& m) {
  check_grid(m);
  UnifyResult out;
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    std::map<std::string, int> counts;
    for (const auto& label : m.labels[i]) ++counts[label];
    int best = 0;
    for (const auto& [label, c] : counts) best = std::max(best, c);
    std::vector<std::string> winners;
    for (const auto& [label, c] : counts)
      if (c == best) winners.push_back(label);
    if (winners.size() == 1) {
      out.unified[m.item_ids[i]] = winners.front();
    } else {
      out.unified[m.item_ids[i]] = std::nullopt;
      ++out.tie_count;
    }
  }
  return out;
}

AgreementReport compute_agreement(const AnnotationMatrix& m) {
  check_grid(m);
  AgreementReport report;
  report.fleiss = fleiss_kappa(m);

  const std::size_t k = m.annotator_ids.size();
  std::vector<std::vector<std::string>> columns(k);
  for (const auto& row : m.labels)
    for (std::size_t j = 0; j < k; ++j) columns[j].push_back(row[j]);

  report.pairwise_cohen.assign(k, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      auto value = cohen_kappa(columns[i], columns[j]);
      report.pairwise_cohen[i][j] = value;
      report.pairwise_cohen[j][i] = value;
    }
  }
  report.unified = majority_unify(m);
  return report;
}

AnnotationMatrix annotation_matrix_from_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw EmptyMatrix("annotation CSV is empty");
  const auto& header = rows.front();
  if (header.size() < 3)
    throw EmptyMatrix("annotation CSV needs an item column and >= 2 annotators");

  AnnotationMatrix m;
  m.annotator_ids.assign(header.begin() + 1, header.end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size())
      throw RaggedMatrix("row " + std::to_string(r + 1) + " has " +
                         std::to_string(rows[r].size()) + " fields, expected " +
                         std::to_string(header.size()));
    m.item_ids.push_back(rows[r][0]);
    m.labels.emplace_back(rows[r].begin() + 1, rows[r].end());
  }
  if (m.item_ids.empty()) throw EmptyMatrix("annotation CSV has no item rows");
  return m;
}

std::string agreement_report_to_json(const AgreementReport& report,
                                     const AnnotationMatrix& matrix) {
  nlohmann::ordered_json j;
  if (report.fleiss)
    j["fleiss_kappa"] = *report.fleiss;
  else
    j["fleiss_kappa"] = nullptr;
  j["annotators"] = matrix.annotator_ids;

  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (const auto& row : report.pairwise_cohen) {
    nlohmann::ordered_json out_row = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (cell)
        out_row.push_back(*cell);
      else
        out_row.push_back(nullptr);
    }
    grid.push_back(out_row);
  }
  j["pairwise_cohen"] = grid;
  j["tie_count"] = report.unified.tie_count;

  nlohmann::ordered_json unified;
  for (const auto& [item, label] : report.unified.unified) {
    if (label)
      unified[item] = *label;
    else
      unified[item] = nullptr;
  }
  j["unified_labels"] = unified;
  return j.dump(2) + "\n";
}

}  // namespace negcorpus
