#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negcorpus/errors.hpp"

// Inter-annotator agreement: Fleiss' kappa over the full grid, pairwise
// Cohen's kappa, and majority-vote label unification. Kappas that are
// undefined (expected agreement 1) come back as nullopt, never NaN or 0.
namespace negcorpus {

struct AnnotationMatrix {
  std::vector<std::string> item_ids;
  std::vector<std::string> annotator_ids;
  // labels[item][annotator]; complete grid.
  std::vector<std::vector<std::string>> labels;
};

class RaggedMatrix : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// κ = (P̄ − P̄e) / (1 − P̄e) with per-item agreement
// P_i = (Σ_k n_ik² − n) / (n(n−1)). Undefined (nullopt) when only one
// category appears anywhere in the grid.
std::optional<double> fleiss_kappa(const AnnotationMatrix& matrix);

// κ = (p_o − p_e) / (1 − p_e). Undefined when both sequences are constant
// on the same single category.
std::optional<double> cohen_kappa(std::span<const std::string> a,
                                  std::span<const std::string> b);

struct UnifyResult {
  // Modal label per item; nullopt marks an unresolved tie.
  std::map<std::string, std::optional<std::string>> unified;
  int tie_count = 0;
};

UnifyResult majority_unify(const AnnotationMatrix& matrix);

struct AgreementReport {
  std::optional<double> fleiss;
  // Full symmetric matrix in annotator order, diagonal included.
  std::vector<std::vector<std::optional<double>>> pairwise_cohen;
  UnifyResult unified;
};

AgreementReport compute_agreement(const AnnotationMatrix& matrix);

// CSV: header `item_id,<annotator>,...`; one row per item. Ragged rows are
// a RaggedMatrix error.
AnnotationMatrix annotation_matrix_from_csv(std::string_view csv_text);

// Machine report: fleiss_kappa, annotators, pairwise matrix (heatmap-ready
// values/null grid), tie_count, unified labels (null = unresolved).
std::string agreement_report_to_json(const AgreementReport& report,
                                     const AnnotationMatrix& matrix);

}  // namespace negcorpus
