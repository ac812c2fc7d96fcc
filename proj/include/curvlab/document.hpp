#pragma once

// JSON input documents and analysis reports.
//
// Input schema (format_version 1):
//
//   {
//     "format_version": 1,
//     "dimension": n,
//     "seed": 0,                                  optional, default 0
//     "object": { exactly one of
//       "curvature_tensor": [n^4 numbers],        row-major over (i,j,k,l), 1-based in prose
//       "constant_curvature": {"kappa": k},
//       "kulkarni_nomizu": {"S": [[..]], "T": [[..]]},
//       "hypersurface": {"lambdas": [..n..], "K": k},
//       "operator_matrix": [[..N..], ..N rows..]
//     },
//     "form": {"degree": l, "components": [n^l numbers]}    or "increasing": [C(n,l)]
//     "analysis": {
//       "m": [..], "p": [..], "Q": 2, "c": 1, "kappa": k, "kato": "generic",
//       "ell": l, "weyl": "generic" | "einstein", "closed": true,
//       "lambda1": v, "umbilic": {"h_norm": h, "ambient_mu": [..]},
//       "hypotheses": {"complete_noncompact": true, ...}
//     }
//   }

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "curvlab/curvature_algebra.hpp"
#include "curvlab/geometry_decisions.hpp"

namespace curvlab {

inline constexpr int kFormatVersion = 1;

enum class ObjectKind {
  curvature_tensor,
  constant_curvature,
  kulkarni_nomizu,
  hypersurface,
  operator_matrix,
};

std::string_view to_string(ObjectKind k) noexcept;

struct AnalysisRequest {
  std::vector<int> m;
  std::vector<int> p;
  double Q = 2.0;
  double c = 1.0;
  std::optional<double> kappa;
  std::string kato = "generic";
  std::optional<int> ell;
  std::optional<WeylVariant> weyl;
  bool closed = false;
  std::optional<double> lambda1;
  std::optional<double> umbilic_h_norm;
  std::vector<double> umbilic_ambient_mu;
  AnalyticHypotheses hypotheses;
};

struct InputDocument {
  int dimension = 0;
  std::uint64_t seed = 0;
  ObjectKind kind = ObjectKind::curvature_tensor;
  /// Absent only for an operator matrix that violates the Bianchi identity.
  std::optional<CurvatureTensor> curvature;
  std::optional<CurvatureOperator> op;
  std::optional<HypersurfaceSpec> hypersurface;
  std::optional<AlternatingForm> form;
  AnalysisRequest analysis;
  /// The parsed JSON, echoed verbatim into the report.
  nlohmann::json source;
};

/// Parse errors carry line:column for syntax problems and the JSON path of
/// the offending field otherwise. Invariant failures are validation errors.
InputDocument parse_document(std::string_view text);
InputDocument document_from_json(const nlohmann::json& doc);
InputDocument load_document(const std::string& path);

/// FNV-1a 64 of the compact serialization, as 16 hex digits.
std::string content_hash(const nlohmann::json& doc);

nlohmann::json verdict_to_json(const TheoremVerdict& v);

nlohmann::json analyze(const InputDocument& doc);

/// Stable text form: two-space indented JSON with a trailing newline.
std::string render(const nlohmann::json& report);

}  // namespace curvlab
