// JSON and CSV formats for the CLI: bases as [re, im] number pairs, reports
// split into a manifest (command, parameters, version, wall time, digest)
// and a deterministic body, groupoids as partition blocks plus Cayley
// tables. All files carry a format_version field.
#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpmw/basis_search.hpp"
#include "cpmw/complex_matrix.hpp"
#include "cpmw/conditions.hpp"
#include "cpmw/errors.hpp"
#include "cpmw/groupoid.hpp"
#include "cpmw/matrix_basis.hpp"
#include "cpmw/metrology.hpp"
#include "cpmw/rel_enumerate.hpp"

namespace cpmw {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;

inline Json complex_to_json(const Complex& v) {
  return Json::array({v.real(), v.imag()});
}

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("expected a [re, im] number pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw ValidationError("expected a nonempty array of matrix rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ValidationError("matrix rows must be nonempty arrays");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ValidationError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

inline Json basis_to_json(const std::vector<ComplexMatrix>& elements,
                          std::size_t n) {
  Json out;
  out["format_version"] = kFormatVersion;
  out["n"] = n;
  Json matrices = Json::array();
  for (const ComplexMatrix& m : elements) matrices.push_back(matrix_to_json(m));
  out["matrices"] = std::move(matrices);
  return out;
}

inline Json basis_to_json(const MatrixBasis& basis) {
  return basis_to_json(basis.elements(), basis.n());
}

// Orthonormality is enforced on load unless validate is false.
inline MatrixBasis basis_from_json(const Json& j, double tol = 1e-9,
                                   bool validate = true) {
  if (!j.is_object() || !j.contains("n") || !j.contains("matrices"))
    throw ValidationError("basis file needs fields 'n' and 'matrices'");
  if (!j["n"].is_number_unsigned() && !j["n"].is_number_integer())
    throw ValidationError("basis field 'n' must be an integer");
  const std::size_t n = j["n"].get<std::size_t>();
  if (!j["matrices"].is_array())
    throw ValidationError("basis field 'matrices' must be an array");
  std::vector<ComplexMatrix> elements;
  elements.reserve(j["matrices"].size());
  for (const Json& m : j["matrices"]) elements.push_back(matrix_from_json(m));
  return validate ? MatrixBasis::create(n, std::move(elements), tol)
                  : MatrixBasis::create_unchecked(n, std::move(elements));
}

inline Json condition_report_to_json(const ConditionReport& report) {
  Json conditions;
  for (const auto& [name, check] : report.named_checks()) {
    Json entry;
    entry["ok"] = check->ok;
    if (!check->witness.empty()) entry["witness"] = check->witness;
    conditions[name] = std::move(entry);
  }
  Json out;
  out["conditions"] = std::move(conditions);
  out["is_cp"] = report.is_cp;
  out["is_canonical"] = report.is_canonical;
  out["min_choi_eigenvalue"] = report.min_choi_eigenvalue;
  return out;
}

inline Json search_report_body_to_json(const SearchReport& report,
                                       std::size_t n) {
  Json out;
  out["n"] = n;
  out["trials_run"] = report.trials_run;
  out["cp_count"] = report.cp_count;
  out["canonical_count"] = report.canonical_count;
  out["near_miss_count"] = report.near_miss_count;
  Json list = Json::array();
  for (const SearchCounterexample& ce : report.counterexamples) {
    Json entry;
    entry["trial"] = ce.trial;
    entry["min_choi_eigenvalue"] = ce.min_choi_eigenvalue;
    entry["basis"] = basis_to_json(ce.basis_elements, n);
    list.push_back(std::move(entry));
  }
  out["counterexamples"] = std::move(list);
  return out;
}

inline Json groupoid_to_json(const AbelianGroupoid& g) {
  Json out;
  out["carrier_size"] = g.carrier_size();
  out["blocks"] = g.blocks();
  out["tables"] = g.tables();
  return out;
}

inline Json survivor_to_json(const SurvivorRecord& record) {
  Json out = groupoid_to_json(record.groupoid);
  out["classical"] = record.classical;
  out["cp"] = record.cp;
  out["element_level_eq3"] = record.element_eq3;
  out["element_level_eq4"] = record.element_eq4;
  return out;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << v;
  return os.str();
}

struct RunManifest {
  std::string command;
  Json parameters;
  std::uint64_t master_seed = 0;
  double wall_time_seconds = 0.0;
  std::string result_digest;  // fnv1a over the serialized report body
};

inline Json manifest_to_json(const RunManifest& m) {
  Json out;
  out["command"] = m.command;
  out["parameters"] = m.parameters;
  out["master_seed"] = m.master_seed;
  out["tool_version"] = kToolVersion;
  out["wall_time_seconds"] = m.wall_time_seconds;
  out["result_digest"] = m.result_digest;
  return out;
}

// wraps a deterministic report body with its manifest; digest is filled here
inline Json wrap_report(RunManifest manifest, const Json& body) {
  manifest.result_digest = "fnv1a:" + hex64(fnv1a64(body.dump()));
  Json out;
  out["format_version"] = kFormatVersion;
  out["manifest"] = manifest_to_json(manifest);
  out["report"] = body;
  return out;
}

// CSV with '.' decimals and LF line endings; fisher empty where null.
inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "phi,p_parallel,p_sequential,fisher\n";
  os << std::setprecision(17);
  for (const SweepRow& row : rows) {
    os << row.phi << ',' << row.p_parallel << ',' << row.p_sequential << ',';
    if (row.fisher) os << *row.fisher;
    os << '\n';
  }
  return os.str();
}

}  // namespace cpmw
