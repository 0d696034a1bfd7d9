// JSON files for instances and proofs, and CSV tables.
//
// Every file is an object {"format_version": 1, "instance": {...}} or
// {"format_version": 1, "proof": {...}}. Rationals are written as "p/q"
// strings ("p" when q = 1) and never as JSON numbers. Writing then reading a
// document gives back an equal object, and writing a parsed file reproduces
// its canonical text (two-space indentation, fixed key order).

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bcproof/proof_tree.hpp"
#include "bcproof/verify.hpp"

namespace bcproof {

inline constexpr int kFormatVersion = 1;

/// Malformed or schema-violating input. `where` is a JSON pointer to the
/// offending field, or "line L, column C" for syntax errors.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string where, const std::string& message);
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

enum class DocumentKind { Instance, Proof };

nlohmann::ordered_json to_json(const LinearConstraint& c);
nlohmann::ordered_json to_json(const Disjunction& d);
nlohmann::ordered_json to_json(const CuttingPlane& cut);
nlohmann::ordered_json to_json(const Instance& instance);
nlohmann::ordered_json to_json(const ProofTree& tree);
nlohmann::ordered_json to_json(const VerifyReport& report);

/// Whole documents, including the format_version wrapper.
std::string write_instance(const Instance& instance);
std::string write_proof(const ProofTree& tree);

/// Parses a document; throws SchemaError with the field location.
DocumentKind document_kind(std::string_view text);
Instance read_instance(std::string_view text);
ProofTree read_proof(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// A CSV table with a header row. Cells containing commas, quotes or line
/// breaks are quoted.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string to_csv() const;
};

}  // namespace bcproof
