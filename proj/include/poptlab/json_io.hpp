// json_io.hpp — JSON schemas, content digests, and atomic report writing.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "poptlab/cones.hpp"
#include "poptlab/distinguish.hpp"
#include "poptlab/game.hpp"
#include "poptlab/operators.hpp"
#include "poptlab/realization.hpp"

namespace poptlab {

using Json = nlohmann::json;

// Operators travel as {"dims": [...], "re": [[...]], "im": [[...]]} with
// row-major matrices and both parts mandatory; readers throw ParseError on
// schema violations and on payloads farther from Hermitian than the
// construction tolerance.
Json operator_to_json(const HermitianOperator& w);
HermitianOperator operator_from_json(const Json& j);

// General complex matrices (branch operators are not Hermitian) travel as
// {"rows": r, "cols": c, "re": [[...]], "im": [[...]]}.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"terms": [{"weight": r, "factors": [operator, ...]}, ...]}.
Json decomposition_to_json(const SeparableDecomposition& d);
SeparableDecomposition decomposition_from_json(const Json& j);

Json popt_report_to_json(const PoptReport& r);

std::string state_class_name(StateClass c);

Json certificate_to_json(const PairwiseCertificate& c);

Json game_result_to_json(const GameResult& r);

// Choi operators travel as {"in": [...], "out": [...], "op": operator}; the
// realization payload carries every pipeline intermediate by field name.
Json realization_to_json(const PoptRealization& r);
PoptRealization realization_from_json(const Json& j);

// Envelope around every command's payload.
struct RunReport {
  std::string command;
  std::string inputsDigest;
  bool pass = false;
  Json details;
  long long wallTimeMs = 0;
};

Json run_report_to_json(const RunReport& r);

// 64-bit FNV-1a of the raw bytes, formatted "fnv1a:0123456789abcdef".
std::string fnv1a_hex(std::string_view bytes);

// Parses text into JSON, wrapping syntax errors into ParseError.
Json parse_json(const std::string& text);

std::string read_file(const std::filesystem::path& path);

// Writes via a sibling temp file and rename, so readers never observe a
// partial file.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace poptlab
