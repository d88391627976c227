#include "poptlab/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <system_error>
#include <utility>

#include "poptlab/errors.hpp"

namespace poptlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field: ") + key);
  }
  return j.at(key);
}

Json part_rows(const Matrix& m, bool imaginary) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(imaginary ? m(r, c).imag() : m(r, c).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_to_real(const Json& rows, int nRows, int nCols,
                             const char* name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != nRows) {
    throw ParseError(std::string(name) + " must hold one row per matrix row");
  }
  Eigen::MatrixXd out(nRows, nCols);
  for (int r = 0; r < nRows; ++r) {
    const Json& row = rows.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != nCols) {
      throw ParseError(std::string(name) + " rows must match the matrix width");
    }
    for (int c = 0; c < nCols; ++c) {
      if (!row.at(c).is_number()) {
        throw ParseError(std::string(name) + " entries must be numbers");
      }
      out(r, c) = row.at(c).get<double>();
    }
  }
  return out;
}

Matrix complex_from_parts(const Json& j, int nRows, int nCols) {
  const Eigen::MatrixXd re = rows_to_real(field(j, "re"), nRows, nCols, "re");
  const Eigen::MatrixXd im = rows_to_real(field(j, "im"), nRows, nCols, "im");
  return re.cast<Complex>() + Complex{0.0, 1.0} * im.cast<Complex>();
}

Json vector_to_json(const Vector& v) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Json real_matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json choi_to_json(const ChoiOperator& c) {
  return Json{{"in", c.in().dims()},
              {"out", c.out().dims()},
              {"op", operator_to_json(c.op())}};
}

ChoiOperator choi_from_json(const Json& j) {
  const std::vector<int> in = field(j, "in").get<std::vector<int>>();
  const std::vector<int> out = field(j, "out").get<std::vector<int>>();
  return ChoiOperator{SystemShape(in), SystemShape(out),
                      operator_from_json(field(j, "op"))};
}

}  // namespace

Json operator_to_json(const HermitianOperator& w) {
  return Json{{"dims", w.shape().dims()},
              {"re", part_rows(w.matrix(), false)},
              {"im", part_rows(w.matrix(), true)}};
}

HermitianOperator operator_from_json(const Json& j) try {
  const Json& dims = field(j, "dims");
  if (!dims.is_array() || dims.empty()) {
    throw ParseError("dims must be a nonempty array");
  }
  int total = 1;
  for (const Json& d : dims) {
    if (!d.is_number_integer() || d.get<int>() < 1) {
      throw ParseError("dims entries must be positive integers");
    }
    total *= d.get<int>();
  }
  const Matrix m = complex_from_parts(j, total, total);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw ParseError("operator payload is not Hermitian within tolerance");
  }
  return HermitianOperator{SystemShape(dims.get<std::vector<int>>()), m};
} catch (const Json::exception& e) {
  throw ParseError(std::string("operator payload: ") + e.what());
} catch (const ShapeError& e) {
  throw ParseError(std::string("operator payload: ") + e.what());
} catch (const NotHermitianError& e) {
  throw ParseError(std::string("operator payload: ") + e.what());
}

Json matrix_to_json(const Matrix& m) {
  return Json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"re", part_rows(m, false)},
              {"im", part_rows(m, true)}};
}

Matrix matrix_from_json(const Json& j) try {
  const int rows = field(j, "rows").get<int>();
  const int cols = field(j, "cols").get<int>();
  if (rows < 1 || cols < 1) throw ParseError("matrix sizes must be positive");
  return complex_from_parts(j, rows, cols);
} catch (const Json::exception& e) {
  throw ParseError(std::string("matrix payload: ") + e.what());
}

Json decomposition_to_json(const SeparableDecomposition& d) {
  Json terms = Json::array();
  for (const SeparableTerm& term : d.terms) {
    Json factors = Json::array();
    for (const HermitianOperator& f : term.factors) {
      factors.push_back(operator_to_json(f));
    }
    terms.push_back(Json{{"weight", term.weight}, {"factors", std::move(factors)}});
  }
  return Json{{"terms", std::move(terms)}};
}

SeparableDecomposition decomposition_from_json(const Json& j) try {
  SeparableDecomposition d;
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("terms must be an array");
  for (const Json& term : terms) {
    SeparableTerm t;
    t.weight = field(term, "weight").get<double>();
    const Json& factors = field(term, "factors");
    if (!factors.is_array() || factors.empty()) {
      throw ParseError("each term needs a nonempty factor list");
    }
    for (const Json& f : factors) t.factors.push_back(operator_from_json(f));
    d.terms.push_back(std::move(t));
  }
  return d;
} catch (const Json::exception& e) {
  throw ParseError(std::string("decomposition payload: ") + e.what());
}

Json popt_report_to_json(const PoptReport& r) {
  Json argmin = Json::array();
  for (const Vector& v : r.argmin) argmin.push_back(vector_to_json(v));
  return Json{{"minValue", r.minValue},
              {"argmin", std::move(argmin)},
              {"isMember", r.isMember},
              {"boundary", r.boundary},
              {"restartValues", r.restartValues}};
}

std::string state_class_name(StateClass c) {
  switch (c) {
    case StateClass::Quantum: return "quantum";
    case StateClass::WitnessState: return "witness";
    case StateClass::NotAState: return "not-a-state";
  }
  throw LookupError("unknown state class");
}

Json certificate_to_json(const PairwiseCertificate& c) {
  Json pairs = Json::array();
  for (const PairReport& pr : c.perPairReports) {
    pairs.push_back(Json{{"i", pr.i},
                         {"j", pr.j},
                         {"measurementId", pr.measurementId},
                         {"pass", pr.report.pass},
                         {"maxDeviation", pr.report.maxDeviation},
                         {"outcomePermutation", pr.report.outcomePermutation},
                         {"probMatrix", real_matrix_to_json(pr.report.probMatrix)}});
  }
  return Json{{"labels", c.labels},
              {"complete", c.complete},
              {"pairs", std::move(pairs)}};
}

Json game_result_to_json(const GameResult& r) {
  Json j{{"exactWinProb", r.exactWinProb},
         {"rounds", r.rounds},
         {"seed", r.seed}};
  j["empiricalWinRate"] =
      r.empiricalWinRate.has_value() ? Json(*r.empiricalWinRate) : Json(nullptr);
  return j;
}

Json realization_to_json(const PoptRealization& r) {
  return Json{{"wPrime", operator_to_json(r.wPrime)},
              {"pB", operator_to_json(r.pB)},
              {"pBPerp", operator_to_json(r.pBPerp)},
              {"wPrimeB", operator_to_json(r.wPrimeB)},
              {"wDoublePrime", operator_to_json(r.wDoublePrime)},
              {"vB", matrix_to_json(r.vB)},
              {"vBPrime", matrix_to_json(r.vBPrime)},
              {"choiU", choi_to_json(r.choiU)},
              {"choiLambda", choi_to_json(r.choiLambda)},
              {"psiAR", operator_to_json(r.psiAR)}};
}

PoptRealization realization_from_json(const Json& j) try {
  return PoptRealization{operator_from_json(field(j, "wPrime")),
                         operator_from_json(field(j, "pB")),
                         operator_from_json(field(j, "pBPerp")),
                         operator_from_json(field(j, "wPrimeB")),
                         operator_from_json(field(j, "wDoublePrime")),
                         matrix_from_json(field(j, "vB")),
                         matrix_from_json(field(j, "vBPrime")),
                         choi_from_json(field(j, "choiU")),
                         choi_from_json(field(j, "choiLambda")),
                         operator_from_json(field(j, "psiAR"))};
} catch (const Json::exception& e) {
  throw ParseError(std::string("realization payload: ") + e.what());
} catch (const ShapeError& e) {
  throw ParseError(std::string("realization payload: ") + e.what());
}

Json run_report_to_json(const RunReport& r) {
  return Json{{"command", r.command},
              {"inputsDigest", r.inputsDigest},
              {"pass", r.pass},
              {"details", r.details},
              {"wallTimeMs", r.wallTimeMs}};
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x00000100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string("fnv1a:") + buf;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return contents;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + temp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw IoError("cannot replace " + path.string());
  }
}

}  // namespace poptlab
