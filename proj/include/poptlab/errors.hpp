// errors.hpp — Exception types thrown by the poptlab library.
#pragma once

#include <stdexcept>
#include <string>

namespace poptlab {

// Invalid subsystem layout, index out of range, or operand shape mismatch.
struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Input matrix is farther from Hermitian than the construction tolerance.
struct NotHermitianError : std::invalid_argument {
  explicit NotHermitianError(const std::string& what) : std::invalid_argument(what) {}
};

// Operator has an eigenvalue below the admissible clamping tolerance.
struct NotPsdError : std::runtime_error {
  explicit NotPsdError(const std::string& what) : std::runtime_error(what) {}
};

// Matrix fails the unitarity residual check.
struct NotUnitaryError : std::invalid_argument {
  explicit NotUnitaryError(const std::string& what) : std::invalid_argument(what) {}
};

// Operator fails the product-test membership check.
struct NotPoptError : std::runtime_error {
  explicit NotPoptError(const std::string& what) : std::runtime_error(what) {}
};

// State argument must have unit trace.
struct NonUnitTraceError : std::invalid_argument {
  explicit NonUnitTraceError(const std::string& what) : std::invalid_argument(what) {}
};

// Effects do not form a valid measurement (completeness or spectrum violated).
struct MeasurementError : std::invalid_argument {
  explicit MeasurementError(const std::string& what) : std::invalid_argument(what) {}
};

// Catalog lookup has no entry (unknown label or set name).
struct LookupError : std::invalid_argument {
  explicit LookupError(const std::string& what) : std::invalid_argument(what) {}
};

// Pair lookup was asked to separate a state from itself.
struct SameStateError : std::invalid_argument {
  explicit SameStateError(const std::string& what) : std::invalid_argument(what) {}
};

// No row of the pair lookup table separates the requested states.
struct NoSeparatingRowError : std::runtime_error {
  explicit NoSeparatingRowError(const std::string& what) : std::runtime_error(what) {}
};

// Game specification or strategy is inconsistent (undefined pair, bad distribution).
struct GameError : std::invalid_argument {
  explicit GameError(const std::string& what) : std::invalid_argument(what) {}
};

// Positive-map realization cannot proceed (marginal obstruction, failed invariant).
struct RealizationError : std::runtime_error {
  explicit RealizationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed serialized payload (schema violation, non-Hermitian matrix data).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read, written, or atomically replaced.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace poptlab
