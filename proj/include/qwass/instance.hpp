#pragma once

// Instance files: one `key = <JSON value>` pair per line, '#' starts a
// comment line. Recognized keys:
//
//   rho, omega    Bloch vector [x, y, z] or a square matrix whose entries are
//                 reals or [re, im] pairs
//   observables   "pauli-triple", "sigma-z" or a list of matrices
//   cost          "symm", "z", "factorized", "general" or "custom"
//   cost_matrix   operator on H (x) H*, required for cost "custom"
//   p             exponent >= 1 (default 2)
//   mode          "joint", "linearized" or "nonlinear" (default joint)

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwass/closedform.hpp"
#include "qwass/errors.hpp"
#include "qwass/transport.hpp"

namespace qwass {

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }      ///< 1-based, 0 when not tied to a line
  std::size_t column() const { return column_; }  ///< 1-based, 0 when not tied to a column

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

enum class CostKind { symm, z, factorized, general, custom };
enum class ObservableKind { pauli_triple, sigma_z, custom };

std::string to_string(CostKind kind);
std::string to_string(ObservableKind kind);
CostKind parse_cost_kind(std::string_view name);
ObservableKind parse_observable_kind(std::string_view name);
TransportMode parse_mode(std::string_view name);

struct StateSpec {
  DensityMatrix state;
  std::optional<BlochVector> bloch;  ///< set when the file gave a Bloch vector
};

struct InstanceFile {
  std::optional<StateSpec> rho;
  std::optional<StateSpec> omega;
  ObservableKind observables = ObservableKind::pauli_triple;
  std::vector<HermitianMatrix> custom_observables;
  CostKind cost = CostKind::symm;
  std::optional<HermitianMatrix> cost_matrix;
  double p = 2.0;
  TransportMode mode = TransportMode::joint;
};

InstanceFile parse_instance(std::string_view text, const std::string& source = "<input>");
/// Throws ParseError (line 0) when the file cannot be read.
InstanceFile load_instance(const std::string& path);

ObservableSet observable_set(const InstanceFile& file);

/// Builds the transport problem. Symmetric and single-observable costs use
/// their closed operators for joint and nonlinear modes; the linearized mode
/// splits them into per-observable factors |x - y|^p. Throws InvalidArgument
/// on inconsistent combinations.
TransportInstance make_instance(const InstanceFile& file);

/// Bloch vector of a qubit state, tr(rho sigma_k).
BlochVector bloch_of(const DensityMatrix& rho);

struct ClosedFormValue {
  std::string formula;
  double value = 0.0;
};

/// Closed-form D^p for qubit instances the formulas cover, if any.
std::optional<ClosedFormValue> closed_form_distance(const InstanceFile& file);
/// Closed-form d^2 for the same families, with p = 2.
std::optional<ClosedFormValue> closed_form_divergence(const InstanceFile& file);

}  // namespace qwass
