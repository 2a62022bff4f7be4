#include "qwass/instance.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace qwass {

namespace {

using nlohmann::json;

constexpr double kPlaneTolerance = 1e-12;

std::string position(const std::string& source, std::size_t line, std::size_t column) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line);
  if (column > 0) out += ":" + std::to_string(column);
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

Complex parse_entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InvalidArgument("matrix entries must be numbers or [re, im] pairs");
}

ComplexMatrix parse_matrix(const json& v) {
  if (!v.is_array() || v.empty()) throw InvalidArgument("expected a non-empty list of matrix rows");
  const auto n = static_cast<Index>(v.size());
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw InvalidArgument("matrix must be square with " + std::to_string(n) + " entries per row");
    }
    for (Index j = 0; j < n; ++j) m(i, j) = parse_entry(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

bool is_bloch(const json& v) {
  return v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() && v[2].is_number();
}

StateSpec parse_state(const json& v) {
  if (is_bloch(v)) {
    const BlochVector r{{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()}};
    return {state_from_bloch(r), r};
  }
  return {DensityMatrix(HermitianMatrix(parse_matrix(v))), std::nullopt};
}

std::string expect_string(const json& v) {
  if (!v.is_string()) throw InvalidArgument("expected a string");
  return v.get<std::string>();
}

bool in_xy_plane(const BlochVector& r) { return std::abs(r.r[2]) <= kPlaneTolerance; }

bool on_z_axis(const BlochVector& r) {
  return std::abs(r.r[0]) <= kPlaneTolerance && std::abs(r.r[1]) <= kPlaneTolerance;
}

bool collinear(const BlochVector& a, const BlochVector& b) {
  const auto& u = a.r;
  const auto& v = b.r;
  const double cx = u[1] * v[2] - u[2] * v[1];
  const double cy = u[2] * v[0] - u[0] * v[2];
  const double cz = u[0] * v[1] - u[1] * v[0];
  return std::sqrt(cx * cx + cy * cy + cz * cz) <= 1e-10;
}

double radius_xy(const BlochVector& r) { return std::hypot(r.r[0], r.r[1]); }

/// Qubit Bloch vectors of both states when the instance is a K = 1
/// qubit problem under one of the closed costs.
std::optional<std::pair<BlochVector, BlochVector>> qubit_pair(const InstanceFile& file) {
  if (!file.rho || !file.omega) return std::nullopt;
  if (file.rho->state.dim() != 2) return std::nullopt;
  if (file.cost != CostKind::symm && file.cost != CostKind::z) return std::nullopt;
  if (file.cost == CostKind::symm && file.mode == TransportMode::linearized) return std::nullopt;
  return std::make_pair(bloch_of(file.rho->state), bloch_of(file.omega->state));
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
    : Error(position(source, line, column) + ": " + what),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::symm: return "symm";
    case CostKind::z: return "z";
    case CostKind::factorized: return "factorized";
    case CostKind::general: return "general";
    case CostKind::custom: return "custom";
  }
  return "unknown";
}

std::string to_string(ObservableKind kind) {
  switch (kind) {
    case ObservableKind::pauli_triple: return "pauli-triple";
    case ObservableKind::sigma_z: return "sigma-z";
    case ObservableKind::custom: return "custom";
  }
  return "unknown";
}

CostKind parse_cost_kind(std::string_view name) {
  if (name == "symm") return CostKind::symm;
  if (name == "z") return CostKind::z;
  if (name == "factorized") return CostKind::factorized;
  if (name == "general") return CostKind::general;
  if (name == "custom") return CostKind::custom;
  throw InvalidArgument("unknown cost '" + std::string(name) + "'");
}

ObservableKind parse_observable_kind(std::string_view name) {
  if (name == "pauli-triple") return ObservableKind::pauli_triple;
  if (name == "sigma-z") return ObservableKind::sigma_z;
  throw InvalidArgument("unknown observable set '" + std::string(name) + "'");
}

TransportMode parse_mode(std::string_view name) {
  if (name == "joint") return TransportMode::joint;
  if (name == "linearized") return TransportMode::linearized;
  if (name == "nonlinear") return TransportMode::nonlinear;
  throw InvalidArgument("unknown mode '" + std::string(name) + "'");
}

InstanceFile parse_instance(std::string_view text, const std::string& source) {
  InstanceFile file;
  std::map<std::string, std::size_t> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    const std::string content = trim(line);
    if (content.empty() || content[0] == '#') continue;
    const std::size_t eq = line.find('=');
    const std::size_t key_col = line.find_first_not_of(" \t") + 1;
    if (eq == std::string_view::npos) throw ParseError(source, line_no, key_col, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source, line_no, key_col, "missing key before '='");
    const std::size_t rest = line.find_first_not_of(" \t", eq + 1);
    if (rest == std::string_view::npos) throw ParseError(source, line_no, eq + 2, "missing value after '='");
    const std::size_t value_col = rest + 1;
    if (auto it = seen.find(key); it != seen.end()) {
      throw ParseError(source, line_no, key_col,
                       "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
    }
    seen[key] = line_no;

    json value;
    try {
      value = json::parse(line.substr(rest));
    } catch (const json::parse_error& e) {
      const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
      std::string what = e.what();
      if (const auto cut = what.find("syntax error"); cut != std::string::npos) what = what.substr(cut);
      throw ParseError(source, line_no, value_col + offset, what);
    }

    try {
      if (key == "rho") {
        file.rho = parse_state(value);
      } else if (key == "omega") {
        file.omega = parse_state(value);
      } else if (key == "observables") {
        if (value.is_string()) {
          file.observables = parse_observable_kind(value.get<std::string>());
        } else {
          if (!value.is_array() || value.empty()) throw InvalidArgument("expected a name or a list of matrices");
          file.observables = ObservableKind::custom;
          for (const auto& m : value) file.custom_observables.emplace_back(parse_matrix(m));
        }
      } else if (key == "cost") {
        file.cost = parse_cost_kind(expect_string(value));
      } else if (key == "cost_matrix") {
        file.cost_matrix = HermitianMatrix(parse_matrix(value));
      } else if (key == "p") {
        if (!value.is_number()) throw InvalidArgument("p must be a number");
        file.p = value.get<double>();
        if (!(file.p >= 1.0) || !std::isfinite(file.p)) throw InvalidArgument("p must be a finite real >= 1");
      } else if (key == "mode") {
        file.mode = parse_mode(expect_string(value));
      } else {
        throw ParseError(source, line_no, key_col, "unknown key '" + key + "'");
      }
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, value_col, e.what());
    }
  }

  if (!file.rho) throw ParseError(source, 0, 0, "missing required key 'rho'");
  if (!file.omega) throw ParseError(source, 0, 0, "missing required key 'omega'");
  if (file.rho->state.dim() != file.omega->state.dim()) {
    throw ParseError(source, seen["omega"], 0, "rho and omega have different dimensions");
  }
  if (file.cost == CostKind::custom && !file.cost_matrix) {
    throw ParseError(source, seen["cost"], 0, "cost 'custom' needs a cost_matrix");
  }
  return file;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), path);
}

ObservableSet observable_set(const InstanceFile& file) {
  switch (file.observables) {
    case ObservableKind::pauli_triple: return ObservableSet::pauli_triple();
    case ObservableKind::sigma_z: return ObservableSet::sigma_z();
    case ObservableKind::custom: return ObservableSet(file.custom_observables);
  }
  throw InvalidArgument("unknown observable set");
}

TransportInstance make_instance(const InstanceFile& file) {
  if (!file.rho || !file.omega) throw InvalidArgument("instance needs both rho and omega");
  const DensityMatrix& rho = file.rho->state;
  const DensityMatrix& omega = file.omega->state;
  const double p = file.p;

  auto per_factor = [p](const ObservableSet& obs) { return std::vector<PairCost>(obs.size(), abs_diff_power(p)); };

  switch (file.cost) {
    case CostKind::symm: {
      if (rho.dim() != 2) throw InvalidArgument("cost 'symm' is defined for qubits");
      if (file.mode != TransportMode::linearized) {
        TransportInstance inst = TransportInstance::joint(rho, omega, cost_symm(p), p);
        inst.mode = file.mode;
        return inst;
      }
      const auto obs = ObservableSet::pauli_triple();
      return TransportInstance::linearized(rho, omega, obs, per_factor(obs), p);
    }
    case CostKind::z: {
      if (rho.dim() != 2) throw InvalidArgument("cost 'z' is defined for qubits");
      TransportInstance inst = TransportInstance::joint(rho, omega, cost_z(p), p);
      inst.mode = file.mode;
      return inst;
    }
    case CostKind::factorized: {
      const ObservableSet obs = observable_set(file);
      const auto per = per_factor(obs);
      if (file.mode == TransportMode::linearized) return TransportInstance::linearized(rho, omega, obs, per, p);
      return TransportInstance::nonlinear(rho, omega, obs, per, p);
    }
    case CostKind::general: {
      if (file.mode == TransportMode::nonlinear) {
        throw InvalidArgument("cost 'general' does not split into factors; use mode joint or linearized");
      }
      const ObservableSet obs = observable_set(file);
      return TransportInstance::linearized(rho, omega, obs, ClassicalCost::euclidean_power(obs.size(), p), p);
    }
    case CostKind::custom: {
      if (!file.cost_matrix) throw InvalidArgument("cost 'custom' needs a cost_matrix");
      if (file.mode != TransportMode::joint) throw InvalidArgument("cost 'custom' supports mode joint only");
      return TransportInstance::joint(rho, omega, *file.cost_matrix, p);
    }
  }
  throw InvalidArgument("unknown cost");
}

BlochVector bloch_of(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw InvalidArgument("Bloch vectors are defined for qubits");
  const ComplexMatrix& m = rho.matrix();
  return {{(pauli_x().matrix() * m).trace().real(), (pauli_y().matrix() * m).trace().real(),
           (pauli_z().matrix() * m).trace().real()}};
}

std::optional<ClosedFormValue> closed_form_distance(const InstanceFile& file) {
  const auto pair = qubit_pair(file);
  if (!pair) return std::nullopt;
  const auto& [r1, r2] = *pair;
  if (file.cost == CostKind::symm) {
    if (!collinear(r1, r2)) return std::nullopt;
    return ClosedFormValue{"symm-collinear", d_symm_general(r1, r2, file.p)};
  }
  if (in_xy_plane(r1) && in_xy_plane(r2)) {
    return ClosedFormValue{"z-xy", d_z_xy(std::min(1.0, radius_xy(r1)), std::min(1.0, radius_xy(r2)), file.p)};
  }
  if (on_z_axis(r1) && on_z_axis(r2)) {
    return ClosedFormValue{"z-commuting", d_z_commuting(r1.r[2], r2.r[2], file.p)};
  }
  return std::nullopt;
}

std::optional<ClosedFormValue> closed_form_divergence(const InstanceFile& file) {
  const auto pair = qubit_pair(file);
  if (!pair) return std::nullopt;
  const auto& [r1, r2] = *pair;
  if (file.cost == CostKind::symm) {
    if (!collinear(r1, r2)) return std::nullopt;
    return ClosedFormValue{"symm-collinear", divergence_symm_commuting(r1, r2)};
  }
  if (in_xy_plane(r1) && in_xy_plane(r2)) {
    return ClosedFormValue{"z-xy", divergence_z_xy(std::min(1.0, radius_xy(r1)), std::min(1.0, radius_xy(r2)))};
  }
  if (on_z_axis(r1) && on_z_axis(r2)) {
    return ClosedFormValue{"z-commuting", divergence_z_commuting(r1.r[2], r2.r[2])};
  }
  return std::nullopt;
}

}  // namespace qwass
