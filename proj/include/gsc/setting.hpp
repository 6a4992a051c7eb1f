#pragma once

// Experiment settings and parameterised designs.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsc/quantum.hpp"

namespace gsc {

/// Thrown when a parameter reference cannot be resolved or a design is
/// internally inconsistent.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A literal angle as written: either plain radians or a multiple of pi.
/// Keeping the written unit lets a design serialise back bit-exactly.
struct LiteralAngle {
  double value = 0.0;
  bool pi_units = false;

  static LiteralAngle radians(double v) { return {v, false}; }
  static LiteralAngle pi_multiple(double v) { return {v, true}; }
  double to_radians() const { return pi_units ? value * std::numbers::pi : value; }
  friend bool operator==(const LiteralAngle&, const LiteralAngle&) = default;
};

/// Parameter values indexed by parameter id (the i in theta<i>). Unset ids
/// hold NaN.
class AngleTable {
 public:
  AngleTable() = default;

  bool has(int id) const {
    return id >= 0 && id < static_cast<int>(values_.size()) && !std::isnan(values_[id]);
  }
  double at(int id) const {
    if (!has(id)) throw ConfigurationError("unresolved parameter reference @theta" + std::to_string(id));
    return values_[id];
  }
  void set(int id, double radians) {
    if (id < 0) throw ConfigurationError("negative parameter id");
    if (id >= static_cast<int>(values_.size())) values_.resize(id + 1, std::nan(""));
    values_[id] = radians;
  }
  int capacity() const { return static_cast<int>(values_.size()); }
  friend bool operator==(const AngleTable& a, const AngleTable& b);

 private:
  std::vector<double> values_;
};

struct GateToken {
  enum class Kind { Cnot, Rotation };

  Kind kind = Kind::Cnot;
  Axis axis = Axis::X;
  int qubit = 1;
  // Rotation angle: literal when `parameter` is empty, else parameter id.
  LiteralAngle literal{};
  std::optional<int> parameter;

  static GateToken make_cnot() { return {}; }
  static GateToken rotation(Axis axis, int qubit, LiteralAngle angle) {
    return {Kind::Rotation, axis, qubit, angle, std::nullopt};
  }
  static GateToken rotation(Axis axis, int qubit, int parameter_id) {
    return {Kind::Rotation, axis, qubit, {}, parameter_id};
  }

  bool is_cnot() const { return kind == Kind::Cnot; }
  double angle(const AngleTable& angles) const {
    return parameter ? angles.at(*parameter) : literal.to_radians();
  }
  Matrix4cd rotation_matrix(const AngleTable& angles) const {
    return rotation_gate<double>(axis, qubit, angle(angles));
  }
  friend bool operator==(const GateToken&, const GateToken&) = default;
};

/// One experiment: gates applied first-to-last to |00>, then a Pauli
/// measurement tau_3 or tau_12.
struct Setting {
  std::vector<GateToken> gates;
  PauliIndex measurement{3};

  Setting(std::vector<GateToken> g, PauliIndex m);

  int cnot_count() const;
  friend bool operator==(const Setting&, const Setting&) = default;
};

struct Parameter {
  int id = 0;
  // Free parameters are moved by the optimiser; fixed ones keep `value`.
  std::optional<LiteralAngle> value;
  bool fixed = false;
  friend bool operator==(const Parameter&, const Parameter&) = default;
};

/// Ordered settings plus the parameters they reference. Angles in bounds
/// [0, 2pi].
class Design {
 public:
  Design() = default;
  Design(std::vector<Setting> settings, std::vector<Parameter> parameters);

  const std::vector<Setting>& settings() const { return settings_; }
  const std::vector<Parameter>& parameters() const { return parameters_; }
  int size() const { return static_cast<int>(settings_.size()); }

  /// Positions (into parameters()) of the non-fixed parameters.
  const std::vector<int>& free_positions() const { return free_; }
  int free_count() const { return static_cast<int>(free_.size()); }
  std::vector<int> free_ids() const;
  /// Position of parameter `id` in parameters(); throws when undeclared.
  int position_of(int id) const;

  /// Table holding every declared value (free parameters with a declared
  /// starting value included).
  AngleTable declared_angles() const;
  /// declared_angles() with the free parameters overwritten by `free_values`
  /// (radians, in free_positions() order).
  AngleTable with_free(const Eigen::VectorXd& free_values) const;
  /// Free-parameter values read back from a table.
  Eigen::VectorXd free_values(const AngleTable& angles) const;

  /// Copy where every parameter whose id is listed keeps its current value
  /// fixed and all others become free. Used for reduced sub-problems.
  Design with_fixed(const AngleTable& values, const std::vector<int>& fixed_ids) const;

  /// First `count` settings only, dropping parameters no longer referenced.
  Design truncated(int count) const;

  friend bool operator==(const Design&, const Design&) = default;

 private:
  std::vector<Setting> settings_;
  std::vector<Parameter> parameters_;
  std::vector<int> free_;
};

}  // namespace gsc
