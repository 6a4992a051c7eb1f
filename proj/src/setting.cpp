#include "gsc/setting.hpp"

#include <algorithm>
#include <set>

namespace gsc {

bool operator==(const AngleTable& a, const AngleTable& b) {
  const int n = std::max(a.capacity(), b.capacity());
  for (int id = 0; id < n; ++id) {
    if (a.has(id) != b.has(id)) return false;
    if (a.has(id) && a.at(id) != b.at(id)) return false;
  }
  return true;
}

Setting::Setting(std::vector<GateToken> g, PauliIndex m) : gates(std::move(g)), measurement(m) {
  if (gates.empty()) throw ConfigurationError("setting has no gates");
  if (cnot_count() == 0) throw ConfigurationError("setting contains no CNOT");
  if (m.value() != 3 && m.value() != 12)
    throw ConfigurationError("measurement must be tau_3 or tau_12");
  for (const auto& t : gates) {
    if (t.is_cnot() || t.parameter) continue;
    const double a = t.literal.to_radians();
    if (!(a >= 0.0 && a <= 2.0 * std::numbers::pi))
      throw ConfigurationError("literal angle outside [0, 2pi]");
  }
}

int Setting::cnot_count() const {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(),
                                        [](const GateToken& t) { return t.is_cnot(); }));
}

Design::Design(std::vector<Setting> settings, std::vector<Parameter> parameters)
    : settings_(std::move(settings)), parameters_(std::move(parameters)) {
  std::set<int> declared;
  for (int pos = 0; pos < static_cast<int>(parameters_.size()); ++pos) {
    const Parameter& p = parameters_[pos];
    if (p.id < 0) throw ConfigurationError("negative parameter id");
    if (!declared.insert(p.id).second)
      throw ConfigurationError("parameter theta" + std::to_string(p.id) + " declared twice");
    if (p.fixed && !p.value)
      throw ConfigurationError("fixed parameter theta" + std::to_string(p.id) + " has no value");
    if (p.value) {
      const double a = p.value->to_radians();
      if (!(a >= 0.0 && a <= 2.0 * std::numbers::pi))
        throw ConfigurationError("value of theta" + std::to_string(p.id) + " outside [0, 2pi]");
    }
    if (!p.fixed) free_.push_back(pos);
  }
  for (const auto& s : settings_)
    for (const auto& t : s.gates)
      if (t.parameter && !declared.count(*t.parameter))
        throw ConfigurationError("unresolved parameter reference @theta" + std::to_string(*t.parameter));
}

std::vector<int> Design::free_ids() const {
  std::vector<int> ids;
  for (int pos : free_) ids.push_back(parameters_[pos].id);
  return ids;
}

int Design::position_of(int id) const {
  for (int pos = 0; pos < static_cast<int>(parameters_.size()); ++pos)
    if (parameters_[pos].id == id) return pos;
  throw ConfigurationError("undeclared parameter theta" + std::to_string(id));
}

AngleTable Design::declared_angles() const {
  AngleTable t;
  for (const auto& p : parameters_)
    if (p.value) t.set(p.id, p.value->to_radians());
  return t;
}

AngleTable Design::with_free(const Eigen::VectorXd& free_values) const {
  if (free_values.size() != free_count())
    throw ConfigurationError("expected " + std::to_string(free_count()) + " free angles, got " +
                             std::to_string(free_values.size()));
  AngleTable t = declared_angles();
  for (int i = 0; i < free_count(); ++i) t.set(parameters_[free_[i]].id, free_values[i]);
  return t;
}

Eigen::VectorXd Design::free_values(const AngleTable& angles) const {
  Eigen::VectorXd x(free_count());
  for (int i = 0; i < free_count(); ++i) x[i] = angles.at(parameters_[free_[i]].id);
  return x;
}

Design Design::with_fixed(const AngleTable& values, const std::vector<int>& fixed_ids) const {
  std::vector<Parameter> params = parameters_;
  for (auto& p : params) {
    const bool fix = std::find(fixed_ids.begin(), fixed_ids.end(), p.id) != fixed_ids.end();
    if (values.has(p.id)) p.value = LiteralAngle::radians(values.at(p.id));
    p.fixed = fix;
  }
  return Design(settings_, std::move(params));
}

Design Design::truncated(int count) const {
  count = std::clamp(count, 0, size());
  std::vector<Setting> kept(settings_.begin(), settings_.begin() + count);
  std::set<int> used;
  for (const auto& s : kept)
    for (const auto& t : s.gates)
      if (t.parameter) used.insert(*t.parameter);
  std::vector<Parameter> params;
  for (const auto& p : parameters_)
    if (used.count(p.id)) params.push_back(p);
  return Design(std::move(kept), std::move(params));
}

}  // namespace gsc
