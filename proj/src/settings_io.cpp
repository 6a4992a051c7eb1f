#include "gsc/settings_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gsc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  const auto pos = s.find('#');
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F f) {
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    f(line_no, trim(strip_comment(text.substr(pos, end - pos))));
    pos = end + 1;
  }
}

double parse_number(std::string_view s, int line, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

LiteralAngle parse_literal(std::string_view s, int line) {
  s = trim(s);
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    std::string_view num = s.substr(0, s.size() - 2);
    if (num.empty()) return LiteralAngle::pi_multiple(1.0);
    return LiteralAngle::pi_multiple(parse_number(num, line, "angle"));
  }
  return LiteralAngle::radians(parse_number(s, line, "angle"));
}

int parse_theta_name(std::string_view s, int line) {
  constexpr std::string_view prefix = "theta";
  if (s.substr(0, prefix.size()) != prefix || s.size() == prefix.size())
    throw ParseError(line, "expected theta<i>, got '" + std::string(s) + "'");
  int id = 0;
  const auto body = s.substr(prefix.size());
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), id);
  if (ec != std::errc() || ptr != body.data() + body.size() || id < 0)
    throw ParseError(line, "invalid parameter name '" + std::string(s) + "'");
  return id;
}

GateToken parse_gate(std::string_view tok, int line) {
  if (tok == "CNOT") return GateToken::make_cnot();
  if (tok.size() < 5 || tok[2] != '(' || tok.back() != ')' || (tok[0] != 'X' && tok[0] != 'Y') ||
      (tok[1] != '1' && tok[1] != '2'))
    throw ParseError(line, "unknown gate token '" + std::string(tok) + "'");
  const Axis axis = tok[0] == 'X' ? Axis::X : Axis::Y;
  const int qubit = tok[1] - '0';
  const std::string_view arg = tok.substr(3, tok.size() - 4);
  if (!arg.empty() && arg[0] == '@') return GateToken::rotation(axis, qubit, parse_theta_name(arg.substr(1), line));
  return GateToken::rotation(axis, qubit, parse_literal(arg, line));
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest representation that still round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char trial[64];
    std::snprintf(trial, sizeof trial, "%.*g", prec, v);
    if (std::strtod(trial, nullptr) == v) return trial;
  }
  return buf;
}

std::string format_literal(const LiteralAngle& a) {
  return format_number(a.value) + (a.pi_units ? "pi" : "");
}

}  // namespace

Design parse_settings(std::string_view text) {
  bool have_version = false;
  std::vector<Setting> settings;
  std::vector<Parameter> params;
  std::vector<int> setting_lines;
  for_each_line(text, [&](int line, std::string_view body) {
    if (body.empty()) return;
    const auto words = split_ws(body);
    if (!have_version) {
      if (words.size() != 2 || words[0] != "gsc-settings")
        throw ParseError(line, "expected header 'gsc-settings 1'");
      if (words[1] != "1") throw ParseError(line, "unsupported format version " + std::string(words[1]));
      have_version = true;
      return;
    }
    if (words[0] == "param") {
      Parameter p;
      if (words.size() < 2) throw ParseError(line, "param needs a name");
      p.id = parse_theta_name(words[1], line);
      if (words.size() == 2) {
        params.push_back(p);
        return;
      }
      if (words[2] != "=" || words.size() < 4 || words.size() > 5)
        throw ParseError(line, "expected 'param theta<i> = <angle> [fixed]'");
      p.value = parse_literal(words[3], line);
      if (words.size() == 5) {
        if (words[4] != "fixed") throw ParseError(line, "unknown param flag '" + std::string(words[4]) + "'");
        p.fixed = true;
      }
      params.push_back(p);
      return;
    }
    const auto bar = body.find('|');
    if (bar == std::string_view::npos) throw ParseError(line, "missing measurement ('| T3' or '| T12')");
    const auto meas = split_ws(body.substr(bar + 1));
    if (meas.size() != 1) throw ParseError(line, "expected exactly one measurement token");
    int m = 0;
    if (meas[0] == "T3") m = 3;
    else if (meas[0] == "T12") m = 12;
    else throw ParseError(line, "unknown measurement token '" + std::string(meas[0]) + "'");
    std::vector<GateToken> gates;
    for (auto tok : split_ws(body.substr(0, bar))) gates.push_back(parse_gate(tok, line));
    if (gates.empty()) throw ParseError(line, "empty gate list");
    try {
      settings.emplace_back(std::move(gates), PauliIndex(m));
    } catch (const ConfigurationError& e) {
      throw ParseError(line, e.what());
    }
    setting_lines.push_back(line);
  });
  if (!have_version) throw ParseError(1, "missing header 'gsc-settings 1'");
  // Report unresolved references at the line that uses them.
  for (size_t s = 0; s < settings.size(); ++s)
    for (const auto& g : settings[s].gates) {
      if (!g.parameter) continue;
      const bool declared =
          std::any_of(params.begin(), params.end(), [&](const Parameter& p) { return p.id == *g.parameter; });
      if (!declared)
        throw ParseError(setting_lines[s], "unresolved parameter @theta" + std::to_string(*g.parameter));
    }
  try {
    return Design(std::move(settings), std::move(params));
  } catch (const ConfigurationError& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize_settings(const Design& design) {
  std::ostringstream os;
  os << "gsc-settings 1\n";
  for (const auto& p : design.parameters()) {
    os << "param theta" << p.id;
    if (p.value) os << " = " << format_literal(*p.value);
    if (p.fixed) os << " fixed";
    os << '\n';
  }
  for (const auto& s : design.settings()) {
    for (const auto& g : s.gates) {
      if (g.is_cnot()) {
        os << "CNOT ";
        continue;
      }
      os << (g.axis == Axis::X ? 'X' : 'Y') << g.qubit << '(';
      if (g.parameter) os << "@theta" << *g.parameter;
      else os << format_literal(g.literal);
      os << ") ";
    }
    os << "| T" << s.measurement.value() << '\n';
  }
  return os.str();
}

std::vector<std::pair<int, LiteralAngle>> parse_angle_entries(std::string_view text) {
  std::vector<std::pair<int, LiteralAngle>> out;
  for_each_line(text, [&](int line, std::string_view body) {
    if (body.empty()) return;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'theta<i> = <angle>'");
    const int id = parse_theta_name(trim(body.substr(0, eq)), line);
    out.emplace_back(id, parse_literal(body.substr(eq + 1), line));
  });
  return out;
}

AngleTable parse_angles(std::string_view text) {
  AngleTable t;
  for (const auto& [id, a] : parse_angle_entries(text)) t.set(id, a.to_radians());
  return t;
}

AngleTable apply_angles(const Design& design, const AngleTable& base, std::string_view angle_text) {
  AngleTable t = base;
  for (const auto& [id, a] : parse_angle_entries(angle_text)) {
    design.position_of(id);
    t.set(id, a.to_radians());
  }
  return t;
}

std::string serialize_angles(const AngleTable& angles, const std::vector<int>& ids) {
  std::ostringstream os;
  for (int id : ids) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", angles.at(id) / std::numbers::pi);
    os << "theta" << id << " = " << buf << "pi\n";
  }
  return os.str();
}

ErrorVector parse_error_vector(std::string_view text) {
  ErrorVector p = ErrorVector::Zero();
  for_each_line(text, [&](int line, std::string_view body) {
    if (body.empty()) return;
    const auto eq = body.find('=');
    const auto name = trim(body.substr(0, eq));
    if (eq == std::string_view::npos || name.size() < 2 || name[0] != 'p')
      throw ParseError(line, "expected 'p<k> = <value>'");
    int k = 0;
    const auto digits = name.substr(1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1 || k > kNumPaulis)
      throw ParseError(line, "error parameter index must be p1..p15");
    p[k - 1] = parse_number(trim(body.substr(eq + 1)), line, "error parameter");
  });
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gsc
