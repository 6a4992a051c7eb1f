#pragma once

// Text formats for designs and angle assignments.
//
// Settings document:
//
//   # comment
//   gsc-settings 1
//   param theta3                  free, no starting value
//   param theta7 = 1pi            free, declared starting value
//   param theta19 = 0.5pi fixed   held constant by the optimiser
//   CNOT X1(0.5pi) | T12
//   X1(@theta13) Y2(@theta14) CNOT X2(@theta25) | T3
//
// Gate tokens: CNOT, X1(a), Y1(a), X2(a), Y2(a); `a` is radians, `<r>pi`, or
// @theta<i>. Measurement tokens: T3 (sigma_0 x sigma_3), T12 (sigma_3 x
// sigma_0).
//
// Angle file: one `theta<i> = <value>pi` per line, `#` comments allowed.

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsc/quantum.hpp"
#include "gsc/setting.hpp"

namespace gsc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Design parse_settings(std::string_view text);
std::string serialize_settings(const Design& design);

/// `theta<i> = value` entries in file order.
std::vector<std::pair<int, LiteralAngle>> parse_angle_entries(std::string_view text);
AngleTable parse_angles(std::string_view text);
/// Applies an angle file over a design's declared values. Entries must name
/// declared parameters.
AngleTable apply_angles(const Design& design, const AngleTable& base, std::string_view angle_text);

/// One line per listed id, value as theta/pi with 6 significant digits.
std::string serialize_angles(const AngleTable& angles, const std::vector<int>& ids);

/// `p<k> = value` lines (k in 1..15); unspecified entries are zero.
ErrorVector parse_error_vector(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace gsc
