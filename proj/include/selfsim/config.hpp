#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "selfsim/expand.hpp"
#include "selfsim/polyring.hpp"

namespace selfsim {

// A validated run: field, coefficient kind, numerator/denominator and box.
struct RunConfig {
  std::uint32_t p = 2;
  std::size_t d = 1;
  std::size_t n = 2;
  std::string P_text = "1";
  std::string Q_text;
  Side side = Side::Right;
  std::vector<int> box;
  std::optional<std::string> preset;

  CoeffKind kind() const;
  Poly P() const;
  Poly Q() const;
  nlohmann::ordered_json to_json() const;
};

// Default box: 1024 per axis for n <= 2, shrunk for larger n to stay under the cell cap.
std::vector<int> default_box(std::size_t n);

// Checks primality, parses P and Q, checks that Q is a unit and that the box
// fits. Throws NotPrime, SyntaxError, KindMismatch, NotAUnit, BoxTooLarge,
// InvalidArgument.
void validate(RunConfig& cfg);

// {p, d, n, P, Q, side?, box?} or {"preset": name, box?}. "box" is a side
// length or a list of extents; "side" is "right" or "left".
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
RunConfig config_from_preset(const std::string& name);

Side parse_side(const std::string& text);
std::string side_name(Side side);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& bytes);

}  // namespace selfsim
