#include "selfsim/config.hpp"

#include <fstream>
#include <sstream>

#include "selfsim/scenarios.hpp"
#include "selfsim/tiling_box.hpp"

namespace selfsim {

using nlohmann::json;

CoeffKind RunConfig::kind() const {
  PrimeField f(p);
  return d > 1 ? CoeffKind::mat(f, d) : CoeffKind::scalar(f);
}

Poly RunConfig::P() const { return parse_poly(P_text, n, kind()); }
Poly RunConfig::Q() const { return parse_poly(Q_text, n, kind()); }

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  if (preset) j["preset"] = *preset;
  j["p"] = p;
  j["d"] = d;
  j["n"] = n;
  j["P"] = P_text;
  j["Q"] = Q_text;
  j["side"] = side_name(side);
  j["box"] = box;
  return j;
}

std::vector<int> default_box(std::size_t n) {
  int side = 1024;
  auto cells = [&](int s) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < n; ++i) {
      c *= static_cast<std::size_t>(s);
      if (c > kMaxCells) return kMaxCells + 1;
    }
    return c;
  };
  while (side > 1 && cells(side) > kMaxCells / 4) side /= 2;
  return std::vector<int>(n, side);
}

Side parse_side(const std::string& text) {
  if (text == "right") return Side::Right;
  if (text == "left") return Side::Left;
  throw Error(ErrorCode::InvalidArgument, "side must be 'right' or 'left', got '" + text + "'");
}

std::string side_name(Side side) { return side == Side::Right ? "right" : "left"; }

void validate(RunConfig& cfg) {
  if (!is_prime(cfg.p) || cfg.p >= kMaxPrime)
    throw Error(ErrorCode::NotPrime, std::to_string(cfg.p) + " is not a prime below 65536");
  if (cfg.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (cfg.d < 1 || cfg.d > kMaxDeterminantSize)
    throw Error(ErrorCode::InvalidArgument, "d must lie in 1..6");
  if (cfg.box.empty()) cfg.box = default_box(cfg.n);
  if (cfg.box.size() != cfg.n) throw Error(ErrorCode::InvalidArgument, "box needs one extent per variable");
  std::size_t cells = 1;
  for (int e : cfg.box) {
    if (e < 1) throw Error(ErrorCode::InvalidArgument, "box extents must be positive");
    cells *= static_cast<std::size_t>(e);
    if (cells > kMaxCells) throw Error(ErrorCode::BoxTooLarge, "box exceeds 2^26 cells");
  }
  cfg.P();
  Poly Q = cfg.Q();
  if (!is_series_unit(Q)) throw Error(ErrorCode::NotAUnit, "the constant term of Q is not invertible");
}

namespace {

std::string poly_field(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
    return "1";
  }
  const json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a polynomial string");
}

long long int_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be an integer");
  return v.get<long long>();
}

std::vector<int> box_field(const json& v, std::size_t n) {
  if (v.is_number_integer()) {
    long long s = v.get<long long>();
    if (s < 1 || s > (1LL << 26)) throw Error(ErrorCode::BoxTooLarge, "box side out of range");
    return std::vector<int>(n, static_cast<int>(s));
  }
  if (!v.is_array()) throw Error(ErrorCode::InvalidArgument, "box must be an integer or a list of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw Error(ErrorCode::InvalidArgument, "box entries must be integers");
    long long s = e.get<long long>();
    if (s < 1 || s > (1LL << 26)) throw Error(ErrorCode::BoxTooLarge, "box extent out of range");
    out.push_back(static_cast<int>(s));
  }
  return out;
}

}  // namespace

RunConfig config_from_preset(const std::string& name) {
  PresetConfig pc = figure_preset(name);
  RunConfig cfg;
  cfg.p = pc.p;
  cfg.d = pc.d;
  cfg.n = pc.n;
  cfg.P_text = pc.d > 1 ? "1" : pc.P_text;
  cfg.Q_text = pc.Q_text;
  cfg.side = pc.side;
  cfg.box = pc.box;
  cfg.preset = pc.name;
  validate(cfg);
  return cfg;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  RunConfig cfg;
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) throw Error(ErrorCode::InvalidArgument, "preset must be a string");
    cfg = config_from_preset(j.at("preset").get<std::string>());
    if (j.contains("box")) {
      cfg.box = box_field(j.at("box"), cfg.n);
      validate(cfg);
    }
    return cfg;
  }
  for (const char* key : {"p", "Q"})
    if (!j.contains(key)) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
  long long p = int_field(j, "p");
  if (p < 2 || p >= kMaxPrime) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 65536");
  cfg.p = static_cast<std::uint32_t>(p);
  if (j.contains("d")) {
    long long d = int_field(j, "d");
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
    cfg.d = static_cast<std::size_t>(d);
  }
  if (j.contains("n")) {
    long long n = int_field(j, "n");
    if (n < 1 || n > 16) throw Error(ErrorCode::InvalidArgument, "n must lie in 1..16");
    cfg.n = static_cast<std::size_t>(n);
  }
  cfg.P_text = poly_field(j, "P", false);
  cfg.Q_text = poly_field(j, "Q", true);
  if (j.contains("side")) {
    if (!j.at("side").is_string()) throw Error(ErrorCode::InvalidArgument, "side must be a string");
    cfg.side = parse_side(j.at("side").get<std::string>());
  }
  if (j.contains("box")) cfg.box = box_field(j.at("box"), cfg.n);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.byte, std::string("invalid JSON in ") + path);
  }
  return config_from_json(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IOError, "read failed for " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IOError, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IOError, "write failed for " + path);
}

}  // namespace selfsim
