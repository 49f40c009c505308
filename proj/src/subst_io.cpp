#include "selfsim/subst_io.hpp"

#include <json.hpp>

namespace selfsim {

using nlohmann::json;

std::string dump_substitution(const LinearSubstitution& S) {
  if (S.in_dim() != S.out_dim()) throw Error(ErrorCode::DimensionMismatch, "only square substitution maps can be exported");
  // Hand-assembled so that each map stays on one line; keys and arrays go
  // through the JSON serializer.
  std::string out = "{\n";
  out += "  \"p\": " + std::to_string(S.field().p()) + ",\n";
  out += "  \"n\": " + std::to_string(S.n()) + ",\n";
  out += "  \"t\": " + std::to_string(S.t()) + ",\n";
  out += "  \"color_dim\": " + std::to_string(S.in_dim()) + ",\n";
  out += "  \"maps\": {";
  for (std::size_t k = 0; k < S.cell_count(); ++k) {
    const auto data = S.map(k).data();
    out += k ? ",\n    " : "\n    ";
    out += json(S.cell_of(k).to_string()).dump() + ": " + json(std::vector<unsigned>(data.begin(), data.end())).dump();
  }
  out += S.cell_count() ? "\n  }\n}\n" : "}\n}\n";
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "substitution file: " + what); }

std::size_t nonneg(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(std::string("field '") + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

LinearSubstitution load_substitution(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.byte, "invalid substitution JSON");
  }
  if (!j.is_object()) bad("top level must be an object");
  const std::size_t p = nonneg(j, "p");
  if (p >= kMaxPrime) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 65536");
  PrimeField field(static_cast<std::uint32_t>(p));
  const std::size_t n = nonneg(j, "n");
  const std::size_t t = nonneg(j, "t");
  const std::size_t dim = nonneg(j, "color_dim");
  if (n < 1) bad("n must be >= 1");
  if (dim < 1) bad("color_dim must be >= 1");
  if (!j.contains("maps") || !j.at("maps").is_object()) bad("'maps' must be an object");
  const json& maps = j.at("maps");

  std::size_t side = 1, cells = 1;
  for (std::size_t i = 0; i < t; ++i) {
    side *= p;
    if (side > kMaxCells) bad("length p^t too large");
  }
  for (std::size_t i = 0; i < n; ++i) {
    cells *= side;
    if (cells > kMaxCells) bad("too many cells");
  }
  if (maps.size() != cells) bad("expected " + std::to_string(cells) + " maps, found " + std::to_string(maps.size()));
  if (cells * dim * dim > kMaxCells * 4) bad("maps too large");

  std::vector<FpMatrix> out;
  out.reserve(cells);
  MultiIndex b(n);
  for (std::size_t k = 0; k < cells; ++k) {
    std::size_t rest = k;
    for (std::size_t i = n; i-- > 0;) {
      b[i] = static_cast<int>(rest % side);
      rest /= side;
    }
    const std::string key = b.to_string();
    auto it = maps.find(key);
    if (it == maps.end()) bad("missing map for cell " + key);
    if (!it->is_array() || it->size() != dim * dim)
      bad("map " + key + " must list " + std::to_string(dim * dim) + " entries");
    std::vector<fp_t> entries;
    entries.reserve(dim * dim);
    for (const auto& v : *it) {
      if (!v.is_number_integer()) bad("map " + key + " has a non-integer entry");
      long long x = v.get<long long>();
      if (x < 0 || x >= static_cast<long long>(p)) bad("map " + key + " has an entry outside [0, p)");
      entries.push_back(static_cast<fp_t>(x));
    }
    out.push_back(FpMatrix::from_data(field, dim, dim, std::move(entries)));
  }
  return LinearSubstitution(field, n, static_cast<unsigned>(t), std::move(out));
}

}  // namespace selfsim
