#include "selfsim/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace selfsim {

RecurrenceSpec RecurrenceSpec::scalar(PrimeField f, long long a, long long b, long long c) {
  return {f, FpMatrix::from_rows(f, {{a}}), FpMatrix::from_rows(f, {{b}}), FpMatrix::from_rows(f, {{c}})};
}

Poly RecurrenceSpec::denominator(bool matrix_kind) const {
  const std::size_t dd = d();
  if (dd != 1 && !matrix_kind) throw Error(ErrorCode::KindMismatch, "d > 1 needs matrix coefficients");
  CoeffKind kind = matrix_kind ? CoeffKind::mat(field, dd) : CoeffKind::scalar(field);
  Poly q = Poly::constant(2, kind, kind.one());
  q.add_term({1, 0}, a.scaled(field.neg(1)));
  q.add_term({0, 1}, b.scaled(field.neg(1)));
  q.add_term({1, 1}, c.scaled(field.neg(1)));
  return q;
}

TilingBox recurrence_tiling(const RecurrenceSpec& spec, const std::vector<int>& extents, bool as_matrix) {
  if (extents.size() != 2) throw Error(ErrorCode::DimensionMismatch, "recurrence tilings are 2-dimensional");
  const std::size_t d = spec.d();
  if (spec.a.rows() != d || spec.a.cols() != d || spec.b.rows() != d || spec.b.cols() != d ||
      spec.c.rows() != d || spec.c.cols() != d)
    throw Error(ErrorCode::DimensionMismatch, "recurrence coefficients must be square of equal size");
  const bool matrix = as_matrix || d > 1;
  TilingBox out(spec.field, extents, matrix ? ColorSpec::matrix(d) : ColorSpec::scalar());
  if (out.cell_count() == 0) return out;
  const PrimeField& f = spec.field;
  const int rows = extents[0], cols = extents[1];
  const std::size_t dd = d * d;
  auto data = out.data();
  // acc += m * src, both d x d row-major.
  auto mul_acc = [&](fp_t* acc, const FpMatrix& m, const fp_t* src) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        fp_t mik = m(i, k);
        if (mik == 0) continue;
        for (std::size_t j = 0; j < d; ++j) acc[i * d + j] = f.mul_add(acc[i * d + j], mik, src[k * d + j]);
      }
  };
  for (int m = 0; m < rows; ++m) {
    for (int k = 0; k < cols; ++k) {
      fp_t* cur = data.data() + (std::size_t(m) * cols + k) * dd;
      if (m == 0 && k == 0) {
        for (std::size_t i = 0; i < d; ++i) cur[i * d + i] = 1;
        continue;
      }
      if (m > 0) mul_acc(cur, spec.a, cur - std::size_t(cols) * dd);
      if (k > 0) mul_acc(cur, spec.b, cur - dd);
      if (m > 0 && k > 0) mul_acc(cur, spec.c, cur - (std::size_t(cols) + 1) * dd);
    }
  }
  return out;
}

TilingBox binomial_tiling(PrimeField field, const std::vector<int>& extents) {
  if (extents.size() != 2) throw Error(ErrorCode::DimensionMismatch, "binomial tiling is 2-dimensional");
  TilingBox out(field, extents, ColorSpec::scalar());
  const int rows = extents[0], cols = extents[1];
  auto data = out.data();
  for (int m = 0; m < rows; ++m)
    for (int k = 0; k < cols; ++k) {
      std::size_t i = std::size_t(m) * cols + k;
      if (m == 0 || k == 0) {
        data[i] = 1;
      } else {
        data[i] = field.add(data[i - cols], data[i - 1]);
      }
    }
  return out;
}

RazpetReport razpet_check_table(const TilingBox& w) {
  if (w.n() != 2 || w.color_dim() != 1) throw Error(ErrorCode::DimensionMismatch, "Razpet check needs a scalar 2-d table");
  const int p = static_cast<int>(w.field().p());
  const auto& ext = w.extents();
  if (ext[0] != ext[1] || ext[0] % p != 0 || ext[0] < p * p)
    throw Error(ErrorCode::InvalidArgument, "table side must be a multiple of p and at least p^2");
  const int outer = ext[0] / p;
  const PrimeField& f = w.field();
  auto at = [&](int m, int k) { return w.data()[std::size_t(m) * ext[1] + k]; };
  RazpetReport rep;
  for (int a = 0; a < outer; ++a)
    for (int g = 0; g < outer; ++g) {
      const fp_t wag = at(a, g);
      for (int b = 0; b < p; ++b)
        for (int e = 0; e < p; ++e) {
          ++rep.checked;
          if (at(p * a + b, p * g + e) != f.mul(wag, at(b, e))) {
            ++rep.violations;
            rep.ok = false;
            if (!rep.first_violation) rep.first_violation = std::vector<int>{a, g, b, e};
          }
        }
    }
  return rep;
}

RazpetReport razpet_check(const RecurrenceSpec& spec, unsigned e) {
  if (spec.d() != 1) throw Error(ErrorCode::DimensionMismatch, "Razpet check is for d = 1");
  if (e < 2) throw Error(ErrorCode::InvalidArgument, "box exponent must be >= 2");
  long long side = 1;
  for (unsigned i = 0; i < e; ++i) {
    side *= spec.field.p();
    if (side > (1 << 13)) throw Error(ErrorCode::BoxTooLarge, "p^e exceeds 8192");
  }
  return razpet_check_table(recurrence_tiling(spec, {int(side), int(side)}));
}

CoeffKind PresetConfig::kind() const {
  PrimeField f(p);
  return d > 1 ? CoeffKind::mat(f, d) : CoeffKind::scalar(f);
}

Poly PresetConfig::P() const {
  if (recurrence) return Poly::constant(n, kind(), kind().one());
  return parse_poly(P_text, n, kind());
}

Poly PresetConfig::Q() const {
  if (recurrence) return recurrence->denominator(d > 1);
  return parse_poly(Q_text, n, kind());
}

namespace {

std::string matrix_literal(const FpMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += std::to_string(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

PresetConfig recurrence_preset(std::string name, std::string description, std::uint32_t p,
                               std::initializer_list<std::initializer_list<long long>> ab,
                               std::initializer_list<std::initializer_list<long long>> c) {
  PrimeField f(p);
  RecurrenceSpec spec{f, FpMatrix::from_rows(f, ab), FpMatrix::from_rows(f, ab), FpMatrix::from_rows(f, c)};
  PresetConfig cfg;
  cfg.name = std::move(name);
  cfg.description = std::move(description);
  cfg.p = p;
  cfg.d = spec.d();
  cfg.n = 2;
  cfg.side = Side::Left;
  cfg.box = {1024, 1024};
  cfg.P_text = "1";
  cfg.Q_text = "1 - " + matrix_literal(spec.a) + "*x1 - " + matrix_literal(spec.b) + "*x2 - " +
               matrix_literal(spec.c) + "*x1*x2";
  cfg.recurrence = spec;
  return cfg;
}

PresetConfig scalar_preset(std::string name, std::uint32_t p, std::string q) {
  PresetConfig cfg;
  cfg.name = std::move(name);
  cfg.description = "P = 1, Q = " + q + " over F_" + std::to_string(p);
  cfg.p = p;
  cfg.d = 1;
  cfg.n = 2;
  cfg.side = Side::Right;
  cfg.box = {1024, 1024};
  cfg.P_text = "1";
  cfg.Q_text = std::move(q);
  return cfg;
}

const std::vector<std::pair<std::string, std::function<PresetConfig()>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<PresetConfig()>>> table = [] {
    std::vector<std::pair<std::string, std::function<PresetConfig()>>> t;
    auto add = [&](std::string name, std::function<PresetConfig()> fn) { t.emplace_back(std::move(name), std::move(fn)); };
    add("fig1-left", [] {
      return recurrence_preset("fig1-left", "2x2 recurrence over F_2, a = b = [[1,1],[0,1]], c = [[1,1],[1,0]]", 2,
                               {{1, 1}, {0, 1}}, {{1, 1}, {1, 0}});
    });
    add("fig1-right", [] {
      return recurrence_preset("fig1-right", "2x2 recurrence over F_2, a = b = [[0,1],[0,0]], c = [[1,1],[1,0]]", 2,
                               {{0, 1}, {0, 0}}, {{1, 1}, {1, 0}});
    });
    add("fig2-left", [] { return scalar_preset("fig2-left", 2, "1 + x1^2 + x2^2 + x1*x2 + x1^2*x2^2"); });
    add("fig2-right", [] { return scalar_preset("fig2-right", 2, "1 + x1^2*x2 + x1*x2^2 + x1*x2 + x1^2*x2^2"); });
    for (auto [suffix, p] : {std::pair{"tl", 3u}, std::pair{"tr", 5u}}) {
      std::string name = std::string("fig2bis-") + suffix;
      add(name, [name, p] {
        return recurrence_preset(name, "2x2 recurrence over F_" + std::to_string(p) + ", a = b = [[0,1],[1,0]], c = [[0,-1],[1,-1]]",
                                 p, {{0, 1}, {1, 0}}, {{0, -1}, {1, -1}});
      });
    }
    for (auto [suffix, p] : {std::pair{"bl", 3u}, std::pair{"br", 5u}}) {
      std::string name = std::string("fig2bis-") + suffix;
      add(name, [name, p] {
        return recurrence_preset(name, "2x2 recurrence over F_" + std::to_string(p) + ", a = b = [[1,1],[1,0]], c = [[0,1],[0,0]]",
                                 p, {{1, 1}, {1, 0}}, {{0, 1}, {0, 0}});
      });
    }
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      std::string name = "fig3-p" + std::to_string(p);
      add(name, [name, p] { return scalar_preset(name, p, "x^2*y^2 + x*y + x^2 + y^2 + 1"); });
    }
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      std::string name = "fig4-p" + std::to_string(p);
      add(name, [name, p] { return scalar_preset(name, p, "x^2*y^2 + x*y + x + y + 1"); });
    }
    add("fig5", [] { return scalar_preset("fig5", 2, "x^3*y^3 + x^2 + y^2 + x + y + 1"); });
    add("fig6", [] { return scalar_preset("fig6", 2, "x^3*y^3 + x*y + x + y + 1"); });
    add("fig7", [] { return scalar_preset("fig7", 2, "x^3 + y^3 + x^2*y^2 + x^2*y + x*y^2 + 1"); });
    add("fig8", [] { return scalar_preset("fig8", 3, "-x^2*y^2 - x^2*y - x*y^2 - x*y + 1"); });
    add("fig9", [] { return scalar_preset("fig9", 3, "x^2*y^2 - x^2 - y^2 + y + 1"); });
    add("fig10", [] { return scalar_preset("fig10", 3, "x^3*y^3 + x^2 + y^2 + x + y + 1"); });
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

PresetConfig figure_preset(const std::string& name) {
  for (const auto& [key, fn] : registry())
    if (key == name) return fn();
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
}

}  // namespace selfsim
