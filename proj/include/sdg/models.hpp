#pragma once

/**
 * @file models.hpp
 * @brief Concrete groupoids over Weil points and the exact sequences
 *        0 -> L -> H -> G used throughout the library.
 *
 * Every arrow is a triple (target, body, source). Over a one-point base the
 * coordinate vectors are empty; in a pair groupoid the body is 0x0.
 */

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sdg/matrix.hpp"

namespace sdg {

struct BasePoint {
  std::vector<WeilElement> coords;

  [[nodiscard]] std::size_t dim() const noexcept { return coords.size(); }
  friend bool operator==(const BasePoint&, const BasePoint&) = default;

  [[nodiscard]] BasePoint substituted(const Substitution& s) const {
    BasePoint out;
    out.coords.reserve(coords.size());
    for (const auto& c : coords) out.coords.push_back(s(c));
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? ", " : "") + coords[i].to_string();
    return out + ")";
  }
};

inline BasePoint rational_point(const AlgebraPtr& alg, const std::vector<Rational>& values) {
  BasePoint p;
  for (const auto& v : values) p.coords.emplace_back(alg, v);
  return p;
}

struct Arrow {
  BasePoint target;
  WeilMatrix body;
  BasePoint source;

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return body.algebra(); }
  friend bool operator==(const Arrow&, const Arrow&) = default;

  [[nodiscard]] Arrow substituted(const Substitution& s) const {
    return {target.substituted(s), body.substituted(s), source.substituted(s)};
  }

  [[nodiscard]] std::string to_string() const {
    return target.to_string() + " <- " + body.to_string() + " <- " + source.to_string();
  }
};

inline Arrow identity_arrow(const AlgebraPtr& alg, const BasePoint& x, std::size_t body_dim) {
  return {x, WeilMatrix::identity(alg, body_dim), x};
}

inline bool is_identity_arrow(const Arrow& a) { return a.target == a.source && a.body.is_identity(); }

/// g after h; requires alpha(g) = beta(h).
inline Arrow compose(const Arrow& g, const Arrow& h) {
  if (!(g.source == h.target)) throw PreconditionError("compose: source of the left arrow is not the target of the right arrow");
  return {g.target, g.body * h.body, h.source};
}

inline Arrow inverse(const Arrow& a) { return {a.source, a.body.inverse(), a.target}; }

/// Left-to-right product a1 a2 ... an, i.e. the composite applying an first.
inline Arrow compose_all(const std::vector<Arrow>& arrows) {
  if (arrows.empty()) throw PreconditionError("empty composite");
  Arrow out = arrows.front();
  for (std::size_t k = 1; k < arrows.size(); ++k) out = compose(out, arrows[k]);
  return out;
}

/// Matrix group cut out by an entry pattern and an optional unit-determinant equation.
struct MatrixGroupSpec {
  std::string name;
  std::size_t dim = 0;
  std::vector<bool> free;  ///< row-major; entries not free must equal the identity's
  bool unit_determinant = false;

  static MatrixGroupSpec trivial() { return {"trivial", 0, {}, false}; }

  static MatrixGroupSpec general_linear(std::size_t n) {
    return {"GL" + std::to_string(n), n, std::vector<bool>(n * n, true), false};
  }

  static MatrixGroupSpec special_linear(std::size_t n) {
    return {"SL" + std::to_string(n), n, std::vector<bool>(n * n, true), true};
  }

  static MatrixGroupSpec unipotent_upper(std::size_t n) {
    std::vector<bool> f(n * n, false);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) f[r * n + c] = true;
    return {"U" + std::to_string(n), n, std::move(f), false};
  }

  static MatrixGroupSpec pattern(std::string name, std::size_t n,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& positions) {
    std::vector<bool> f(n * n, false);
    for (auto [r, c] : positions) f.at(r * n + c) = true;
    return {std::move(name), n, std::move(f), false};
  }

  static MatrixGroupSpec block_diagonal(std::string name, const std::vector<std::size_t>& blocks) {
    std::size_t n = 0;
    for (auto b : blocks) n += b;
    std::vector<bool> f(n * n, false);
    std::size_t offset = 0;
    for (auto b : blocks) {
      for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = 0; c < b; ++c) f[(offset + r) * n + offset + c] = true;
      offset += b;
    }
    return {std::move(name), n, std::move(f), false};
  }

  [[nodiscard]] bool is_free(std::size_t r, std::size_t c) const { return free.at(r * dim + c); }

  /// Membership of a Weil point: pattern, invertible constant term, determinant equation.
  [[nodiscard]] bool contains(const WeilMatrix& m) const {
    if (m.rows() != dim || m.cols() != dim) return false;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        if (!is_free(r, c) && !(m(r, c) == WeilElement(m.algebra(), r == c ? 1 : 0))) return false;
    if (dim == 0) return true;
    const WeilElement det = m.determinant();
    if (det.constant() == 0) return false;
    return !unit_determinant || det == WeilElement(m.algebra(), 1);
  }

  /// Membership of a tangent velocity in the Lie algebra.
  [[nodiscard]] bool contains_velocity(const WeilMatrix& v) const {
    if (v.rows() != dim || v.cols() != dim) return false;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        if (!is_free(r, c) && !v(r, c).is_zero()) return false;
    return !unit_determinant || v.trace().is_zero();
  }
};

inline bool validate(const MatrixGroupSpec& spec, const WeilMatrix& point) { return spec.contains(point); }

enum class GroupoidKind {
  group,   ///< matrix group over a one-point base
  pair,    ///< M x M
  gauge,   ///< M x K x M
  bundle,  ///< group bundle {(x, k, x)}
};

struct Groupoid {
  std::string name;
  GroupoidKind kind = GroupoidKind::group;
  std::size_t base_dim = 0;
  MatrixGroupSpec group = MatrixGroupSpec::trivial();

  /// Tangents at a point compose, i.e. the source fibre is a group.
  [[nodiscard]] bool group_like() const noexcept { return kind == GroupoidKind::group || kind == GroupoidKind::bundle; }

  [[nodiscard]] Arrow identity(const AlgebraPtr& alg, const BasePoint& x) const {
    if (x.dim() != base_dim) throw PreconditionError("base point dimension does not match " + name);
    return identity_arrow(alg, x, group.dim);
  }

  [[nodiscard]] bool validate(const Arrow& a) const {
    if (a.target.dim() != base_dim || a.source.dim() != base_dim) return false;
    if (!group.contains(a.body)) return false;
    if (kind == GroupoidKind::bundle && !(a.target == a.source)) return false;
    return true;
  }
};

enum class ModelFamily { heisenberg, flat_control, gauge };

/// 0 -> L -> H -> G with L the kernel of pi. The inclusion is the identity on
/// representations: L-arrows are stored exactly as the H-arrows they are.
struct ExactSequence {
  std::string name;
  ModelFamily family = ModelFamily::heisenberg;
  Groupoid H;
  Groupoid G;
  Groupoid L;
  std::function<Arrow(const Arrow&)> pi;

  [[nodiscard]] Arrow project(const Arrow& h) const { return pi(h); }

  [[nodiscard]] bool kernel_test(const Arrow& h) const { return is_identity_arrow(pi(h)); }

  [[nodiscard]] Arrow include(const Arrow& l) const {
    if (!L.validate(l)) throw PreconditionError("include: arrow is not in the kernel bundle");
    return l;
  }
};

/// H = unipotent 3x3, G = its abelianization (entries (0,1),(0,2)), L = centre.
inline ExactSequence heisenberg_model() {
  ExactSequence s;
  s.name = "heisenberg";
  s.family = ModelFamily::heisenberg;
  s.H = {"heisenberg", GroupoidKind::group, 0, MatrixGroupSpec::unipotent_upper(3)};
  s.G = {"heisenberg-abelianization", GroupoidKind::group, 0,
         MatrixGroupSpec::pattern("A2", 3, {{0, 1}, {0, 2}})};
  s.L = {"heisenberg-centre", GroupoidKind::group, 0, MatrixGroupSpec::pattern("Z", 3, {{0, 2}})};
  s.pi = [](const Arrow& h) {
    const auto& alg = h.algebra();
    WeilMatrix g = WeilMatrix::identity(alg, 3);
    g.at(0, 1) = h.body(0, 1);
    g.at(0, 2) = h.body(1, 2);
    return Arrow{h.target, std::move(g), h.source};
  };
  return s;
}

/// H = GL2 x GL1 (block diagonal), G = GL2, pi = first factor.
inline ExactSequence flat_control_model() {
  ExactSequence s;
  s.name = "flat-control";
  s.family = ModelFamily::flat_control;
  s.H = {"GL2xGL1", GroupoidKind::group, 0, MatrixGroupSpec::block_diagonal("GL2xGL1", {2, 1})};
  s.G = {"GL2", GroupoidKind::group, 0, MatrixGroupSpec::general_linear(2)};
  s.L = {"1xGL1", GroupoidKind::group, 0, MatrixGroupSpec::pattern("1xGL1", 3, {{2, 2}})};
  s.pi = [](const Arrow& h) {
    WeilMatrix g(h.algebra(), 2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) g.at(r, c) = h.body(r, c);
    return Arrow{h.target, std::move(g), h.source};
  };
  return s;
}

/// H = M x K x M over M = R^m, G = M x M, pi(y, k, x) = (y, x).
inline ExactSequence trivial_gauge_model(const MatrixGroupSpec& structure, std::size_t base_dim) {
  ExactSequence s;
  s.name = "gauge-" + structure.name;
  s.family = ModelFamily::gauge;
  s.H = {"gauge(" + structure.name + ")", GroupoidKind::gauge, base_dim, structure};
  s.G = {"pair", GroupoidKind::pair, base_dim, MatrixGroupSpec::trivial()};
  s.L = {"bundle(" + structure.name + ")", GroupoidKind::bundle, base_dim, structure};
  s.pi = [](const Arrow& h) { return Arrow{h.target, WeilMatrix(h.algebra(), 0, 0), h.source}; };
  return s;
}

inline const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"heisenberg", "flat-control", "gauge"};
  return names;
}

inline const std::vector<std::string>& structure_group_names() {
  static const std::vector<std::string> names{"scalar", "gl2", "sl2"};
  return names;
}

inline MatrixGroupSpec structure_group(const std::string& name) {
  if (name == "scalar") return MatrixGroupSpec::general_linear(1);
  if (name == "gl2") return MatrixGroupSpec::general_linear(2);
  if (name == "sl2") return MatrixGroupSpec::special_linear(2);
  throw PreconditionError("unknown structure group '" + name + "' (choices: scalar, gl2, sl2)");
}

/// Registry lookup; `structure` and `base_dim` only matter for "gauge".
inline ExactSequence make_model(const std::string& name, const std::string& structure = "scalar",
                                std::size_t base_dim = 2) {
  if (name == "heisenberg") return heisenberg_model();
  if (name == "flat-control") return flat_control_model();
  if (name == "gauge") {
    if (base_dim == 0 || base_dim > 3) throw PreconditionError("gauge base dimension must be 1, 2 or 3");
    return trivial_gauge_model(structure_group(structure), base_dim);
  }
  std::string known;
  for (const auto& n : model_names()) known += (known.empty() ? "" : ", ") + n;
  throw PreconditionError("unknown model '" + name + "' (registry: " + known + ")");
}

}  // namespace sdg
