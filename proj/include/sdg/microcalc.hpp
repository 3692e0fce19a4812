#pragma once

/**
 * @file microcalc.hpp
 * @brief Tangents, micro-n-cubes and the infinitesimal calculus on them.
 *
 * A micro-n-cube is an arrow whose entries are Weil elements, together with
 * the n generators playing the role of its arguments. Every other generator
 * of the ambient algebra is a parameter, so "gamma(d1, e, d3)" is a
 * substitution and slices keep the fixed value symbolic.
 *
 * A tangent is stored by its velocity: t(e) = (x + e v, I + e A, x).
 *
 * Slot indices are 0-based throughout.
 */

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sdg/models.hpp"
#include "sdg/polynomial.hpp"

namespace sdg {

struct Tangent {
  BasePoint anchor;
  std::vector<WeilElement> base_velocity;
  WeilMatrix body_velocity;

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return body_velocity.algebra(); }

  /// The arrow t(e) for a square-zero `e`.
  [[nodiscard]] Arrow at(const WeilElement& e) const {
    require_same(e.algebra(), algebra());
    BasePoint target = anchor;
    for (std::size_t k = 0; k < target.coords.size(); ++k) target.coords[k] += e * base_velocity[k];
    WeilMatrix body = WeilMatrix::identity(algebra(), body_velocity.rows()) + e * body_velocity;
    return {std::move(target), std::move(body), anchor};
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(base_velocity.begin(), base_velocity.end(), [](const auto& v) { return v.is_zero(); }) &&
           std::all_of(body_velocity.entries().begin(), body_velocity.entries().end(),
                       [](const auto& v) { return v.is_zero(); });
  }

  friend bool operator==(const Tangent&, const Tangent&) = default;

  [[nodiscard]] Tangent embedded(const AlgebraPtr& ext) const {
    return transformed(ext, [&](const WeilElement& w) { return w.embedded(ext); });
  }

  [[nodiscard]] Tangent projected(const AlgebraPtr& base) const {
    return transformed(base, [&](const WeilElement& w) { return w.projected(base); });
  }

  [[nodiscard]] Tangent substituted(const Substitution& s) const {
    return transformed(s.target(), [&](const WeilElement& w) { return s(w); });
  }

  [[nodiscard]] std::string to_string() const {
    std::string v = "(";
    for (std::size_t k = 0; k < base_velocity.size(); ++k) v += (k ? ", " : "") + base_velocity[k].to_string();
    return "tangent at " + anchor.to_string() + " base " + v + ") body " + body_velocity.to_string();
  }

 private:
  template <class F>
  Tangent transformed(const AlgebraPtr& alg, F&& f) const {
    Tangent out{BasePoint{}, {}, body_velocity.map(alg, f)};
    for (const auto& c : anchor.coords) out.anchor.coords.push_back(f(c));
    for (const auto& c : base_velocity) out.base_velocity.push_back(f(c));
    return out;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Tangent& t) { return os << t.to_string(); }

inline Tangent zero_tangent(const AlgebraPtr& alg, const BasePoint& x, std::size_t body_dim) {
  return {x, std::vector<WeilElement>(x.dim(), WeilElement(alg)), WeilMatrix(alg, body_dim, body_dim)};
}

inline void require_same_fibre(const Tangent& a, const Tangent& b) {
  require_same(a.algebra(), b.algebra());
  if (!(a.anchor == b.anchor)) throw PreconditionError("tangents are anchored at different points");
  if (a.base_velocity.size() != b.base_velocity.size() || a.body_velocity.rows() != b.body_velocity.rows())
    throw PreconditionError("tangents live in different bundles");
}

/// Fibrewise sum; agrees with t2(d) t1(d) on group-like fibres.
inline Tangent tangent_add(const Tangent& a, const Tangent& b) {
  require_same_fibre(a, b);
  Tangent out = a;
  for (std::size_t k = 0; k < out.base_velocity.size(); ++k) out.base_velocity[k] += b.base_velocity[k];
  out.body_velocity += b.body_velocity;
  return out;
}

inline Tangent tangent_scale(const Rational& s, const Tangent& t) {
  Tangent out = t;
  for (auto& v : out.base_velocity) v *= s;
  out.body_velocity = s * out.body_velocity;
  return out;
}

inline Tangent tangent_sub(const Tangent& a, const Tangent& b) { return tangent_add(a, tangent_scale(-1, b)); }

/// Reads a tangent off an arrow that is affine in the generator `gen`.
inline Tangent tangent_from_arrow(const Arrow& a, std::size_t gen) {
  const auto& alg = a.algebra();
  const Mask g = Mask{1} << gen;
  for (const auto& c : a.source.coords)
    if (c.depends_on(g)) throw InvariantViolation("tangent source is not constant");
  Tangent t{a.source, {}, WeilMatrix(alg, a.body.rows(), a.body.cols())};
  for (std::size_t k = 0; k < a.target.dim(); ++k) {
    if (!(a.target.coords[k].coefficient(g, 0) == a.source.coords[k]))
      throw InvariantViolation("tangent does not start at its anchor");
    t.base_velocity.push_back(a.target.coords[k].coefficient(g, g));
  }
  for (std::size_t r = 0; r < a.body.rows(); ++r)
    for (std::size_t c = 0; c < a.body.cols(); ++c) {
      if (!(a.body(r, c).coefficient(g, 0) == WeilElement(alg, r == c ? 1 : 0)))
        throw InvariantViolation("tangent body does not start at the identity");
      t.body_velocity.at(r, c) = a.body(r, c).coefficient(g, g);
    }
  return t;
}

/**
 * Verifies that `a` equals id + m * V where m is the product of all the
 * generators in `args`, and returns the tangent with velocity V. This is the
 * computational content of every "there exists a unique t with
 * t(d1...dn) = ..." statement.
 */
inline Tangent split_top(const Arrow& a, Mask args, const std::string& what) {
  const auto& alg = a.algebra();
  for (const auto& c : a.source.coords)
    if (c.depends_on(args)) throw InvariantViolation(what + ": source depends on the arguments");
  auto check = [&](const WeilElement& delta) {
    for (const auto& [m, c] : delta.terms())
      if ((m & args) != args)
        throw InvariantViolation(what + ": residual coefficient on " + alg->monomial_name(m));
  };
  Tangent t{a.source, {}, WeilMatrix(alg, a.body.rows(), a.body.cols())};
  for (std::size_t k = 0; k < a.target.dim(); ++k) {
    const WeilElement delta = a.target.coords[k] - a.source.coords[k];
    check(delta);
    t.base_velocity.push_back(delta.coefficient(args, args));
  }
  for (std::size_t r = 0; r < a.body.rows(); ++r)
    for (std::size_t c = 0; c < a.body.cols(); ++c) {
      const WeilElement delta = a.body(r, c) - WeilElement(alg, r == c ? 1 : 0);
      check(delta);
      t.body_velocity.at(r, c) = delta.coefficient(args, args);
    }
  return t;
}

/// pi_* on tangents, computed through the arrow map.
inline Tangent project_tangent(const ExactSequence& seq, const Tangent& t) {
  const auto& alg = t.algebra();
  const auto ext = alg->with_fresh(1);
  const std::size_t s = alg->generators();
  const Arrow image = seq.project(t.embedded(ext).at(WeilElement::generator(ext, s)));
  return tangent_from_arrow(image, s).projected(alg);
}

inline bool tangent_in_kernel(const ExactSequence& seq, const Tangent& t) { return project_tangent(seq, t).is_zero(); }

/// Element of A^n G: an arrow over the ambient algebra plus its argument generators.
struct Microcube {
  std::vector<std::size_t> args;
  Arrow arrow;

  [[nodiscard]] std::size_t degree() const noexcept { return args.size(); }
  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return arrow.algebra(); }
  [[nodiscard]] const BasePoint& anchor() const noexcept { return arrow.source; }
  [[nodiscard]] Mask arg_mask() const noexcept {
    Mask m = 0;
    for (auto a : args) m |= Mask{1} << a;
    return m;
  }
  [[nodiscard]] WeilElement arg(std::size_t slot) const { return WeilElement::generator(algebra(), args.at(slot)); }
  [[nodiscard]] WeilElement arg_product() const { return WeilElement::monomial(algebra(), arg_mask()); }

  friend bool operator==(const Microcube&, const Microcube&) = default;
};

/// Arrow with selected arguments replaced; other generators are untouched.
inline Arrow substitute_args(const Microcube& g, const std::vector<std::pair<std::size_t, WeilElement>>& slot_values) {
  std::vector<std::pair<std::size_t, WeilElement>> changes;
  for (const auto& [slot, value] : slot_values) changes.emplace_back(g.args.at(slot), value);
  return g.arrow.substituted(Substitution::assign(g.algebra(), changes));
}

/// gamma(v_1, ..., v_n).
inline Arrow evaluate(const Microcube& g, const std::vector<WeilElement>& values) {
  if (values.size() != g.degree()) throw PreconditionError("evaluate: one value per argument required");
  std::vector<std::pair<std::size_t, WeilElement>> sv;
  for (std::size_t k = 0; k < values.size(); ++k) sv.emplace_back(k, values[k]);
  return substitute_args(g, sv);
}

inline std::string microcube_violation(const Microcube& g) {
  const auto& alg = g.algebra();
  for (std::size_t i = 0; i < g.args.size(); ++i) {
    if (g.args[i] >= alg->generators()) return "argument generator out of range";
    if (!alg->alive(Mask{1} << g.args[i])) return "argument generator is killed";
    for (std::size_t j = 0; j < i; ++j)
      if (g.args[i] == g.args[j]) return "repeated argument generator";
  }
  const Mask args = g.arg_mask();
  for (const auto& c : g.arrow.source.coords)
    if (c.depends_on(args)) return "source is not constant";
  const Arrow origin = evaluate(g, std::vector<WeilElement>(g.degree(), WeilElement(alg)));
  if (!is_identity_arrow(origin)) return "value at the origin is not an identity arrow";
  return {};
}

inline Microcube make_microcube(std::vector<std::size_t> args, Arrow arrow) {
  Microcube g{std::move(args), std::move(arrow)};
  if (auto v = microcube_violation(g); !v.empty()) throw InvariantViolation("microcube: " + v);
  return g;
}

namespace detail {

inline void check_slot_value(const Microcube& g, Mask remaining, const WeilElement& e) {
  require_same(e.algebra(), g.algebra());
  if (e.depends_on(remaining)) throw PreconditionError("slice value collides with a remaining argument");
}

inline std::vector<std::size_t> without(const std::vector<std::size_t>& v, std::vector<std::size_t> slots) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (std::find(slots.begin(), slots.end(), k) == slots.end()) out.push_back(v[k]);
  return out;
}

inline Mask mask_of(const std::vector<std::size_t>& gens) {
  Mask m = 0;
  for (auto a : gens) m |= Mask{1} << a;
  return m;
}

}  // namespace detail

/// gamma^i_e(d) = gamma(..., e at slot i, ...) gamma(0, ..., e, ..., 0)^{-1}.
inline Microcube slice(const Microcube& g, std::size_t slot, const WeilElement& e) {
  if (slot >= g.degree()) throw PreconditionError("slice: index out of range");
  auto rest = detail::without(g.args, {slot});
  detail::check_slot_value(g, detail::mask_of(rest), e);
  const Arrow moved = substitute_args(g, {{slot, e}});
  std::vector<std::pair<std::size_t, WeilElement>> corner{{slot, e}};
  for (std::size_t k = 0; k < g.degree(); ++k)
    if (k != slot) corner.emplace_back(k, WeilElement(g.algebra()));
  return {std::move(rest), compose(moved, inverse(substitute_args(g, corner)))};
}

/// Double slice gamma^{i,j}_{e1,e2} for slots i < j.
inline Microcube slice2(const Microcube& g, std::size_t i, std::size_t j, const WeilElement& e1,
                        const WeilElement& e2) {
  if (!(i < j) || j >= g.degree()) throw PreconditionError("slice2: indices must satisfy i < j < degree");
  auto rest = detail::without(g.args, {i, j});
  detail::check_slot_value(g, detail::mask_of(rest), e1);
  detail::check_slot_value(g, detail::mask_of(rest), e2);
  const Arrow moved = substitute_args(g, {{i, e1}, {j, e2}});
  std::vector<std::pair<std::size_t, WeilElement>> corner{{i, e1}, {j, e2}};
  for (std::size_t k = 0; k < g.degree(); ++k)
    if (k != i && k != j) corner.emplace_back(k, WeilElement(g.algebra()));
  return {std::move(rest), compose(moved, inverse(substitute_args(g, corner)))};
}

inline Tangent as_tangent(const Microcube& g) {
  if (g.degree() != 1) throw PreconditionError("as_tangent: degree-one microcube required");
  return tangent_from_arrow(g.arrow, g.args[0]);
}

/// gamma_i(d) = gamma(0, ..., d at slot i, ..., 0).
inline Tangent edge(const Microcube& g, std::size_t slot) {
  if (slot >= g.degree()) throw PreconditionError("edge: index out of range");
  std::vector<std::pair<std::size_t, WeilElement>> zeros;
  for (std::size_t k = 0; k < g.degree(); ++k)
    if (k != slot) zeros.emplace_back(k, WeilElement(g.algebra()));
  return tangent_from_arrow(substitute_args(g, zeros), g.args[slot]);
}

/// (gamma o D^theta)(d_0, ..., d_{n-1}) = gamma(d_{theta[0]}, ..., d_{theta[n-1]}).
inline Microcube permute(const Microcube& g, const std::vector<std::size_t>& theta) {
  if (theta.size() != g.degree()) throw PreconditionError("permute: wrong permutation length");
  auto sorted = theta;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k) throw PreconditionError("permute: not a permutation");
  std::vector<std::pair<std::size_t, WeilElement>> sv;
  for (std::size_t k = 0; k < theta.size(); ++k) sv.emplace_back(k, g.arg(theta[k]));
  return {g.args, substitute_args(g, sv)};
}

/// Sigma gamma (d1, d2) = gamma(d2, d1).
inline Microcube transpose(const Microcube& g) {
  if (g.degree() != 2) throw PreconditionError("transpose: microsquare required");
  return permute(g, {1, 0});
}

/// tau^1 gamma (d1, d2) = gamma(d1, 0).
inline Microcube tau1(const Microcube& g) {
  if (g.degree() != 2) throw PreconditionError("tau1: microsquare required");
  return {g.args, substitute_args(g, {{1, WeilElement(g.algebra())}})};
}

/// tau^2 gamma (d1, d2) = gamma(0, d2).
inline Microcube tau2(const Microcube& g) {
  if (g.degree() != 2) throw PreconditionError("tau2: microsquare required");
  return {g.args, substitute_args(g, {{0, WeilElement(g.algebra())}})};
}

/// (a ._i gamma)(..., d_i, ...) = gamma(..., a d_i, ...).
inline Microcube scale(const Microcube& g, std::size_t slot, const Rational& a) {
  if (slot >= g.degree()) throw PreconditionError("scale: index out of range");
  return {g.args, substitute_args(g, {{slot, a * g.arg(slot)}})};
}

/// The degenerate microsquare eps_t(d1, d2) = t(d1 d2) on the given argument generators.
inline Microcube eps(const Tangent& t, std::vector<std::size_t> args) {
  if (args.size() != 2) throw PreconditionError("eps: two argument generators required");
  const auto& alg = t.algebra();
  const Mask m = detail::mask_of(args);
  auto touches = [m](const WeilElement& w) { return w.depends_on(m); };
  if (std::any_of(t.anchor.coords.begin(), t.anchor.coords.end(), touches) ||
      std::any_of(t.base_velocity.begin(), t.base_velocity.end(), touches) ||
      std::any_of(t.body_velocity.entries().begin(), t.body_velocity.entries().end(), touches))
    throw PreconditionError("eps: tangent depends on the argument generators");
  return {std::move(args), t.at(WeilElement::monomial(alg, m))};
}

/// eps_t over two freshly appended generators.
inline Microcube eps(const Tangent& t) {
  const auto ext = t.algebra()->with_fresh(2);
  const std::size_t n = t.algebra()->generators();
  return eps(t.embedded(ext), {n, n + 1});
}

/**
 * Lie bracket on a group-like fibre: the unique s with
 * s(d1 d2) = t2(-d2) t1(-d1) t2(d2) t1(d1).
 */
inline Tangent bracket(const Tangent& t1, const Tangent& t2) {
  require_same_fibre(t1, t2);
  for (const auto& v : t1.base_velocity)
    if (!v.is_zero()) throw PreconditionError("bracket: tangents must be vertical (use section_bracket)");
  for (const auto& v : t2.base_velocity)
    if (!v.is_zero()) throw PreconditionError("bracket: tangents must be vertical (use section_bracket)");
  const auto& alg = t1.algebra();
  const auto ext = alg->with_fresh(2);
  const std::size_t n = alg->generators();
  const auto a = t1.embedded(ext);
  const auto b = t2.embedded(ext);
  const auto s = WeilElement::generator(ext, n);
  const auto u = WeilElement::generator(ext, n + 1);
  const Arrow word = compose_all({b.at(-u), a.at(-s), b.at(u), a.at(s)});
  return split_top(word, detail::mask_of({n, n + 1}), "bracket").projected(alg);
}

namespace detail {

/// Componentwise base + (plus - minus); anchors must agree.
inline Arrow affine_combination(const Arrow& base, const Arrow& plus, const Arrow& minus) {
  Arrow out = base;
  for (std::size_t k = 0; k < out.target.dim(); ++k)
    out.target.coords[k] += plus.target.coords[k] - minus.target.coords[k];
  out.body += plus.body - minus.body;
  return out;
}

inline void require_compatible(const Microcube& a, const Microcube& b) {
  require_same(a.algebra(), b.algebra());
  if (a.args != b.args) throw PreconditionError("microcubes use different argument generators");
  if (!(a.anchor() == b.anchor())) throw PreconditionError("microcubes are anchored at different points");
}

inline Microcube difference_along(const Groupoid& grp, const Microcube& g2, const Microcube& g1, std::size_t shared_zero) {
  if (g1.degree() != 2) throw PreconditionError("difference: microsquares required");
  require_compatible(g2, g1);
  const WeilElement zero(g1.algebra());
  const Arrow s1 = substitute_args(g1, {{shared_zero, zero}});
  const Arrow s2 = substitute_args(g2, {{shared_zero, zero}});
  if (!(s1 == s2)) throw PreconditionError("difference: the shared slice of the two microsquares differs");
  Microcube out{g1.args, affine_combination(s1, g2.arrow, g1.arrow)};
  if (!grp.validate(out.arrow)) throw PreconditionError("difference: result fails group membership");
  return out;
}

}  // namespace detail

/// gamma2 -_1 gamma1, defined when gamma1(0, .) = gamma2(0, .).
inline Microcube diff1(const Groupoid& grp, const Microcube& g2, const Microcube& g1) {
  return detail::difference_along(grp, g2, g1, 0);
}

/// gamma2 -_2 gamma1, defined when gamma1(., 0) = gamma2(., 0).
inline Microcube diff2(const Groupoid& grp, const Microcube& g2, const Microcube& g1) {
  return detail::difference_along(grp, g2, g1, 1);
}

/// Strong difference gamma2 -. gamma1 of microsquares agreeing on D(2).
inline Tangent strong_diff(const Microcube& g2, const Microcube& g1) {
  if (g1.degree() != 2) throw PreconditionError("strong_diff: microsquares required");
  detail::require_compatible(g2, g1);
  const Mask args = g1.arg_mask();
  const auto& alg = g1.algebra();
  auto top_only = [args](const WeilElement& w) {
    for (const auto& [m, c] : w.terms())
      if ((m & args) != args) return false;
    return true;
  };
  Tangent t{g1.anchor(), {}, WeilMatrix(alg, g1.arrow.body.rows(), g1.arrow.body.cols())};
  for (std::size_t k = 0; k < g1.arrow.target.dim(); ++k) {
    const WeilElement delta = g2.arrow.target.coords[k] - g1.arrow.target.coords[k];
    if (!top_only(delta)) throw PreconditionError("strong_diff: microsquares differ on D(2)");
    t.base_velocity.push_back(delta.coefficient(args, args));
  }
  const WeilMatrix delta = g2.arrow.body - g1.arrow.body;
  for (std::size_t r = 0; r < delta.rows(); ++r)
    for (std::size_t c = 0; c < delta.cols(); ++c) {
      if (!top_only(delta(r, c))) throw PreconditionError("strong_diff: microsquares differ on D(2)");
      t.body_velocity.at(r, c) = delta(r, c).coefficient(args, args);
    }
  // gamma2 = gamma1 (id + d1 d2 V) = (id + d1 d2 V) gamma1 on the body.
  const WeilMatrix factor = WeilMatrix::identity(alg, delta.rows()) + g1.arg_product() * t.body_velocity;
  if (!(g1.arrow.body * factor == g2.arrow.body) || !(factor * g1.arrow.body == g2.arrow.body))
    throw InvariantViolation("strong_diff: quotient has unexpected lower-order terms");
  return t;
}

/// Section of A G: base point -> tangent anchored there.
class Section {
 public:
  using Fn = std::function<Tangent(const BasePoint&, const AlgebraPtr&)>;

  explicit Section(Fn f) : f_(std::move(f)) {}

  [[nodiscard]] Tangent at(const BasePoint& x, const AlgebraPtr& alg) const {
    Tangent t = f_(x, alg);
    if (!(t.anchor == x)) throw InvariantViolation("section returned a tangent anchored elsewhere");
    return t;
  }

  /// Constant velocity on a one-point base (row-major entries).
  static Section constant(std::size_t dim, std::vector<Rational> velocity) {
    if (velocity.size() != dim * dim) throw PreconditionError("section: velocity has the wrong size");
    return Section([dim, velocity = std::move(velocity)](const BasePoint& x, const AlgebraPtr& alg) {
      return Tangent{x, {}, WeilMatrix::constant(alg, dim, dim, velocity)};
    });
  }

  /// Polynomial vector field on M, a section of A(M x M).
  static Section vector_field(std::vector<Polynomial> components) {
    return Section([components = std::move(components)](const BasePoint& x, const AlgebraPtr& alg) {
      if (x.dim() != components.size()) throw PreconditionError("vector field: dimension mismatch");
      Tangent t{x, {}, WeilMatrix(alg, 0, 0)};
      for (const auto& p : components) t.base_velocity.push_back(p.evaluate(alg, x.coords));
      return t;
    });
  }

 private:
  Fn f_;
};

/// (Y * X)(d1, d2) = Y_{d2} * X_{d1} at x, over two fresh generators.
inline Microcube bisection_product(const Section& Y, const Section& X, const BasePoint& x, const AlgebraPtr& alg) {
  const auto ext = alg->with_fresh(2);
  const std::size_t n = alg->generators();
  BasePoint xe;
  for (const auto& c : x.coords) xe.coords.push_back(c.embedded(ext));
  const Arrow first = X.at(xe, ext).at(WeilElement::generator(ext, n));
  const Arrow second = Y.at(first.target, ext).at(WeilElement::generator(ext, n + 1));
  return {{n, n + 1}, compose(second, first)};
}

/// [X, Y] at x, from Y_{-d2} * X_{-d1} * Y_{d2} * X_{d1} in the bisection group.
inline Tangent section_bracket(const Section& X, const Section& Y, const BasePoint& x, const AlgebraPtr& alg) {
  const auto ext = alg->with_fresh(2);
  const std::size_t n = alg->generators();
  const auto s = WeilElement::generator(ext, n);
  const auto u = WeilElement::generator(ext, n + 1);
  BasePoint xe;
  for (const auto& c : x.coords) xe.coords.push_back(c.embedded(ext));
  const Arrow r1 = X.at(xe, ext).at(s);
  const Arrow r2 = Y.at(r1.target, ext).at(u);
  const Arrow r3 = X.at(r2.target, ext).at(-s);
  const Arrow r4 = Y.at(r3.target, ext).at(-u);
  const Arrow word = compose_all({r4, r3, r2, r1});
  return split_top(word, detail::mask_of({n, n + 1}), "section bracket").projected(alg);
}

}  // namespace sdg
