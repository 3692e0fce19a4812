#pragma once

/**
 * @file connection.hpp
 * @brief Connections on 0 -> L -> H -> G, their lift to microsquares, and
 *        the curvature form.
 *
 * Over a one-point base a connection is a rational matrix acting on
 * row-major flattened velocities. On a trivial gauge groupoid it is given by
 * polynomial connection forms A_1..A_m valued in the Lie algebra of K; the
 * lift of a base tangent v at x has vertical velocity -sum_i A_i(x) v_i.
 */

#include <string>
#include <utility>
#include <vector>

#include "sdg/microcalc.hpp"

namespace sdg {

/// Matrix of polynomials in the base coordinates, row-major.
struct PolynomialMatrix {
  std::size_t dim = 0;
  std::vector<Polynomial> entries;

  [[nodiscard]] WeilMatrix evaluate(const AlgebraPtr& alg, const BasePoint& x) const {
    WeilMatrix out(alg, dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) out.at(r, c) = entries.at(r * dim + c).evaluate(alg, x.coords);
    return out;
  }
};

class Connection {
 public:
  enum class Kind { splitting, gauge };

  /// `matrix` has H.dim^2 rows and G.dim^2 columns.
  static Connection splitting(ExactSequence seq, std::vector<Rational> matrix) {
    if (seq.G.kind != GroupoidKind::group) throw PreconditionError("splitting connections need a one-point base");
    const std::size_t rows = seq.H.group.dim * seq.H.group.dim;
    const std::size_t cols = seq.G.group.dim * seq.G.group.dim;
    if (matrix.size() != rows * cols) throw PreconditionError("splitting matrix has the wrong size");
    Connection c(std::move(seq), Kind::splitting);
    c.matrix_ = std::move(matrix);
    c.check_section();
    return c;
  }

  /// One connection form per base coordinate.
  static Connection gauge(ExactSequence seq, std::vector<PolynomialMatrix> forms) {
    if (seq.family != ModelFamily::gauge) throw PreconditionError("connection forms need a gauge model");
    if (forms.size() != seq.G.base_dim) throw PreconditionError("one connection form per base coordinate required");
    for (const auto& f : forms) {
      if (f.dim != seq.H.group.dim || f.entries.size() != f.dim * f.dim)
        throw PreconditionError("connection form has the wrong shape");
      for (const auto& p : f.entries)
        if (p.variables() != seq.G.base_dim) throw PreconditionError("connection form uses the wrong variables");
    }
    Connection c(std::move(seq), Kind::gauge);
    c.forms_ = std::move(forms);
    return c;
  }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const ExactSequence& sequence() const noexcept { return seq_; }
  [[nodiscard]] const std::vector<Rational>& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const std::vector<PolynomialMatrix>& forms() const noexcept { return forms_; }

  /// nabla : A G -> A H.
  [[nodiscard]] Tangent apply(const Tangent& t) const {
    const auto& alg = t.algebra();
    if (t.anchor.dim() != seq_.G.base_dim) throw PreconditionError("tangent anchored outside the model base");
    if (kind_ == Kind::splitting) {
      const std::size_t g = seq_.G.group.dim;
      const std::size_t h = seq_.H.group.dim;
      if (t.body_velocity.rows() != g) throw PreconditionError("tangent does not belong to G");
      const auto& in = t.body_velocity.entries();
      WeilMatrix out(alg, h, h);
      for (std::size_t r = 0; r < h * h; ++r)
        for (std::size_t c = 0; c < g * g; ++c) {
          const Rational& m = matrix_[r * g * g + c];
          if (m != 0) out.at(r / h, r % h) += in[c] * m;
        }
      return {t.anchor, {}, std::move(out)};
    }
    Tangent out{t.anchor, t.base_velocity, WeilMatrix(alg, seq_.H.group.dim, seq_.H.group.dim)};
    for (std::size_t i = 0; i < forms_.size(); ++i)
      out.body_velocity -= t.base_velocity.at(i) * forms_[i].evaluate(alg, t.anchor);
    return out;
  }

  /// (nabla gamma)(d1, d2) = (nabla gamma^1_{d1})_{d2} (nabla gamma^2_0)_{d1}.
  [[nodiscard]] Microcube lift(const Microcube& g) const {
    if (g.degree() != 2) throw PreconditionError("lift: microsquare required");
    const Arrow first = apply(as_tangent(slice(g, 1, WeilElement(g.algebra())))).at(g.arg(0));
    const Arrow second = apply(as_tangent(slice(g, 0, g.arg(0)))).at(g.arg(1));
    return {g.args, compose(second, first)};
  }

  /// The holonomy word of the curvature definition, as an arrow of H.
  [[nodiscard]] Arrow curvature_word(const Microcube& g) const {
    if (g.degree() != 2) throw PreconditionError("curvature: microsquare required");
    const WeilElement zero(g.algebra());
    const Arrow p1 = apply(as_tangent(slice(g, 1, zero))).at(g.arg(0));
    const Arrow p2 = apply(as_tangent(slice(g, 0, g.arg(0)))).at(g.arg(1));
    const Arrow p3 = apply(as_tangent(slice(g, 1, g.arg(1)))).at(g.arg(0));
    const Arrow p4 = apply(as_tangent(slice(g, 0, zero))).at(g.arg(1));
    return compose_all({inverse(p1), inverse(p2), p3, p4});
  }

  /// Omega(gamma): the L-tangent t with t(d1 d2) equal to the curvature word.
  [[nodiscard]] Tangent curvature(const Microcube& g) const {
    const Arrow word = curvature_word(g);
    if (!seq_.L.validate(word)) throw InvariantViolation("curvature word leaves the kernel bundle");
    Tangent t = split_top(word, g.arg_mask(), "curvature");
    if (!tangent_in_kernel(seq_, t)) throw InvariantViolation("curvature is not kernel-valued");
    return t;
  }

  /// Sigma nabla Sigma gamma -. nabla gamma.
  [[nodiscard]] Tangent curvature_via_strong_diff(const Microcube& g) const {
    Tangent t = strong_diff(transpose(lift(transpose(g))), lift(g));
    if (!tangent_in_kernel(seq_, t)) throw InvariantViolation("strong difference is not kernel-valued");
    return t;
  }

  /// The section x -> nabla(X(x)) of A H.
  [[nodiscard]] Section lift(const Section& X) const {
    return Section([c = *this, X](const BasePoint& x, const AlgebraPtr& alg) { return c.apply(X.at(x, alg)); });
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    if (kind_ == Kind::splitting) {
      out = "splitting [";
      for (std::size_t k = 0; k < matrix_.size(); ++k) out += (k ? " " : "") + format_rational(matrix_[k]);
      return out + "]";
    }
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      out += (i ? "; " : "") + std::string("A") + std::to_string(i + 1) + " = [";
      for (std::size_t k = 0; k < forms_[i].entries.size(); ++k)
        out += (k ? ", " : "") + forms_[i].entries[k].to_string();
      out += "]";
    }
    return out;
  }

 private:
  Connection(ExactSequence seq, Kind kind) : seq_(std::move(seq)), kind_(kind) {}

  /// pi_* nabla = id and values in the Lie algebra of H, on the basis velocities of G.
  void check_section() const {
    const auto alg = Algebra::create({});
    const std::size_t g = seq_.G.group.dim;
    for (std::size_t k = 0; k < g * g; ++k) {
      if (!seq_.G.group.is_free(k / g, k % g)) continue;
      std::vector<Rational> v(g * g);
      v[k] = 1;
      const Tangent t{{}, {}, WeilMatrix::constant(alg, g, g, v)};
      const Tangent lifted = apply(t);
      if (!seq_.H.group.contains_velocity(lifted.body_velocity))
        throw PreconditionError("splitting leaves the Lie algebra of H");
      if (!(project_tangent(seq_, lifted) == t)) throw PreconditionError("splitting is not a section of pi_*");
    }
  }

  ExactSequence seq_;
  Kind kind_;
  std::vector<Rational> matrix_;
  std::vector<PolynomialMatrix> forms_;
};

/// (a, b) -> a E12 + b E23 + (lambda a + mu b) E13.
inline Connection heisenberg_connection(const Rational& lambda = 0, const Rational& mu = 0) {
  std::vector<Rational> m(81);
  auto set = [&m](std::size_t hr, std::size_t hc, std::size_t gr, std::size_t gc, const Rational& v) {
    m[(hr * 3 + hc) * 9 + gr * 3 + gc] = v;
  };
  set(0, 1, 0, 1, 1);
  set(1, 2, 0, 2, 1);
  set(0, 2, 0, 1, lambda);
  set(0, 2, 0, 2, mu);
  return Connection::splitting(heisenberg_model(), std::move(m));
}

/// A -> diag(A, c tr A), a Lie algebra morphism and hence flat.
inline Connection flat_control_connection(const Rational& c = 1) {
  std::vector<Rational> m(9 * 4);
  auto set = [&m](std::size_t hr, std::size_t hc, std::size_t gk, const Rational& v) { m[(hr * 3 + hc) * 4 + gk] += v; };
  set(0, 0, 0, 1);
  set(0, 1, 1, 1);
  set(1, 0, 2, 1);
  set(1, 1, 3, 1);
  set(2, 2, 0, c);
  set(2, 2, 3, c);
  return Connection::splitting(flat_control_model(), std::move(m));
}

/// Preset connection forms: A = x1 dx2 for scalars, a non-abelian pair for 2x2 groups.
inline Connection gauge_connection(const std::string& structure = "scalar", std::size_t base_dim = 2) {
  ExactSequence seq = make_model("gauge", structure, base_dim);
  const std::size_t m = base_dim;
  const std::size_t k = seq.H.group.dim;
  std::vector<PolynomialMatrix> forms(m, PolynomialMatrix{k, std::vector<Polynomial>(k * k, Polynomial(m))});
  if (m >= 2) {
    if (k == 1) {
      forms[1].entries[0] = Polynomial::variable(m, 0);
    } else {
      forms[0].entries[1] = Polynomial::constant(m, 1);
      forms[1].entries[0] = Polynomial::variable(m, 0);
      forms[1].entries[2] = Polynomial::constant(m, 1);
      forms[1].entries[3] = Polynomial::variable(m, 0, -1);
    }
  }
  return Connection::gauge(std::move(seq), std::move(forms));
}

/// Registry preset for a model name.
inline Connection preset_connection(const std::string& model, const std::string& structure = "scalar",
                                    std::size_t base_dim = 2) {
  if (model == "heisenberg") return heisenberg_connection();
  if (model == "flat-control") return flat_control_connection();
  if (model == "gauge") return gauge_connection(structure, base_dim);
  (void)make_model(model);
  throw PreconditionError("no preset connection for model '" + model + "'");
}

/// Omega(Y * X) and nabla[X, Y] - [nabla X, nabla Y] at x.
struct StructureEquation {
  Tangent lhs;
  Tangent rhs;
  bool product_lifts;  ///< nabla(Y * X) = nabla Y * nabla X
};

inline StructureEquation structure_equation(const Connection& c, const Section& X, const Section& Y,
                                            const BasePoint& x, const AlgebraPtr& alg) {
  const Microcube yx = bisection_product(Y, X, x, alg);
  const Section lx = c.lift(X);
  const Section ly = c.lift(Y);
  const bool lifts = c.lift(yx) == bisection_product(ly, lx, x, alg);
  Tangent lhs = c.curvature(yx).projected(alg);
  Tangent rhs = tangent_sub(c.apply(section_bracket(X, Y, x, alg)), section_bracket(lx, ly, x, alg));
  return {std::move(lhs), std::move(rhs), lifts};
}

}  // namespace sdg
