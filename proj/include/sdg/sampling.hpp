#pragma once

/**
 * @file sampling.hpp
 * @brief Seeded generators of rationals, Weil elements, tangents,
 *        microcubes, connections and sections.
 *
 * Everything is drawn from std::mt19937_64 through integer reductions only,
 * so a seed determines every sample independently of the standard library's
 * distribution implementations.
 */

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sdg/connection.hpp"

namespace sdg {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, Rational bound = 3) : rng_(seed), bound_(std::move(bound)) {}

  /// Seed derived from a base seed, a label and an index.
  static std::uint64_t derive(std::uint64_t seed, std::string_view label, std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : label) h = (h ^ ch) * 1099511628211ull;
    std::uint64_t z = seed ^ h ^ (index * 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  [[nodiscard]] const Rational& bound() const noexcept { return bound_; }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

  bool coin() { return (rng_() & 1u) != 0; }

  /// p/q with q in 1..4 and |p/q| <= bound.
  Rational rational() {
    const long q = static_cast<long>(below(4)) + 1;
    Rational limit = bound_ * q;
    const mpz_class top = limit.get_num() / limit.get_den();
    const long p_max = top.get_si();
    const long p = static_cast<long>(below(static_cast<std::uint64_t>(2 * p_max + 1))) - p_max;
    Rational r(p, q);
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational() {
    for (;;)
      if (Rational r = rational(); r != 0) return r;
  }

  /// Random element; `with_constant` controls the unit part.
  WeilElement weil(const AlgebraPtr& alg, bool with_constant = true) {
    WeilElement out(alg);
    for (Mask m = with_constant ? 0 : 1; m < alg->slots(); ++m)
      if (alg->alive(m)) out += WeilElement::monomial(alg, m, rational());
    return out;
  }

  WeilElement invertible_weil(const AlgebraPtr& alg) {
    return weil(alg, false) + WeilElement(alg, nonzero_rational());
  }

  /// Constant velocity in the Lie algebra of `spec`.
  WeilMatrix velocity(const AlgebraPtr& alg, const MatrixGroupSpec& spec) {
    WeilMatrix v(alg, spec.dim, spec.dim);
    for (std::size_t r = 0; r < spec.dim; ++r)
      for (std::size_t c = 0; c < spec.dim; ++c)
        if (spec.is_free(r, c)) v.at(r, c) = WeilElement(alg, rational());
    if (spec.unit_determinant && spec.dim > 0) {
      WeilElement rest(alg);
      for (std::size_t i = 0; i + 1 < spec.dim; ++i) rest += v(i, i);
      v.at(spec.dim - 1, spec.dim - 1) = -rest;
    }
    return v;
  }

  std::vector<WeilElement> base_vector(const AlgebraPtr& alg, std::size_t dim) {
    std::vector<WeilElement> v;
    for (std::size_t k = 0; k < dim; ++k) v.emplace_back(alg, rational());
    return v;
  }

  BasePoint anchor(const AlgebraPtr& alg, const Groupoid& grp) { return BasePoint{base_vector(alg, grp.base_dim)}; }

  /// Random tangent of `grp` at `x`.
  Tangent tangent(const Groupoid& grp, const BasePoint& x, const AlgebraPtr& alg) {
    Tangent t = zero_tangent(alg, x, grp.group.dim);
    if (grp.kind == GroupoidKind::pair || grp.kind == GroupoidKind::gauge) t.base_velocity = base_vector(alg, grp.base_dim);
    t.body_velocity = velocity(alg, grp.group);
    return t;
  }

  /**
   * Random micro-n-cube on the generators `args`: the product over nonempty
   * S of (id + d_S V_S) with V_S in the Lie algebra, and target x + sum d_S v_S.
   */
  Microcube microcube(const Groupoid& grp, const AlgebraPtr& alg, const std::vector<std::size_t>& args,
                      const BasePoint& x) {
    Microcube g{args, grp.identity(alg, x)};
    std::vector<Mask> subsets;
    for (Mask s = 1; s < (Mask{1} << args.size()); ++s) subsets.push_back(s);
    return perturb(grp, g, subsets);
  }

  Microcube microcube(const Groupoid& grp, const AlgebraPtr& alg, const std::vector<std::size_t>& args) {
    return microcube(grp, alg, args, anchor(alg, grp));
  }

  /**
   * Multiplies on the right by (id + d_S V_S) and shifts the target by d_S v_S
   * for each subset S, given as a mask over argument slots. Dropping the
   * subsets that meet a slot leaves the corresponding slice unchanged.
   */
  Microcube perturb(const Groupoid& grp, Microcube g, const std::vector<Mask>& slot_subsets) {
    const auto& alg = g.algebra();
    const bool moves = grp.kind == GroupoidKind::pair || grp.kind == GroupoidKind::gauge;
    for (Mask s : slot_subsets) {
      Mask m = 0;
      for (std::size_t k = 0; k < g.args.size(); ++k)
        if (s & (Mask{1} << k)) m |= Mask{1} << g.args[k];
      const WeilElement mono = WeilElement::monomial(alg, m);
      g.arrow.body = g.arrow.body * (WeilMatrix::identity(alg, grp.group.dim) + mono * velocity(alg, grp.group));
      if (moves)
        for (auto& c : g.arrow.target.coords) c += mono * rational();
    }
    return g;
  }

  /// Random point of `spec` over `alg`: a rational member times id + sum_g g V_g over the generators.
  WeilMatrix group_point(const AlgebraPtr& alg, const MatrixGroupSpec& spec) {
    const std::size_t n = spec.dim;
    WeilMatrix base = WeilMatrix::identity(alg, n);
    if (spec.unit_determinant) {
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          if (r == c || !spec.is_free(r, c)) continue;
          WeilMatrix e = WeilMatrix::identity(alg, n);
          e.at(r, c) = WeilElement(alg, rational());
          base = base * e;
        }
    } else {
      for (;;) {
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            if (spec.is_free(r, c)) base.at(r, c) = WeilElement(alg, r == c ? nonzero_rational() : rational());
        if (spec.contains(base)) break;
      }
    }
    WeilMatrix out = base;
    for (std::size_t g = 0; g < alg->generators(); ++g)
      out = out * (WeilMatrix::identity(alg, n) + WeilElement::generator(alg, g) * velocity(alg, spec));
    return out;
  }

  /// Random point of M over `alg` with nilpotent displacement.
  BasePoint weil_point(const AlgebraPtr& alg, std::size_t dim) {
    BasePoint p;
    for (std::size_t k = 0; k < dim; ++k) p.coords.push_back(weil(alg));
    return p;
  }

  /// Random arrow of `grp` with the given source.
  Arrow arrow(const Groupoid& grp, const AlgebraPtr& alg, const BasePoint& source) {
    BasePoint target = source;
    if (grp.kind == GroupoidKind::pair || grp.kind == GroupoidKind::gauge) target = weil_point(alg, grp.base_dim);
    return {std::move(target), group_point(alg, grp.group), source};
  }

  /// Random matrix of polynomials of total degree <= `degree` in the Lie algebra of `spec`.
  PolynomialMatrix polynomial_matrix(const MatrixGroupSpec& spec, std::size_t vars, std::size_t degree) {
    PolynomialMatrix out{spec.dim, std::vector<Polynomial>(spec.dim * spec.dim, Polynomial(vars))};
    for (std::size_t r = 0; r < spec.dim; ++r)
      for (std::size_t c = 0; c < spec.dim; ++c)
        if (spec.is_free(r, c)) out.entries[r * spec.dim + c] = polynomial(vars, degree);
    if (spec.unit_determinant && spec.dim > 0) {
      Polynomial rest(vars);
      for (std::size_t i = 0; i + 1 < spec.dim; ++i) rest = rest + out.entries[i * spec.dim + i];
      out.entries.back() = Rational(-1) * rest;
    }
    return out;
  }

  /// Sparse random polynomial: each monomial present with probability 1/2.
  Polynomial polynomial(std::size_t vars, std::size_t degree) {
    Polynomial p(vars);
    Polynomial::Exponents e(vars, 0);
    auto visit = [&](auto&& self, std::size_t k, std::size_t left) -> void {
      if (k == vars) {
        if (coin()) p.add_term(e, rational());
        return;
      }
      for (std::size_t a = 0; a <= left; ++a) {
        e[k] = static_cast<unsigned>(a);
        self(self, k + 1, left - a);
      }
      e[k] = 0;
    };
    visit(visit, 0, degree);
    return p;
  }

  /// Random connection of the shape `seq` admits.
  Connection connection(const ExactSequence& seq, std::size_t degree) {
    switch (seq.family) {
      case ModelFamily::heisenberg:
        return heisenberg_connection(rational(), rational());
      case ModelFamily::flat_control:
        return flat_control_connection(rational());
      case ModelFamily::gauge: {
        std::vector<PolynomialMatrix> forms;
        for (std::size_t i = 0; i < seq.G.base_dim; ++i)
          forms.push_back(polynomial_matrix(seq.H.group, seq.G.base_dim, degree));
        return Connection::gauge(seq, std::move(forms));
      }
    }
    throw PreconditionError("unknown model family");
  }

  /// Random section of A G: constant velocities on a point, polynomial vector fields otherwise.
  Section section(const ExactSequence& seq, std::size_t degree) {
    if (seq.G.kind == GroupoidKind::group) {
      const auto alg = Algebra::create({});
      return Section::constant(seq.G.group.dim, velocity(alg, seq.G.group).constant_term());
    }
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < seq.G.base_dim; ++i) comps.push_back(polynomial(seq.G.base_dim, degree));
    return Section::vector_field(std::move(comps));
  }

 private:
  std::mt19937_64 rng_;
  Rational bound_;
};

}  // namespace sdg
