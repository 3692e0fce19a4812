#pragma once

/**
 * @file forms.hpp
 * @brief A L-valued differential forms on micro-n-cubes of G and the
 *        exterior covariant derivative.
 */

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sdg/connection.hpp"

namespace sdg {

class Form {
 public:
  using Fn = std::function<Tangent(const Microcube&)>;

  Form(std::size_t degree, Fn f, std::string name = "form")
      : degree_(degree), f_(std::move(f)), name_(std::move(name)) {}

  [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  [[nodiscard]] Tangent operator()(const Microcube& g) const {
    if (g.degree() != degree_)
      throw PreconditionError(name_ + " expects a micro-" + std::to_string(degree_) + "-cube");
    Tangent t = f_(g);
    if (!(t.anchor == g.anchor())) throw InvariantViolation(name_ + " returned a value outside the fibre over the anchor");
    return t;
  }

 private:
  std::size_t degree_;
  Fn f_;
  std::string name_;
};

/// The zero form; values are zero tangents of L at the anchor.
inline Form zero_form(const ExactSequence& seq, std::size_t degree) {
  const std::size_t k = seq.L.group.dim;
  return Form(
      degree, [k](const Microcube& g) { return zero_tangent(g.algebra(), g.anchor(), k); }, "zero form");
}

/// Omega as a 2-form.
inline Form curvature_form(const Connection& c) {
  return Form(2, [c](const Microcube& g) { return c.curvature(g); }, "curvature");
}

/// A 1-form on a gauge model: t = (x, v) -> sum_i W_i(x) v_i in the Lie algebra of K.
inline Form gauge_one_form(const ExactSequence& seq, std::vector<PolynomialMatrix> coefficients) {
  if (seq.family != ModelFamily::gauge) throw PreconditionError("gauge one-form needs a gauge model");
  if (coefficients.size() != seq.G.base_dim) throw PreconditionError("one coefficient per base coordinate required");
  const std::size_t k = seq.L.group.dim;
  return Form(
      1,
      [k, coefficients = std::move(coefficients)](const Microcube& g) {
        const Tangent t = as_tangent(g);
        Tangent out = zero_tangent(g.algebra(), g.anchor(), k);
        for (std::size_t i = 0; i < coefficients.size(); ++i)
          out.body_velocity += t.base_velocity.at(i) * coefficients[i].evaluate(g.algebra(), t.anchor);
        return out;
      },
      "gauge one-form");
}

/// A 1-form on a one-point model: a rational matrix from G velocities to L velocities (row-major flattened).
inline Form linear_one_form(const ExactSequence& seq, std::vector<Rational> matrix) {
  if (seq.G.kind != GroupoidKind::group) throw PreconditionError("linear one-form needs a one-point base");
  const std::size_t g = seq.G.group.dim;
  const std::size_t k = seq.L.group.dim;
  if (matrix.size() != k * k * g * g) throw PreconditionError("one-form matrix has the wrong size");
  for (std::size_t r = 0; r < k * k; ++r)
    for (std::size_t c = 0; c < g * g; ++c)
      if (matrix[r * g * g + c] != 0 && !seq.L.group.is_free(r / k, r % k))
        throw PreconditionError("one-form leaves the Lie algebra of L");
  return Form(
      1,
      [g, k, matrix = std::move(matrix)](const Microcube& cube) {
        const Tangent t = as_tangent(cube);
        Tangent out = zero_tangent(cube.algebra(), cube.anchor(), k);
        const auto& in = t.body_velocity.entries();
        for (std::size_t r = 0; r < k * k; ++r)
          for (std::size_t c = 0; c < g * g; ++c)
            if (matrix[r * g * g + c] != 0) out.body_velocity.at(r / k, r % k) += in[c] * matrix[r * g * g + c];
        return out;
      },
      "linear one-form");
}

inline int permutation_sign(const std::vector<std::size_t>& theta) {
  int sign = 1;
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 1; j < theta.size(); ++j)
      if (theta[i] > theta[j]) sign = -sign;
  return sign;
}

struct FormReport {
  std::size_t checks = 0;
  std::size_t homogeneity_failures = 0;
  std::size_t alternation_failures = 0;
  std::string first_violation;

  [[nodiscard]] bool ok() const noexcept { return homogeneity_failures == 0 && alternation_failures == 0; }
};

inline const std::vector<Rational>& homogeneity_scalars() {
  static const std::vector<Rational> s{0, 1, -1, 2, Rational(1, 2)};
  return s;
}

/// Homogeneity in every slot and alternation under every permutation, on each sample.
inline FormReport validate_form(const Form& w, const std::vector<Microcube>& samples) {
  FormReport report;
  auto note = [&report](std::size_t& counter, const std::string& what) {
    ++counter;
    if (report.first_violation.empty()) report.first_violation = what;
  };
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Microcube& g = samples[s];
    const Tangent value = w(g);
    for (std::size_t i = 0; i < g.degree(); ++i)
      for (const auto& a : homogeneity_scalars()) {
        ++report.checks;
        if (!(w(scale(g, i, a)) == tangent_scale(a, value)))
          note(report.homogeneity_failures, "sample " + std::to_string(s) + ": homogeneity fails in slot " +
                                                std::to_string(i + 1) + " for a = " + format_rational(a));
      }
    std::vector<std::size_t> theta(g.degree());
    std::iota(theta.begin(), theta.end(), 0);
    while (std::next_permutation(theta.begin(), theta.end())) {
      ++report.checks;
      if (!(w(permute(g, theta)) == tangent_scale(permutation_sign(theta), value))) {
        std::string p;
        for (auto t : theta) p += std::to_string(t + 1);
        note(report.alternation_failures, "sample " + std::to_string(s) + ": alternation fails for permutation " + p);
      }
    }
  }
  return report;
}

/**
 * The arrow ((d_nabla w)(gamma))_{d1...d(n+1)} as the ascending product of
 * { w(gamma^0_i)_{m_i} (nabla gamma_i)_{d_i}^{-1} w(gamma^{d_i}_i)_{-m_i} (nabla gamma_i)_{d_i} }^{(-1)^i},
 * m_i being the product of the arguments other than d_i.
 */
inline Arrow d_nabla_word(const Connection& c, const Form& w, const Microcube& g) {
  if (w.degree() == 0) throw PreconditionError("d_nabla is defined for forms of degree at least one");
  if (g.degree() != w.degree() + 1) throw PreconditionError("d_nabla: cube degree must exceed the form degree by one");
  const auto& alg = g.algebra();
  const auto& seq = c.sequence();
  std::vector<Arrow> factors;
  for (std::size_t i = 0; i < g.degree(); ++i) {
    const WeilElement d = g.arg(i);
    const WeilElement m = WeilElement::monomial(alg, g.arg_mask() & ~(Mask{1} << g.args[i]));
    const Tangent w0 = w(slice(g, i, WeilElement(alg)));
    const Tangent wi = w(slice(g, i, d));
    const Arrow e = c.apply(edge(g, i)).at(d);
    const Arrow conjugated = compose_all({inverse(e), wi.at(-m), e});
    if (!seq.kernel_test(conjugated)) throw InvariantViolation("conjugated form value leaves the kernel");
    const Arrow factor = compose(w0.at(m), conjugated);
    factors.push_back(i % 2 == 0 ? inverse(factor) : factor);
  }
  return compose_all(factors);
}

inline Form d_nabla(const Connection& c, const Form& w) {
  return Form(
      w.degree() + 1,
      [c, w](const Microcube& g) {
        const Arrow word = d_nabla_word(c, w, g);
        Tangent t = split_top(word, g.arg_mask(), "d_nabla");
        if (!tangent_in_kernel(c.sequence(), t)) throw InvariantViolation("d_nabla value is not kernel-valued");
        return t;
      },
      "d_nabla " + w.name());
}

}  // namespace sdg
