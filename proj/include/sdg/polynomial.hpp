#pragma once

#include <map>
#include <string>
#include <vector>

#include "sdg/weil.hpp"

namespace sdg {

/// Multivariate polynomial with rational coefficients, evaluable at Weil points.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit Polynomial(std::size_t variables = 0) : vars_(variables) {}

  static Polynomial constant(std::size_t variables, const Rational& c) {
    Polynomial p(variables);
    p.add_term(Exponents(variables, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t variables, std::size_t k, const Rational& c = 1) {
    Polynomial p(variables);
    Exponents e(variables, 0);
    e.at(k) = 1;
    p.add_term(e, c);
    return p;
  }

  [[nodiscard]] std::size_t variables() const noexcept { return vars_; }
  [[nodiscard]] const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  Polynomial& add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_) throw PreconditionError("exponent vector has the wrong length");
    if (c == 0) return *this;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    if (a.vars_ != b.vars_) throw PreconditionError("polynomial variable count mismatch");
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }
  friend Polynomial operator*(const Rational& s, Polynomial p) {
    if (s == 0) return Polynomial(p.vars_);
    for (auto& [e, c] : p.terms_) c *= s;
    return p;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  [[nodiscard]] Polynomial derivative(std::size_t k) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(k) == 0) continue;
      Exponents d = e;
      --d[k];
      out.add_term(d, c * static_cast<unsigned long>(e[k]));
    }
    return out;
  }

  [[nodiscard]] WeilElement evaluate(const AlgebraPtr& alg, const std::vector<WeilElement>& point) const {
    if (point.size() != vars_) throw PreconditionError("evaluation point has the wrong dimension");
    WeilElement out(alg);
    for (const auto& [e, c] : terms_) {
      WeilElement term(alg, c);
      for (std::size_t k = 0; k < vars_; ++k)
        for (unsigned p = 0; p < e[k]; ++p) term = term * point[k];
      out += term;
    }
    return out;
  }

  [[nodiscard]] Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != vars_) throw PreconditionError("evaluation point has the wrong dimension");
    Rational out = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t k = 0; k < vars_; ++k)
        for (unsigned p = 0; p < e[k]; ++p) term *= point[k];
      out += term;
    }
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.get_str();
      for (std::size_t k = 0; k < vars_; ++k)
        if (e[k]) out += "*x" + std::to_string(k + 1) + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
    }
    return out;
  }

 private:
  std::size_t vars_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace sdg
