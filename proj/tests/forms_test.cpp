#include <gtest/gtest.h>

#include "sdg/forms.hpp"
#include "sdg/sampling.hpp"

using namespace sdg;

namespace {

Polynomial poly(std::size_t vars, std::vector<std::pair<Polynomial::Exponents, Rational>> terms) {
  Polynomial p(vars);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

/// gamma(d1, d2) = (x + d1 e1 + d2 e2, x) on the pair groupoid of R^2.
Microcube coordinate_square(const AlgebraPtr& alg, const BasePoint& x) {
  BasePoint y = x;
  y.coords[0] += WeilElement::generator(alg, 0);
  y.coords[1] += WeilElement::generator(alg, 1);
  return make_microcube({0, 1}, Arrow{y, WeilMatrix(alg, 0, 0), x});
}

}  // namespace

TEST(Forms, PermutationSign) {
  EXPECT_EQ(permutation_sign({0, 1, 2}), 1);
  EXPECT_EQ(permutation_sign({1, 0}), -1);
  EXPECT_EQ(permutation_sign({1, 2, 0}), 1);
  EXPECT_EQ(permutation_sign({2, 1, 0}), -1);
}

TEST(Forms, CurvatureIsAValidTwoForm) {
  for (const auto& name : model_names()) {
    const auto seq = make_model(name, "gl2");
    Sampler rng(Sampler::derive(2, name, 0));
    const auto alg = Algebra::create({"d1", "d2"});
    const Connection c = rng.connection(seq, 2);
    std::vector<Microcube> samples;
    for (int k = 0; k < 3; ++k) samples.push_back(rng.microcube(seq.G, alg, {0, 1}));
    const FormReport r = validate_form(curvature_form(c), samples);
    EXPECT_TRUE(r.ok()) << name << ": " << r.first_violation;
    EXPECT_EQ(r.checks, 3u * (2 * 5 + 1));
  }
}

TEST(Forms, ValidationDetectsNonForms) {
  const auto seq = heisenberg_model();
  const auto alg = Algebra::create({"d1", "d2"});
  WeilMatrix e13(alg, 3, 3);
  e13.at(0, 2) = WeilElement(alg, 1);
  const Form constant(2, [e13](const Microcube& g) { return Tangent{g.anchor(), {}, e13}; }, "constant");
  Sampler rng(1);
  const FormReport r = validate_form(constant, {rng.microcube(seq.G, alg, {0, 1})});
  EXPECT_FALSE(r.ok());
  EXPECT_GT(r.homogeneity_failures, 0u);
  EXPECT_EQ(r.alternation_failures, 1u);
}

TEST(Forms, DegreeIsChecked) {
  const auto seq = heisenberg_model();
  const Form z = zero_form(seq, 2);
  Sampler rng(1);
  const auto alg = Algebra::create({"d1", "d2", "d3"});
  EXPECT_THROW((void)z(rng.microcube(seq.G, alg, {0, 1, 2})), PreconditionError);
  EXPECT_THROW((void)d_nabla(heisenberg_connection(), zero_form(seq, 0))(rng.microcube(seq.G, alg, {0})),
               PreconditionError);
}

TEST(Forms, DNablaOfAnAbelianOneFormIsTheExteriorDerivative) {
  // w = w1 dx1 + w2 dx2 with w1 = x2^2, w2 = 3 x1 x2: dw(e1, e2) = d1 w2 - d2 w1 = 3 x2 - 2 x2 = x2.
  const auto seq = make_model("gauge", "scalar", 2);
  const PolynomialMatrix w1{1, {poly(2, {{{0, 2}, 1}})}};
  const PolynomialMatrix w2{1, {poly(2, {{{1, 1}, 3}})}};
  const Form w = gauge_one_form(seq, {w1, w2});
  Sampler rng(7);
  const auto alg = Algebra::create({"d1", "d2"});
  for (const Connection& c : {gauge_connection("scalar", 2), rng.connection(seq, 2)}) {
    const Microcube g = coordinate_square(alg, rational_point(alg, {Rational(2, 3), 5}));
    EXPECT_EQ(d_nabla(c, w)(g).body_velocity, WeilMatrix::constant(alg, 1, 1, std::vector<Rational>{5}));
  }
}

TEST(Forms, DNablaOfCurvatureVanishes) {
  for (const auto& name : model_names()) {
    const auto seq = make_model(name, "gl2");
    Sampler rng(Sampler::derive(5, name, 0));
    const auto alg = Algebra::create({"d1", "d2", "d3"});
    for (int t = 0; t < 5; ++t) {
      const Connection c = rng.connection(seq, 2);
      ASSERT_TRUE(d_nabla(c, curvature_form(c))(rng.microcube(seq.G, alg, {0, 1, 2})).is_zero()) << name;
    }
  }
}

TEST(Forms, DNablaOfAOneFormIsATwoForm) {
  const auto seq = heisenberg_model();
  std::vector<Rational> m(81);
  m[2 * 9 + 1] = 1;   // E13 <- E12 coefficient
  m[2 * 9 + 2] = -2;  // E13 <- (0, 2) coefficient
  const Form w = linear_one_form(seq, m);
  Sampler rng(8);
  const auto alg = Algebra::create({"d1", "d2"});
  const Connection c = rng.connection(seq, 2);
  const FormReport r = validate_form(d_nabla(c, w), {rng.microcube(seq.G, alg, {0, 1})});
  EXPECT_TRUE(r.ok()) << r.first_violation;
  m[1] = 1;  // E11 is not in the centre
  EXPECT_THROW((void)linear_one_form(seq, m), PreconditionError);
}
