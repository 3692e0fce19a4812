#include <gtest/gtest.h>

#include "sdg/sampling.hpp"

using namespace sdg;

namespace {

WeilMatrix unit(const AlgebraPtr& a, std::size_t n, std::size_t r, std::size_t c, const Rational& v = 1) {
  WeilMatrix m(a, n, n);
  m.at(r, c) = WeilElement(a, v);
  return m;
}

Section coordinate_field(std::size_t m, std::size_t k) {
  std::vector<Polynomial> comps(m, Polynomial(m));
  comps[k] = Polynomial::constant(m, 1);
  return Section::vector_field(comps);
}

Section heisenberg_field(std::size_t slot) {
  std::vector<Rational> v(9);
  v[slot] = 1;
  return Section::constant(3, v);
}

}  // namespace

TEST(Connection, HeisenbergSplitting) {
  const Connection c = heisenberg_connection(2, -1);
  const auto a = Algebra::create({});
  WeilMatrix v(a, 3, 3);
  v.at(0, 1) = WeilElement(a, 3);
  v.at(0, 2) = WeilElement(a, 5);
  const Tangent lifted = c.apply(Tangent{BasePoint{}, {}, v});
  // (a, b) -> a E12 + b E23 + (2a - b) E13.
  WeilMatrix expected(a, 3, 3);
  expected.at(0, 1) = WeilElement(a, 3);
  expected.at(1, 2) = WeilElement(a, 5);
  expected.at(0, 2) = WeilElement(a, 1);
  EXPECT_EQ(lifted.body_velocity, expected);
}

TEST(Connection, SplittingMustBeASection) {
  std::vector<Rational> m(81);
  EXPECT_THROW((void)Connection::splitting(heisenberg_model(), m), PreconditionError);
  m[1 * 9 + 1] = 1;
  m[5 * 9 + 2] = 1;
  EXPECT_NO_THROW((void)Connection::splitting(heisenberg_model(), m));
  m[3 * 9 + 1] = 1;  // lands below the diagonal
  EXPECT_THROW((void)Connection::splitting(heisenberg_model(), m), PreconditionError);
  EXPECT_THROW((void)Connection::splitting(heisenberg_model(), std::vector<Rational>(4)), PreconditionError);
}

TEST(Connection, GaugeLiftSubtractsTheConnectionForm) {
  const Connection c = gauge_connection("scalar", 2);
  const auto a = Algebra::create({});
  const Tangent t{rational_point(a, {2, 3}), {WeilElement(a, 1), WeilElement(a, 1)}, WeilMatrix(a, 0, 0)};
  const Tangent lifted = c.apply(t);
  EXPECT_EQ(lifted.base_velocity, t.base_velocity);
  EXPECT_EQ(lifted.body_velocity, WeilMatrix::constant(a, 1, 1, std::vector<Rational>{-2}));
}

TEST(Connection, LiftProjectsBack) {
  const auto seq = make_model("gauge", "gl2", 2);
  Sampler rng(11);
  const Connection c = rng.connection(seq, 2);
  const auto alg = Algebra::create({"d1", "d2"});
  const Microcube g = rng.microcube(seq.G, alg, {0, 1});
  const Microcube lg = c.lift(g);
  EXPECT_TRUE(microcube_violation(lg).empty());
  EXPECT_EQ(seq.project(lg.arrow), g.arrow);
  EXPECT_TRUE(seq.H.validate(lg.arrow));
}

TEST(Curvature, HeisenbergWitnessIsE13) {
  // Omega(Y * X) = nabla[X, Y] - [nabla X, nabla Y] = 0 - [E12, E23] = E13.
  const auto a = Algebra::create({});
  const Connection c = heisenberg_connection();
  const StructureEquation se = structure_equation(c, heisenberg_field(1), heisenberg_field(2), BasePoint{}, a);
  EXPECT_TRUE(se.product_lifts);
  EXPECT_EQ(se.lhs.body_velocity, unit(a, 3, 0, 2));
  EXPECT_EQ(se.rhs.body_velocity, unit(a, 3, 0, 2));
}

TEST(Curvature, AbelianGaugeWitnessIsOne) {
  // A = x1 dx2 on R^2: Omega(Y * X) = dA(e1, e2) = 1.
  const auto a = Algebra::create({});
  const Connection c = gauge_connection("scalar", 2);
  const StructureEquation se = structure_equation(c, coordinate_field(2, 0), coordinate_field(2, 1),
                                                  rational_point(a, {Rational(1, 3), 4}), a);
  EXPECT_EQ(se.lhs.body_velocity, WeilMatrix::identity(a, 1));
  EXPECT_EQ(se.lhs, se.rhs);
}

TEST(Curvature, CurvatureWordOnExplicitSquare) {
  // Scalar gauge, A = x1 dx2, gamma = (x1 + d1, x2 + d2): Omega = dA(e1, e2) = 1.
  const auto seq = make_model("gauge", "scalar", 2);
  const Connection c = gauge_connection("scalar", 2);
  const auto alg = Algebra::create({"d1", "d2"});
  const BasePoint x = rational_point(alg, {5, -2});
  BasePoint y = x;
  y.coords[0] += WeilElement::generator(alg, 0);
  y.coords[1] += WeilElement::generator(alg, 1);
  const Microcube g = make_microcube({0, 1}, Arrow{y, WeilMatrix(alg, 0, 0), x});
  EXPECT_EQ(c.curvature(g).body_velocity, WeilMatrix::identity(alg, 1));
  EXPECT_EQ(c.curvature(transpose(g)).body_velocity, Rational(-1) * WeilMatrix::identity(alg, 1));
  EXPECT_EQ(c.curvature_via_strong_diff(g), c.curvature(g));
}

TEST(Curvature, FlatControlIsFlat) {
  const auto seq = flat_control_model();
  Sampler rng(3);
  const auto alg = Algebra::create({"d1", "d2"});
  for (int t = 0; t < 10; ++t) {
    const Connection c = rng.connection(seq, 2);
    ASSERT_TRUE(c.curvature(rng.microcube(seq.G, alg, {0, 1})).is_zero());
  }
}

TEST(Curvature, RandomConnectionsSatisfyTheStructureEquation) {
  for (const auto& name : model_names()) {
    const auto seq = make_model(name, "gl2");
    Sampler rng(Sampler::derive(4, name, 0));
    const auto a = Algebra::create({});
    for (int t = 0; t < 5; ++t) {
      const Connection c = rng.connection(seq, 2);
      const StructureEquation se =
          structure_equation(c, rng.section(seq, 2), rng.section(seq, 2), rng.anchor(a, seq.G), a);
      ASSERT_TRUE(se.product_lifts) << name;
      ASSERT_EQ(se.lhs, se.rhs) << name;
    }
  }
}

TEST(Curvature, RejectsNonSquares) {
  const Connection c = heisenberg_connection();
  Sampler rng(1);
  const auto alg = Algebra::create({"d1", "d2", "d3"});
  const Microcube g = rng.microcube(heisenberg_model().G, alg, {0, 1, 2});
  EXPECT_THROW((void)c.curvature(g), PreconditionError);
  EXPECT_THROW((void)c.lift(g), PreconditionError);
}

TEST(Connection, PresetsAndUnknownModels) {
  EXPECT_EQ(preset_connection("gauge", "gl2", 2).forms().size(), 2u);
  EXPECT_EQ(preset_connection("flat-control").kind(), Connection::Kind::splitting);
  EXPECT_THROW((void)preset_connection("torus"), PreconditionError);
}
