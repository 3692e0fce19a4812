#include <gtest/gtest.h>

#include "sdg/sampling.hpp"

using namespace sdg;

namespace {

WeilMatrix constant(const AlgebraPtr& a, std::size_t n, std::vector<Rational> v) {
  return WeilMatrix::constant(a, n, n, v);
}

Arrow group_arrow(const WeilMatrix& m) { return {BasePoint{}, m, BasePoint{}}; }

}  // namespace

TEST(Models, RegistryNamesAndErrors) {
  EXPECT_EQ(make_model("heisenberg").family, ModelFamily::heisenberg);
  EXPECT_EQ(make_model("flat-control").family, ModelFamily::flat_control);
  EXPECT_EQ(make_model("gauge", "gl2", 3).G.base_dim, 3u);
  try {
    (void)make_model("sphere");
    FAIL() << "unknown model accepted";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("heisenberg, flat-control, gauge"), std::string::npos);
  }
  EXPECT_THROW((void)make_model("gauge", "so3"), PreconditionError);
  EXPECT_THROW((void)make_model("gauge", "scalar", 0), PreconditionError);
}

TEST(Models, GroupMembership) {
  const auto a = Algebra::create({"d"});
  const auto gl2 = MatrixGroupSpec::general_linear(2);
  const auto sl2 = MatrixGroupSpec::special_linear(2);
  const auto u3 = MatrixGroupSpec::unipotent_upper(3);
  EXPECT_TRUE(gl2.contains(constant(a, 2, {2, 1, 1, 1})));
  EXPECT_FALSE(gl2.contains(constant(a, 2, {1, 2, 2, 4})));
  EXPECT_TRUE(sl2.contains(constant(a, 2, {2, 1, 1, 1})));
  EXPECT_FALSE(sl2.contains(constant(a, 2, {2, 0, 0, 1})));
  EXPECT_TRUE(u3.contains(constant(a, 3, {1, 5, 7, 0, 1, 2, 0, 0, 1})));
  EXPECT_FALSE(u3.contains(constant(a, 3, {1, 5, 7, 1, 1, 2, 0, 0, 1})));
  EXPECT_FALSE(u3.contains(constant(a, 3, {2, 5, 7, 0, 1, 2, 0, 0, 1})));
  // sl2 velocities are traceless.
  EXPECT_TRUE(sl2.contains_velocity(constant(a, 2, {1, 3, 0, -1})));
  EXPECT_FALSE(sl2.contains_velocity(constant(a, 2, {1, 3, 0, 1})));
}

TEST(Models, HeisenbergProjectionReadsTheAbelianization) {
  const auto seq = heisenberg_model();
  const auto a = Algebra::create({});
  const Arrow h = group_arrow(constant(a, 3, {1, 2, 9, 0, 1, 3, 0, 0, 1}));
  const Arrow g = seq.project(h);
  EXPECT_EQ(g.body, constant(a, 3, {1, 2, 3, 0, 1, 0, 0, 0, 1}));
  EXPECT_TRUE(seq.G.validate(g));
  EXPECT_TRUE(seq.kernel_test(group_arrow(constant(a, 3, {1, 0, 4, 0, 1, 0, 0, 0, 1}))));
  EXPECT_FALSE(seq.kernel_test(h));
}

TEST(Models, FlatControlProjectionKeepsTheFirstBlock) {
  const auto seq = flat_control_model();
  const auto a = Algebra::create({});
  const Arrow h = group_arrow(constant(a, 3, {2, 1, 0, 1, 1, 0, 0, 0, 5}));
  EXPECT_EQ(seq.project(h).body, constant(a, 2, {2, 1, 1, 1}));
  EXPECT_TRUE(seq.kernel_test(group_arrow(constant(a, 3, {1, 0, 0, 0, 1, 0, 0, 0, 5}))));
  EXPECT_FALSE(seq.H.validate(group_arrow(constant(a, 3, {2, 1, 1, 1, 1, 0, 0, 0, 5}))));
}

TEST(Models, GaugeGroupoidComposition) {
  const auto seq = make_model("gauge", "scalar", 1);
  const auto a = Algebra::create({});
  const BasePoint x = rational_point(a, {1}), y = rational_point(a, {2}), z = rational_point(a, {3});
  const Arrow f{y, constant(a, 1, {3}), x};
  const Arrow g{z, constant(a, 1, {5}), y};
  const Arrow gf = compose(g, f);
  EXPECT_EQ(gf.source, x);
  EXPECT_EQ(gf.target, z);
  EXPECT_EQ(gf.body, constant(a, 1, {15}));
  EXPECT_THROW((void)compose(f, f), PreconditionError);
  EXPECT_TRUE(is_identity_arrow(compose(inverse(f), f)));
  EXPECT_EQ(seq.project(gf).source, x);
  EXPECT_FALSE(seq.kernel_test(gf));
  EXPECT_TRUE(seq.L.validate(Arrow{x, constant(a, 1, {7}), x}));
  EXPECT_FALSE(seq.L.validate(f));
}

TEST(Models, SampledArrowsSatisfyTheGroupoidLaws) {
  for (const auto& name : model_names()) {
    const auto seq = make_model(name, "sl2");
    const auto alg = Algebra::create({"d1", "d2"});
    Sampler rng(Sampler::derive(1, name, 0));
    for (int t = 0; t < 20; ++t) {
      const BasePoint x = rng.weil_point(alg, seq.H.base_dim);
      const Arrow h = rng.arrow(seq.H, alg, x);
      const Arrow g = rng.arrow(seq.H, alg, h.target);
      ASSERT_TRUE(seq.H.validate(h)) << name;
      ASSERT_TRUE(seq.H.validate(compose(g, h))) << name;
      ASSERT_EQ(seq.project(compose(g, h)), compose(seq.project(g), seq.project(h))) << name;
    }
  }
}
