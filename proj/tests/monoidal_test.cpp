#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "ncanon/fixtures.hpp"
#include "ncanon/monoidal.hpp"

using namespace ncanon;
namespace fx = ncanon::fixtures;

namespace {

// A permutation of [n] as a raw value list.
std::vector<std::uint32_t> values_of(std::size_t k, MorId m) { return fx::finset(k)->values(m); }

MonoidalStructure with_associator(const MonoidalStructure& M, ObjId x, ObjId y, ObjId z, MorId a) {
  MonoidalStructure copy = M;
  copy.associator[(index(x) * M.size() + index(y)) * M.size() + index(z)] = a;
  return copy;
}

}  // namespace

TEST(MonoidalCategory, FixturesPass) {
  for (std::size_t k : {0u, 1u, 2u, 3u}) {
    auto M = fx::finset_monoidal(k);
    auto r = check_monoidal_category(*M);
    EXPECT_TRUE(r.ok()) << "k=" << k << " " << r;
    EXPECT_GT(r.checked("pentagon"), 0u);
    EXPECT_GT(r.checked("triangle"), 0u);
  }
  for (auto M : {fx::arrow_monoidal(), fx::terminal_monoidal(), fx::z2_monoidal()}) {
    auto r = check_monoidal_category(*M);
    EXPECT_TRUE(r.ok()) << M->name << " " << r;
  }
}

TEST(MonoidalCategory, PentagonInstancesCoverTheDefinedRegion) {
  // Quadruples (w, x, y, z) with w + x + y + z <= 3: C(3 + 4, 4) = 35.
  auto r = check_monoidal_category(*fx::finset_monoidal(3));
  EXPECT_EQ(r.checked("pentagon"), 35u);
  // Pairs with x + y <= 3: 10.
  EXPECT_EQ(r.checked("triangle"), 10u);
}

TEST(MonoidalCategory, TensorOfFunctionsIsBlockSum) {
  auto M = fx::finset_monoidal(3);
  auto fs = fx::finset(3);
  const MorId f = fs->fn(1, 2, {1});
  const MorId g = fs->fn(2, 1, {0, 0});
  EXPECT_EQ(values_of(3, M->tensor_mor(f, g)), (std::vector<std::uint32_t>{1, 2, 2}));
  EXPECT_EQ(M->tensor_obj(ObjId{1}, ObjId{2}), ObjId{3});
  EXPECT_THROW(M->tensor_obj(ObjId{2}, ObjId{2}), TruncationExceeded);
}

TEST(MonoidalCategory, NonIdentityAssociatorBreaksPentagon) {
  auto M = fx::finset_monoidal(3);
  auto fs = fx::finset(3);
  // (1+1)+1 -> 1+(1+1) replaced by a cyclic permutation of 3.
  const MonoidalStructure bad = with_associator(*M, ObjId{1}, ObjId{1}, ObjId{1}, fs->fn(3, 3, {1, 2, 0}));
  auto r = check_monoidal_category(bad);
  EXPECT_TRUE(r.has_violation("pentagon") || r.has_violation("associator-naturality")) << r;
  // In FinSet_4 the same replacement shows up in the pentagon itself.
  auto M4 = fx::finset_monoidal(4);
  auto fs4 = fx::finset(4);
  auto r4 = check_monoidal_category(with_associator(*M4, ObjId{1}, ObjId{1}, ObjId{1}, fs4->fn(3, 3, {1, 2, 0})));
  EXPECT_TRUE(r4.has_violation("pentagon")) << r4;
}

TEST(MonoidalCategory, MistypedAssociatorIsReportedNotThrown) {
  auto M = fx::finset_monoidal(2);
  auto fs = fx::finset(2);
  auto r = check_monoidal_category(with_associator(*M, ObjId{0}, ObjId{1}, ObjId{1}, fs->identity(1)));
  EXPECT_TRUE(r.has_violation("typing"));
}

TEST(Braiding, BlockSwapIsABraiding) {
  for (std::size_t k : {1u, 2u, 3u}) {
    auto r = check_braiding(*fx::finset_monoidal(k));
    EXPECT_TRUE(r.ok()) << r;
    EXPECT_GT(r.checked("hexagon"), 0u);
  }
  EXPECT_TRUE(check_braiding(*fx::z2_monoidal()).ok());
  EXPECT_TRUE(check_braiding(*fx::arrow_monoidal()).ok());
  auto fs = fx::finset(2);
  EXPECT_EQ(values_of(2, fx::finset_monoidal(2)->braid(ObjId{1}, ObjId{1})), (std::vector<std::uint32_t>{1, 0}));
}

TEST(Braiding, IdentityFamilyIsNotNatural) {
  auto M = fx::finset_monoidal(2);
  std::vector<MorId> ids(M->size() * M->size(), kNoMorphism);
  for (std::size_t x = 0; x <= 2; ++x)
    for (std::size_t y = 0; x + y <= 2; ++y) ids[x * 3 + y] = M->id(to_obj(x + y));
  auto r = check_braiding(with_braiding(*M, ids));
  EXPECT_TRUE(r.has_violation("braiding-naturality")) << r;
}

TEST(Braiding, InverseFamilyIsABraiding) {
  auto M = fx::finset_monoidal(3);
  const std::size_t n = M->size();
  std::vector<MorId> inv(n * n, kNoMorphism);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (M->defined(to_obj(x), to_obj(y))) inv[x * n + y] = inverse_of(M->cat(), M->braid(to_obj(y), to_obj(x)));
  EXPECT_TRUE(check_braiding(with_braiding(*M, inv)).ok());
}

TEST(Braiding, NonInvertibleAssociatorIsReportedNotThrown) {
  auto M = fx::finset_monoidal(2);
  auto fs = fx::finset(2);
  // (1+1)+0 -> 1+(1+0) replaced by the constant map 2 -> 2
  const MonoidalStructure bad = with_associator(*M, ObjId{1}, ObjId{1}, ObjId{0}, fs->fn(2, 2, {0, 0}));
  ValidationReport r;
  ASSERT_NO_THROW(r = check_braiding(bad));
  EXPECT_TRUE(r.has_violation("hexagon")) << r;
}

TEST(Braiding, MissingBraidingThrows) {
  EXPECT_THROW(check_braiding(with_braiding(*fx::finset_monoidal(2), std::nullopt)), MissingBraiding);
}

TEST(MonoidalFunctor, FixturesAreLaxMonoidal) {
  EXPECT_TRUE(check_monoidal_functor(identity_monoidal_functor(fx::finset_monoidal(2))).ok());
  for (std::size_t k : {1u, 2u}) {
    auto r = check_monoidal_functor(fx::f_dbl(k));
    EXPECT_TRUE(r.ok()) << r;
    EXPECT_GT(r.checked("associativity"), 0u);
    EXPECT_TRUE(check_monoidal_functor(fx::f_sq(k)).ok());
    EXPECT_TRUE(check_monoidal_functor(fx::f_dbl_twisted(k)).ok());
  }
  EXPECT_TRUE(check_monoidal_functor(fx::d0()).ok());
  EXPECT_TRUE(check_monoidal_functor(fx::pt_monoid()).ok());
}

TEST(MonoidalFunctor, ShuffleAndInclusionValues) {
  auto F = fx::f_dbl(2);
  EXPECT_EQ(values_of(4, F.phi_at(ObjId{1}, ObjId{1})), (std::vector<std::uint32_t>{0, 2, 1, 3}));
  EXPECT_EQ(values_of(4, F.phi_at(ObjId{2}, ObjId{0})), (std::vector<std::uint32_t>{0, 1, 2, 3}));
  auto G = fx::f_sq(2);
  EXPECT_EQ(values_of(4, G.phi_at(ObjId{1}, ObjId{1})), (std::vector<std::uint32_t>{0, 3}));
}

TEST(MonoidalFunctor, WrongTypeThrows) {
  auto F = fx::f_dbl(1);
  F.phi0 = F.target->id(ObjId{2});
  EXPECT_THROW(check_monoidal_functor(F), ComponentTypeMismatch);
}

TEST(MonoidalFunctor, EveryNonShufflePermutationIsCaught) {
  auto F = fx::f_dbl(2);
  const FinCategory& B = F.target->cat();
  const std::size_t n = F.source->size();
  std::size_t mutations = 0;
  for (std::size_t i = 0; i < F.phi.size(); ++i) {
    if (F.phi[i] == kNoMorphism) continue;
    const MorId orig = F.phi[i];
    for (MorId alt : B.hom(B.src(orig), B.dst(orig))) {
      if (alt == orig || !is_invertible(B, alt)) continue;
      MonoidalFunctor bad = F;
      bad.phi[i] = alt;
      ++mutations;
      EXPECT_FALSE(check_monoidal_functor(bad).ok()) << "pair " << i / n << "," << i % n << " -> " << alt;
    }
  }
  EXPECT_GE(mutations, 20u);
}

TEST(MonoidalFunctor, CompositesAreMonoidal) {
  auto F1 = fx::f_dbl(1);
  auto F2 = fx::f_dbl(2);
  auto GF = compose(F2, F1);
  EXPECT_TRUE(check_monoidal_functor(GF).ok());
  EXPECT_EQ(GF.underlying(ObjId{1}), ObjId{4});
  auto S = fx::f_sq(1);
  EXPECT_TRUE(check_monoidal_functor(compose(F1, S)).ok());
  EXPECT_THROW(compose(F2, S), NotComposable);
  auto P = fx::pt_monoid();
  EXPECT_TRUE(check_monoidal_functor(compose(fx::f_dbl(2), P)).ok());
  EXPECT_TRUE(check_monoidal_functor(compose(P, identity_monoidal_functor(fx::terminal_monoidal()))).ok());
}

TEST(MonoidalTransformation, IdentityAndBetaSwap) {
  auto F = fx::f_dbl(2);
  auto beta = fx::beta_swap(2);
  EXPECT_TRUE(check_naturality(beta).ok());
  EXPECT_TRUE(check_monoidal_transformation({F, F, identity_transformation(F.underlying).components}).ok());
  auto T = fx::f_dbl_twisted(2);
  EXPECT_TRUE(check_monoidal_transformation({F, T, beta.components}).ok());
  // The transported comparison coincides with the untwisted one, so
  // beta_swap is a monoidal automorphism of F_dbl.
  EXPECT_EQ(T.phi, F.phi);
  EXPECT_TRUE(check_monoidal_transformation({F, F, beta.components}).ok());
}

TEST(MonoidalTransformation, BrokenComponentIsReported) {
  auto F = fx::f_dbl(2);
  auto beta = fx::beta_swap(2);
  auto comps = beta.components;
  comps[1] = F.target->id(ObjId{2});
  auto r = check_monoidal_transformation({F, F, comps});
  EXPECT_TRUE(r.has_violation("binary-compatibility")) << r;
  EXPECT_TRUE(r.has_violation("naturality")) << r;
}

TEST(MonoidalTransformation, InverseOfMonoidalIsoIsMonoidal) {
  auto F = fx::f_dbl(2);
  auto beta = fx::beta_swap(2);
  std::vector<MorId> inv;
  for (MorId c : beta.components) inv.push_back(inverse_of(F.target->cat(), c));
  EXPECT_TRUE(check_monoidal_transformation({F, F, inv}).ok());
}

TEST(MonoidalFunctor, NormalityAndStrength) {
  auto F = fx::f_dbl(2);
  auto nf = is_normal(F);
  EXPECT_TRUE(nf.normal);
  EXPECT_EQ(nf.inverse, F.target->id(ObjId{0}));
  EXPECT_TRUE(is_strong(F).strong);
  EXPECT_TRUE(is_strong(identity_monoidal_functor(fx::finset_monoidal(2))).strong);

  auto S = fx::f_sq(2);
  EXPECT_TRUE(is_normal(S).normal);
  auto ss = is_strong(S);
  EXPECT_FALSE(ss.strong);
  ASSERT_TRUE(ss.failing_pair.has_value());
  EXPECT_EQ(*ss.failing_pair, (std::pair{ObjId{1}, ObjId{1}}));

  EXPECT_FALSE(is_normal(fx::d0()).normal);
  EXPECT_FALSE(is_normal(fx::pt_monoid()).normal);
}
