#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "ncanon/fixtures.hpp"
#include "ncanon/strongify.hpp"

using namespace ncanon;
namespace fx = ncanon::fixtures;

namespace {

Word W(std::initializer_list<std::size_t> xs) {
  Word w;
  for (auto x : xs) w.push_back(to_obj(x));
  return w;
}

std::vector<MonoidalFunctor> all_fixture_functors() {
  return {fx::f_dbl(1),   fx::f_dbl(2),           fx::f_sq(1), fx::f_sq(2),
          fx::f_dbl_twisted(2), fx::d0(), fx::pt_monoid(), identity_monoidal_functor(fx::finset_monoidal(2))};
}

// Words over {0..k} of length <= 3 with letter sum <= k, counted directly.
std::size_t count_words(std::size_t k) {
  std::size_t n = 1;
  for (std::size_t a = 0; a <= k; ++a) {
    ++n;
    for (std::size_t b = 0; a + b <= k; ++b) {
      ++n;
      for (std::size_t c = 0; a + b + c <= k; ++c) ++n;
    }
  }
  return n;
}

}  // namespace

TEST(FIsomorphism, CanonicalFamilyOfStrongFunctor) {
  auto F = fx::f_dbl(2);
  auto r = check_f_isomorphism(comparison_family(F, 3), F, 3);
  EXPECT_TRUE(r.ok()) << r;
  EXPECT_EQ(r.checked("invertibility"), count_words(2));
  EXPECT_GT(r.checked("binary-compatibility"), 0u);
  EXPECT_GT(r.checked("pasting"), 0u);
  EXPECT_EQ(r.checked("nullary-compatibility"), 1u);
}

TEST(FIsomorphism, IdentityFamilyOnIdentityFunctor) {
  auto F = identity_monoidal_functor(fx::finset_monoidal(2));
  CandidatePsi psi;
  for (const auto& w : lax_domain(F, 3)) psi[w] = F.target->id(fold(*F.target, w));
  EXPECT_TRUE(check_f_isomorphism(psi, F, 3).ok());
}

TEST(FIsomorphism, EveryWrongInvertibleComponentIsCaught) {
  auto F = fx::f_dbl(2);
  const FinCategory& B = F.target->cat();
  const CandidatePsi good = comparison_family(F, 3);
  std::size_t mutations = 0;
  for (const auto& [w, c] : good)
    for (MorId alt : B.hom(B.src(c), B.dst(c))) {
      if (alt == c || !is_invertible(B, alt)) continue;
      CandidatePsi bad = good;
      bad[w] = alt;
      ++mutations;
      auto r = check_f_isomorphism(bad, F, 3);
      EXPECT_FALSE(r.ok()) << to_string(w) << " -> " << alt;
    }
  EXPECT_GE(mutations, 20u);
}

TEST(FIsomorphism, MissingAndMistypedComponentsAreTypingViolations) {
  auto F = fx::f_dbl(2);
  CandidatePsi psi = comparison_family(F, 3);
  psi.erase(W({1, 1}));
  EXPECT_TRUE(check_f_isomorphism(psi, F, 3).has_violation("typing"));
  psi = comparison_family(F, 3);
  psi[W({1})] = F.target->id(ObjId{4});
  EXPECT_TRUE(check_f_isomorphism(psi, F, 3).has_violation("typing"));
}

TEST(FIsomorphism, NonInvertibleCanonicalFamily) {
  auto r = check_f_isomorphism(comparison_family(fx::f_sq(2), 3), fx::f_sq(2), 3);
  EXPECT_TRUE(r.has_violation("invertibility"));
  EXPECT_FALSE(r.has_violation("binary-compatibility")) << r;
}

TEST(ExtractInverse, ShuffleAtTwoLetters) {
  auto F = fx::f_dbl(2);
  auto vp = verify_f_isomorphism(comparison_family(F, 3), F, 3);
  const MorId inv = extract_inverse(vp, W({1, 1}));
  // The shuffle 0,2,1,3 is an involution.
  EXPECT_EQ(fx::finset(4)->values(inv), (std::vector<std::uint32_t>{0, 2, 1, 3}));
}

TEST(ExtractInverse, AgreesWithBruteForceOnEveryWord) {
  for (const auto& F : {fx::f_dbl(1), fx::f_dbl(2), fx::f_dbl_twisted(2), identity_monoidal_functor(fx::finset_monoidal(2))}) {
    const FinCategory& B = F.target->cat();
    auto vp = verify_f_isomorphism(comparison_family(F, 3), F, 3);
    for (const auto& w : lax_domain(F, 3)) {
      const MorId inv = extract_inverse(vp, w);
      EXPECT_EQ(std::optional<MorId>(inv), find_inverse(B, comparison_cell(F, w))) << F.name << " " << to_string(w);
    }
  }
}

TEST(ExtractInverse, IndependentOfTheChosenFamily) {
  auto F = fx::f_dbl(2);
  const FinCategory& B = F.target->cat();
  auto found = search_psi(F, 3);
  ASSERT_GE(found.solutions.size(), 2u);
  for (const auto& psi : found.solutions) {
    auto vp = verify_f_isomorphism(psi, F, 3);
    for (const auto& w : lax_domain(F, 3))
      EXPECT_EQ(std::optional<MorId>(extract_inverse(vp, w)), find_inverse(B, comparison_cell(F, w)));
  }
}

TEST(ExtractInverse, IdentityFunctorGivesIdentities) {
  auto F = identity_monoidal_functor(fx::finset_monoidal(2));
  auto vp = verify_f_isomorphism(comparison_family(F, 3), F, 3);
  for (const auto& w : lax_domain(F, 3)) EXPECT_EQ(extract_inverse(vp, w), F.target->id(fold(*F.target, w)));
}

TEST(ExtractInverse, RejectsNonFIsomorphism) {
  auto F = fx::f_sq(2);
  EXPECT_THROW(extract_inverse(comparison_family(F, 3), F, W({1, 1}), 3), NotAnFIsomorphism);
}

TEST(BuildPsi, BaseCasesFollowTheRecursion) {
  auto F = fx::f_dbl(2);
  auto psi = build_psi(fx::twisted_binary(2), F, 3);
  EXPECT_EQ(psi.at({}), F.phi0);
  EXPECT_EQ(psi.at({}), F.target->id(ObjId{0}));
  for (std::size_t x = 0; x <= 2; ++x) EXPECT_EQ(psi.at(W({x})), F.target->id(F(to_obj(x))));
}

TEST(BuildPsi, TwistedFamilyYieldsAnFIsomorphism) {
  auto F = fx::f_dbl(2);
  auto psi = build_psi(fx::twisted_binary(2), F, 3);
  EXPECT_TRUE(check_f_isomorphism(psi, F, 3).ok());
  // Brute-force oracle: the built family is one of the searched solutions.
  auto found = search_psi(F, 3);
  bool listed = false;
  for (const auto& s : found.solutions) listed = listed || s == psi;
  EXPECT_TRUE(listed);
}

TEST(BuildPsi, LiteralRecursionOnTwistedFamily) {
  // Without normalization the twist survives in psi_{(x,y)} and the binary
  // equation against F's comparison fails.
  auto F = fx::f_dbl(2);
  auto psi = build_psi(fx::twisted_binary(2), F, 3, {.normalize = false});
  const FinCategory& B = F.target->cat();
  EXPECT_EQ(psi.at(W({1, 1})), B.at(fx::beta_swap(2).components[2], F.phi_at(ObjId{1}, ObjId{1})));
  EXPECT_TRUE(check_f_isomorphism(psi, F, 3).has_violation("binary-compatibility"));
}

TEST(BuildPsi, OwnComparisonReproducesCanonicalCells) {
  for (const auto& F : {fx::f_dbl(1), fx::f_dbl(2), fx::f_dbl_twisted(2), identity_monoidal_functor(fx::finset_monoidal(2))}) {
    for (bool norm : {true, false}) {
      auto psi = build_psi(F.phi, F, 3, {.normalize = norm});
      EXPECT_EQ(psi, comparison_family(F, 3)) << F.name;
    }
  }
}

TEST(BuildPsi, HypothesesAreChecked) {
  auto expect_which = [](auto&& fn, const std::string& which) {
    try {
      fn();
      ADD_FAILURE() << "expected " << which;
    } catch (const HypothesisViolated& e) {
      EXPECT_EQ(e.which(), which) << e.what();
    }
  };
  expect_which([] { build_psi(fx::d0().phi, fx::d0(), 2); }, "normality");
  expect_which([] { build_psi(fx::f_sq(2).phi, fx::f_sq(2), 3); }, "invertibility");

  auto F = fx::f_dbl(2);
  auto theta = F.phi;
  theta[1 * 3 + 1] = fx::finset(4)->fn(4, 4, {1, 0, 2, 3});
  expect_which([&] { build_psi(theta, F, 3); }, "naturality");

  auto G = F;
  G.target = std::make_shared<const MonoidalStructure>(with_braiding(*F.target, std::nullopt));
  expect_which([&] { build_psi(G.phi, G, 3); }, "braiding");

  theta = F.phi;
  theta[0] = fx::finset(4)->identity(1);
  expect_which([&] { build_psi(theta, F, 3); }, "typing");
}

TEST(BuildPsi, NaturalButNotMonoidalFamilyIsRejected) {
  // One object with automorphism group Z/2 = {e, s}; the tensor multiplies.
  // The constant family s is natural (the group is abelian) and invertible,
  // but the nullary equation forces the unit component to be e.
  const MorId e{0}, s{1};
  const ComposeEntry table[] = {{e, e, e}, {e, s, s}, {s, e, s}, {s, s, e}};
  auto C = share(FinCategory(1, {{ObjId{0}, ObjId{0}}, {ObjId{0}, ObjId{0}}}, {e}, table, "bz2"));
  MonoidalSpec ms;
  ms.base = C;
  ms.tensor_obj = [](ObjId, ObjId) -> std::optional<ObjId> { return ObjId{0}; };
  ms.tensor_mor = [&](MorId f, MorId g) { return C->at(f, g); };
  ms.associator = [&](ObjId, ObjId, ObjId) { return e; };
  ms.lunitor = ms.runitor = [&](ObjId) { return e; };
  ms.braiding = [&](ObjId, ObjId) { return e; };
  ms.name = "bz2";
  auto M = std::make_shared<const MonoidalStructure>(make_monoidal(ms));
  ASSERT_TRUE(check_monoidal_category(*M).ok());
  ASSERT_TRUE(check_braiding(*M).ok());
  auto F = identity_monoidal_functor(M);
  EXPECT_NO_THROW(check_build_psi_hypotheses(F.phi, F));
  try {
    check_build_psi_hypotheses({s}, F);
    ADD_FAILURE() << "expected a violated hypothesis";
  } catch (const HypothesisViolated& err) {
    EXPECT_EQ(err.which(), "monoidality") << err.what();
  }
}

TEST(SearchPsi, ExistenceMatchesStrength) {
  for (const auto& F : all_fixture_functors()) {
    auto s = search_psi(F, 3);
    EXPECT_EQ(!s.solutions.empty(), is_strong(F).strong) << F.name;
    EXPECT_EQ(s.rejected, 0u) << F.name;
  }
}

TEST(SearchPsi, NodeBoundIsEnforced) {
  EXPECT_THROW(search_psi(fx::f_dbl(2), 3, {.node_bound = 5}), SearchSpaceTooLarge);
}

TEST(Strongify, FromTwistedBinaryFamily) {
  auto F = fx::f_dbl(2);
  auto w = strongify_end_to_end(F, FromPhi{fx::twisted_binary(2), {}}, 3);
  EXPECT_EQ(w.verdict, StrongVerdict::Strong);
  EXPECT_TRUE(w.is_strong);
  EXPECT_TRUE(w.matches_find_inverse);
  EXPECT_TRUE(w.consistent());
  EXPECT_EQ(w.inverse.size(), count_words(2));
}

TEST(Strongify, SearchWithoutCandidate) {
  auto sq = strongify_end_to_end(fx::f_sq(2), BySearch{}, 3);
  EXPECT_EQ(sq.verdict, StrongVerdict::NonExistence);
  EXPECT_TRUE(sq.consistent());

  auto M = fx::finset_monoidal(2);
  auto id = strongify_end_to_end(identity_monoidal_functor(M), BySearch{}, 3);
  EXPECT_EQ(id.verdict, StrongVerdict::Strong);
  for (const auto& [w, c] : id.psi) EXPECT_EQ(c, M->id(fold(*M, w)));
}

TEST(Strongify, RoundTripOnCanonicalFamilies) {
  for (const auto& F : all_fixture_functors()) {
    if (!is_strong(F).strong) continue;
    auto w = strongify_end_to_end(F, FromPsi{comparison_family(F, 3)}, 3);
    EXPECT_EQ(w.verdict, StrongVerdict::Strong) << F.name;
    EXPECT_TRUE(w.matches_find_inverse) << F.name;
  }
  auto bad = strongify_end_to_end(fx::f_sq(2), FromPsi{comparison_family(fx::f_sq(2), 3)}, 3);
  EXPECT_EQ(bad.verdict, StrongVerdict::Rejected);
}

TEST(BuildPsi, OneSidedTwistIsNormalizedAway) {
  // phi . (beta (x) id) is monoidal; its right-unit restriction is beta.
  auto F = fx::f_dbl(2);
  auto beta = fx::beta_swap(2);
  const FinCategory& B = F.target->cat();
  auto theta = F.phi;
  for (std::size_t x = 0; x <= 2; ++x)
    for (std::size_t y = 0; x + y <= 2; ++y)
      theta[x * 3 + y] =
          B.at(F.phi_at(to_obj(x), to_obj(y)), F.target->tensor_mor(beta.components[x], F.target->id(F(to_obj(y)))));
  auto psi = build_psi(theta, F, 3);
  EXPECT_EQ(psi, comparison_family(F, 3));
  EXPECT_FALSE(check_f_isomorphism(build_psi(theta, F, 3, {.normalize = false}), F, 3).ok());
}
