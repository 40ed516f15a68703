#include <gtest/gtest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ncanon/famf.hpp"
#include "ncanon/fixtures.hpp"

using namespace ncanon;
namespace fx = ncanon::fixtures;

namespace {

Family Fm(std::initializer_list<std::size_t> xs) {
  Family w;
  for (auto x : xs) w.push_back(to_obj(x));
  return w;
}

struct Case {
  std::string name;
  Functor F;
  CoproductPtr a;
  CoproductPtr b;
};

std::vector<Case> fixture_cases() {
  return {
      {"f_dbl1", fx::f_dbl_functor(1), fx::finset_coproducts(1), fx::finset_coproducts(2)},
      {"f_dbl2", fx::f_dbl_functor(2), fx::finset_coproducts(2), fx::finset_coproducts(4)},
      {"f_sq1", fx::f_sq_functor(1), fx::finset_coproducts(1), fx::finset_coproducts(1)},
      {"f_sq2", fx::f_sq_functor(2), fx::finset_coproducts(2), fx::finset_coproducts(4)},
      {"f_succ1", fx::f_succ_functor(1), fx::finset_coproducts(1), fx::finset_coproducts(2)},
      {"d0", fx::d0().underlying, fx::terminal_coproducts(), fx::arrow_coproducts()},
      {"pt", fx::pt_monoid().underlying, fx::terminal_coproducts(), fx::finset_coproducts(2)},
      {"id_finset2", identity_functor(fx::finset(2)->category()), fx::finset_coproducts(2), fx::finset_coproducts(2)},
      {"id_arrow", identity_functor(fx::arrow_category()), fx::arrow_coproducts(), fx::arrow_coproducts()},
  };
}

const Case& find_case(const std::vector<Case>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::runtime_error("no case " + name);
}

}  // namespace

// --- Fam_f as a category -------------------------------------------------------

TEST(Famf, TerminalBaseAtTwo) {
  auto T = build_famf(fx::terminal_category(), 2);
  ASSERT_EQ(T.families.size(), 2u);
  EXPECT_EQ(T.families[0], Fm({0}));
  EXPECT_EQ(T.families[1], Fm({0, 0}));
  // one reindexing {1} -> {1,2} per target position
  EXPECT_EQ(T.cat->hom(T.object(Fm({0})), T.object(Fm({0, 0}))).size(), 2u);
  // all 2^2 maps {1,2} -> {1,2}
  EXPECT_EQ(T.cat->hom(T.object(Fm({0, 0})), T.object(Fm({0, 0}))).size(), 4u);
  EXPECT_TRUE(check_category(*T.cat).ok());
}

TEST(Famf, SingletonFamiliesCopyTheBase) {
  auto A = fx::arrow_category();
  auto T = build_famf(A, 1);
  ASSERT_EQ(T.cat->object_count(), A->object_count());
  EXPECT_EQ(T.cat->morphism_count(), A->morphism_count());
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      EXPECT_EQ(T.cat->hom(T.object(Fm({x})), T.object(Fm({y}))).size(), A->hom(to_obj(x), to_obj(y)).size());
}

TEST(Famf, ArrowBaseAtTwoIsACategory) {
  auto A = fx::arrow_category();
  auto T = build_famf(A, 2);
  EXPECT_EQ(T.families.size(), 6u);
  auto r = check_category(*T.cat);
  EXPECT_TRUE(r.ok()) << r;
  // In the arrow category hom(x, y) has one element iff x <= y, so a family
  // morphism is a reindexing t0 with x_j <= y_{t0(j)}.
  for (const auto& x : T.families)
    for (const auto& y : T.families) {
      std::size_t expected = 0;
      const std::size_t maps = x.size() == 1 ? y.size() : y.size() * y.size();
      for (std::size_t code = 0; code < maps; ++code) {
        bool ok = true;
        std::size_t c = code;
        for (std::size_t j = 0; j < x.size(); ++j) {
          ok = ok && index(x[j]) <= index(y[c % y.size()]);
          c /= y.size();
        }
        expected += ok;
      }
      EXPECT_EQ(T.cat->hom(T.object(x), T.object(y)).size(), expected) << to_string(x) << to_string(y);
    }
}

TEST(Famf, CompositionFollowsTheReindexingRule) {
  auto A = fx::finset(1)->category();
  auto T = build_famf(A, 2);
  for (std::size_t g = 0; g < T.morphisms.size(); ++g)
    for (std::size_t f = 0; f < T.morphisms.size(); ++f) {
      const auto& s = T.morphisms[g];
      const auto& t = T.morphisms[f];
      if (t.dst != s.src) continue;
      const FamMorphism& st = T.morphisms[index(T.cat->at(to_mor(g), to_mor(f)))];
      for (std::size_t j = 0; j < t.src.size(); ++j) {
        EXPECT_EQ(st.t0[j], s.t0[t.t0[j]]);
        EXPECT_EQ(st.t[j], A->at(s.t[t.t0[j]], t.t[j]));
      }
    }
}

TEST(Famf, SizeBoundIsEnforced) {
  EXPECT_THROW(build_famf(fx::finset(2)->category(), 3, 1000), SearchSpaceTooLarge);
}

// --- chosen coproducts ----------------------------------------------------------

TEST(CoproductChoice, FixturesSatisfyTheUniversalProperty) {
  for (auto c : {fx::finset_coproducts(1), fx::finset_coproducts(2), fx::finset_coproducts(3),
                 fx::arrow_coproducts(), fx::terminal_coproducts()}) {
    auto r = check_coproduct_choice(*c);
    EXPECT_TRUE(r.ok()) << c->name() << ": " << r;
    EXPECT_GT(r.checked("coproduct-universal"), 0u);
  }
}

TEST(CoproductChoice, BrokenInjectionsAndInitialAreCaught) {
  auto fs = fx::finset(2);
  const MorId first = fs->fn(1, 2, {0});
  auto sum = [](ObjId x, ObjId y) -> std::optional<ObjId> {
    if (index(x) + index(y) > 2) return std::nullopt;
    return to_obj(index(x) + index(y));
  };
  auto good = fx::finset_coproducts(2);
  auto same = make_coproduct_choice(
      fs->category(), sum, [&](ObjId x, ObjId y) { return good->inl(x, y); },
      [&](ObjId x, ObjId y) { return index(x) == 1 && index(y) == 1 ? first : good->inr(x, y); }, ObjId{0}, "same");
  EXPECT_TRUE(check_coproduct_choice(same).has_violation("coproduct-universal"));
  auto wrong_initial = make_coproduct_choice(
      fs->category(), sum, [&](ObjId x, ObjId y) { return good->inl(x, y); },
      [&](ObjId x, ObjId y) { return good->inr(x, y); }, ObjId{1}, "initial1");
  EXPECT_TRUE(check_coproduct_choice(wrong_initial).has_violation("initial"));
  EXPECT_THROW(good->sum(to_obj(2), to_obj(1)), MissingCoproduct);
}

// --- the coproduct algebra -------------------------------------------------------

TEST(CoproductAlgebra, ObjectsAreIteratedSums) {
  auto c = fx::finset_coproducts(4);
  EXPECT_EQ(coproduct_algebra(*c, Fm({1, 2, 1})), to_obj(4));
  EXPECT_EQ(coproduct_algebra(*c, Fm({3})), to_obj(3));
  EXPECT_FALSE(try_coproduct_algebra(*c, Fm({3, 2})));
  EXPECT_THROW(coproduct_algebra(*c, Fm({3, 2})), MissingCoproduct);
}

TEST(CoproductAlgebra, SingletonMorphismIsItsComponent) {
  auto fs = fx::finset(2);
  auto c = fx::finset_coproducts(2);
  for (std::size_t f = 0; f < fs->cat().morphism_count(); ++f) {
    const MorId m = to_mor(f);
    FamMorphism t{{fs->cat().src(m)}, {fs->cat().dst(m)}, {0}, {m}};
    EXPECT_EQ(coproduct_algebra(*c, t), m);
  }
}

TEST(CoproductAlgebra, SwapReindexingGivesTheSwap) {
  auto fs = fx::finset(2);
  auto c = fx::finset_coproducts(2);
  FamMorphism t{Fm({1, 1}), Fm({1, 1}), {1, 0}, {fs->identity(1), fs->identity(1)}};
  EXPECT_EQ(fs->values(coproduct_algebra(*c, t)), (std::vector<std::uint32_t>{1, 0}));
}

TEST(CoproductAlgebra, IsAFunctorAndMatchesTheDirectCopairing) {
  for (auto c : {fx::finset_coproducts(2), fx::arrow_coproducts(), fx::terminal_coproducts()}) {
    const FinCategory& A = c->cat();
    auto fams = all_families(A.object_count(), 3, [&](const Word& w) { return try_coproduct_algebra(*c, w).has_value(); });
    std::vector<FamMorphism> ms;
    for (const auto& x : fams) {
      EXPECT_EQ(coproduct_algebra(*c, fam_identity(A, x)), A.identity(coproduct_algebra(*c, x)));
      for (const auto& y : fams)
        for_each_fam_morphism(A, x, y, [&](const FamMorphism& m) {
          const MorId alg = coproduct_algebra(*c, m);
          // the map out of the coproduct is determined by its legs
          for (std::size_t j = 0; j < m.src.size(); ++j)
            EXPECT_EQ(A.at(alg, cocone_injection(*c, x, j)),
                      A.at(cocone_injection(*c, y, m.t0[j]), m.t[j]));
          if (x.size() <= 2 && y.size() <= 2) ms.push_back(m);
        });
    }
    std::size_t pairs = 0;
    for (const auto& s : ms)
      for (const auto& t : ms) {
        if (t.dst != s.src) continue;
        ++pairs;
        EXPECT_EQ(coproduct_algebra(*c, fam_compose(A, s, t)),
                  A.at(coproduct_algebra(*c, s), coproduct_algebra(*c, t)));
      }
    EXPECT_GT(pairs, 0u);
  }
}

TEST(CoproductAlgebra, CocartesianStructureOnFinSetMatchesDisjointUnion) {
  auto M = cocartesian_monoidal(fx::finset_coproducts(2));
  auto S = fx::finset_monoidal(2);
  EXPECT_TRUE(check_monoidal_category(M).ok());
  for (std::size_t x = 0; x <= 2; ++x)
    for (std::size_t y = 0; x + y <= 2; ++y) {
      EXPECT_EQ(M.braid(to_obj(x), to_obj(y)), S->braid(to_obj(x), to_obj(y)));
      for (std::size_t z = 0; x + y + z <= 2; ++z)
        EXPECT_EQ(M.alpha(to_obj(x), to_obj(y), to_obj(z)), S->alpha(to_obj(x), to_obj(y), to_obj(z)));
    }
}

// --- the canonical comparison ------------------------------------------------------

TEST(LaxStructure, IdentityFunctorGivesIdentities) {
  auto c = fx::finset_coproducts(2);
  auto L = canonical_lax_structure(identity_functor(c->base()), c, c);
  for (std::size_t x = 0; x <= 2; ++x)
    for (std::size_t y = 0; x + y <= 2; ++y)
      EXPECT_EQ(L.kappa_at(to_obj(x), to_obj(y)), c->cat().identity(to_obj(x + y)));
}

TEST(LaxStructure, SquaringHitsTheDiagonalBlocks) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_sq2");
  auto L = canonical_lax_structure(c.F, c.a, c.b);
  EXPECT_EQ(fx::finset(4)->values(L.kappa_at(to_obj(1), to_obj(1))), (std::vector<std::uint32_t>{0, 3}));
  EXPECT_FALSE(is_invertible(*c.F.target, L.kappa_at(to_obj(1), to_obj(1))));
}

TEST(LaxStructure, CodomainInclusionAtTheUniquePair) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "d0");
  auto L = canonical_lax_structure(c.F, c.a, c.b);
  EXPECT_EQ(L.kappa_at(ObjId{0}, ObjId{0}), c.F.target->identity(ObjId{1}));
}

TEST(LaxStructure, DoublingComparisonIsTheBlockShuffle) {
  auto F = fx::f_dbl(2);
  auto L = canonical_lax_structure(F.underlying, fx::finset_coproducts(2), fx::finset_coproducts(4));
  EXPECT_EQ(L.kappa, F.phi);
  EXPECT_EQ(L.kappa0, F.phi0);
}

TEST(LaxStructure, CoherenceHoldsForEveryFixture) {
  for (const auto& c : fixture_cases()) {
    auto r = check_lax_structure(canonical_lax_structure(c.F, c.a, c.b));
    EXPECT_TRUE(r.ok()) << c.name << ": " << r;
    EXPECT_GT(r.checked("lax/left-unit"), 0u) << c.name;
    // triple sums of F(x) + 1 and of 1 + 1 + 1 exceed FinSet_2
    if (c.name != "f_succ1" && c.name != "pt") EXPECT_GT(r.checked("lax/associativity"), 0u) << c.name;
  }
}

TEST(Preservation, FixtureVerdicts) {
  const auto cs = fixture_cases();
  auto v = [&](const char* n) {
    const auto& c = find_case(cs, n);
    return preserves_binary_coproducts(c.F, c.a, c.b);
  };
  auto d0 = v("d0");
  EXPECT_TRUE(d0.binary);
  EXPECT_EQ(d0.initial, false);
  auto dbl = v("f_dbl2");
  EXPECT_TRUE(dbl.binary);
  EXPECT_EQ(dbl.initial, true);
  auto sq = v("f_sq2");
  EXPECT_FALSE(sq.binary);
  ASSERT_TRUE(sq.failing_pair);
  EXPECT_EQ(*sq.failing_pair, (std::pair{to_obj(1), to_obj(1)}));
  EXPECT_EQ(sq.initial, true);
  auto succ = v("f_succ1");
  EXPECT_FALSE(succ.binary);
  EXPECT_EQ(succ.initial, false);
  // 1 + 1 is not a chosen sum in FinSet_1, so squaring preserves every chosen one
  EXPECT_TRUE(v("f_sq1").binary);
}

// --- alpha' -------------------------------------------------------------------------

TEST(AlphaPrime, IdentityFamilyOnIdentityFunctor) {
  auto c = fx::finset_coproducts(2);
  const FinCategory& C = c->cat();
  Functor F = identity_functor(c->base());
  BinaryCoproductFamily alpha = canonical_lax_structure(F, c, c).kappa;
  auto res = build_alpha_prime(F, alpha, c, c, 3);
  EXPECT_EQ(res.alpha_prime.size(), fam_domain(F, *c, *c, 3).size());
  for (const auto& [x, m] : res.alpha_prime) EXPECT_EQ(m, C.identity(coproduct_algebra(*c, x))) << to_string(x);
}

TEST(AlphaPrime, DoublingWithItsComparison) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_dbl2");
  auto L = canonical_lax_structure(c.F, c.a, c.b);
  for (bool normalize : {true, false}) {
    auto res = build_alpha_prime(c.F, L.kappa, c.a, c.b, 3, {normalize});
    for (std::size_t y = 0; y <= 2; ++y)
      EXPECT_EQ(res.alpha_prime.at(Fm({y})), c.F.target->identity(c.F(to_obj(y))));
    EXPECT_EQ(res.alpha_prime.at(Fm({1, 1})), L.kappa_at(to_obj(1), to_obj(1)));
    EXPECT_EQ(res.alpha_prime, canonical_fam_family(L, 3));
    EXPECT_TRUE(res.report.ok()) << res.report;
  }
}

TEST(AlphaPrime, TwistedComparison) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_dbl2");
  const FinCategory& B = *c.F.target;
  const BinaryCoproductFamily twisted = fx::twisted_binary(2);
  auto res = build_alpha_prime(c.F, twisted, c.a, c.b, 3);
  EXPECT_TRUE(res.report.ok()) << res.report;
  EXPECT_TRUE(res.preservation.binary);
  for (const auto& [x, m] : res.alpha_prime) EXPECT_TRUE(is_invertible(B, m));
  EXPECT_TRUE(kz_shortcut(c.F, res.alpha_prime, c.a, c.b, 3).holds);

  // As given, the unary composite at (y) is the twist itself, and the
  // resulting family is not natural in the injections (y) -> (y, z).
  auto literal = build_alpha_prime(c.F, twisted, c.a, c.b, 3, {false});
  const auto beta = fx::beta_swap(2);
  for (std::size_t y = 0; y <= 2; ++y) EXPECT_EQ(literal.alpha_prime.at(Fm({y})), beta.components[y]);
  EXPECT_TRUE(literal.report.has_violation("naturality"));
}

TEST(AlphaPrime, HypothesesAreChecked) {
  const auto cs = fixture_cases();
  auto which = [](auto&& fn) {
    try {
      fn();
    } catch (const HypothesisViolated& e) {
      return e.which();
    }
    return std::string("none");
  };
  const auto& d0 = find_case(cs, "d0");
  EXPECT_EQ(which([&] { build_alpha_prime(d0.F, canonical_lax_structure(d0.F, d0.a, d0.b).kappa, d0.a, d0.b, 2); }),
            "initial");
  const auto& sq = find_case(cs, "f_sq2");
  EXPECT_EQ(which([&] { build_alpha_prime(sq.F, canonical_lax_structure(sq.F, sq.a, sq.b).kappa, sq.a, sq.b, 2); }),
            "invertibility");
  const auto& dbl = find_case(cs, "f_dbl2");
  auto kappa = canonical_lax_structure(dbl.F, dbl.a, dbl.b).kappa;
  auto bad_type = kappa;
  bad_type[1 * 3 + 1] = dbl.F.target->identity(to_obj(2));
  EXPECT_EQ(which([&] { build_alpha_prime(dbl.F, bad_type, dbl.a, dbl.b, 2); }), "typing");
  // twist a single component: still invertible, no longer natural
  auto bad_nat = kappa;
  bad_nat[1 * 3 + 1] = fx::twisted_binary(2)[1 * 3 + 1];
  EXPECT_EQ(which([&] { build_alpha_prime(dbl.F, bad_nat, dbl.a, dbl.b, 2); }), "naturality");
}

TEST(AlphaPrime, EveryNaturalBinaryIsoYieldsPreservation) {
  std::size_t built = 0;
  for (const auto& c : fixture_cases()) {
    if (!is_initial(*c.F.target, c.F(*c.a->initial()))) continue;
    for (const auto& alpha : search_binary_isos(c.F, c.a, c.b)) {
      auto res = build_alpha_prime(c.F, alpha, c.a, c.b, 3);
      EXPECT_TRUE(res.report.ok()) << c.name;
      EXPECT_TRUE(res.preservation.binary) << c.name;
      ++built;
    }
  }
  EXPECT_GE(built, 4u);
}

TEST(AlphaPrime, OnePointHasNoBinaryIsomorphism) {
  // F(*) = 1 needs an isomorphism 1 + 1 -> 1, and there is none.
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "pt");
  EXPECT_TRUE(search_binary_isos(c.F, c.a, c.b).empty());
  for (MorId m : c.F.target->hom(to_obj(2), to_obj(1))) EXPECT_FALSE(is_invertible(*c.F.target, m));
}

// --- the beta criterion -------------------------------------------------------------

TEST(BetaCriterion, DoublingWithIdentityAndSwap) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_dbl2");
  const FinCategory& B = *c.F.target;
  std::vector<MorId> id;
  for (std::size_t x = 0; x <= 2; ++x) id.push_back(B.identity(c.F(to_obj(x))));
  auto v = beta_criterion(c.F, id, c.a, c.b);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.induced, canonical_lax_structure(c.F, c.a, c.b).kappa);
  auto swapped = beta_criterion(c.F, fx::beta_swap(2).components, c.a, c.b);
  EXPECT_TRUE(swapped.holds);
  EXPECT_NE(swapped.induced, v.induced);
}

TEST(BetaCriterion, SquaringFailsAtOneOne) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_sq2");
  std::vector<MorId> id;
  for (std::size_t x = 0; x <= 2; ++x) id.push_back(c.F.target->identity(c.F(to_obj(x))));
  auto v = beta_criterion(c.F, id, c.a, c.b);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.failing_pair, (std::pair{to_obj(1), to_obj(1)}));
}

TEST(BetaCriterion, RejectsNonNaturalFamilies) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_dbl2");
  auto fs = fx::finset(4);
  std::vector<MorId> bad{fs->identity(0), fs->fn(2, 2, {1, 0}), fs->identity(4)};
  EXPECT_THROW(beta_criterion(c.F, bad, c.a, c.b), HypothesisViolated);
  std::vector<MorId> short_family{fs->identity(0)};
  EXPECT_THROW(beta_criterion(c.F, short_family, c.a, c.b), HypothesisViolated);
}

// --- natural isomorphisms over families -------------------------------------------

TEST(KzShortcut, CanonicalFamilyOfDoubling) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_dbl2");
  auto v = kz_shortcut(c.F, canonical_fam_family(canonical_lax_structure(c.F, c.a, c.b), 3), c.a, c.b, 3);
  EXPECT_TRUE(v.holds) << v.report;
  EXPECT_TRUE(v.preserves);
  EXPECT_GT(v.report.checked("naturality"), 0u);
}

TEST(KzShortcut, MistypedComponentThrows) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_dbl2");
  auto psi = canonical_fam_family(canonical_lax_structure(c.F, c.a, c.b), 3);
  psi[Fm({1, 1})] = c.F.target->identity(to_obj(2));
  EXPECT_THROW(kz_shortcut(c.F, psi, c.a, c.b, 3), ComponentTypeMismatch);
  psi.erase(Fm({1, 1}));
  EXPECT_THROW(kz_shortcut(c.F, psi, c.a, c.b, 3), ComponentTypeMismatch);
}

TEST(KzShortcut, NonNaturalFamilyFails) {
  const auto cs = fixture_cases();
  const auto& c = find_case(cs, "f_dbl2");
  auto psi = canonical_fam_family(canonical_lax_structure(c.F, c.a, c.b), 3);
  psi[Fm({1})] = fx::finset(4)->fn(2, 2, {1, 0});
  auto v = kz_shortcut(c.F, psi, c.a, c.b, 3);
  EXPECT_FALSE(v.holds);
  EXPECT_TRUE(v.report.has_violation("naturality"));
}

TEST(KzShortcut, SearchSolutionsPassAndSquaringHasNone) {
  const auto cs = fixture_cases();
  const auto& dbl = find_case(cs, "f_dbl2");
  auto found = search_kz_psi(dbl.F, dbl.a, dbl.b, 3);
  ASSERT_FALSE(found.solutions.empty());
  for (const auto& psi : found.solutions) EXPECT_TRUE(kz_shortcut(dbl.F, psi, dbl.a, dbl.b, 3).holds);
  const auto& sq = find_case(cs, "f_sq2");
  EXPECT_TRUE(search_kz_psi(sq.F, sq.a, sq.b, 2).solutions.empty());
  EXPECT_TRUE(search_kz_psi(sq.F, sq.a, sq.b, 3).solutions.empty());
}

TEST(EquivalenceChain, AllThreePredicatesAgree) {
  std::size_t positive = 0, negative = 0;
  for (const auto& c : fixture_cases()) {
    const bool psi = !search_kz_psi(c.F, c.a, c.b, 3).solutions.empty();
    const bool beta = !search_beta(c.F, c.a, c.b).passing.empty();
    const bool pres = preserves_binary_coproducts(c.F, c.a, c.b).binary;
    EXPECT_EQ(psi, pres) << c.name;
    EXPECT_EQ(beta, pres) << c.name;
    (pres ? positive : negative)++;
  }
  EXPECT_GE(positive, 3u);
  EXPECT_GE(negative, 3u);
}
