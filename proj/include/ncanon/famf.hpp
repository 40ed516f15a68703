#pragma once

// The free completion under binary coproducts, truncated to families of
// length <= N; chosen coproducts and the coproduct algebra; the canonical
// comparison F x + F y -> F(x + y) of a functor; construction of a natural
// isomorphism over all families from a binary one; the beta criterion; and
// the check that a plain natural isomorphism alg . Fam(F) => F . alg exists.
//
// Iterated coproducts are left-nested, as folds in freemono.hpp.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/fincat.hpp"
#include "ncanon/fixtures.hpp"
#include "ncanon/freemono.hpp"
#include "ncanon/monoidal.hpp"
#include "ncanon/report.hpp"
#include "ncanon/search.hpp"
#include "ncanon/tuple.hpp"

namespace ncanon {

/// A nonempty list of objects.
using Family = Word;

/// (t0, t1, ..., tn) : (x1..xn) -> (y1..ym), t0 zero-based, t_j : x_j -> y_{t0(j)}.
struct FamMorphism {
  Family src;
  Family dst;
  std::vector<std::size_t> t0;
  std::vector<MorId> t;

  friend bool operator==(const FamMorphism&, const FamMorphism&) = default;
  friend auto operator<=>(const FamMorphism&, const FamMorphism&) = default;
};

inline std::string to_string(const FamMorphism& m) {
  std::ostringstream os;
  os << to_string(m.src) << "->" << to_string(m.dst) << " [";
  for (std::size_t j = 0; j < m.t0.size(); ++j) os << (j ? "," : "") << m.t0[j] << ":" << m.t[j];
  os << "]";
  return os.str();
}

inline bool is_fam_morphism(const FinCategory& A, const FamMorphism& m) {
  if (m.src.empty() || m.dst.empty() || m.t0.size() != m.src.size() || m.t.size() != m.src.size()) return false;
  for (std::size_t j = 0; j < m.src.size(); ++j) {
    if (m.t0[j] >= m.dst.size() || !A.has_morphism(m.t[j])) return false;
    if (A.src(m.t[j]) != m.src[j] || A.dst(m.t[j]) != m.dst[m.t0[j]]) return false;
  }
  return true;
}

inline FamMorphism fam_identity(const FinCategory& A, const Family& x) {
  FamMorphism m{x, x, {}, {}};
  for (std::size_t j = 0; j < x.size(); ++j) {
    m.t0.push_back(j);
    m.t.push_back(A.identity(x[j]));
  }
  return m;
}

/// s after t: (s t)_0 = s_0 t_0, (s t)_j = s_{t0(j)} t_j.
inline FamMorphism fam_compose(const FinCategory& A, const FamMorphism& s, const FamMorphism& t) {
  if (t.dst != s.src) throw NotComposable("family morphisms are not composable");
  FamMorphism m{t.src, s.dst, {}, {}};
  for (std::size_t j = 0; j < t.src.size(); ++j) {
    m.t0.push_back(s.t0[t.t0[j]]);
    m.t.push_back(A.at(s.t[t.t0[j]], t.t[j]));
  }
  return m;
}

/// The action of Fam(F): (t0, F t1, ..., F tn).
inline FamMorphism image(const Functor& F, const FamMorphism& m) {
  FamMorphism out{image(F, m.src), image(F, m.dst), m.t0, {}};
  for (MorId a : m.t) out.t.push_back(F(a));
  return out;
}

/// Calls fn for every family morphism x -> y.
template <class Fn>
void for_each_fam_morphism(const FinCategory& A, const Family& x, const Family& y, Fn&& fn) {
  const std::size_t n = x.size(), m = y.size();
  if (n == 0 || m == 0) return;
  std::vector<std::size_t> t0(n, 0);
  while (true) {
    bool empty = false;
    std::vector<std::span<const MorId>> homs(n);
    for (std::size_t j = 0; j < n; ++j) {
      homs[j] = A.hom(x[j], y[t0[j]]);
      empty = empty || homs[j].empty();
    }
    if (!empty) {
      std::vector<std::size_t> pos(n, 0);
      FamMorphism f{x, y, t0, std::vector<MorId>(n)};
      while (true) {
        for (std::size_t j = 0; j < n; ++j) f.t[j] = homs[j][pos[j]];
        fn(static_cast<const FamMorphism&>(f));
        std::size_t k = 0;
        while (k < n && ++pos[k] == homs[k].size()) pos[k++] = 0;
        if (k == n) break;
      }
    }
    std::size_t k = 0;
    while (k < n && ++t0[k] == m) t0[k++] = 0;
    if (k == n) break;
  }
}

inline std::vector<Family> all_families(std::size_t objects, std::size_t N,
                                        const std::function<bool(const Word&)>& keep = {}) {
  auto words = all_words(objects, N, [&](const Word& w) { return !w.empty() && (!keep || keep(w)); });
  return words;
}

// --- the truncated Fam_f(A) as a finite category --------------------------------

struct FamfCategory {
  CategoryPtr base;
  std::size_t N = 0;
  std::vector<Family> families;
  std::vector<FamMorphism> morphisms;
  CategoryPtr cat;

  ObjId object(const Family& x) const {
    auto it = std::find(families.begin(), families.end(), x);
    if (it == families.end()) throw TruncationExceeded("family " + to_string(x) + " is outside the truncation");
    return to_obj(static_cast<std::size_t>(it - families.begin()));
  }
  MorId morphism(const FamMorphism& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw TruncationExceeded("family morphism " + to_string(m) + " is outside the truncation");
    return it->second;
  }

  std::map<FamMorphism, MorId> index_;
};

/// Families of length 1..N over A with all family morphisms between them.
/// Throws SearchSpaceTooLarge when the composition table would exceed bound.
inline FamfCategory build_famf(CategoryPtr A, std::size_t N, std::size_t bound = 1'000'000) {
  if (N < 1) throw PreconditionViolated("Fam_f truncation needs N >= 1");
  FamfCategory out;
  out.base = A;
  out.N = N;
  out.families = all_families(A->object_count(), N);
  const std::size_t n = out.families.size();
  std::vector<std::size_t> homsize(n * n, 0);
  std::vector<MorphismRec> recs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for_each_fam_morphism(*A, out.families[i], out.families[j], [&](const FamMorphism& m) {
        if (out.morphisms.size() >= bound)
          throw SearchSpaceTooLarge("Fam_f morphisms exceed bound", static_cast<double>(out.morphisms.size()));
        out.index_.emplace(m, to_mor(out.morphisms.size()));
        out.morphisms.push_back(m);
        recs.push_back({to_obj(i), to_obj(j)});
        ++homsize[i * n + j];
      });
  double pairs = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        pairs += static_cast<double>(homsize[x * n + y]) * static_cast<double>(homsize[y * n + z]);
  if (pairs > static_cast<double>(bound)) throw SearchSpaceTooLarge("Fam_f composition table exceeds bound", pairs);
  std::vector<MorId> ids;
  for (const auto& x : out.families) ids.push_back(out.index_.at(fam_identity(*A, x)));
  const auto& morphs = out.morphisms;
  const auto& idx = out.index_;
  out.cat = share(FinCategory::from_rule(
      n, std::move(recs), std::move(ids),
      [&](MorId g, MorId f) { return idx.at(fam_compose(*A, morphs[index(g)], morphs[index(f)])); },
      "famf(" + A->name() + "," + std::to_string(N) + ")"));
  return out;
}

// --- chosen coproducts ----------------------------------------------------------

/// Chosen binary coproducts on a (possibly partial) set of pairs, with an
/// optional chosen initial object.
class CoproductChoice {
 public:
  CoproductChoice(CategoryPtr base, std::vector<std::optional<ObjId>> sum, std::vector<MorId> inl,
                  std::vector<MorId> inr, std::optional<ObjId> initial, std::string name)
      : base_(std::move(base)),
        sum_(std::move(sum)),
        inl_(std::move(inl)),
        inr_(std::move(inr)),
        initial_(initial),
        name_(std::move(name)),
        cache_(std::make_shared<Cache>()) {
    const std::size_t n = base_->object_count();
    if (sum_.size() != n * n || inl_.size() != n * n || inr_.size() != n * n)
      throw IndexOutOfRange("coproduct tables have the wrong size");
    if (initial_ && !base_->has_object(*initial_)) throw IndexOutOfRange("initial object out of range");
  }

  const CategoryPtr& base() const noexcept { return base_; }
  const FinCategory& cat() const { return *base_; }
  const std::string& name() const noexcept { return name_; }
  const std::optional<ObjId>& initial() const noexcept { return initial_; }

  std::optional<ObjId> try_sum(ObjId x, ObjId y) const { return sum_.at(slot(x, y)); }
  ObjId sum(ObjId x, ObjId y) const {
    if (auto s = try_sum(x, y)) return *s;
    throw MissingCoproduct("no chosen coproduct of " + std::to_string(index(x)) + " and " + std::to_string(index(y)) +
                           " in " + name_);
  }
  MorId inl(ObjId x, ObjId y) const {
    sum(x, y);
    return inl_.at(slot(x, y));
  }
  MorId inr(ObjId x, ObjId y) const {
    sum(x, y);
    return inr_.at(slot(x, y));
  }

  /// The unique map from the chosen initial object.
  MorId from_initial(ObjId x) const {
    if (!initial_) throw MissingCoproduct("no chosen initial object in " + name_);
    auto h = base_->hom(*initial_, x);
    if (h.size() != 1) throw PreconditionViolated("chosen initial object is not initial");
    return h[0];
  }

  /// [f, g] : x + y -> z for f : x -> z, g : y -> z.
  MorId copair(MorId f, MorId g) const {
    const FinCategory& C = *base_;
    const std::uint64_t key = (static_cast<std::uint64_t>(index(f)) << 32) | index(g);
    {
      std::lock_guard lock(cache_->mu);
      auto it = cache_->copair.find(key);
      if (it != cache_->copair.end()) return it->second;
    }
    if (C.dst(f) != C.dst(g)) throw NotComposable("copair of morphisms with different targets");
    const ObjId x = C.src(f), y = C.src(g);
    const MorId i = inl(x, y), j = inr(x, y);
    MorId found = kNoMorphism;
    for (MorId h : C.hom(sum(x, y), C.dst(f)))
      if (C.compose(h, i) == f && C.compose(h, j) == g) {
        found = h;
        break;
      }
    if (found == kNoMorphism) throw PreconditionViolated("chosen coproduct has no induced map");
    std::lock_guard lock(cache_->mu);
    cache_->copair.emplace(key, found);
    return found;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, MorId> copair;
  };
  std::size_t slot(ObjId x, ObjId y) const { return index(x) * base_->object_count() + index(y); }

  CategoryPtr base_;
  std::vector<std::optional<ObjId>> sum_;
  std::vector<MorId> inl_, inr_;
  std::optional<ObjId> initial_;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

using CoproductPtr = std::shared_ptr<const CoproductChoice>;

/// Tabulates a choice from rules; the injection rules are only called where
/// sum returns a value.
template <class Sum, class Inl, class Inr>
CoproductChoice make_coproduct_choice(CategoryPtr base, Sum&& sum, Inl&& inl, Inr&& inr, std::optional<ObjId> initial,
                                      std::string name) {
  const std::size_t n = base->object_count();
  std::vector<std::optional<ObjId>> s(n * n);
  std::vector<MorId> l(n * n, kNoMorphism), r(n * n, kNoMorphism);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId X = to_obj(x), Y = to_obj(y);
      s[x * n + y] = sum(X, Y);
      if (!s[x * n + y]) continue;
      l[x * n + y] = inl(X, Y);
      r[x * n + y] = inr(X, Y);
    }
  return CoproductChoice(std::move(base), std::move(s), std::move(l), std::move(r), initial, std::move(name));
}

/// Injection typing and the universal property (exactly one induced map for
/// every cocone), plus initiality of the chosen initial object.
inline ValidationReport check_coproduct_choice(const CoproductChoice& c) {
  ValidationReport r;
  const FinCategory& C = c.cat();
  const std::size_t n = C.object_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId X = to_obj(x), Y = to_obj(y);
      auto s = c.try_sum(X, Y);
      if (!s) continue;
      const std::string where = detail::tuple_str({x, y});
      const MorId i = c.inl(X, Y), j = c.inr(X, Y);
      r.count("injection-typing");
      if (!detail::has_type(C, i, X, *s) || !detail::has_type(C, j, Y, *s)) {
        r.add("injection-typing", where);
        continue;
      }
      for (std::size_t z = 0; z < n; ++z)
        for (MorId f : C.hom(X, to_obj(z)))
          for (MorId g : C.hom(Y, to_obj(z))) {
            std::size_t induced = 0;
            for (MorId h : C.hom(*s, to_obj(z)))
              if (C.compose(h, i) == f && C.compose(h, j) == g) ++induced;
            r.count("coproduct-universal");
            if (induced != 1) {
              std::ostringstream os;
              os << where << " cocone (" << f << "," << g << "): " << induced << " induced maps";
              r.add("coproduct-universal", os.str());
            }
          }
    }
  if (auto o = c.initial()) {
    for (std::size_t z = 0; z < n; ++z) {
      r.count("initial");
      if (C.hom(*o, to_obj(z)).size() != 1) r.add("initial", detail::tuple_str({z}));
    }
  }
  return r;
}

/// True iff x has exactly one morphism to every object.
inline bool is_initial(const FinCategory& C, ObjId x) {
  for (std::size_t z = 0; z < C.object_count(); ++z)
    if (C.hom(x, to_obj(z)).size() != 1) return false;
  return true;
}

/// f + g : x + y -> x' + y'.
inline MorId coproduct_sum(const CoproductChoice& c, MorId f, MorId g) {
  const FinCategory& C = c.cat();
  const ObjId x2 = C.dst(f), y2 = C.dst(g);
  return c.copair(C.at(c.inl(x2, y2), f), C.at(c.inr(x2, y2), g));
}

// --- the coproduct algebra -------------------------------------------------------

inline std::optional<ObjId> try_coproduct_algebra(const CoproductChoice& c, const Family& x) {
  if (x.empty()) return std::nullopt;
  ObjId acc = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    auto s = c.try_sum(acc, x[i]);
    if (!s) return std::nullopt;
    acc = *s;
  }
  return acc;
}

/// The left-nested chosen coproduct of a family.
inline ObjId coproduct_algebra(const CoproductChoice& c, const Family& x) {
  if (x.empty()) throw PreconditionViolated("families are nonempty");
  ObjId acc = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) acc = c.sum(acc, x[i]);
  return acc;
}

/// The injection y_i -> alg(y) of the universal cocone.
inline MorId cocone_injection(const CoproductChoice& c, const Family& y, std::size_t i) {
  const FinCategory& C = c.cat();
  if (y.size() == 1) return C.identity(y[0]);
  const Family y1(y.begin(), y.end() - 1);
  const ObjId a = coproduct_algebra(c, y1);
  if (i + 1 == y.size()) return c.inr(a, y.back());
  return C.at(c.inl(a, y.back()), cocone_injection(c, y1, i));
}

/// [h_1, ..., h_n] : alg(x) -> z for h_j : x_j -> z.
inline MorId copair_all(const CoproductChoice& c, const std::vector<MorId>& h) {
  if (h.empty()) throw PreconditionViolated("families are nonempty");
  MorId acc = h[0];
  for (std::size_t j = 1; j < h.size(); ++j) acc = c.copair(acc, h[j]);
  return acc;
}

/// Left-nested coproduct of morphisms t_1 + ... + t_n.
inline MorId coproduct_sum_all(const CoproductChoice& c, const std::vector<MorId>& t) {
  if (t.empty()) throw PreconditionViolated("families are nonempty");
  MorId acc = t[0];
  for (std::size_t j = 1; j < t.size(); ++j) acc = coproduct_sum(c, acc, t[j]);
  return acc;
}

/// alg(t0, t1..tn): the coproduct of the t_j into the family (y_{t0(j)})_j,
/// followed by the map induced by the cocone injections of y. When the
/// intermediate coproduct is outside the chosen (partial) sums, the same
/// morphism is obtained directly as [i_{t0(1)} t_1, ..., i_{t0(n)} t_n].
inline MorId coproduct_algebra(const CoproductChoice& c, const FamMorphism& m) {
  const FinCategory& C = c.cat();
  std::vector<MorId> into;
  for (std::size_t j = 0; j < m.t0.size(); ++j) into.push_back(cocone_injection(c, m.dst, m.t0[j]));
  Family mid;
  for (std::size_t j = 0; j < m.t0.size(); ++j) mid.push_back(m.dst[m.t0[j]]);
  if (try_coproduct_algebra(c, mid)) return C.at(copair_all(c, into), coproduct_sum_all(c, m.t));
  std::vector<MorId> legs;
  for (std::size_t j = 0; j < m.t0.size(); ++j) legs.push_back(C.at(into[j], m.t[j]));
  return copair_all(c, legs);
}

// --- cocartesian monoidal structure --------------------------------------------

/// The monoidal structure given by the chosen coproducts and initial object,
/// all structural cells induced by the universal property.
inline MonoidalStructure cocartesian_monoidal(const CoproductPtr& c) {
  if (!c->initial()) throw MissingCoproduct("cocartesian structure needs an initial object");
  const FinCategory& C = c->cat();
  MonoidalSpec s;
  s.base = c->base();
  s.tensor_obj = [c](ObjId x, ObjId y) { return c->try_sum(x, y); };
  s.tensor_mor = [c](MorId f, MorId g) { return coproduct_sum(*c, f, g); };
  s.unit = *c->initial();
  s.associator = [c, &C](ObjId x, ObjId y, ObjId z) {
    const ObjId yz = c->sum(y, z);
    const MorId into_yz_l = C.at(c->inr(x, yz), c->inl(y, z));
    const MorId into_yz_r = C.at(c->inr(x, yz), c->inr(y, z));
    return c->copair(c->copair(c->inl(x, yz), into_yz_l), into_yz_r);
  };
  s.lunitor = [c, &C](ObjId x) { return c->copair(c->from_initial(x), C.identity(x)); };
  s.runitor = [c, &C](ObjId x) { return c->copair(C.identity(x), c->from_initial(x)); };
  s.braiding = [c](ObjId x, ObjId y) { return c->copair(c->inr(y, x), c->inl(y, x)); };
  s.name = "cocartesian(" + c->name() + ")";
  return make_monoidal(s);
}

// --- the canonical comparison ----------------------------------------------------

struct LaxCoproductStructure {
  Functor functor;
  CoproductPtr source;
  CoproductPtr target;
  /// kappa_{x,y} = [F inl, F inr] : F x + F y -> F(x + y), n^2, kNoMorphism where undefined.
  std::vector<MorId> kappa;
  /// The map from the target's initial object to F(0), when both are chosen.
  std::optional<MorId> kappa0;

  MorId kappa_at(ObjId x, ObjId y) const {
    const MorId m = kappa.at(index(x) * functor.source->object_count() + index(y));
    if (m == kNoMorphism) throw TruncationExceeded("comparison outside the chosen coproducts");
    return m;
  }
};

inline LaxCoproductStructure canonical_lax_structure(const Functor& F, const CoproductPtr& a, const CoproductPtr& b) {
  if (!same_category(F.source, a->base()) || !same_category(F.target, b->base()))
    throw PreconditionViolated("coproduct choices do not match the functor");
  const std::size_t n = F.source->object_count();
  LaxCoproductStructure L{F, a, b, std::vector<MorId>(n * n, kNoMorphism), std::nullopt};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId X = to_obj(x), Y = to_obj(y);
      if (!a->try_sum(X, Y) || !b->try_sum(F(X), F(Y))) continue;
      L.kappa[x * n + y] = b->copair(F(a->inl(X, Y)), F(a->inr(X, Y)));
    }
  if (a->initial() && b->initial()) L.kappa0 = b->from_initial(F(*a->initial()));
  return L;
}

/// The comparison as a lax monoidal functor between the cocartesian structures.
inline MonoidalFunctor as_monoidal_functor(const LaxCoproductStructure& L) {
  if (!L.kappa0) throw MissingCoproduct("lax structure needs initial objects on both sides");
  auto Ma = std::make_shared<const MonoidalStructure>(cocartesian_monoidal(L.source));
  auto Mb = std::make_shared<const MonoidalStructure>(cocartesian_monoidal(L.target));
  return make_monoidal_functor(
      Ma, Mb, L.functor, [&](ObjId x, ObjId y) { return L.kappa_at(x, y); }, *L.kappa0, L.functor.name);
}

/// Naturality of kappa; with initial objects on both sides, also every
/// coherence square of the induced lax monoidal functor.
inline ValidationReport check_lax_structure(const LaxCoproductStructure& L) {
  ValidationReport r;
  const FinCategory& A = *L.functor.source;
  const FinCategory& B = *L.functor.target;
  const Functor& F = L.functor;
  const std::size_t n = A.object_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x2 = 0; x2 < n; ++x2)
        for (std::size_t y2 = 0; y2 < n; ++y2) {
          if (L.kappa[x * n + y] == kNoMorphism || L.kappa[x2 * n + y2] == kNoMorphism) continue;
          for (MorId f : A.hom(to_obj(x), to_obj(x2)))
            for (MorId g : A.hom(to_obj(y), to_obj(y2)))
              detail::check_instance(
                  r, "naturality",
                  [&] {
                    const MorId lhs = B.at(L.kappa_at(to_obj(x2), to_obj(y2)), coproduct_sum(*L.target, F(f), F(g)));
                    const MorId rhs = B.at(F(coproduct_sum(*L.source, f, g)), L.kappa_at(to_obj(x), to_obj(y)));
                    return lhs == rhs;
                  },
                  [&] {
                    std::ostringstream os;
                    os << "(" << f << "," << g << ")";
                    return os.str();
                  });
        }
  if (L.kappa0) r.merge(check_monoidal_functor(as_monoidal_functor(L)), "lax");
  return r;
}

struct PreservationVerdict {
  bool binary = false;
  std::optional<std::pair<ObjId, ObjId>> failing_pair;
  /// Whether F sends the chosen initial object of the source to an initial object.
  std::optional<bool> initial;
  std::size_t pairs_checked = 0;
};

/// Every kappa_{x,y} invertible (over the pairs where both coproducts are
/// chosen), and separately whether F(0) is initial.
inline PreservationVerdict preserves_binary_coproducts(const Functor& F, const CoproductPtr& a, const CoproductPtr& b) {
  const LaxCoproductStructure L = canonical_lax_structure(F, a, b);
  const FinCategory& B = *F.target;
  PreservationVerdict v;
  v.binary = true;
  const std::size_t n = F.source->object_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const MorId k = L.kappa[x * n + y];
      if (k == kNoMorphism) continue;
      ++v.pairs_checked;
      if (!is_invertible(B, k) && v.binary) {
        v.binary = false;
        v.failing_pair = std::pair{to_obj(x), to_obj(y)};
      }
    }
  if (a->initial()) v.initial = is_initial(B, F(*a->initial()));
  return v;
}

// --- families over Fam_f ----------------------------------------------------------

/// psi_x : alg(F x) -> F(alg x), indexed by families.
using FamilyFamily = std::map<Family, MorId>;

/// Families of length <= N whose algebra is defined on both sides.
inline std::vector<Family> fam_domain(const Functor& F, const CoproductChoice& a, const CoproductChoice& b,
                                      std::size_t N) {
  return all_families(F.source->object_count(), N, [&](const Word& w) {
    return try_coproduct_algebra(a, w) && try_coproduct_algebra(b, image(F, w));
  });
}

namespace detail {

template <class Psi>
bool fam_natural(const Functor& F, const CoproductChoice& a, const CoproductChoice& b, Psi&& psi,
                 const FamMorphism& m) {
  const FinCategory& B = *F.target;
  return B.at(psi(m.dst), coproduct_algebra(b, image(F, m))) == B.at(F(coproduct_algebra(a, m)), psi(m.src));
}

}  // namespace detail

/// Typing (throws ComponentTypeMismatch), invertibility and naturality in
/// every family morphism between families of length <= N.
inline ValidationReport check_fam_family(const FamilyFamily& psi, const Functor& F, const CoproductChoice& a,
                                         const CoproductChoice& b, std::size_t N) {
  ValidationReport r;
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  const auto dom = fam_domain(F, a, b, N);
  for (const auto& x : dom) {
    auto it = psi.find(x);
    if (it == psi.end()) throw ComponentTypeMismatch("no component at family " + to_string(x));
    if (!detail::has_type(B, it->second, coproduct_algebra(b, image(F, x)), F(coproduct_algebra(a, x)))) {
      std::ostringstream os;
      os << "component at " << to_string(x) << " is " << it->second << ", expected "
         << coproduct_algebra(b, image(F, x)) << " -> " << F(coproduct_algebra(a, x));
      throw ComponentTypeMismatch(os.str());
    }
  }
  auto at = [&](const Family& x) {
    auto it = psi.find(x);
    if (it == psi.end()) throw TruncationExceeded("family outside the domain");
    return it->second;
  };
  for (const auto& x : dom)
    detail::check_instance(
        r, "invertibility", [&] { return is_invertible(B, at(x)); }, [&] { return to_string(x); });
  for (const auto& x : dom)
    for (const auto& y : dom)
      for_each_fam_morphism(A, x, y, [&](const FamMorphism& m) {
        detail::check_instance(
            r, "naturality", [&] { return detail::fam_natural(F, a, b, at, m); }, [&] { return to_string(m); });
      });
  return r;
}

/// The comparison cells of the canonical lax structure at every family.
inline FamilyFamily canonical_fam_family(const LaxCoproductStructure& L, std::size_t N) {
  const MonoidalFunctor M = as_monoidal_functor(L);
  FamilyFamily out;
  for (const auto& x : fam_domain(L.functor, *L.source, *L.target, N)) out[x] = comparison_cell(M, x);
  return out;
}

struct KzVerdict {
  bool holds = false;
  ValidationReport report;
  /// preserves_binary_coproducts, run alongside.
  bool preserves = false;
};

/// Whether psi is a plain natural isomorphism alg . Fam(F) => F . alg over
/// families of length <= N. No compatibility with comparison cells is asked.
inline KzVerdict kz_shortcut(const Functor& F, const FamilyFamily& psi, const CoproductPtr& a, const CoproductPtr& b,
                             std::size_t N) {
  KzVerdict v;
  v.report = check_fam_family(psi, F, *a, *b, N);
  v.holds = v.report.ok();
  v.preserves = preserves_binary_coproducts(F, a, b).binary;
  return v;
}

struct FamSearch {
  std::vector<FamilyFamily> solutions;
  std::size_t nodes = 0;
  bool truncated = false;
};

/// All invertible natural families alg . Fam(F) => F . alg over families of
/// length <= N.
inline FamSearch search_kz_psi(const Functor& F, const CoproductPtr& a, const CoproductPtr& b, std::size_t N,
                               SearchLimits limits = {}) {
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  const auto dom = fam_domain(F, *a, *b, N);
  std::map<Family, std::size_t> slot;
  std::vector<std::vector<MorId>> cands(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    slot[dom[i]] = i;
    for (MorId m : B.hom(coproduct_algebra(*b, image(F, dom[i])), F(coproduct_algebra(*a, dom[i]))))
      if (is_invertible(B, m)) cands[i].push_back(m);
  }
  ConstraintSearch search(cands);
  for (const auto& x : dom)
    for (const auto& y : dom)
      for_each_fam_morphism(A, x, y, [&](const FamMorphism& m) {
        const MorId lhs_alg = coproduct_algebra(*b, image(F, m));
        const MorId rhs_alg = F(coproduct_algebra(*a, m));
        const std::size_t sx = slot.at(x), sy = slot.at(y);
        search.add_constraint({sx, sy}, [&B, lhs_alg, rhs_alg, sx, sy](std::span<const MorId> s) {
          return B.compose(s[sy], lhs_alg) == B.compose(rhs_alg, s[sx]);
        });
      });
  SearchResult res = search.run(limits);
  FamSearch out;
  out.nodes = res.nodes;
  out.truncated = res.truncated;
  for (const auto& sol : res.solutions) {
    FamilyFamily psi;
    for (std::size_t i = 0; i < dom.size(); ++i) psi[dom[i]] = sol[i];
    out.solutions.push_back(std::move(psi));
  }
  return out;
}

// --- binary families and the alpha' construction --------------------------------

/// alpha_{x,y} : F x + F y -> F(x + y), n^2 like kappa.
using BinaryCoproductFamily = std::vector<MorId>;

namespace detail {

inline MorId binary_at(const Functor& F, const BinaryCoproductFamily& alpha, ObjId x, ObjId y) {
  const MorId m = alpha.at(index(x) * F.source->object_count() + index(y));
  if (m == kNoMorphism) throw TruncationExceeded("binary family undefined at " + tuple_str({index(x), index(y)}));
  return m;
}

inline bool binary_slot(const Functor& F, const CoproductChoice& a, const CoproductChoice& b, ObjId x, ObjId y) {
  return a.try_sum(x, y) && b.try_sum(F(x), F(y));
}

}  // namespace detail

/// Typing, invertibility and naturality of a binary family; every violation
/// is reported under its law name.
inline ValidationReport check_binary_iso(const BinaryCoproductFamily& alpha, const Functor& F, const CoproductChoice& a,
                                         const CoproductChoice& b) {
  ValidationReport r;
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  const std::size_t n = A.object_count();
  if (alpha.size() != n * n) {
    r.add("typing", "binary family has the wrong size");
    return r;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId X = to_obj(x), Y = to_obj(y);
      if (!detail::binary_slot(F, a, b, X, Y)) continue;
      const MorId m = alpha[x * n + y];
      r.count("typing");
      if (!detail::has_type(B, m, b.sum(F(X), F(Y)), F(a.sum(X, Y)))) {
        r.add("typing", detail::tuple_str({x, y}));
        continue;
      }
      r.count("invertibility");
      if (!is_invertible(B, m)) r.add("invertibility", detail::tuple_str({x, y}));
    }
  if (!r.ok()) return r;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x2 = 0; x2 < n; ++x2)
        for (std::size_t y2 = 0; y2 < n; ++y2) {
          const ObjId X = to_obj(x), Y = to_obj(y), X2 = to_obj(x2), Y2 = to_obj(y2);
          if (!detail::binary_slot(F, a, b, X, Y) || !detail::binary_slot(F, a, b, X2, Y2)) continue;
          for (MorId f : A.hom(X, X2))
            for (MorId g : A.hom(Y, Y2)) {
              r.count("naturality");
              const MorId lhs = B.at(alpha[x2 * n + y2], coproduct_sum(b, F(f), F(g)));
              const MorId rhs = B.at(F(coproduct_sum(a, f, g)), alpha[x * n + y]);
              if (lhs != rhs) {
                std::ostringstream os;
                os << "(" << f << "," << g << ")";
                r.add("naturality", os.str());
              }
            }
        }
  return r;
}

/// All natural isomorphisms F x + F y -> F(x + y) over the chosen pairs.
inline std::vector<BinaryCoproductFamily> search_binary_isos(const Functor& F, const CoproductPtr& a,
                                                             const CoproductPtr& b, SearchLimits limits = {}) {
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  const std::size_t n = A.object_count();
  std::vector<std::pair<ObjId, ObjId>> pairs;
  std::vector<std::vector<MorId>> cands;
  std::vector<std::size_t> slot(n * n, SIZE_MAX);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId X = to_obj(x), Y = to_obj(y);
      if (!detail::binary_slot(F, *a, *b, X, Y)) continue;
      slot[x * n + y] = pairs.size();
      pairs.push_back({X, Y});
      std::vector<MorId> c;
      for (MorId m : B.hom(b->sum(F(X), F(Y)), F(a->sum(X, Y))))
        if (is_invertible(B, m)) c.push_back(m);
      cands.push_back(std::move(c));
    }
  ConstraintSearch search(cands);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const auto [X, Y] = pairs[i];
      const auto [X2, Y2] = pairs[j];
      for (MorId f : A.hom(X, X2))
        for (MorId g : A.hom(Y, Y2)) {
          const MorId top = coproduct_sum(*b, F(f), F(g));
          const MorId bottom = F(coproduct_sum(*a, f, g));
          search.add_constraint({i, j}, [&B, i, j, top, bottom](std::span<const MorId> s) {
            return B.compose(s[j], top) == B.compose(bottom, s[i]);
          });
        }
    }
  auto res = search.run(limits);
  std::vector<BinaryCoproductFamily> out;
  for (const auto& sol : res.solutions) {
    BinaryCoproductFamily alpha(n * n, kNoMorphism);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      alpha[index(pairs[i].first) * n + index(pairs[i].second)] = sol[i];
    out.push_back(std::move(alpha));
  }
  return out;
}

struct AlphaPrimeOptions {
  /// Precompose alpha with the inverses of its unit restrictions
  /// a_y = F(inl)^-1 . alpha_{y,0} . inl and b_y = F(inr)^-1 . alpha_{0,y} . inr
  /// before the recursion. Off: alpha is used as given.
  bool normalize = true;
};

/// alpha'_{(y)} = F(inl_{y,0})^-1 . alpha_{y,0} . inl_{Fy,F0}, alpha'_{(x1,x2)} = alpha,
/// alpha'_{w.x} = alpha_{alg w, x} . (alpha'_w + id) for |w| >= 2.
inline FamilyFamily alpha_prime_recursion(const BinaryCoproductFamily& alpha, const Functor& F,
                                          const CoproductChoice& a, const CoproductChoice& b, std::size_t N) {
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  const ObjId O = *a.initial();
  FamilyFamily out;
  for (const auto& w : fam_domain(F, a, b, N)) {
    try {
      if (w.size() == 1) {
        const ObjId y = w[0];
        out[w] = chain(B, {F(inverse_of(A, a.inl(y, O))), detail::binary_at(F, alpha, y, O), b.inl(F(y), F(O))});
      } else if (w.size() == 2) {
        out[w] = detail::binary_at(F, alpha, w[0], w[1]);
      } else {
        const Family w1(w.begin(), w.end() - 1);
        auto prev = out.find(w1);
        if (prev == out.end()) continue;
        out[w] = B.at(detail::binary_at(F, alpha, coproduct_algebra(a, w1), w.back()),
                      coproduct_sum(b, prev->second, B.identity(F(w.back()))));
      }
    } catch (const TruncationExceeded&) {
    } catch (const MissingCoproduct&) {
    }
  }
  return out;
}

struct AlphaPrimeResult {
  FamilyFamily alpha_prime;
  ValidationReport report;  // check_fam_family of alpha_prime
  PreservationVerdict preservation;
};

/// Checks the hypotheses (HypothesisViolated), builds alpha' and, in
/// normalized mode, requires it to be an invertible natural family with F
/// preserving binary coproducts (InternalProofMismatch otherwise).
inline AlphaPrimeResult build_alpha_prime(const Functor& F, const BinaryCoproductFamily& alpha, const CoproductPtr& a,
                                          const CoproductPtr& b, std::size_t N, AlphaPrimeOptions opts = {}) {
  if (!a->initial()) throw HypothesisViolated("initial", "source has no chosen initial object");
  if (!is_initial(*F.target, F(*a->initial())))
    throw HypothesisViolated("initial", "the functor does not preserve the initial object");
  ValidationReport h = check_binary_iso(alpha, F, *a, *b);
  for (const char* which : {"typing", "invertibility", "naturality"})
    if (h.has_violation(which)) throw HypothesisViolated(which, h.summary(3));

  BinaryCoproductFamily used = alpha;
  if (opts.normalize) {
    const FinCategory& A = *F.source;
    const FinCategory& B = *F.target;
    const ObjId O = *a->initial();
    const std::size_t n = A.object_count();
    std::vector<MorId> u_inv(n, kNoMorphism), v_inv(n, kNoMorphism);
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId Y = to_obj(y);
      try {
        u_inv[y] = inverse_of(B, chain(B, {F(inverse_of(A, a->inl(Y, O))), detail::binary_at(F, alpha, Y, O),
                                           b->inl(F(Y), F(O))}));
        v_inv[y] = inverse_of(B, chain(B, {F(inverse_of(A, a->inr(O, Y))), detail::binary_at(F, alpha, O, Y),
                                           b->inr(F(O), F(Y))}));
      } catch (const TruncationExceeded&) {
      } catch (const MissingCoproduct&) {
      }
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (alpha[x * n + y] == kNoMorphism) continue;
        if (u_inv[x] == kNoMorphism || v_inv[y] == kNoMorphism) {
          used[x * n + y] = kNoMorphism;
          continue;
        }
        used[x * n + y] = B.at(alpha[x * n + y], coproduct_sum(*b, u_inv[x], v_inv[y]));
      }
  }
  AlphaPrimeResult out;
  out.alpha_prime = alpha_prime_recursion(used, F, *a, *b, N);
  out.report = check_fam_family(out.alpha_prime, F, *a, *b, N);
  out.preservation = preserves_binary_coproducts(F, a, b);
  if (opts.normalize && (!out.report.ok() || !out.preservation.binary))
    throw InternalProofMismatch("alpha' fails its postcondition: " + out.report.summary(3));
  return out;
}

// --- the beta criterion -------------------------------------------------------------

struct BetaVerdict {
  bool holds = false;
  std::optional<std::pair<ObjId, ObjId>> failing_pair;
  /// [F inl . beta_x, F inr . beta_y], n^2.
  std::vector<MorId> induced;
};

/// For a natural isomorphism beta : F => F, whether every map
/// [F(inl) . beta_x, F(inr) . beta_y] : F x + F y -> F(x + y) is invertible.
inline BetaVerdict beta_criterion(const Functor& F, const std::vector<MorId>& beta, const CoproductPtr& a,
                                  const CoproductPtr& b) {
  const FinCategory& B = *F.target;
  NatTrans t{F, F, beta, "beta"};
  if (beta.size() != F.source->object_count()) throw HypothesisViolated("natural-iso", "wrong number of components");
  try {
    ValidationReport nat = check_naturality(t);
    if (!nat.ok()) throw HypothesisViolated("natural-iso", nat.summary(3));
  } catch (const ComponentTypeMismatch& e) {
    throw HypothesisViolated("natural-iso", e.what());
  }
  if (!is_natural_iso(t)) throw HypothesisViolated("natural-iso", "a component is not invertible");
  const std::size_t n = F.source->object_count();
  BetaVerdict v;
  v.holds = true;
  v.induced.assign(n * n, kNoMorphism);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId X = to_obj(x), Y = to_obj(y);
      if (!detail::binary_slot(F, *a, *b, X, Y)) continue;
      const MorId m = b->copair(B.at(F(a->inl(X, Y)), beta[x]), B.at(F(a->inr(X, Y)), beta[y]));
      v.induced[x * n + y] = m;
      if (!is_invertible(B, m) && v.holds) {
        v.holds = false;
        v.failing_pair = std::pair{X, Y};
      }
    }
  return v;
}

struct BetaSearch {
  std::vector<std::vector<MorId>> natural_isos;  // every natural iso F => F
  std::vector<std::vector<MorId>> passing;       // those satisfying the criterion
  std::size_t nodes = 0;
};

inline BetaSearch search_beta(const Functor& F, const CoproductPtr& a, const CoproductPtr& b, SearchLimits limits = {}) {
  BetaSearch out;
  auto found = search_nat_trans(F, F, true, limits);
  out.nodes = found.nodes;
  for (auto& t : found.solutions) {
    if (beta_criterion(F, t.components, a, b).holds) out.passing.push_back(t.components);
    out.natural_isos.push_back(std::move(t.components));
  }
  return out;
}

namespace fixtures {

/// m + n on FinSet_k where m + n <= k, injections onto the two blocks, initial 0.
inline CoproductPtr finset_coproducts(std::size_t k) {
  static std::map<std::size_t, CoproductPtr> cache;
  return detail::cached(cache, k, [k] {
    FinSetPtr fs = finset(k);
    auto block = [fs](std::size_t m, std::size_t total, std::size_t offset) {
      std::vector<std::uint32_t> v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<std::uint32_t>(offset + i);
      return fs->fn(m, total, v);
    };
    return std::make_shared<const CoproductChoice>(make_coproduct_choice(
        fs->category(),
        [k](ObjId x, ObjId y) -> std::optional<ObjId> {
          if (index(x) + index(y) > k) return std::nullopt;
          return to_obj(index(x) + index(y));
        },
        [block](ObjId x, ObjId y) { return block(index(x), index(x) + index(y), 0); },
        [block](ObjId x, ObjId y) { return block(index(y), index(x) + index(y), index(x)); }, ObjId{0},
        "finset" + std::to_string(k)));
  });
}

/// max on the arrow category, initial 0.
inline CoproductPtr arrow_coproducts() {
  static const CoproductPtr c = [] {
    const CategoryPtr a = arrow_category();
    const FinCategory& A = *a;
    auto mx = [](ObjId x, ObjId y) { return to_obj(std::max(index(x), index(y))); };
    return std::make_shared<const CoproductChoice>(make_coproduct_choice(
        a, [mx](ObjId x, ObjId y) -> std::optional<ObjId> { return mx(x, y); },
        [&A, mx](ObjId x, ObjId y) { return preorder_arrow(A, x, mx(x, y)); },
        [&A, mx](ObjId x, ObjId y) { return preorder_arrow(A, y, mx(x, y)); }, ObjId{0}, "arrow"));
  }();
  return c;
}

inline CoproductPtr terminal_coproducts() {
  static const CoproductPtr c = std::make_shared<const CoproductChoice>(make_coproduct_choice(
      terminal_category(), [](ObjId, ObjId) -> std::optional<ObjId> { return ObjId{0}; },
      [](ObjId, ObjId) { return MorId{0}; }, [](ObjId, ObjId) { return MorId{0}; }, ObjId{0}, "terminal"));
  return c;
}

}  // namespace fixtures

}  // namespace ncanon
