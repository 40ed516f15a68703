#pragma once

// The free-monoid construction truncated at words of length <= N: the free
// strict monoidal category on a finite category, the fold algebra of a
// monoidal category, and the comparison cells of a monoidal functor.
//
// Folds are left-nested: fold() = I, fold(x) = x, fold(w.x) = fold(w) (x) x.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/fincat.hpp"
#include "ncanon/monoidal.hpp"
#include "ncanon/report.hpp"
#include "ncanon/tuple.hpp"

namespace ncanon {

/// A word of words (one level of nesting above Word).
using Word2 = std::vector<Word>;
/// A word of words of words.
using Word3 = std::vector<Word2>;

/// A family of morphisms indexed by words.
using WordFamily = std::map<Word, MorId>;

inline Word flatten(const Word2& W) {
  Word out;
  for (const auto& w : W) out.insert(out.end(), w.begin(), w.end());
  return out;
}
inline Word2 flatten(const Word3& W) {
  Word2 out;
  for (const auto& w : W) out.insert(out.end(), w.begin(), w.end());
  return out;
}
inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}
inline Word2 singletons(const Word& w) {
  Word2 W;
  for (ObjId x : w) W.push_back({x});
  return W;
}

inline std::string to_string(const Word2& W) {
  std::string s = "(";
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (i) s += ",";
    s += to_string(W[i]);
  }
  return s + ")";
}
inline std::string to_string(const Word3& W) {
  std::string s = "(";
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (i) s += ",";
    s += to_string(W[i]);
  }
  return s + ")";
}

/// Pointwise image of a word under a functor.
inline Word image(const Functor& F, const Word& w) {
  Word out;
  for (ObjId x : w) out.push_back(F(x));
  return out;
}
inline Word2 image(const Functor& F, const Word2& W) {
  Word2 out;
  for (const auto& w : W) out.push_back(image(F, w));
  return out;
}

// --- the fold algebra --------------------------------------------------------

inline ObjId fold(const MonoidalStructure& M, const Word& w) {
  if (w.empty()) return M.unit;
  ObjId acc = w[0];
  for (std::size_t i = 1; i < w.size(); ++i) acc = M.tensor_obj(acc, w[i]);
  return acc;
}

inline std::optional<ObjId> try_fold(const MonoidalStructure& M, const Word& w) {
  if (w.empty()) return M.unit;
  ObjId acc = w[0];
  for (std::size_t i = 1; i < w.size(); ++i) {
    auto t = M.try_tensor(acc, w[i]);
    if (!t) return std::nullopt;
    acc = *t;
  }
  return acc;
}

/// Left-nested tensor of a morphism tuple; fold_mor of the empty tuple is id_I.
inline MorId fold_mor(const MonoidalStructure& M, std::span<const MorId> a) {
  if (a.empty()) return M.id(M.unit);
  MorId acc = a[0];
  for (std::size_t i = 1; i < a.size(); ++i) acc = M.tensor_mor(acc, a[i]);
  return acc;
}
inline MorId fold_mor(const MonoidalStructure& M, const std::vector<MorId>& a) {
  return fold_mor(M, std::span<const MorId>(a));
}

/// Folds of the inner words: (fold w1, ..., fold wn).
inline Word fold_each(const MonoidalStructure& M, const Word2& W) {
  Word out;
  for (const auto& w : W) out.push_back(fold(M, w));
  return out;
}

/// nu_{v,w} : fold v (x) fold w -> fold(v.w), built from unitors and inverse associators.
inline MorId nu(const MonoidalStructure& M, const Word& v, const Word& w) {
  const FinCategory& C = M.cat();
  if (w.empty()) return M.rho(fold(M, v));
  if (v.empty()) return M.lambda(fold(M, w));
  if (w.size() == 1) return M.id(fold(M, concat(v, w)));
  const Word w1(w.begin(), w.end() - 1);
  const ObjId y = w.back();
  return C.at(M.tensor_mor(nu(M, v, w1), M.id(y)), inverse_of(C, M.alpha(fold(M, v), fold(M, w1), y)));
}

/// zbar_W : fold(fold w1, ..., fold wn) -> fold(w1 ... wn).
inline MorId zbar(const MonoidalStructure& M, const Word2& W) {
  if (W.empty()) return M.id(M.unit);
  if (W.size() == 1) return M.id(fold(M, W[0]));
  const Word2 W1(W.begin(), W.end() - 1);
  const FinCategory& C = M.cat();
  return C.at(nu(M, flatten(W1), W.back()), M.tensor_mor(zbar(M, W1), M.id(fold(M, W.back()))));
}

/// zbar0_x : x -> fold((x)); the identity for a left-nested fold.
inline MorId zbar0(const MonoidalStructure& M, ObjId x) { return M.id(x); }

// --- the free strict monoidal category -----------------------------------------

struct FreeMonoidalCat {
  CategoryPtr base;
  std::size_t N = 0;
  TuplePtr words;
  MonoidalPtr monoidal;

  const FinCategory& cat() const { return words->cat(); }
  ObjId object(const Word& w) const {
    if (auto x = words->find(w)) return *x;
    throw TruncationExceeded("word " + to_string(w) + " is outside the truncated free category");
  }
};

/// Number of morphisms of the free category on A truncated at N.
inline double free_morphism_count(const FinCategory& A, std::size_t N) {
  const double m = static_cast<double>(A.morphism_count());
  double total = 0, p = 1;
  for (std::size_t len = 0; len <= N; ++len, p *= m) total += p;
  return total;
}

/// The free strict monoidal category on A with words of length <= N.
/// Concatenation is defined when the result has length <= N; all structural
/// cells are identities. An optional predicate restricts the words kept.
inline FreeMonoidalCat build_free(CategoryPtr A, std::size_t N, std::size_t bound = 1'000'000,
                                  const std::function<bool(const Word&)>& keep = {}) {
  if (N < 1) throw PreconditionViolated("free construction needs N >= 1");
  const double size = free_morphism_count(*A, N);
  if (size > static_cast<double>(bound))
    throw SearchSpaceTooLarge("free category on " + A->name() + " at N=" + std::to_string(N), size);
  FreeMonoidalCat F;
  F.base = A;
  F.N = N;
  F.words = std::make_shared<const TupleCategory>(A, all_words(A->object_count(), N, keep),
                                                  "free(" + A->name() + "," + std::to_string(N) + ")");
  const TupleCategory& T = *F.words;
  const FinCategory& C = T.cat();
  MonoidalSpec s;
  s.base = T.category();
  s.tensor_obj = [&T](ObjId x, ObjId y) { return T.find(concat(T.word(x), T.word(y))); };
  s.tensor_mor = [&T](MorId f, MorId g) {
    std::vector<MorId> c(T.components(f).begin(), T.components(f).end());
    for (MorId m : T.components(g)) c.push_back(m);
    return T.tuple(c);
  };
  s.unit = *T.find({});
  s.associator = [&](ObjId x, ObjId y, ObjId z) { return C.identity(T.find(concat(concat(T.word(x), T.word(y)), T.word(z))).value()); };
  s.lunitor = s.runitor = [&C](ObjId x) { return C.identity(x); };
  s.name = "free(" + A->name() + "," + std::to_string(N) + ")";
  F.monoidal = std::make_shared<const MonoidalStructure>(make_monoidal(s));
  return F;
}

/// The strict monoidal functor between free categories acting pointwise by f.
inline MonoidalFunctor lift_functor(const Functor& f, const FreeMonoidalCat& src, const FreeMonoidalCat& dst) {
  if (!same_category(f.source, src.base) || !same_category(f.target, dst.base))
    throw PreconditionViolated("lift_functor: free categories do not match the functor");
  const TupleCategory& S = *src.words;
  const TupleCategory& D = *dst.words;
  std::vector<ObjId> om(S.word_count());
  std::vector<MorId> mm(S.cat().morphism_count());
  for (std::size_t i = 0; i < om.size(); ++i) om[i] = dst.object(image(f, S.word(to_obj(i))));
  for (std::size_t i = 0; i < mm.size(); ++i) {
    std::vector<MorId> c;
    for (MorId m : S.components(to_mor(i))) c.push_back(f(m));
    mm[i] = D.tuple(c);
  }
  Functor L = make_functor(S.category(), D.category(), std::move(om), std::move(mm), "lift(" + f.name + ")");
  const MonoidalStructure& Dm = *dst.monoidal;
  return make_monoidal_functor(
      src.monoidal, dst.monoidal, L,
      [&](ObjId x, ObjId y) { return Dm.id(Dm.tensor_obj(L(x), L(y))); }, Dm.id(Dm.unit), "lift(" + f.name + ")");
}

// --- comparison cells --------------------------------------------------------------

/// <f>_w : fold(F w) -> F(fold w): phi0 on (), the identity on (x), and
/// phi_{fold w, x} . (<f>_w (x) id) on w.x.
inline MorId comparison_cell(const MonoidalFunctor& F, const Word& w) {
  const MonoidalStructure& M = *F.source;
  const MonoidalStructure& N = *F.target;
  if (w.empty()) return F.phi0;
  if (w.size() == 1) return N.id(F(w[0]));
  const Word w1(w.begin(), w.end() - 1);
  const ObjId x = w.back();
  return N.cat().at(F.phi_at(fold(M, w1), x), N.tensor_mor(comparison_cell(F, w1), N.id(F(x))));
}

/// Words of length <= N whose fold and whose image fold are both defined.
inline std::vector<Word> lax_domain(const MonoidalFunctor& F, std::size_t N) {
  return all_words(F.source->size(), N, [&](const Word& w) {
    return try_fold(*F.source, w) && try_fold(*F.target, image(F.underlying, w));
  });
}

/// Words of length <= N whose fold is defined.
inline std::vector<Word> fold_domain(const MonoidalStructure& M, std::size_t N) {
  return all_words(M.size(), N, [&](const Word& w) { return try_fold(M, w).has_value(); });
}

inline WordFamily comparison_family(const MonoidalFunctor& F, std::size_t N) {
  WordFamily out;
  for (const auto& w : lax_domain(F, N)) {
    try {
      out[w] = comparison_cell(F, w);
    } catch (const TruncationExceeded&) {
    }
  }
  return out;
}

namespace detail {

/// Calls fn(target word, component tuple) for every morphism tuple out of w
/// (one base morphism out of each letter).
template <class Fn>
void for_each_tuple_from(const FinCategory& C, const Word& w, Fn&& fn) {
  const std::size_t n = w.size();
  std::vector<std::vector<MorId>> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t y = 0; y < C.object_count(); ++y)
      for (MorId m : C.hom(w[i], to_obj(y))) out[i].push_back(m);
  for (const auto& o : out)
    if (o.empty()) return;
  std::vector<std::size_t> pos(n, 0);
  std::vector<MorId> a(n);
  Word tgt(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = out[i][pos[i]];
      tgt[i] = C.dst(a[i]);
    }
    fn(static_cast<const Word&>(tgt), static_cast<const std::vector<MorId>&>(a));
    std::size_t k = 0;
    while (k < n && ++pos[k] == out[k].size()) pos[k++] = 0;
    if (k == n) break;
  }
}

inline std::string tuple_where(const std::vector<MorId>& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << "]";
  return os.str();
}

/// All sequences of at most max_len items whose summed weights stay within
/// the given limits. weight(item) returns a pair of weights.
template <class T, class Weight>
std::vector<std::vector<T>> sequences(const std::vector<T>& items, std::size_t max_len, std::pair<std::size_t, std::size_t> limit,
                                      Weight&& weight, std::size_t bound, const char* what) {
  std::vector<std::pair<std::size_t, std::size_t>> wts;
  for (const auto& it : items) wts.push_back(weight(it));
  std::vector<std::vector<T>> out{{}};
  std::vector<std::pair<std::size_t, std::size_t>> acc{{0, 0}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < items.size(); ++j) {
        const std::pair<std::size_t, std::size_t> w{acc[i].first + wts[j].first, acc[i].second + wts[j].second};
        if (w.first > limit.first || w.second > limit.second) continue;
        auto s = out[i];
        s.push_back(items[j]);
        out.push_back(std::move(s));
        acc.push_back(w);
        if (out.size() > bound)
          throw SearchSpaceTooLarge(std::string(what) + " enumeration exceeds bound", static_cast<double>(out.size()));
      }
    begin = end;
  }
  return out;
}

}  // namespace detail

/// Words of words over M whose inner folds, outer fold and flattened fold are
/// defined: at most N inner words, flattened length <= N.
inline std::vector<Word2> nested_domain(const MonoidalStructure& M, std::size_t N, std::size_t bound = 1'000'000) {
  const auto inner = fold_domain(M, N);
  auto all = detail::sequences(
      inner, N, {N, N}, [](const Word& w) { return std::pair{w.size(), std::size_t{0}}; }, bound, "nested word");
  std::vector<Word2> out;
  for (auto& W : all) {
    bool ok = true;
    for (const auto& w : W) ok = ok && try_fold(M, w).has_value();
    if (!ok) continue;
    Word folds;
    for (const auto& w : W) folds.push_back(fold(M, w));
    if (try_fold(M, folds) && try_fold(M, flatten(W))) out.push_back(std::move(W));
  }
  return out;
}

/// Doubly nested words: at most N entries per level, flattened length <= N,
/// every fold along either route of the multiplication axiom defined.
inline std::vector<Word3> nested3_domain(const MonoidalStructure& M, std::size_t N, std::size_t bound = 1'000'000) {
  const auto inner = nested_domain(M, N, bound);
  auto all = detail::sequences(
      inner, N, {N, N}, [](const Word2& W) { return std::pair{flatten(W).size(), W.size()}; }, bound,
      "doubly nested word");
  std::vector<Word3> out;
  for (auto& W : all) {
    Word2 flat_each, alg_each;
    for (const auto& Wi : W) {
      flat_each.push_back(flatten(Wi));
      alg_each.push_back(fold_each(M, Wi));
    }
    Word2 f1 = flatten(W);
    if (!try_fold(M, fold_each(M, flat_each)) || !try_fold(M, flatten(f1))) continue;
    bool ok = true;
    for (const auto& a : alg_each) ok = ok && try_fold(M, a).has_value();
    if (ok && try_fold(M, fold_each(M, alg_each)) && try_fold(M, flatten(alg_each))) out.push_back(std::move(W));
  }
  return out;
}

/// The lax-algebra axioms for the fold algebra of M at truncation N:
/// invertibility and naturality of zbar, functoriality of fold, the
/// multiplication axiom over doubly nested words and both unit axioms.
inline ValidationReport check_lax_algebra(const MonoidalStructure& M, std::size_t N, std::size_t bound = 1'000'000) {
  ValidationReport r;
  const FinCategory& C = M.cat();
  const auto words = fold_domain(M, N);
  const auto nested = nested_domain(M, N, bound);

  for (const auto& W : nested)
    detail::check_instance(
        r, "zbar-invertibility", [&] { return is_invertible(C, zbar(M, W)); }, [&] { return to_string(W); });

  // Naturality of zbar in morphisms of nested words (same shape).
  for (const auto& W : nested) {
    const Word flat = flatten(W);
    detail::for_each_tuple_from(C, flat, [&](const Word& tgt, const std::vector<MorId>& a) {
      Word2 W2;
      std::size_t p = 0;
      for (const auto& w : W) {
        W2.emplace_back(tgt.begin() + p, tgt.begin() + p + w.size());
        p += w.size();
      }
      detail::check_instance(
          r, "zbar-naturality",
          [&] {
            std::vector<MorId> inner;
            std::size_t q = 0;
            for (const auto& w : W) {
              inner.push_back(fold_mor(M, std::span<const MorId>(a.data() + q, w.size())));
              q += w.size();
            }
            return C.at(zbar(M, W2), fold_mor(M, inner)) == C.at(fold_mor(M, a), zbar(M, W));
          },
          [&] { return to_string(W) + " " + detail::tuple_where(a); });
    });
  }

  // Functoriality of fold on words.
  for (const auto& w : words) {
    detail::check_instance(
        r, "fold-functoriality",
        [&] {
          std::vector<MorId> ids;
          for (ObjId x : w) ids.push_back(C.identity(x));
          return fold_mor(M, ids) == C.identity(fold(M, w));
        },
        [&] { return to_string(w); });
    detail::for_each_tuple_from(C, w, [&](const Word& mid, const std::vector<MorId>& f) {
      if (!try_fold(M, mid)) return;
      detail::for_each_tuple_from(C, mid, [&](const Word&, const std::vector<MorId>& g) {
        detail::check_instance(
            r, "fold-functoriality",
            [&] {
              std::vector<MorId> gf(f.size());
              for (std::size_t i = 0; i < f.size(); ++i) gf[i] = C.at(g[i], f[i]);
              return fold_mor(M, gf) == C.at(fold_mor(M, g), fold_mor(M, f));
            },
            [&] { return detail::tuple_where(g) + " after " + detail::tuple_where(f); });
      });
    });
  }

  // Multiplication axiom.
  const auto nested3 = nested3_domain(M, N, bound);
  std::vector<ValidationReport> parts(thread_count() + 1);
  parallel_chunks(nested3.size(), [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    for (std::size_t i = begin; i < end; ++i) {
      const Word3& W = nested3[i];
      detail::check_instance(
          parts[chunk], "multiplication",
          [&] {
            Word2 flat_each, alg_each;
            std::vector<MorId> inner;
            for (const auto& Wi : W) {
              flat_each.push_back(flatten(Wi));
              alg_each.push_back(fold_each(M, Wi));
              inner.push_back(zbar(M, Wi));
            }
            const MorId lhs = C.at(zbar(M, flat_each), fold_mor(M, inner));
            const MorId rhs = C.at(zbar(M, flatten(W)), zbar(M, alg_each));
            return lhs == rhs;
          },
          [&] { return to_string(W); });
    }
  });
  for (const auto& p : parts) r.merge(p);

  for (const auto& w : words) {
    detail::check_instance(
        r, "unit-outer", [&] { return C.at(zbar(M, Word2{w}), zbar0(M, fold(M, w))) == C.identity(fold(M, w)); },
        [&] { return to_string(w); });
    detail::check_instance(
        r, "unit-inner",
        [&] {
          std::vector<MorId> units;
          for (ObjId x : w) units.push_back(zbar0(M, x));
          return C.at(zbar(M, singletons(w)), fold_mor(M, units)) == C.identity(fold(M, w));
        },
        [&] { return to_string(w); });
  }
  return r;
}

/// The lax-morphism equations for the comparison family of F at truncation N:
/// naturality in morphisms of words, compatibility with zbar over nested
/// words, and the unit equation.
inline ValidationReport check_lax_morphism(const MonoidalFunctor& F, std::size_t N, std::size_t bound = 1'000'000) {
  ValidationReport r;
  const MonoidalStructure& M = *F.source;
  const MonoidalStructure& T = *F.target;
  const FinCategory& A = M.cat();
  const FinCategory& B = T.cat();

  for (const auto& w : lax_domain(F, N))
    detail::for_each_tuple_from(A, w, [&](const Word& w2, const std::vector<MorId>& a) {
      detail::check_instance(
          r, "comparison-naturality",
          [&] {
            std::vector<MorId> Fa;
            for (MorId m : a) Fa.push_back(F(m));
            return B.at(comparison_cell(F, w2), fold_mor(T, Fa)) == B.at(F(fold_mor(M, a)), comparison_cell(F, w));
          },
          [&] { return to_string(w) + " " + detail::tuple_where(a); });
    });

  for (const auto& W : nested_domain(M, N, bound))
    detail::check_instance(
        r, "comparison-multiplication",
        [&] {
          std::vector<MorId> inner;
          for (const auto& w : W) inner.push_back(comparison_cell(F, w));
          const MorId lhs = B.at(comparison_cell(F, flatten(W)), zbar(T, image(F.underlying, W)));
          const MorId rhs = chain(B, {F(zbar(M, W)), comparison_cell(F, fold_each(M, W)), fold_mor(T, inner)});
          return lhs == rhs;
        },
        [&] { return to_string(W); });

  for (std::size_t x = 0; x < M.size(); ++x)
    detail::check_instance(
        r, "comparison-unit",
        [&] {
          const ObjId X = to_obj(x);
          return B.at(comparison_cell(F, {X}), zbar0(T, F(X))) == F(zbar0(M, X));
        },
        [&] { return detail::tuple_str({x}); });
  return r;
}

}  // namespace ncanon
