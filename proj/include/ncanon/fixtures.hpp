#pragma once

// Built-in categories, monoidal structures and functors.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/fincat.hpp"
#include "ncanon/finset.hpp"
#include "ncanon/monoidal.hpp"

namespace ncanon::fixtures {

namespace detail {
template <class T, class Make>
std::shared_ptr<const T> cached(std::map<std::size_t, std::shared_ptr<const T>>& cache, std::size_t key, Make&& make) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = make();
  return slot;
}
}  // namespace detail

/// FinSet_k, shared so that functors built separately agree on identity.
inline FinSetPtr finset(std::size_t k) {
  static std::map<std::size_t, FinSetPtr> cache;
  return detail::cached(cache, k, [k] { return std::make_shared<const FinSet>(k); });
}

/// Disjoint union m + n on FinSet_k, defined for m + n <= k. The chosen
/// sums are strictly associative and unital in the skeleton, so every
/// structural cell is an identity; the braiding swaps the two blocks.
inline MonoidalPtr finset_monoidal(std::size_t k) {
  static std::map<std::size_t, MonoidalPtr> cache;
  return detail::cached(cache, k, [k] {
    FinSetPtr fs = finset(k);
    const FinCategory& C = fs->cat();
    MonoidalSpec s;
    s.base = fs->category();
    s.tensor_obj = [k](ObjId x, ObjId y) -> std::optional<ObjId> {
      if (index(x) + index(y) > k) return std::nullopt;
      return to_obj(index(x) + index(y));
    };
    s.tensor_mor = [fs, &C](MorId f, MorId g) {
      const auto& vf = fs->values(f);
      const auto& vg = fs->values(g);
      const std::uint32_t m2 = static_cast<std::uint32_t>(index(C.dst(f)));
      std::vector<std::uint32_t> v(vf);
      for (auto x : vg) v.push_back(m2 + x);
      return fs->fn(vf.size() + vg.size(), index(C.dst(f)) + index(C.dst(g)), v);
    };
    s.unit = ObjId{0};
    s.associator = [fs](ObjId x, ObjId y, ObjId z) { return fs->identity(index(x) + index(y) + index(z)); };
    s.lunitor = [fs](ObjId x) { return fs->identity(index(x)); };
    s.runitor = [fs](ObjId x) { return fs->identity(index(x)); };
    s.braiding = [fs](ObjId x, ObjId y) {
      const std::size_t m = index(x), n = index(y);
      std::vector<std::uint32_t> v(m + n);
      for (std::size_t i = 0; i < m + n; ++i) v[i] = static_cast<std::uint32_t>(i < m ? n + i : i - m);
      return fs->fn(m + n, m + n, v);
    };
    s.name = "finset:" + std::to_string(k);
    return std::make_shared<const MonoidalStructure>(make_monoidal(s));
  });
}

/// One object, one morphism.
inline CategoryPtr terminal_category() {
  static const CategoryPtr c = [] {
    const ComposeEntry table[] = {{MorId{0}, MorId{0}, MorId{0}}};
    return share(FinCategory(1, {{ObjId{0}, ObjId{0}}}, {MorId{0}}, table, "terminal"));
  }();
  return c;
}

/// Objects 0, 1; morphisms #0 = id0, #1 = id1, #2 = a : 0 -> 1.
inline CategoryPtr arrow_category() {
  static const CategoryPtr c = [] {
    const MorId id0{0}, id1{1}, a{2};
    const ComposeEntry table[] = {{id0, id0, id0}, {id1, id1, id1}, {a, id0, a}, {id1, a, a}};
    return share(FinCategory(2, {{ObjId{0}, ObjId{0}}, {ObjId{1}, ObjId{1}}, {ObjId{0}, ObjId{1}}}, {id0, id1}, table,
                             "arrow"));
  }();
  return c;
}

/// The unique morphism x -> y of a preorder, if any.
inline MorId preorder_arrow(const FinCategory& c, ObjId x, ObjId y) {
  auto h = c.hom(x, y);
  if (h.size() != 1) throw PreconditionViolated("not a preorder hom-set");
  return h[0];
}

inline MonoidalPtr terminal_monoidal() {
  static const MonoidalPtr m = [] {
    MonoidalSpec s;
    s.base = terminal_category();
    s.tensor_obj = [](ObjId, ObjId) -> std::optional<ObjId> { return ObjId{0}; };
    s.tensor_mor = [](MorId, MorId) { return MorId{0}; };
    s.associator = [](ObjId, ObjId, ObjId) { return MorId{0}; };
    s.lunitor = s.runitor = [](ObjId) { return MorId{0}; };
    s.braiding = [](ObjId, ObjId) { return MorId{0}; };
    s.name = "terminal";
    return std::make_shared<const MonoidalStructure>(make_monoidal(s));
  }();
  return m;
}

/// The arrow category with tensor max and unit 0 (its chosen coproducts).
inline MonoidalPtr arrow_monoidal() {
  static const MonoidalPtr m = [] {
    const CategoryPtr c = arrow_category();
    const FinCategory& C = *c;
    auto mx = [](ObjId x, ObjId y) { return to_obj(std::max(index(x), index(y))); };
    MonoidalSpec s;
    s.base = c;
    s.tensor_obj = [mx](ObjId x, ObjId y) -> std::optional<ObjId> { return mx(x, y); };
    s.tensor_mor = [&C, mx](MorId f, MorId g) { return preorder_arrow(C, mx(C.src(f), C.src(g)), mx(C.dst(f), C.dst(g))); };
    s.unit = ObjId{0};
    s.associator = [&C, mx](ObjId x, ObjId y, ObjId z) { return C.identity(mx(mx(x, y), z)); };
    s.lunitor = s.runitor = [&C](ObjId x) { return C.identity(x); };
    s.braiding = [&C, mx](ObjId x, ObjId y) { return C.identity(mx(x, y)); };
    s.name = "arrow";
    return std::make_shared<const MonoidalStructure>(make_monoidal(s));
  }();
  return m;
}

/// The discrete category on Z/2 with tensor given by addition.
inline MonoidalPtr z2_monoidal() {
  static const MonoidalPtr m = [] {
    const ComposeEntry table[] = {{MorId{0}, MorId{0}, MorId{0}}, {MorId{1}, MorId{1}, MorId{1}}};
    CategoryPtr c = share(FinCategory(2, {{ObjId{0}, ObjId{0}}, {ObjId{1}, ObjId{1}}}, {MorId{0}, MorId{1}}, table, "z2"));
    auto add = [](ObjId x, ObjId y) { return to_obj((index(x) + index(y)) % 2); };
    MonoidalSpec s;
    s.base = c;
    s.tensor_obj = [add](ObjId x, ObjId y) -> std::optional<ObjId> { return add(x, y); };
    s.tensor_mor = [add](MorId f, MorId g) { return to_mor(index(add(to_obj(index(f)), to_obj(index(g))))); };
    s.unit = ObjId{0};
    s.associator = [add](ObjId x, ObjId y, ObjId z) { return to_mor(index(add(add(x, y), z))); };
    s.lunitor = s.runitor = [](ObjId x) { return to_mor(index(x)); };
    s.braiding = [add](ObjId x, ObjId y) { return to_mor(index(add(x, y))); };
    s.name = "z2";
    return std::make_shared<const MonoidalStructure>(make_monoidal(s));
  }();
  return m;
}

// --- functors between finite-set skeleta ------------------------------------

/// FinSet_k -> FinSet_2k, m |-> m + m, f |-> f + f (block-major: point c*m + i
/// is copy c of i).
inline Functor f_dbl_functor(std::size_t k) {
  FinSetPtr a = finset(k), b = finset(2 * k);
  const FinCategory& A = a->cat();
  std::vector<ObjId> om(A.object_count());
  std::vector<MorId> mm(A.morphism_count());
  for (std::size_t m = 0; m <= k; ++m) om[m] = to_obj(2 * m);
  for (std::size_t i = 0; i < mm.size(); ++i) {
    const MorId f = to_mor(i);
    const std::size_t m = index(A.src(f)), n = index(A.dst(f));
    const auto& v = a->values(f);
    std::vector<std::uint32_t> w(2 * m);
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t j = 0; j < m; ++j) w[c * m + j] = static_cast<std::uint32_t>(c * n + v[j]);
    mm[i] = b->fn(2 * m, 2 * n, w);
  }
  return make_functor(a->category(), b->category(), std::move(om), std::move(mm), "f_dbl");
}

/// FinSet_k -> FinSet_{k^2}, m |-> m * m, f |-> f x f (pair (i, j) is point i*m + j).
inline Functor f_sq_functor(std::size_t k) {
  FinSetPtr a = finset(k), b = finset(k * k);
  const FinCategory& A = a->cat();
  std::vector<ObjId> om(A.object_count());
  std::vector<MorId> mm(A.morphism_count());
  for (std::size_t m = 0; m <= k; ++m) om[m] = to_obj(m * m);
  for (std::size_t i = 0; i < mm.size(); ++i) {
    const MorId f = to_mor(i);
    const std::size_t m = index(A.src(f)), n = index(A.dst(f));
    const auto& v = a->values(f);
    std::vector<std::uint32_t> w(m * m);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q) w[p * m + q] = static_cast<std::uint32_t>(v[p] * n + v[q]);
    mm[i] = b->fn(m * m, n * n, w);
  }
  return make_functor(a->category(), b->category(), std::move(om), std::move(mm), "f_sq");
}

/// FinSet_k -> FinSet_{k+1}, m |-> m + 1, f |-> f + id_1.
inline Functor f_succ_functor(std::size_t k) {
  FinSetPtr a = finset(k), b = finset(k + 1);
  const FinCategory& A = a->cat();
  std::vector<ObjId> om(A.object_count());
  std::vector<MorId> mm(A.morphism_count());
  for (std::size_t m = 0; m <= k; ++m) om[m] = to_obj(m + 1);
  for (std::size_t i = 0; i < mm.size(); ++i) {
    const MorId f = to_mor(i);
    std::vector<std::uint32_t> w = a->values(f);
    w.push_back(static_cast<std::uint32_t>(index(A.dst(f))));
    mm[i] = b->fn(index(A.src(f)) + 1, index(A.dst(f)) + 1, w);
  }
  return make_functor(a->category(), b->category(), std::move(om), std::move(mm), "f_succ");
}

/// The block shuffle (m + m) + (n + n) -> (m + n) + (m + n).
inline std::vector<std::uint32_t> dbl_shuffle(std::size_t m, std::size_t n) {
  std::vector<std::uint32_t> v(2 * m + 2 * n);
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (p < 2 * m) {
      v[p] = static_cast<std::uint32_t>((p / m) * (m + n) + p % m);
    } else {
      const std::size_t q = p - 2 * m;
      v[p] = static_cast<std::uint32_t>((q / n) * (m + n) + m + q % n);
    }
  }
  return v;
}

/// F_dbl with the block-shuffle comparison; strong and normal.
inline MonoidalFunctor f_dbl(std::size_t k = 2) {
  FinSetPtr b = finset(2 * k);
  return make_monoidal_functor(
      finset_monoidal(k), finset_monoidal(2 * k), f_dbl_functor(k),
      [b](ObjId x, ObjId y) {
        const std::size_t m = index(x), n = index(y);
        return b->fn(2 * (m + n), 2 * (m + n), dbl_shuffle(m, n));
      },
      b->identity(0), "f_dbl");
}

/// m^2 + n^2 -> (m + n)^2, the inclusion of the two diagonal blocks.
inline std::vector<std::uint32_t> sq_comparison(std::size_t m, std::size_t n) {
  std::vector<std::uint32_t> v(m * m + n * n);
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (p < m * m) {
      v[p] = static_cast<std::uint32_t>((p / m) * (m + n) + p % m);
    } else {
      const std::size_t q = p - m * m;
      v[p] = static_cast<std::uint32_t>((m + q / n) * (m + n) + m + q % n);
    }
  }
  return v;
}

/// F_sq with its coproduct comparison; lax, normal, not strong.
inline MonoidalFunctor f_sq(std::size_t k = 2) {
  FinSetPtr b = finset(k * k);
  return make_monoidal_functor(
      finset_monoidal(k), finset_monoidal(k * k), f_sq_functor(k),
      [b](ObjId x, ObjId y) {
        const std::size_t m = index(x), n = index(y);
        return b->fn(m * m + n * n, (m + n) * (m + n), sq_comparison(m, n));
      },
      b->identity(0), "f_sq");
}

/// Swap of the two copies: component at m is p |-> (p + m) mod 2m on 2m.
inline NatTrans beta_swap(std::size_t k = 2) {
  Functor F = f_dbl_functor(k);
  FinSetPtr b = finset(2 * k);
  std::vector<MorId> comps(k + 1);
  for (std::size_t m = 0; m <= k; ++m) {
    std::vector<std::uint32_t> v(2 * m);
    for (std::size_t p = 0; p < 2 * m; ++p) v[p] = static_cast<std::uint32_t>((p + m) % (2 * m));
    comps[m] = b->fn(2 * m, 2 * m, v);
  }
  return NatTrans{F, F, std::move(comps), "beta_swap"};
}

/// The comparison of F transported along a natural isomorphism beta : F => F,
/// phi'_{x,y} = beta_{x.y} . phi_{x,y} . (beta_x^-1 (x) beta_y^-1), phi0' = beta_I . phi0.
inline MonoidalFunctor twist(const MonoidalFunctor& F, const NatTrans& beta, std::string name = "twisted") {
  const MonoidalStructure& N = *F.target;
  const FinCategory& B = N.cat();
  auto b = [&](ObjId x) { return beta.components.at(index(x)); };
  return make_monoidal_functor(
      F.source, F.target, F.underlying,
      [&](ObjId x, ObjId y) {
        return chain(B, {b(F.source->tensor_obj(x, y)), F.phi_at(x, y),
                         N.tensor_mor(inverse_of(B, b(x)), inverse_of(B, b(y)))});
      },
      B.at(b(F.source->unit), F.phi0), std::move(name));
}

/// F_dbl with the transported comparison along beta_swap.
inline MonoidalFunctor f_dbl_twisted(std::size_t k = 2) { return twist(f_dbl(k), beta_swap(k), "twisted"); }

/// The binary family beta_{x+y} . phi_{x,y} of F_dbl: a natural invertible
/// family with the right type that is not F_dbl's own comparison.
inline std::vector<MorId> twisted_binary(std::size_t k = 2) {
  MonoidalFunctor F = f_dbl(k);
  NatTrans beta = beta_swap(k);
  const FinCategory& B = F.target->cat();
  std::vector<MorId> theta = F.phi;
  const std::size_t n = k + 1;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (theta[x * n + y] != kNoMorphism) theta[x * n + y] = B.at(beta.components.at(x + y), theta[x * n + y]);
  return theta;
}

/// The inclusion of the codomain 1 -> 2, * |-> 1, lax for max with phi0 = a.
inline MonoidalFunctor d0() {
  Functor F = make_functor(terminal_category(), arrow_category(), {ObjId{1}}, {MorId{1}}, "d0");
  return make_monoidal_functor(
      terminal_monoidal(), arrow_monoidal(), std::move(F), [](ObjId, ObjId) { return MorId{1}; }, MorId{2}, "d0");
}

/// The one-point monoid in (FinSet_2, +): * |-> 1 with the codiagonal 2 -> 1.
inline MonoidalFunctor pt_monoid() {
  FinSetPtr b = finset(2);
  Functor F = make_functor(terminal_category(), b->category(), {ObjId{1}}, {b->identity(1)}, "pt_monoid");
  return make_monoidal_functor(
      terminal_monoidal(), finset_monoidal(2), std::move(F), [b](ObjId, ObjId) { return b->fn(2, 1, {0, 0}); },
      b->fn(0, 1, {}), "pt_monoid");
}

}  // namespace ncanon::fixtures
