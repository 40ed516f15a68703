#pragma once

// Biased monoidal structures (binary tensor plus unit) on finite categories,
// braidings, monoidal functors and monoidal transformations, with exhaustive
// coherence checkers.
//
// Structures may be partial: the tensor is defined on a domain D of object
// pairs (FinSet_k only has sums up to k). Every checker quantifies over the
// equation instances whose objects all lie in the defined region; an instance
// needing an undefined tensor raises TruncationExceeded internally and is
// skipped, never counted as passing.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/fincat.hpp"
#include "ncanon/report.hpp"
#include "ncanon/tuple.hpp"

namespace ncanon {

struct MonoidalStructure {
  CategoryPtr base;
  TuplePtr pairs;  // objects: the pairs (x, y) on which the tensor is defined
  Functor tensor;  // pairs->category() -> base
  ObjId unit{};
  std::vector<MorId> associator;  // n^3, (x.y).z -> x.(y.z)
  std::vector<MorId> lunitor;     // n, I.x -> x
  std::vector<MorId> runitor;     // n, x.I -> x
  std::optional<std::vector<MorId>> braiding;  // n^2, x.y -> y.x
  std::vector<std::optional<ObjId>> tensor_table;  // n^2
  std::string name;

  const FinCategory& cat() const { return *base; }
  std::size_t size() const { return base->object_count(); }

  std::optional<ObjId> try_tensor(ObjId x, ObjId y) const { return tensor_table.at(index(x) * size() + index(y)); }
  bool defined(ObjId x, ObjId y) const { return try_tensor(x, y).has_value(); }
  ObjId tensor_obj(ObjId x, ObjId y) const {
    if (auto t = try_tensor(x, y)) return *t;
    throw TruncationExceeded("tensor of " + std::to_string(index(x)) + " and " + std::to_string(index(y)) +
                             " is outside the defined region");
  }
  ObjId tensor_obj(ObjId x, ObjId y, ObjId z) const { return tensor_obj(tensor_obj(x, y), z); }

  MorId tensor_mor(MorId f, MorId g) const { return tensor(pairs->tuple({f, g})); }
  std::optional<MorId> try_tensor_mor(MorId f, MorId g) const {
    if (auto p = pairs->find_tuple(std::vector<MorId>{f, g})) return tensor(*p);
    return std::nullopt;
  }

  MorId alpha(ObjId x, ObjId y, ObjId z) const {
    return defined_cell(associator.at((index(x) * size() + index(y)) * size() + index(z)), "associator");
  }
  MorId lambda(ObjId x) const { return defined_cell(lunitor.at(index(x)), "left unitor"); }
  MorId rho(ObjId x) const { return defined_cell(runitor.at(index(x)), "right unitor"); }
  MorId braid(ObjId x, ObjId y) const {
    if (!braiding) throw MissingBraiding("monoidal structure " + name + " has no braiding");
    return defined_cell(braiding->at(index(x) * size() + index(y)), "braiding");
  }
  MorId id(ObjId x) const { return base->identity(x); }

 private:
  static MorId defined_cell(MorId m, const char* what) {
    if (m == kNoMorphism) throw TruncationExceeded(std::string(what) + " component outside the defined region");
    return m;
  }
};

using MonoidalPtr = std::shared_ptr<const MonoidalStructure>;

/// Rules from which a MonoidalStructure is tabulated. Component rules are
/// only called where their source and target objects are defined.
struct MonoidalSpec {
  CategoryPtr base;
  std::function<std::optional<ObjId>(ObjId, ObjId)> tensor_obj;
  std::function<MorId(MorId, MorId)> tensor_mor;
  ObjId unit{};
  std::function<MorId(ObjId, ObjId, ObjId)> associator;
  std::function<MorId(ObjId)> lunitor;
  std::function<MorId(ObjId)> runitor;
  std::function<MorId(ObjId, ObjId)> braiding;  // empty: no braiding
  std::string name;
};

inline MonoidalStructure make_monoidal(const MonoidalSpec& s) {
  if (!s.base) throw PreconditionViolated("monoidal structure needs a base category");
  const FinCategory& C = *s.base;
  const std::size_t n = C.object_count();
  if (!C.has_object(s.unit)) throw IndexOutOfRange("unit object out of range");
  MonoidalStructure m;
  m.base = s.base;
  m.unit = s.unit;
  m.name = s.name;
  m.tensor_table.assign(n * n, std::nullopt);
  std::vector<Word> domain;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (auto t = s.tensor_obj(to_obj(x), to_obj(y))) {
        if (!C.has_object(*t)) throw IndexOutOfRange("tensor of objects out of range");
        m.tensor_table[x * n + y] = *t;
        domain.push_back({to_obj(x), to_obj(y)});
      }
  m.pairs = std::make_shared<const TupleCategory>(s.base, std::move(domain), s.name + " pairs");
  const FinCategory& P = m.pairs->cat();
  std::vector<ObjId> om(P.object_count());
  std::vector<MorId> mm(P.morphism_count());
  for (std::size_t p = 0; p < om.size(); ++p) {
    const Word& w = m.pairs->word(to_obj(p));
    om[p] = *m.tensor_table[index(w[0]) * n + index(w[1])];
  }
  for (std::size_t i = 0; i < mm.size(); ++i) {
    auto c = m.pairs->components(to_mor(i));
    mm[i] = s.tensor_mor(c[0], c[1]);
  }
  m.tensor = make_functor(m.pairs->category(), s.base, std::move(om), std::move(mm), s.name + " tensor");

  auto t = [&](std::size_t x, std::size_t y) { return m.tensor_table[x * n + y]; };
  m.associator.assign(n * n * n, kNoMorphism);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto xy = t(x, y), yz = t(y, z);
        if (!xy || !yz || !t(index(*xy), z) || !t(x, index(*yz))) continue;
        m.associator[(x * n + y) * n + z] = s.associator(to_obj(x), to_obj(y), to_obj(z));
      }
  m.lunitor.assign(n, kNoMorphism);
  m.runitor.assign(n, kNoMorphism);
  for (std::size_t x = 0; x < n; ++x) {
    if (t(index(s.unit), x)) m.lunitor[x] = s.lunitor(to_obj(x));
    if (t(x, index(s.unit))) m.runitor[x] = s.runitor(to_obj(x));
  }
  if (s.braiding) {
    m.braiding.emplace(n * n, kNoMorphism);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (t(x, y) && t(y, x)) (*m.braiding)[x * n + y] = s.braiding(to_obj(x), to_obj(y));
  }
  for (MorId c : m.associator)
    if (c != kNoMorphism && !C.has_morphism(c)) throw IndexOutOfRange("associator component out of range");
  for (const auto* fam : {&m.lunitor, &m.runitor})
    for (MorId c : *fam)
      if (c != kNoMorphism && !C.has_morphism(c)) throw IndexOutOfRange("unitor component out of range");
  if (m.braiding)
    for (MorId c : *m.braiding)
      if (c != kNoMorphism && !C.has_morphism(c)) throw IndexOutOfRange("braiding component out of range");
  return m;
}

/// Same structure with a different braiding family (n^2, kNoMorphism outside D).
inline MonoidalStructure with_braiding(MonoidalStructure m, std::optional<std::vector<MorId>> b) {
  m.braiding = std::move(b);
  return m;
}

namespace detail {

inline std::string tuple_str(std::initializer_list<std::size_t> xs) {
  std::string s = "(";
  bool first = true;
  for (auto x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

/// Evaluates one equation instance. Instances leaving the defined region are
/// skipped; composites that fail to typecheck are reported under "typing".
template <class Eval, class Where>
void check_instance(ValidationReport& r, const std::string& law, Eval&& eval, Where&& where) {
  bool holds = false;
  try {
    holds = eval();
  } catch (const TruncationExceeded&) {
    return;
  } catch (const NotComposable& e) {
    r.count(law);
    r.add("typing", law + " " + where() + ": " + e.what());
    return;
  } catch (const PreconditionViolated& e) {
    // a cell the law inverts has no inverse
    r.count(law);
    r.add(law, where() + ": " + e.what());
    return;
  }
  r.count(law);
  if (!holds) r.add(law, where());
}

inline bool has_type(const FinCategory& c, MorId m, ObjId s, ObjId d) {
  return c.has_morphism(m) && c.src(m) == s && c.dst(m) == d;
}

}  // namespace detail

/// Calls fn(f, g) for every pair of morphisms whose source pair and target
/// pair both lie in the tensor's domain.
template <class Fn>
void for_each_tensorable_pair(const MonoidalStructure& M, Fn&& fn) {
  const FinCategory& P = M.pairs->cat();
  for (std::size_t i = 0; i < P.morphism_count(); ++i) {
    auto c = M.pairs->components(to_mor(i));
    fn(c[0], c[1]);
  }
}

/// Pentagon, triangle, naturality and invertibility of the structural cells,
/// plus functoriality of the tensor.
inline ValidationReport check_monoidal_category(const MonoidalStructure& M) {
  ValidationReport r;
  const FinCategory& C = M.cat();
  const std::size_t n = M.size();
  r.merge(check_functor(M.tensor), "tensor");
  const ObjId I = M.unit;

  auto typed = [&](const char* what, MorId m, ObjId s, ObjId d, const std::string& where) {
    r.count("typing");
    if (!detail::has_type(C, m, s, d)) {
      std::ostringstream os;
      os << what << " " << where << " is " << m << ", expected " << s << " -> " << d;
      r.add("typing", os.str());
      return false;
    }
    r.count("invertibility");
    if (!is_invertible(C, m)) r.add("invertibility", std::string(what) + " " + where);
    return true;
  };

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const MorId a = M.associator[(x * n + y) * n + z];
        if (a == kNoMorphism) continue;
        const ObjId X = to_obj(x), Y = to_obj(y), Z = to_obj(z);
        typed("associator", a, M.tensor_obj(M.tensor_obj(X, Y), Z), M.tensor_obj(X, M.tensor_obj(Y, Z)),
              detail::tuple_str({x, y, z}));
      }
  for (std::size_t x = 0; x < n; ++x) {
    const ObjId X = to_obj(x);
    if (M.lunitor[x] != kNoMorphism) typed("left unitor", M.lunitor[x], M.tensor_obj(I, X), X, detail::tuple_str({x}));
    if (M.runitor[x] != kNoMorphism) typed("right unitor", M.runitor[x], M.tensor_obj(X, I), X, detail::tuple_str({x}));
  }

  // Naturality of the associator over tensorable morphism triples.
  for_each_tensorable_pair(M, [&](MorId f, MorId g) {
    const ObjId xy = M.tensor_obj(C.src(f), C.src(g)), xy2 = M.tensor_obj(C.dst(f), C.dst(g));
    for (std::size_t z = 0; z < n; ++z)
      for (std::size_t z2 = 0; z2 < n; ++z2) {
        if (!M.defined(xy, to_obj(z)) || !M.defined(xy2, to_obj(z2))) continue;
        for (MorId h : C.hom(to_obj(z), to_obj(z2)))
          detail::check_instance(
              r, "associator-naturality",
              [&] {
                const MorId lhs = C.at(M.alpha(C.dst(f), C.dst(g), C.dst(h)), M.tensor_mor(M.tensor_mor(f, g), h));
                const MorId rhs = C.at(M.tensor_mor(f, M.tensor_mor(g, h)), M.alpha(C.src(f), C.src(g), C.src(h)));
                return lhs == rhs;
              },
              [&] {
                std::ostringstream os;
                os << "(" << f << "," << g << "," << h << ")";
                return os.str();
              });
      }
  });

  for (std::size_t i = 0; i < C.morphism_count(); ++i) {
    const MorId f = to_mor(i);
    auto where = [&] {
      std::ostringstream os;
      os << "(" << f << ")";
      return os.str();
    };
    detail::check_instance(
        r, "unitor-naturality",
        [&] { return C.at(f, M.lambda(C.src(f))) == C.at(M.lambda(C.dst(f)), M.tensor_mor(M.id(I), f)); }, where);
    detail::check_instance(
        r, "unitor-naturality",
        [&] { return C.at(f, M.rho(C.src(f))) == C.at(M.rho(C.dst(f)), M.tensor_mor(f, M.id(I))); }, where);
  }

  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          detail::check_instance(
              r, "pentagon",
              [&] {
                const ObjId W = to_obj(w), X = to_obj(x), Y = to_obj(y), Z = to_obj(z);
                const ObjId wx = M.tensor_obj(W, X), yz = M.tensor_obj(Y, Z), xy = M.tensor_obj(X, Y);
                const MorId lhs = C.at(M.alpha(W, X, yz), M.alpha(wx, Y, Z));
                const MorId rhs = chain(C, {M.tensor_mor(M.id(W), M.alpha(X, Y, Z)), M.alpha(W, xy, Z),
                                            M.tensor_mor(M.alpha(W, X, Y), M.id(Z))});
                return lhs == rhs;
              },
              [&] { return detail::tuple_str({w, x, y, z}); });

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      detail::check_instance(
          r, "triangle",
          [&] {
            const ObjId X = to_obj(x), Y = to_obj(y);
            const MorId lhs = C.at(M.tensor_mor(M.id(X), M.lambda(Y)), M.alpha(X, I, Y));
            return lhs == M.tensor_mor(M.rho(X), M.id(Y));
          },
          [&] { return detail::tuple_str({x, y}); });
  return r;
}

/// Typing, invertibility, naturality and both hexagons of the braiding.
inline ValidationReport check_braiding(const MonoidalStructure& M) {
  if (!M.braiding) throw MissingBraiding("monoidal structure " + M.name + " has no braiding");
  ValidationReport r;
  const FinCategory& C = M.cat();
  const std::size_t n = M.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const MorId b = (*M.braiding)[x * n + y];
      if (b == kNoMorphism) continue;
      const ObjId X = to_obj(x), Y = to_obj(y);
      r.count("braiding-typing");
      if (!detail::has_type(C, b, M.tensor_obj(X, Y), M.tensor_obj(Y, X))) {
        r.add("braiding-typing", detail::tuple_str({x, y}));
        continue;
      }
      r.count("braiding-invertibility");
      if (!is_invertible(C, b)) r.add("braiding-invertibility", detail::tuple_str({x, y}));
    }

  for_each_tensorable_pair(M, [&](MorId f, MorId g) {
    detail::check_instance(
        r, "braiding-naturality",
        [&] {
          const MorId lhs = C.at(M.braid(C.dst(f), C.dst(g)), M.tensor_mor(f, g));
          const MorId rhs = C.at(M.tensor_mor(g, f), M.braid(C.src(f), C.src(g)));
          return lhs == rhs;
        },
        [&] {
          std::ostringstream os;
          os << "(" << f << "," << g << ")";
          return os.str();
        });
  });

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const ObjId X = to_obj(x), Y = to_obj(y), Z = to_obj(z);
        auto where = [&] { return detail::tuple_str({x, y, z}); };
        detail::check_instance(
            r, "hexagon",
            [&] {
              const MorId lhs = chain(C, {M.alpha(Y, Z, X), M.braid(X, M.tensor_obj(Y, Z)), M.alpha(X, Y, Z)});
              const MorId rhs = chain(C, {M.tensor_mor(M.id(Y), M.braid(X, Z)), M.alpha(Y, X, Z),
                                          M.tensor_mor(M.braid(X, Y), M.id(Z))});
              return lhs == rhs;
            },
            where);
        detail::check_instance(
            r, "hexagon",
            [&] {
              const MorId lhs = chain(C, {inverse_of(C, M.alpha(Z, X, Y)), M.braid(M.tensor_obj(X, Y), Z),
                                          inverse_of(C, M.alpha(X, Y, Z))});
              const MorId rhs = chain(C, {M.tensor_mor(M.braid(X, Z), M.id(Y)), inverse_of(C, M.alpha(X, Z, Y)),
                                          M.tensor_mor(M.id(X), M.braid(Y, Z))});
              return lhs == rhs;
            },
            where);
      }
  return r;
}

// ---------------------------------------------------------------------------

struct MonoidalFunctor {
  MonoidalPtr source;
  MonoidalPtr target;
  Functor underlying;
  std::vector<MorId> phi;  // source n^2: F x (x) F y -> F(x (x) y), kNoMorphism outside the domain
  MorId phi0{};            // I' -> F I
  std::string name;

  ObjId operator()(ObjId x) const { return underlying(x); }
  MorId operator()(MorId a) const { return underlying(a); }
  MorId phi_at(ObjId x, ObjId y) const {
    const MorId m = phi.at(index(x) * source->size() + index(y));
    if (m == kNoMorphism) throw TruncationExceeded("comparison component outside the defined region");
    return m;
  }
};

using MonoidalFunctorPtr = std::shared_ptr<const MonoidalFunctor>;

/// True where both x (x) y and F x (x) F y are defined.
inline bool phi_defined(const MonoidalPtr& source, const MonoidalPtr& target, const Functor& F, ObjId x, ObjId y) {
  return source->defined(x, y) && target->defined(F(x), F(y));
}

/// Tabulates phi over its domain from a rule.
inline MonoidalFunctor make_monoidal_functor(MonoidalPtr source, MonoidalPtr target, Functor F,
                                             const std::function<MorId(ObjId, ObjId)>& phi, MorId phi0,
                                             std::string name = {}) {
  if (!same_category(F.source, source->base) || !same_category(F.target, target->base))
    throw PreconditionViolated("underlying functor does not match the monoidal categories");
  const std::size_t n = source->size();
  std::vector<MorId> tab(n * n, kNoMorphism);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (phi_defined(source, target, F, to_obj(x), to_obj(y))) tab[x * n + y] = phi(to_obj(x), to_obj(y));
  return MonoidalFunctor{std::move(source), std::move(target), std::move(F), std::move(tab), phi0, std::move(name)};
}

inline MonoidalFunctor identity_monoidal_functor(const MonoidalPtr& M) {
  return make_monoidal_functor(
      M, M, identity_functor(M->base), [&](ObjId x, ObjId y) { return M->id(M->tensor_obj(x, y)); }, M->id(M->unit),
      "id");
}

/// Throws ComponentTypeMismatch unless every phi component and phi0 has the right type.
inline void require_phi_types(const MonoidalFunctor& F) {
  const FinCategory& N = F.target->cat();
  const std::size_t n = F.source->size();
  if (F.phi.size() != n * n) throw ComponentTypeMismatch("comparison table has the wrong size");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const MorId m = F.phi[x * n + y];
      const ObjId X = to_obj(x), Y = to_obj(y);
      if (!phi_defined(F.source, F.target, F.underlying, X, Y)) continue;
      const ObjId s = F.target->tensor_obj(F(X), F(Y));
      const ObjId d = F(F.source->tensor_obj(X, Y));
      if (!detail::has_type(N, m, s, d)) {
        std::ostringstream os;
        os << "comparison at " << detail::tuple_str({x, y}) << " is " << m << ", expected " << s << " -> " << d;
        throw ComponentTypeMismatch(os.str());
      }
    }
  if (!detail::has_type(N, F.phi0, F.target->unit, F(F.source->unit)))
    throw ComponentTypeMismatch("nullary comparison has the wrong type");
}

/// Naturality of phi, the associativity square and both unit squares.
inline ValidationReport check_monoidal_functor(const MonoidalFunctor& F) {
  require_phi_types(F);
  ValidationReport r;
  r.merge(check_functor(F.underlying), "functor");
  const MonoidalStructure& M = *F.source;
  const MonoidalStructure& N = *F.target;
  const FinCategory& A = M.cat();
  const FinCategory& B = N.cat();
  const std::size_t n = M.size();

  for_each_tensorable_pair(M, [&](MorId f, MorId g) {
    detail::check_instance(
        r, "comparison-naturality",
        [&] {
          const MorId lhs = B.at(F(M.tensor_mor(f, g)), F.phi_at(A.src(f), A.src(g)));
          const MorId rhs = B.at(F.phi_at(A.dst(f), A.dst(g)), N.tensor_mor(F(f), F(g)));
          return lhs == rhs;
        },
        [&] {
          std::ostringstream os;
          os << "(" << f << "," << g << ")";
          return os.str();
        });
  });

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        detail::check_instance(
            r, "associativity",
            [&] {
              const ObjId X = to_obj(x), Y = to_obj(y), Z = to_obj(z);
              const MorId lhs = chain(B, {F(M.alpha(X, Y, Z)), F.phi_at(M.tensor_obj(X, Y), Z),
                                          N.tensor_mor(F.phi_at(X, Y), N.id(F(Z)))});
              const MorId rhs = chain(B, {F.phi_at(X, M.tensor_obj(Y, Z)), N.tensor_mor(N.id(F(X)), F.phi_at(Y, Z)),
                                          N.alpha(F(X), F(Y), F(Z))});
              return lhs == rhs;
            },
            [&] { return detail::tuple_str({x, y, z}); });

  for (std::size_t x = 0; x < n; ++x) {
    const ObjId X = to_obj(x);
    detail::check_instance(
        r, "left-unit",
        [&] {
          const MorId lhs = chain(B, {F(M.lambda(X)), F.phi_at(M.unit, X), N.tensor_mor(F.phi0, N.id(F(X)))});
          return lhs == N.lambda(F(X));
        },
        [&] { return detail::tuple_str({x}); });
    detail::check_instance(
        r, "right-unit",
        [&] {
          const MorId lhs = chain(B, {F(M.rho(X)), F.phi_at(X, M.unit), N.tensor_mor(N.id(F(X)), F.phi0)});
          return lhs == N.rho(F(X));
        },
        [&] { return detail::tuple_str({x}); });
  }
  return r;
}

/// G after F with the pasted comparison G(phi^F) . phi^G.
inline MonoidalFunctor compose(const MonoidalFunctor& G, const MonoidalFunctor& F) {
  if (!same_category(F.target->base, G.source->base)) throw NotComposable("monoidal functor composite: bases differ");
  Functor GF = compose(G.underlying, F.underlying);
  const FinCategory& C = G.target->cat();
  auto phi = [&](ObjId x, ObjId y) {
    return C.at(G(F.phi_at(x, y)), G.phi_at(F(x), F(y)));
  };
  const MorId phi0 = C.at(G(F.phi0), G.phi0);
  const std::size_t n = F.source->size();
  std::vector<MorId> tab(n * n, kNoMorphism);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ObjId X = to_obj(x), Y = to_obj(y);
      if (!phi_defined(F.source, G.target, GF, X, Y) || !F.target->defined(F(X), F(Y))) continue;
      tab[x * n + y] = phi(X, Y);
    }
  return MonoidalFunctor{F.source, G.target, std::move(GF), std::move(tab), phi0, G.name + "." + F.name};
}

struct MonoidalTransformation {
  MonoidalFunctor source;
  MonoidalFunctor target;
  std::vector<MorId> components;

  NatTrans nat() const { return NatTrans{source.underlying, target.underlying, components, {}}; }
};

/// Naturality plus the binary and nullary compatibility equations.
inline ValidationReport check_monoidal_transformation(const MonoidalTransformation& m) {
  const MonoidalFunctor& F = m.source;
  const MonoidalFunctor& G = m.target;
  if (!parallel_functors(F.underlying, G.underlying)) throw PreconditionViolated("monoidal functors are not parallel");
  ValidationReport r = check_naturality(m.nat());
  const MonoidalStructure& M = *F.source;
  const MonoidalStructure& N = *F.target;
  const FinCategory& B = N.cat();
  const std::size_t n = M.size();
  auto th = [&](ObjId x) { return m.components.at(index(x)); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      detail::check_instance(
          r, "binary-compatibility",
          [&] {
            const ObjId X = to_obj(x), Y = to_obj(y);
            const MorId lhs = B.at(th(M.tensor_obj(X, Y)), F.phi_at(X, Y));
            const MorId rhs = B.at(G.phi_at(X, Y), N.tensor_mor(th(X), th(Y)));
            return lhs == rhs;
          },
          [&] { return detail::tuple_str({x, y}); });
  detail::check_instance(
      r, "nullary-compatibility", [&] { return B.at(th(M.unit), F.phi0) == G.phi0; }, [] { return std::string("()"); });
  return r;
}

struct NormalityWitness {
  bool normal = false;
  std::optional<MorId> inverse;  // of phi0
};

inline NormalityWitness is_normal(const MonoidalFunctor& F) {
  auto inv = find_inverse(F.target->cat(), F.phi0);
  return {inv.has_value(), inv};
}

struct StrengthWitness {
  bool strong = false;
  std::optional<MorId> phi0_inverse;
  std::vector<MorId> phi_inverse;  // source n^2, kNoMorphism outside the domain
  std::optional<std::pair<ObjId, ObjId>> failing_pair;
};

inline StrengthWitness is_strong(const MonoidalFunctor& F) {
  StrengthWitness w;
  const FinCategory& B = F.target->cat();
  const std::size_t n = F.source->size();
  w.phi0_inverse = find_inverse(B, F.phi0);
  w.phi_inverse.assign(n * n, kNoMorphism);
  bool all = w.phi0_inverse.has_value();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const MorId m = F.phi[x * n + y];
      if (m == kNoMorphism) continue;
      if (auto inv = find_inverse(B, m)) {
        w.phi_inverse[x * n + y] = *inv;
      } else {
        if (!w.failing_pair) w.failing_pair = std::pair{to_obj(x), to_obj(y)};
        all = false;
      }
    }
  w.strong = all;
  return w;
}

}  // namespace ncanon
