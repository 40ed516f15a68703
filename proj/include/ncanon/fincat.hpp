#pragma once

// Finite categories given by explicit composition tables, functors and
// natural transformations between them, and the brute-force oracles the
// rest of the library is checked against.

#include <algorithm>
#include <initializer_list>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/ids.hpp"
#include "ncanon/parallel.hpp"
#include "ncanon/report.hpp"
#include "ncanon/search.hpp"

namespace ncanon {

struct MorphismRec {
  ObjId src{};
  ObjId dst{};
  friend bool operator==(const MorphismRec&, const MorphismRec&) = default;
};

/// One row of a composition table: compose(g, f) = gf, i.e. g after f.
struct ComposeEntry {
  MorId g{};
  MorId f{};
  MorId gf{};
};

/// A category with objects 0..n-1 and an explicit composition table.
///
/// The table is stored per object triple (x, y, z) as a dense block of size
/// |hom(x,y)| * |hom(y,z)|, so storage is proportional to the number of
/// composable pairs. Entries may be absent or ill-typed; check_category
/// reports such tables rather than rejecting them, which is what fault
/// injection relies on. Indices out of range are rejected on construction.
class FinCategory {
 public:
  FinCategory() = default;

  FinCategory(std::size_t objects, std::vector<MorphismRec> morphisms, std::vector<MorId> identity,
              std::span<const ComposeEntry> compose, std::string name = {})
      : n_(objects), mors_(std::move(morphisms)), identity_(std::move(identity)), name_(std::move(name)) {
    validate_indices();
    index_homs();
    for (const auto& e : compose) {
      if (index(e.g) >= mors_.size() || index(e.f) >= mors_.size() || index(e.gf) >= mors_.size())
        throw IndexOutOfRange(describe_entry("compose entry references a missing morphism", e));
      if (mors_[index(e.f)].dst != mors_[index(e.g)].src)
        throw IndexOutOfRange(describe_entry("compose entry on a non-composable pair", e));
      table_[slot(e.g, e.f)] = e.gf;
    }
  }

  /// Builds the table by evaluating rule(g, f) on every composable pair.
  template <class Rule>
  static FinCategory from_rule(std::size_t objects, std::vector<MorphismRec> morphisms, std::vector<MorId> identity,
                               Rule&& rule, std::string name = {}) {
    FinCategory c(objects, std::move(morphisms), std::move(identity), {}, std::move(name));
    for (std::size_t y = 0; y < c.n_; ++y)
      for (std::size_t x = 0; x < c.n_; ++x)
        for (MorId f : c.hom(to_obj(x), to_obj(y)))
          for (std::size_t z = 0; z < c.n_; ++z)
            for (MorId g : c.hom(to_obj(y), to_obj(z))) c.table_[c.slot(g, f)] = rule(g, f);
    return c;
  }

  std::size_t object_count() const noexcept { return n_; }
  std::size_t morphism_count() const noexcept { return mors_.size(); }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const MorphismRec& morphism(MorId m) const { return mors_.at(index(m)); }
  const std::vector<MorphismRec>& morphisms() const noexcept { return mors_; }
  ObjId src(MorId m) const { return morphism(m).src; }
  ObjId dst(MorId m) const { return morphism(m).dst; }
  MorId identity(ObjId x) const { return identity_.at(index(x)); }
  const std::vector<MorId>& identities() const noexcept { return identity_; }
  bool has_object(ObjId x) const noexcept { return index(x) < n_; }
  bool has_morphism(MorId m) const noexcept { return index(m) < mors_.size(); }

  /// Morphisms x -> y in id order.
  std::span<const MorId> hom(ObjId x, ObjId y) const { return homs_.at(index(x) * n_ + index(y)); }
  /// Position of m inside hom(src m, dst m).
  std::size_t local_index(MorId m) const { return local_.at(index(m)); }

  /// g after f. Empty when the pair is not composable or the table entry is missing.
  std::optional<MorId> compose(MorId g, MorId f) const {
    if (!has_morphism(g) || !has_morphism(f) || dst(f) != src(g)) return std::nullopt;
    const MorId r = table_[slot(g, f)];
    if (r == kNoMorphism) return std::nullopt;
    return r;
  }

  /// g after f, throwing NotComposable when undefined.
  MorId then(MorId f, MorId g) const { return at(g, f); }
  MorId at(MorId g, MorId f) const {
    if (auto r = compose(g, f)) return *r;
    std::ostringstream os;
    os << "cannot compose " << g << " after " << f << " in " << (name_.empty() ? "category" : name_);
    throw NotComposable(os.str());
  }

  /// Copy with one table entry replaced (fault injection).
  FinCategory with_compose_entry(MorId g, MorId f, MorId gf) const {
    if (!has_morphism(g) || !has_morphism(f) || !has_morphism(gf) || dst(f) != src(g))
      throw IndexOutOfRange("with_compose_entry: bad pair");
    FinCategory c = *this;
    c.table_[slot(g, f)] = gf;
    return c;
  }

  FinCategory with_identity(ObjId x, MorId m) const {
    if (!has_object(x) || !has_morphism(m)) throw IndexOutOfRange("with_identity: bad index");
    FinCategory c = *this;
    c.identity_[index(x)] = m;
    return c;
  }

  /// Every stored table entry, in (f, g) order.
  std::vector<ComposeEntry> compose_entries() const {
    std::vector<ComposeEntry> out;
    for (std::size_t fi = 0; fi < mors_.size(); ++fi) {
      const MorId f = to_mor(fi);
      for (std::size_t z = 0; z < n_; ++z)
        for (MorId g : hom(dst(f), to_obj(z)))
          if (auto gf = table_[slot(g, f)]; gf != kNoMorphism) out.push_back({g, f, gf});
    }
    return out;
  }

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.n_ == b.n_ && a.mors_ == b.mors_ && a.identity_ == b.identity_ && a.table_ == b.table_;
  }

 private:
  void validate_indices() const {
    if (identity_.size() != n_) throw IndexOutOfRange("identity list length differs from object count");
    for (std::size_t i = 0; i < mors_.size(); ++i)
      if (index(mors_[i].src) >= n_ || index(mors_[i].dst) >= n_)
        throw IndexOutOfRange("morphism " + std::to_string(i) + " references a missing object");
    for (std::size_t x = 0; x < n_; ++x)
      if (index(identity_[x]) >= mors_.size())
        throw IndexOutOfRange("identity of object " + std::to_string(x) + " references a missing morphism");
  }

  void index_homs() {
    homs_.assign(n_ * n_, {});
    local_.assign(mors_.size(), 0);
    for (std::size_t i = 0; i < mors_.size(); ++i) {
      auto& h = homs_[index(mors_[i].src) * n_ + index(mors_[i].dst)];
      local_[i] = h.size();
      h.push_back(to_mor(i));
    }
    block_.assign(n_ * n_ * n_, 0);
    std::size_t total = 0;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z) {
          block_[(x * n_ + y) * n_ + z] = total;
          total += homs_[x * n_ + y].size() * homs_[y * n_ + z].size();
        }
    table_.assign(total, kNoMorphism);
  }

  std::size_t slot(MorId g, MorId f) const {
    const std::size_t x = index(src(f)), y = index(dst(f)), z = index(dst(g));
    return block_[(x * n_ + y) * n_ + z] + local_[index(g)] * homs_[x * n_ + y].size() + local_[index(f)];
  }

  static std::string describe_entry(const char* what, const ComposeEntry& e) {
    std::ostringstream os;
    os << what << ": [" << index(e.g) << ", " << index(e.f) << ", " << index(e.gf) << "]";
    return os.str();
  }

  std::size_t n_ = 0;
  std::vector<MorphismRec> mors_;
  std::vector<MorId> identity_;
  std::vector<std::vector<MorId>> homs_;
  std::vector<std::size_t> local_;
  std::vector<std::size_t> block_;
  std::vector<MorId> table_;
  std::string name_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

inline CategoryPtr share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

inline bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Lists every violated identity, associativity and composability instance.
inline ValidationReport check_category(const FinCategory& c) {
  ValidationReport r;
  const std::size_t n = c.object_count();
  for (std::size_t x = 0; x < n; ++x) {
    const MorId id = c.identity(to_obj(x));
    r.count("identity-type");
    if (c.src(id) != to_obj(x) || c.dst(id) != to_obj(x)) {
      std::ostringstream os;
      os << "identity of object " << x << " is " << id << " : " << c.src(id) << " -> " << c.dst(id);
      r.add("identity-type", os.str());
    }
  }

  auto well_typed = [&](MorId g, MorId f) -> std::optional<MorId> {
    auto gf = c.compose(g, f);
    if (!gf || c.src(*gf) != c.src(f) || c.dst(*gf) != c.dst(g)) return std::nullopt;
    return gf;
  };

  for (std::size_t fi = 0; fi < c.morphism_count(); ++fi) {
    const MorId f = to_mor(fi);
    for (std::size_t z = 0; z < n; ++z)
      for (MorId g : c.hom(c.dst(f), to_obj(z))) {
        r.count("composability");
        auto gf = c.compose(g, f);
        if (!gf) {
          std::ostringstream os;
          os << "(" << g << ", " << f << ") has no table entry";
          r.add("composability", os.str());
        } else if (c.src(*gf) != c.src(f) || c.dst(*gf) != c.dst(g)) {
          std::ostringstream os;
          os << "(" << g << ", " << f << ") -> " << *gf << " has type " << c.src(*gf) << " -> " << c.dst(*gf)
             << ", expected " << c.src(f) << " -> " << c.dst(g);
          r.add("composability", os.str());
        }
      }
  }

  for (std::size_t fi = 0; fi < c.morphism_count(); ++fi) {
    const MorId f = to_mor(fi);
    const MorId left = c.identity(c.dst(f));
    const MorId right = c.identity(c.src(f));
    r.count("identity", 2);
    if (c.compose(left, f) != std::optional<MorId>(f)) {
      std::ostringstream os;
      os << "(" << left << ", " << f << ")";
      r.add("identity", os.str());
    }
    if (c.compose(f, right) != std::optional<MorId>(f)) {
      std::ostringstream os;
      os << "(" << f << ", " << right << ")";
      r.add("identity", os.str());
    }
  }

  // Associativity over composable triples h.g.f; pairs already reported as
  // ill-typed are skipped. Chunked over f, merged in order.
  std::vector<ValidationReport> parts(thread_count() + 1);
  parallel_chunks(c.morphism_count(), [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    ValidationReport& part = parts[chunk];
    std::size_t triples = 0;
    for (std::size_t fi = begin; fi < end; ++fi) {
      const MorId f = to_mor(fi);
      for (std::size_t z = 0; z < n; ++z)
        for (MorId g : c.hom(c.dst(f), to_obj(z))) {
          const auto gf = well_typed(g, f);
          if (!gf) continue;
          for (std::size_t w = 0; w < n; ++w)
            for (MorId h : c.hom(to_obj(z), to_obj(w))) {
              const auto hg = well_typed(h, g);
              if (!hg) continue;
              ++triples;
              if (c.compose(h, *gf) != c.compose(*hg, f)) {
                std::ostringstream os;
                os << "(" << h << ", " << g << ", " << f << ")";
                part.add("associativity", os.str());
              }
            }
        }
    }
    part.count("associativity", triples);
  });
  for (const auto& p : parts) r.merge(p);
  return r;
}

/// The unique two-sided inverse of m, by exhaustive search over hom(dst, src).
inline std::optional<MorId> find_inverse(const FinCategory& c, MorId m) {
  const ObjId x = c.src(m), y = c.dst(m);
  for (MorId g : c.hom(y, x))
    if (c.compose(g, m) == std::optional<MorId>(c.identity(x)) && c.compose(m, g) == std::optional<MorId>(c.identity(y)))
      return g;
  return std::nullopt;
}

inline bool is_invertible(const FinCategory& c, MorId m) { return find_inverse(c, m).has_value(); }

/// chain(c, {h, g, f}) = h.g.f; throws NotComposable on the first mismatch.
inline MorId chain(const FinCategory& c, std::initializer_list<MorId> ms) {
  if (ms.size() == 0) throw PreconditionViolated("chain of no morphisms");
  auto it = ms.end();
  MorId acc = *--it;
  while (it != ms.begin()) acc = c.at(*--it, acc);
  return acc;
}

/// Inverse or NotComposable-style failure, for cells already known invertible.
inline MorId inverse_of(const FinCategory& c, MorId m) {
  if (auto g = find_inverse(c, m)) return *g;
  std::ostringstream os;
  os << "morphism " << m << " is not invertible";
  throw PreconditionViolated(os.str());
}

// ---------------------------------------------------------------------------

struct Functor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<ObjId> obj_map;
  std::vector<MorId> mor_map;
  std::string name;

  ObjId operator()(ObjId x) const { return obj_map.at(index(x)); }
  MorId operator()(MorId a) const { return mor_map.at(index(a)); }

  friend bool operator==(const Functor& a, const Functor& b) {
    return same_category(a.source, b.source) && same_category(a.target, b.target) && a.obj_map == b.obj_map &&
           a.mor_map == b.mor_map;
  }
};

/// Validates map sizes and ranges; the functor laws are left to check_functor.
inline Functor make_functor(CategoryPtr source, CategoryPtr target, std::vector<ObjId> obj_map,
                            std::vector<MorId> mor_map, std::string name = {}) {
  if (!source || !target) throw PreconditionViolated("functor needs a source and target category");
  if (obj_map.size() != source->object_count() || mor_map.size() != source->morphism_count())
    throw IndexOutOfRange("functor map sizes differ from its source category");
  for (ObjId y : obj_map)
    if (!target->has_object(y)) throw IndexOutOfRange("functor object map leaves its target");
  for (MorId b : mor_map)
    if (!target->has_morphism(b)) throw IndexOutOfRange("functor morphism map leaves its target");
  return Functor{std::move(source), std::move(target), std::move(obj_map), std::move(mor_map), std::move(name)};
}

inline Functor identity_functor(const CategoryPtr& c) {
  std::vector<ObjId> om(c->object_count());
  std::vector<MorId> mm(c->morphism_count());
  for (std::size_t i = 0; i < om.size(); ++i) om[i] = to_obj(i);
  for (std::size_t i = 0; i < mm.size(); ++i) mm[i] = to_mor(i);
  return Functor{c, c, std::move(om), std::move(mm), "id"};
}

/// g after f.
inline Functor compose(const Functor& g, const Functor& f) {
  if (!same_category(f.target, g.source)) throw NotComposable("functor composite: target of first differs from source of second");
  std::vector<ObjId> om(f.obj_map.size());
  std::vector<MorId> mm(f.mor_map.size());
  for (std::size_t i = 0; i < om.size(); ++i) om[i] = g(f.obj_map[i]);
  for (std::size_t i = 0; i < mm.size(); ++i) mm[i] = g(f.mor_map[i]);
  return Functor{f.source, g.target, std::move(om), std::move(mm), g.name + "." + f.name};
}

/// Preservation of src/dst, identities and composition, checked on every instance.
inline ValidationReport check_functor(const Functor& F) {
  ValidationReport r;
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    const MorId a = to_mor(i);
    r.count("functor-type");
    if (B.src(F(a)) != F(A.src(a)) || B.dst(F(a)) != F(A.dst(a))) {
      std::ostringstream os;
      os << "F(" << a << ") = " << F(a) << " : " << B.src(F(a)) << " -> " << B.dst(F(a)) << ", expected "
         << F(A.src(a)) << " -> " << F(A.dst(a));
      r.add("functor-type", os.str());
    }
  }
  for (std::size_t x = 0; x < A.object_count(); ++x) {
    r.count("functor-identity");
    if (F(A.identity(to_obj(x))) != B.identity(F(to_obj(x)))) r.add("functor-identity", "object " + std::to_string(x));
  }
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    const MorId f = to_mor(i);
    for (std::size_t z = 0; z < A.object_count(); ++z)
      for (MorId g : A.hom(A.dst(f), to_obj(z))) {
        const auto gf = A.compose(g, f);
        if (!gf) continue;
        r.count("functor-composition");
        if (B.compose(F(g), F(f)) != std::optional<MorId>(F(*gf))) {
          std::ostringstream os;
          os << "(" << g << ", " << f << ")";
          r.add("functor-composition", os.str());
        }
      }
  }
  return r;
}

// ---------------------------------------------------------------------------

struct NatTrans {
  Functor source;
  Functor target;
  std::vector<MorId> components;  // indexed by source-category object
  std::string name;

  MorId operator[](ObjId x) const { return components.at(index(x)); }
  friend bool operator==(const NatTrans& a, const NatTrans& b) {
    return a.source == b.source && a.target == b.target && a.components == b.components;
  }
};

inline bool parallel_functors(const Functor& F, const Functor& G) {
  return same_category(F.source, G.source) && same_category(F.target, G.target);
}

/// Throws ComponentTypeMismatch unless every component has src F(x), dst G(x).
inline void require_component_types(const NatTrans& t) {
  const FinCategory& A = *t.source.source;
  const FinCategory& B = *t.source.target;
  if (t.components.size() != A.object_count()) throw ComponentTypeMismatch("component count differs from object count");
  for (std::size_t x = 0; x < A.object_count(); ++x) {
    const MorId c = t.components[x];
    if (!B.has_morphism(c) || B.src(c) != t.source(to_obj(x)) || B.dst(c) != t.target(to_obj(x))) {
      std::ostringstream os;
      os << "component at " << x << " is " << c << ", expected a morphism " << t.source(to_obj(x)) << " -> "
         << t.target(to_obj(x));
      throw ComponentTypeMismatch(os.str());
    }
  }
}

/// Lists every a: x -> y with G(a).t_x != t_y.F(a).
inline ValidationReport check_naturality(const NatTrans& t) {
  if (!parallel_functors(t.source, t.target)) throw PreconditionViolated("naturality: functors are not parallel");
  require_component_types(t);
  ValidationReport r;
  const FinCategory& A = *t.source.source;
  const FinCategory& B = *t.source.target;
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    const MorId a = to_mor(i);
    const ObjId x = A.src(a), y = A.dst(a);
    r.count("naturality");
    if (B.compose(t.target(a), t[x]) != B.compose(t[y], t.source(a))) {
      std::ostringstream os;
      os << "at " << a << " : " << x << " -> " << y;
      r.add("naturality", os.str());
    }
  }
  return r;
}

inline NatTrans identity_transformation(const Functor& F) {
  std::vector<MorId> comps(F.source->object_count());
  for (std::size_t x = 0; x < comps.size(); ++x) comps[x] = F.target->identity(F(to_obj(x)));
  return NatTrans{F, F, std::move(comps), "id"};
}

/// Componentwise composite sigma.tau (tau first).
inline NatTrans vert_comp(const NatTrans& sigma, const NatTrans& tau) {
  if (!(tau.target == sigma.source)) throw NotComposable("vertical composite: target of tau differs from source of sigma");
  const FinCategory& B = *tau.source.target;
  std::vector<MorId> comps(tau.components.size());
  for (std::size_t x = 0; x < comps.size(); ++x) comps[x] = B.at(sigma.components[x], tau.components[x]);
  return NatTrans{tau.source, sigma.target, std::move(comps), sigma.name + "." + tau.name};
}

/// H tau K: components H(tau_{K x}).
inline NatTrans whisker(const Functor& H, const NatTrans& tau, const Functor& K) {
  if (!same_category(K.target, tau.source.source)) throw NotComposable("whisker: K does not land in the source of tau");
  if (!same_category(H.source, tau.source.target)) throw NotComposable("whisker: H does not start at the target of tau");
  std::vector<MorId> comps(K.source->object_count());
  for (std::size_t x = 0; x < comps.size(); ++x) comps[x] = H(tau[K(to_obj(x))]);
  return NatTrans{compose(H, compose(tau.source, K)), compose(H, compose(tau.target, K)), std::move(comps), tau.name};
}

/// Candidate count prod_x |hom(F x, G x)|, as a double to survive overflow.
inline double nat_trans_space(const Functor& F, const Functor& G) {
  double size = 1;
  for (std::size_t x = 0; x < F.source->object_count(); ++x)
    size *= static_cast<double>(F.target->hom(F(to_obj(x)), G(to_obj(x))).size());
  return size;
}

inline constexpr std::size_t kDefaultSearchBound = 1'000'000;

/// All natural transformations F => G by plain enumeration of component
/// families, filtered by naturality. Throws SearchSpaceTooLarge when the
/// number of families exceeds `bound`.
inline std::vector<NatTrans> enumerate_nat_trans(const Functor& F, const Functor& G,
                                                 std::size_t bound = kDefaultSearchBound) {
  if (!parallel_functors(F, G)) throw PreconditionViolated("enumerate_nat_trans: functors are not parallel");
  const double space = nat_trans_space(F, G);
  if (space > static_cast<double>(bound))
    throw SearchSpaceTooLarge("natural transformation enumeration exceeds bound " + std::to_string(bound), space);
  std::vector<NatTrans> out;
  if (space == 0) return out;
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  const std::size_t n = A.object_count();
  std::vector<std::span<const MorId>> cands(n);
  for (std::size_t x = 0; x < n; ++x) cands[x] = B.hom(F(to_obj(x)), G(to_obj(x)));
  std::vector<std::size_t> pos(n, 0);
  std::vector<MorId> comps(n);
  while (true) {
    for (std::size_t x = 0; x < n; ++x) comps[x] = cands[x][pos[x]];
    bool natural = true;
    for (std::size_t i = 0; i < A.morphism_count() && natural; ++i) {
      const MorId a = to_mor(i);
      natural = B.compose(G(a), comps[index(A.src(a))]) == B.compose(comps[index(A.dst(a))], F(a));
    }
    if (natural) out.push_back(NatTrans{F, G, comps, {}});
    std::size_t k = 0;
    while (k < n && ++pos[k] == cands[k].size()) pos[k++] = 0;
    if (k == n) break;
  }
  return out;
}

struct NatTransSearch {
  std::vector<NatTrans> solutions;
  std::size_t nodes = 0;
};

/// Complete backtracking search for natural transformations F => G,
/// pruning each partial family by the naturality squares it already fixes.
/// Finds exactly what enumerate_nat_trans finds (optionally only the
/// invertible ones) but bounds visited nodes instead of raw families.
inline NatTransSearch search_nat_trans(const Functor& F, const Functor& G, bool invertible_only,
                                       const SearchLimits& limits = {}) {
  if (!parallel_functors(F, G)) throw PreconditionViolated("search_nat_trans: functors are not parallel");
  const FinCategory& A = *F.source;
  const FinCategory& B = *F.target;
  const std::size_t n = A.object_count();
  std::vector<std::vector<MorId>> cands(n);
  for (std::size_t x = 0; x < n; ++x)
    for (MorId m : B.hom(F(to_obj(x)), G(to_obj(x))))
      if (!invertible_only || is_invertible(B, m)) cands[x].push_back(m);
  ConstraintSearch search(std::move(cands));
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    const MorId a = to_mor(i);
    const std::size_t x = index(A.src(a)), y = index(A.dst(a));
    const MorId Fa = F(a), Ga = G(a);
    const std::size_t scope[] = {x, y};
    search.add_constraint(scope, [&B, x, y, Fa, Ga](std::span<const MorId> s) {
      return B.compose(Ga, s[x]) == B.compose(s[y], Fa);
    });
  }
  auto res = search.run(limits);
  NatTransSearch out;
  out.nodes = res.nodes;
  for (auto& comps : res.solutions) out.solutions.push_back(NatTrans{F, G, std::move(comps), {}});
  return out;
}

inline bool is_natural_iso(const NatTrans& t) {
  const FinCategory& B = *t.source.target;
  for (MorId c : t.components)
    if (!is_invertible(B, c)) return false;
  return true;
}

}  // namespace ncanon
