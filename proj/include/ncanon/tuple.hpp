#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/fincat.hpp"

namespace ncanon {

/// A list of objects of some base category.
using Word = std::vector<ObjId>;

inline std::string to_string(const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(index(w[i]));
  }
  return s + ")";
}

/// Every word over objects 0..n-1 of length <= max_len, shortest first and
/// lexicographic within a length, kept when keep(w) holds.
inline std::vector<Word> all_words(std::size_t n, std::size_t max_len,
                                   const std::function<bool(const Word&)>& keep = {}) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<Word> next;
    for (auto& w : layer) {
      if (!keep || keep(w)) out.push_back(w);
      if (len == max_len) continue;
      for (std::size_t x = 0; x < n; ++x) {
        Word v = w;
        v.push_back(to_obj(x));
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// The category whose objects are a chosen set of words over a base category
/// and whose morphisms are componentwise tuples of base morphisms between
/// words of equal length. Used both for products base^n (restricted to a
/// domain of definition) and for the truncated free monoidal category.
///
/// Morphisms of one hom-set are numbered contiguously with the first
/// component varying fastest, so a tuple is located by arithmetic rather
/// than by lookup.
class TupleCategory {
 public:
  TupleCategory(CategoryPtr base, std::vector<Word> words, std::string name = {})
      : base_(std::move(base)), words_(std::move(words)) {
    const FinCategory& B = *base_;
    const std::size_t W = words_.size();
    for (std::size_t i = 0; i < W; ++i) {
      for (ObjId x : words_[i])
        if (!B.has_object(x)) throw IndexOutOfRange("word " + to_string(words_[i]) + " leaves the base category");
      if (!lookup_.emplace(words_[i], to_obj(i)).second) throw PreconditionViolated("duplicate word " + to_string(words_[i]));
    }
    std::vector<MorphismRec> recs;
    hom_first_.assign(W * W, 0);
    for (std::size_t s = 0; s < W; ++s)
      for (std::size_t u = 0; u < W; ++u) {
        hom_first_[s * W + u] = recs.size();
        const Word& a = words_[s];
        const Word& b = words_[u];
        if (a.size() != b.size()) continue;
        std::vector<std::span<const MorId>> homs;
        std::size_t count = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
          homs.push_back(B.hom(a[i], b[i]));
          count *= homs.back().size();
        }
        std::vector<std::size_t> pos(a.size(), 0);
        for (std::size_t c = 0; c < count; ++c) {
          recs.push_back({to_obj(s), to_obj(u)});
          comp_offset_.push_back(comps_.size());
          for (std::size_t i = 0; i < a.size(); ++i) comps_.push_back(homs[i][pos[i]]);
          for (std::size_t i = 0; i < a.size() && ++pos[i] == homs[i].size(); ++i) pos[i] = 0;
        }
      }
    comp_offset_.push_back(comps_.size());
    std::vector<MorId> ids(W);
    for (std::size_t s = 0; s < W; ++s) {
      std::vector<MorId> c;
      for (ObjId x : words_[s]) c.push_back(B.identity(x));
      ids[s] = locate(to_obj(s), to_obj(s), c);
    }
    cat_ = share(FinCategory::from_rule(
        W, std::move(recs), std::move(ids),
        [this, &B](MorId g, MorId f) {
          auto cg = components(g);
          auto cf = components(f);
          std::vector<MorId> c(cf.size());
          for (std::size_t i = 0; i < c.size(); ++i) {
            auto r = B.compose(cg[i], cf[i]);
            if (!r) return kNoMorphism;
            c[i] = *r;
          }
          return locate(cat_src(f), cat_dst(g), c);
        },
        std::move(name)));
  }

  TupleCategory(const TupleCategory&) = delete;
  TupleCategory& operator=(const TupleCategory&) = delete;

  const CategoryPtr& base() const noexcept { return base_; }
  const CategoryPtr& category() const noexcept { return cat_; }
  const FinCategory& cat() const noexcept { return *cat_; }

  std::size_t word_count() const noexcept { return words_.size(); }
  const std::vector<Word>& words() const noexcept { return words_; }
  const Word& word(ObjId x) const { return words_.at(index(x)); }
  std::optional<ObjId> find(const Word& w) const {
    auto it = lookup_.find(w);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Word& w) const { return lookup_.count(w) != 0; }

  std::span<const MorId> components(MorId m) const {
    const std::size_t i = index(m);
    return {comps_.data() + comp_offset_.at(i), comp_offset_.at(i + 1) - comp_offset_[i]};
  }

  /// The morphism with the given components, when both end words are objects.
  std::optional<MorId> find_tuple(std::span<const MorId> c) const {
    const FinCategory& B = *base_;
    Word a, b;
    for (MorId m : c) {
      if (!B.has_morphism(m)) return std::nullopt;
      a.push_back(B.src(m));
      b.push_back(B.dst(m));
    }
    auto s = find(a), u = find(b);
    if (!s || !u) return std::nullopt;
    return locate(*s, *u, c);
  }
  MorId tuple(std::span<const MorId> c) const {
    if (auto m = find_tuple(c)) return *m;
    throw TruncationExceeded("tuple of " + std::to_string(c.size()) + " morphisms has an end word outside the category");
  }
  MorId tuple(std::initializer_list<MorId> c) const { return tuple(std::span<const MorId>(c.begin(), c.size())); }

 private:
  ObjId cat_src(MorId m) const { return cat_ ? cat_->src(m) : pending_src(m); }
  ObjId cat_dst(MorId m) const { return cat_ ? cat_->dst(m) : pending_dst(m); }
  // During construction the category is not yet built; recover ends from components.
  ObjId pending_src(MorId m) const {
    Word a;
    for (MorId c : components(m)) a.push_back(base_->src(c));
    return lookup_.at(a);
  }
  ObjId pending_dst(MorId m) const {
    Word b;
    for (MorId c : components(m)) b.push_back(base_->dst(c));
    return lookup_.at(b);
  }

  MorId locate(ObjId s, ObjId u, std::span<const MorId> c) const {
    const FinCategory& B = *base_;
    std::size_t local = 0, radix = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      local += B.local_index(c[i]) * radix;
      radix *= B.hom(B.src(c[i]), B.dst(c[i])).size();
    }
    return to_mor(hom_first_[index(s) * words_.size() + index(u)] + local);
  }

  CategoryPtr base_;
  std::vector<Word> words_;
  std::map<Word, ObjId> lookup_;
  std::vector<std::size_t> hom_first_;
  std::vector<MorId> comps_;
  std::vector<std::size_t> comp_offset_;
  CategoryPtr cat_;
};

using TuplePtr = std::shared_ptr<const TupleCategory>;

}  // namespace ncanon
