#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/fincat.hpp"

namespace ncanon {

/// The skeleton of finite sets {0, 1, ..., k}: object m stands for
/// [m] = {0, ..., m-1} and the morphisms m -> n are all functions [m] -> [n].
/// A function f is stored under the code sum_i f(i) * n^i within its hom-set.
class FinSet {
 public:
  static constexpr std::size_t kMaxSize = 4;

  explicit FinSet(std::size_t k) : k_(k) {
    if (k > kMaxSize) throw PreconditionViolated("finite-set skeleton limited to k <= " + std::to_string(kMaxSize));
    const std::size_t n = k + 1;
    first_.assign(n * n, 0);
    std::vector<MorphismRec> recs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        first_[a * n + b] = recs.size();
        const std::size_t count = power(b, a);
        for (std::size_t c = 0; c < count; ++c) recs.push_back({to_obj(a), to_obj(b)});
      }
    values_.resize(recs.size());
    for (const auto& r : recs) dst_.push_back(r.dst);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const std::size_t a = index(recs[i].src), b = index(recs[i].dst);
      std::size_t code = i - first_[a * n + b];
      for (std::size_t j = 0; j < a; ++j) {
        values_[i].push_back(static_cast<std::uint32_t>(code % b));
        code /= b;
      }
    }
    std::vector<MorId> ids(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::uint32_t> v(a);
      for (std::size_t j = 0; j < a; ++j) v[j] = static_cast<std::uint32_t>(j);
      ids[a] = encode(a, a, v);
    }
    cat_ = share(FinCategory::from_rule(
        n, std::move(recs), std::move(ids),
        [this](MorId g, MorId f) {
          const auto& vf = values_[index(f)];
          const auto& vg = values_[index(g)];
          std::vector<std::uint32_t> v(vf.size());
          for (std::size_t j = 0; j < v.size(); ++j) v[j] = vg[vf[j]];
          return encode(index(cat_src(f)), index(cat_dst(g)), v);
        },
        "FinSet" + std::to_string(k)));
  }

  std::size_t k() const noexcept { return k_; }
  const CategoryPtr& category() const noexcept { return cat_; }
  const FinCategory& cat() const noexcept { return *cat_; }

  /// The function [m] -> [n] with the given values.
  MorId fn(std::size_t m, std::size_t n, const std::vector<std::uint32_t>& values) const {
    if (m > k_ || n > k_ || values.size() != m) throw IndexOutOfRange("FinSet::fn: bad arity");
    for (auto v : values)
      if (v >= n) throw IndexOutOfRange("FinSet::fn: value out of range");
    return encode(m, n, values);
  }
  const std::vector<std::uint32_t>& values(MorId f) const { return values_.at(index(f)); }
  MorId identity(std::size_t m) const { return cat_->identity(to_obj(m)); }

 private:
  static std::size_t power(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
  }
  MorId encode(std::size_t m, std::size_t n, const std::vector<std::uint32_t>& v) const {
    std::size_t code = 0, radix = 1;
    for (std::size_t j = 0; j < m; ++j) {
      code += v[j] * radix;
      radix *= n;
    }
    return to_mor(first_[m * (k_ + 1) + n] + code);
  }
  ObjId cat_src(MorId f) const { return to_obj(values_[index(f)].size()); }
  ObjId cat_dst(MorId g) const { return dst_[index(g)]; }

  std::size_t k_;
  std::vector<std::size_t> first_;
  std::vector<std::vector<std::uint32_t>> values_;
  std::vector<ObjId> dst_;
  CategoryPtr cat_;
};

using FinSetPtr = std::shared_ptr<const FinSet>;

}  // namespace ncanon
