#pragma once

// Fixture documents (JSON) and built-in fixture names, collected into a
// bundle that resolves references by name or file path.
//
// A file holds one document or {"documents": [...]}. Every document has a
// "kind" and a "name":
//
//   category            objects, morphisms [{id, src, dst}], identity, compose [[g, f, gf]]
//   monoidal            category keys (or base), tensor_obj [[x, y, xy]], tensor_mor [[f, g, fg]],
//                       unit, associator [[x, y, z, m]], lunitor [m], runitor [m], braiding [[x, y, m]]
//   functor             source, target, objects [y], morphisms [m]
//   monoidal_functor    functor keys over monoidal source/target, phi [[x, y, m]], phi0
//   transformation      source, target (functors), components [m]
//   coproducts          base, coproduct [[x, y, sum, inl, inr]], initial
//   binary              functor, components [[x, y, m]]
//   family              functor, components [{word: [x...], morphism: m}]
//
// Every loaded document passes its validator before it enters the bundle.

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncanon/errors.hpp"
#include "ncanon/famf.hpp"
#include "ncanon/fincat.hpp"
#include "ncanon/fixtures.hpp"
#include "ncanon/monoidal.hpp"
#include "ncanon/strongify.hpp"

namespace ncanon {

using json = nlohmann::json;

class FixtureBundle {
 public:
  std::map<std::string, CategoryPtr> categories;
  std::map<std::string, MonoidalPtr> monoidal;
  std::map<std::string, Functor> functors;
  std::map<std::string, MonoidalFunctor> monoidal_functors;
  std::map<std::string, NatTrans> transformations;
  std::map<std::string, CoproductPtr> coproducts;
  std::map<std::string, BinaryFamily> binary;
  std::map<std::string, WordFamily> families;

  /// Adds every document of a file; references resolve against what is
  /// already loaded, built-in names, and files relative to this one.
  void load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    load_text(ss.str(), path.string(), path.parent_path());
  }

  void load_text(const std::string& text, const std::string& origin = "<text>",
                 const std::filesystem::path& dir = {}) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(origin + ": " + e.what());
    }
    const auto saved = dir_;
    dir_ = dir;
    try {
      if (doc.is_object() && doc.contains("documents")) {
        for (const auto& d : doc.at("documents")) load_document(d, origin);
      } else {
        load_document(doc, origin);
      }
    } catch (...) {
      dir_ = saved;
      throw;
    }
    dir_ = saved;
  }

  // --- resolution --------------------------------------------------------------

  CategoryPtr category(const std::string& ref) {
    if (auto it = categories.find(ref); it != categories.end()) return it->second;
    if (auto it = monoidal.find(ref); it != monoidal.end()) return it->second->base;
    if (auto b = builtin_category(ref)) return b;
    if (auto f = load_reference(ref)) return category(pick(*f, {"category", "monoidal"}, ref));
    throw UnresolvedReference("unknown category '" + ref + "'");
  }

  MonoidalPtr monoidal_structure(const std::string& ref) {
    if (auto it = monoidal.find(ref); it != monoidal.end()) return it->second;
    if (auto b = builtin_monoidal(ref)) return b;
    if (auto f = load_reference(ref)) return monoidal_structure(pick(*f, {"monoidal"}, ref));
    throw UnresolvedReference("unknown monoidal category '" + ref + "'");
  }

  bool is_monoidal_functor(const std::string& ref) {
    if (monoidal_functors.count(ref)) return true;
    if (functors.count(ref)) return false;
    return builtin_monoidal_functor(ref).has_value();
  }

  MonoidalFunctor monoidal_functor(const std::string& ref) {
    if (auto it = monoidal_functors.find(ref); it != monoidal_functors.end()) return it->second;
    if (auto b = builtin_monoidal_functor(ref)) return *b;
    if (auto f = load_reference(ref)) return monoidal_functor(pick(*f, {"monoidal_functor"}, ref));
    throw UnresolvedReference("unknown monoidal functor '" + ref + "'");
  }

  /// A plain functor, or the underlying functor of a monoidal one.
  Functor functor(const std::string& ref) {
    if (auto it = functors.find(ref); it != functors.end()) return it->second;
    if (auto it = monoidal_functors.find(ref); it != monoidal_functors.end()) return it->second.underlying;
    if (auto b = builtin_functor(ref)) return *b;
    if (auto f = load_reference(ref)) return functor(pick(*f, {"functor", "monoidal_functor"}, ref));
    throw UnresolvedReference("unknown functor '" + ref + "'");
  }

  NatTrans transformation(const std::string& ref) {
    if (auto it = transformations.find(ref); it != transformations.end()) return it->second;
    if (auto b = builtin_transformation(ref)) return *b;
    if (auto f = load_reference(ref)) return transformation(pick(*f, {"transformation"}, ref));
    throw UnresolvedReference("unknown transformation '" + ref + "'");
  }

  BinaryFamily binary_family(const std::string& ref) {
    if (auto it = binary.find(ref); it != binary.end()) return it->second;
    if (auto k = builtin_param(ref, "twisted", 2)) return fixtures::twisted_binary(*k);
    if (auto f = load_reference(ref)) return binary_family(pick(*f, {"binary"}, ref));
    throw UnresolvedReference("unknown binary family '" + ref + "'");
  }

  WordFamily word_family(const std::string& ref) {
    if (auto it = families.find(ref); it != families.end()) return it->second;
    if (auto f = load_reference(ref)) return word_family(pick(*f, {"family"}, ref));
    throw UnresolvedReference("unknown family '" + ref + "'");
  }

  CoproductPtr coproduct_choice(const std::string& ref) {
    if (auto it = coproducts.find(ref); it != coproducts.end()) return it->second;
    return coproducts_for(category(ref));
  }

  /// The coproduct choice on a category: a loaded one, else the built-in one.
  CoproductPtr coproducts_for(const CategoryPtr& c) {
    std::vector<CoproductPtr> candidates;
    for (const auto& [name, cp] : coproducts) candidates.push_back(cp);
    candidates.push_back(fixtures::terminal_coproducts());
    candidates.push_back(fixtures::arrow_coproducts());
    for (std::size_t k = 0; k <= FinSet::kMaxSize; ++k) candidates.push_back(fixtures::finset_coproducts(k));
    // the same object first; FinSet_0 and the terminal category are equal as tables
    for (const auto& cp : candidates)
      if (cp->base() == c) return cp;
    for (const auto& cp : candidates)
      if (same_category(cp->base(), c)) return cp;
    throw UnresolvedReference("no coproduct choice for category '" + c->name() + "'");
  }

 private:
  // --- built-ins ---------------------------------------------------------------

  /// "name" or "name:k"; nullopt when ref is a different name.
  static std::optional<std::size_t> builtin_param(const std::string& ref, const std::string& name,
                                                  std::optional<std::size_t> fallback) {
    if (ref == name) return fallback;
    if (ref.rfind(name + ":", 0) != 0) return std::nullopt;
    const std::string arg = ref.substr(name.size() + 1);
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
      throw UnresolvedReference("bad parameter in built-in '" + ref + "'");
    const std::size_t k = std::stoul(arg);
    if (k > FinSet::kMaxSize) throw UnresolvedReference("built-in '" + ref + "' exceeds k <= 4");
    return k;
  }

  static CategoryPtr builtin_category(const std::string& ref) {
    if (ref == "arrow") return fixtures::arrow_category();
    if (ref == "terminal") return fixtures::terminal_category();
    if (ref == "z2") return fixtures::z2_monoidal()->base;
    if (auto k = builtin_param(ref, "finset", std::nullopt)) return fixtures::finset(*k)->category();
    return nullptr;
  }

  static MonoidalPtr builtin_monoidal(const std::string& ref) {
    if (ref == "arrow") return fixtures::arrow_monoidal();
    if (ref == "terminal") return fixtures::terminal_monoidal();
    if (ref == "z2") return fixtures::z2_monoidal();
    if (auto k = builtin_param(ref, "finset", std::nullopt)) return fixtures::finset_monoidal(*k);
    return nullptr;
  }

  static std::optional<MonoidalFunctor> builtin_monoidal_functor(const std::string& ref) {
    if (auto k = builtin_param(ref, "f_dbl", 2)) return fixtures::f_dbl(*k);
    if (auto k = builtin_param(ref, "f_sq", 2)) return fixtures::f_sq(*k);
    if (auto k = builtin_param(ref, "twisted", 2)) return fixtures::f_dbl_twisted(*k);
    if (ref == "d0") return fixtures::d0();
    if (ref == "pt") return fixtures::pt_monoid();
    if (ref.rfind("id:", 0) == 0) return identity_monoidal_functor(builtin_monoidal_or_throw(ref.substr(3)));
    return std::nullopt;
  }

  static std::optional<Functor> builtin_functor(const std::string& ref) {
    if (auto k = builtin_param(ref, "f_succ", 2)) return fixtures::f_succ_functor(*k);
    if (auto m = builtin_monoidal_functor(ref)) return m->underlying;
    return std::nullopt;
  }

  static std::optional<NatTrans> builtin_transformation(const std::string& ref) {
    if (auto k = builtin_param(ref, "beta_swap", 2)) return fixtures::beta_swap(*k);
    return std::nullopt;
  }

  static MonoidalPtr builtin_monoidal_or_throw(const std::string& ref) {
    if (auto m = builtin_monoidal(ref)) return m;
    throw UnresolvedReference("unknown monoidal category '" + ref + "'");
  }

  using KindIndex = std::map<std::string, std::string>;  // kind -> last document of that kind

  /// Loads ref as a file path (relative to the current file first) and
  /// returns the documents it defined, by kind.
  const KindIndex* load_reference(const std::string& ref) {
    std::filesystem::path p = ref;
    if (!dir_.empty() && p.is_relative() && std::filesystem::exists(dir_ / p)) p = dir_ / p;
    if (!std::filesystem::is_regular_file(p)) return nullptr;
    const std::string key = std::filesystem::weakly_canonical(p).string();
    if (auto it = files_.find(key); it != files_.end()) return &it->second;
    KindIndex saved = std::move(current_);
    current_.clear();
    load_file(p);
    files_[key] = std::move(current_);
    current_ = std::move(saved);
    return &files_[key];
  }

  static std::string pick(const KindIndex& f, std::initializer_list<const char*> kinds, const std::string& ref) {
    for (const char* k : kinds)
      if (auto it = f.find(k); it != f.end()) return it->second;
    throw UnresolvedReference("file '" + ref + "' has no document of the needed kind");
  }

  // --- document parsing ----------------------------------------------------------

  static const json& need(const json& d, const char* key, const std::string& doc) {
    if (!d.is_object() || !d.contains(key)) throw ParseError("document '" + doc + "' is missing key '" + key + "'");
    return d.at(key);
  }

  template <class T>
  static T as(const json& v, const std::string& doc, const char* key) {
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ParseError("document '" + doc + "': key '" + key + "' has the wrong type");
    }
  }

  void load_document(const json& d, const std::string& origin) {
    if (!d.is_object()) throw ParseError(origin + ": a document must be an object");
    const std::string kind = as<std::string>(need(d, "kind", origin), origin, "kind");
    const std::string name = as<std::string>(need(d, "name", origin), origin, "name");
    if (kind == "category") {
      categories[name] = parse_category(d, name);
    } else if (kind == "monoidal") {
      monoidal[name] = parse_monoidal(d, name);
    } else if (kind == "functor") {
      functors.insert_or_assign(name, parse_functor(d, name));
    } else if (kind == "monoidal_functor") {
      monoidal_functors.insert_or_assign(name, parse_monoidal_functor(d, name));
    } else if (kind == "transformation") {
      transformations.insert_or_assign(name, parse_transformation(d, name));
    } else if (kind == "coproducts") {
      coproducts[name] = parse_coproducts(d, name);
    } else if (kind == "binary") {
      binary[name] = parse_binary(d, name);
    } else if (kind == "family") {
      families[name] = parse_family(d, name);
    } else {
      throw ParseError("document '" + name + "' has unknown kind '" + kind + "'");
    }
    current_[kind] = name;
  }

  static CategoryPtr parse_category(const json& d, const std::string& name) {
    const auto objects = as<std::size_t>(need(d, "objects", name), name, "objects");
    const json& ms = need(d, "morphisms", name);
    const json& ids = need(d, "identity", name);
    const json& comp = need(d, "compose", name);
    std::vector<MorphismRec> recs(ms.size());
    std::vector<bool> seen(ms.size(), false);
    for (const auto& m : ms) {
      const auto id = as<std::size_t>(need(m, "id", name), name, "id");
      if (id >= ms.size() || seen[id]) throw ParseError("document '" + name + "': morphism ids must be 0..n-1, once each");
      seen[id] = true;
      recs[id] = {to_obj(as<std::size_t>(need(m, "src", name), name, "src")),
                  to_obj(as<std::size_t>(need(m, "dst", name), name, "dst"))};
    }
    std::vector<MorId> identity;
    for (const auto& i : ids) identity.push_back(to_mor(as<std::size_t>(i, name, "identity")));
    std::vector<ComposeEntry> table;
    for (const auto& e : comp) {
      auto v = as<std::vector<std::size_t>>(e, name, "compose");
      if (v.size() != 3) throw ParseError("document '" + name + "': compose entries are [g, f, gf]");
      table.push_back({to_mor(v[0]), to_mor(v[1]), to_mor(v[2])});
    }
    CategoryPtr c;
    try {
      c = share(FinCategory(objects, std::move(recs), std::move(identity), table, name));
    } catch (const IndexOutOfRange& e) {
      throw ParseError("document '" + name + "': " + e.what());
    }
    auto r = check_category(*c);
    if (!r.ok()) throw ValidationError("category '" + name + "'", r);
    return c;
  }

  MonoidalPtr parse_monoidal(const json& d, const std::string& name) {
    CategoryPtr base = d.contains("base") ? category(as<std::string>(d.at("base"), name, "base"))
                                          : parse_category(d, name);
    const std::size_t n = base->object_count();
    auto table = [&](const char* key, std::size_t arity) {
      std::map<std::vector<std::size_t>, std::size_t> out;
      for (const auto& e : need(d, key, name)) {
        auto v = as<std::vector<std::size_t>>(e, name, key);
        if (v.size() != arity + 1) throw ParseError("document '" + name + "': entries of '" + key + "' have the wrong length");
        const std::size_t val = v.back();
        v.pop_back();
        out[v] = val;
      }
      return out;
    };
    auto list = [&](const char* key) {
      std::vector<MorId> out;
      for (const auto& e : need(d, key, name)) out.push_back(to_mor(as<std::size_t>(e, name, key)));
      if (out.size() != n) throw ParseError("document '" + name + "': '" + key + "' needs one entry per object");
      return out;
    };
    auto lookup = [name](const auto& t, std::vector<std::size_t> k, const char* key) {
      auto it = t.find(k);
      if (it == t.end()) {
        std::string s;
        for (auto x : k) s += (s.empty() ? "" : ",") + std::to_string(x);
        throw ParseError("document '" + name + "': '" + key + "' has no entry for (" + s + ")");
      }
      return it->second;
    };
    auto tobj = table("tensor_obj", 2);
    auto tmor = table("tensor_mor", 2);
    auto assoc = table("associator", 3);
    const auto lun = list("lunitor");
    const auto run = list("runitor");
    MonoidalSpec s;
    s.base = base;
    s.name = name;
    s.unit = to_obj(as<std::size_t>(need(d, "unit", name), name, "unit"));
    s.tensor_obj = [tobj](ObjId x, ObjId y) -> std::optional<ObjId> {
      auto it = tobj.find({index(x), index(y)});
      if (it == tobj.end()) return std::nullopt;
      return to_obj(it->second);
    };
    s.tensor_mor = [=](MorId f, MorId g) { return to_mor(lookup(tmor, {index(f), index(g)}, "tensor_mor")); };
    s.associator = [=](ObjId x, ObjId y, ObjId z) {
      return to_mor(lookup(assoc, {index(x), index(y), index(z)}, "associator"));
    };
    s.lunitor = [lun](ObjId x) { return lun[index(x)]; };
    s.runitor = [run](ObjId x) { return run[index(x)]; };
    if (d.contains("braiding")) {
      auto br = table("braiding", 2);
      s.braiding = [=](ObjId x, ObjId y) { return to_mor(lookup(br, {index(x), index(y)}, "braiding")); };
    }
    MonoidalPtr m;
    try {
      m = std::make_shared<const MonoidalStructure>(make_monoidal(s));
    } catch (const IndexOutOfRange& e) {
      throw ParseError("document '" + name + "': " + e.what());
    }
    auto r = check_monoidal_category(*m);
    if (m->braiding) r.merge(check_braiding(*m), "braiding");
    if (!r.ok()) throw ValidationError("monoidal category '" + name + "'", r);
    return m;
  }

  static std::pair<std::vector<ObjId>, std::vector<MorId>> parse_maps(const json& d, const std::string& name) {
    std::vector<ObjId> om;
    std::vector<MorId> mm;
    for (const auto& e : need(d, "objects", name)) om.push_back(to_obj(as<std::size_t>(e, name, "objects")));
    for (const auto& e : need(d, "morphisms", name)) mm.push_back(to_mor(as<std::size_t>(e, name, "morphisms")));
    return {std::move(om), std::move(mm)};
  }

  Functor parse_functor(const json& d, const std::string& name) {
    CategoryPtr src = category(as<std::string>(need(d, "source", name), name, "source"));
    CategoryPtr dst = category(as<std::string>(need(d, "target", name), name, "target"));
    auto [om, mm] = parse_maps(d, name);
    Functor F;
    try {
      F = make_functor(src, dst, std::move(om), std::move(mm), name);
    } catch (const Error& e) {
      throw ParseError("document '" + name + "': " + e.what());
    }
    ValidationReport r;
    try {
      r = check_functor(F);
    } catch (const Error& e) {
      r.add("functor-type", e.what());
    }
    if (!r.ok()) throw ValidationError("functor '" + name + "'", r);
    return F;
  }

  MonoidalFunctor parse_monoidal_functor(const json& d, const std::string& name) {
    MonoidalPtr src = monoidal_structure(as<std::string>(need(d, "source", name), name, "source"));
    MonoidalPtr dst = monoidal_structure(as<std::string>(need(d, "target", name), name, "target"));
    auto [om, mm] = parse_maps(d, name);
    std::map<std::pair<std::size_t, std::size_t>, MorId> phi;
    for (const auto& e : need(d, "phi", name)) {
      auto v = as<std::vector<std::size_t>>(e, name, "phi");
      if (v.size() != 3) throw ParseError("document '" + name + "': phi entries are [x, y, m]");
      phi[{v[0], v[1]}] = to_mor(v[2]);
    }
    const MorId phi0 = to_mor(as<std::size_t>(need(d, "phi0", name), name, "phi0"));
    MonoidalFunctor F;
    try {
      F = make_monoidal_functor(
          src, dst, make_functor(src->base, dst->base, std::move(om), std::move(mm), name),
          [&](ObjId x, ObjId y) {
            auto it = phi.find({index(x), index(y)});
            if (it == phi.end())
              throw ParseError("document '" + name + "': phi has no entry for (" + std::to_string(index(x)) + "," +
                               std::to_string(index(y)) + ")");
            return it->second;
          },
          phi0, name);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("document '" + name + "': " + e.what());
    }
    ValidationReport r;
    try {
      r = check_monoidal_functor(F);
    } catch (const Error& e) {
      r.add("typing", e.what());
    }
    if (!r.ok()) throw ValidationError("monoidal functor '" + name + "'", r);
    return F;
  }

  NatTrans parse_transformation(const json& d, const std::string& name) {
    NatTrans t{functor(as<std::string>(need(d, "source", name), name, "source")),
               functor(as<std::string>(need(d, "target", name), name, "target")),
               {},
               name};
    for (const auto& e : need(d, "components", name)) t.components.push_back(to_mor(as<std::size_t>(e, name, "components")));
    ValidationReport r;
    try {
      r = check_naturality(t);
    } catch (const Error& e) {
      r.add("typing", e.what());
    }
    if (!r.ok()) throw ValidationError("transformation '" + name + "'", r);
    return t;
  }

  CoproductPtr parse_coproducts(const json& d, const std::string& name) {
    CategoryPtr base = category(as<std::string>(need(d, "base", name), name, "base"));
    const std::size_t n = base->object_count();
    std::vector<std::optional<ObjId>> sum(n * n);
    std::vector<MorId> inl(n * n, kNoMorphism), inr(n * n, kNoMorphism);
    for (const auto& e : need(d, "coproduct", name)) {
      auto v = as<std::vector<std::size_t>>(e, name, "coproduct");
      if (v.size() != 5) throw ParseError("document '" + name + "': coproduct entries are [x, y, sum, inl, inr]");
      if (v[0] >= n || v[1] >= n || v[2] >= n || v[3] >= base->morphism_count() || v[4] >= base->morphism_count())
        throw ParseError("document '" + name + "': coproduct entry out of range");
      sum[v[0] * n + v[1]] = to_obj(v[2]);
      inl[v[0] * n + v[1]] = to_mor(v[3]);
      inr[v[0] * n + v[1]] = to_mor(v[4]);
    }
    std::optional<ObjId> initial;
    if (d.contains("initial")) initial = to_obj(as<std::size_t>(d.at("initial"), name, "initial"));
    std::shared_ptr<const CoproductChoice> c;
    try {
      c = std::make_shared<const CoproductChoice>(base, std::move(sum), std::move(inl), std::move(inr), initial, name);
    } catch (const IndexOutOfRange& e) {
      throw ParseError("document '" + name + "': " + e.what());
    }
    auto r = check_coproduct_choice(*c);
    if (!r.ok()) throw ValidationError("coproduct choice '" + name + "'", r);
    return c;
  }

  BinaryFamily parse_binary(const json& d, const std::string& name) {
    const Functor F = functor(as<std::string>(need(d, "functor", name), name, "functor"));
    const std::size_t n = F.source->object_count();
    BinaryFamily out(n * n, kNoMorphism);
    for (const auto& e : need(d, "components", name)) {
      auto v = as<std::vector<std::size_t>>(e, name, "components");
      if (v.size() != 3 || v[0] >= n || v[1] >= n) throw ParseError("document '" + name + "': components are [x, y, m]");
      out[v[0] * n + v[1]] = to_mor(v[2]);
    }
    return out;
  }

  WordFamily parse_family(const json& d, const std::string& name) {
    need(d, "functor", name);
    WordFamily out;
    for (const auto& e : need(d, "components", name)) {
      Word w;
      for (const auto& x : need(e, "word", name)) w.push_back(to_obj(as<std::size_t>(x, name, "word")));
      out[w] = to_mor(as<std::size_t>(need(e, "morphism", name), name, "morphism"));
    }
    return out;
  }

  std::filesystem::path dir_;
  KindIndex current_;
  std::map<std::string, KindIndex> files_;
};

/// A bundle holding the documents of one file.
inline FixtureBundle load_fixture(const std::filesystem::path& path) {
  FixtureBundle b;
  b.load_file(path);
  return b;
}

}  // namespace ncanon
