#pragma once

// The command surface: check, strongify, famf, search. Each command yields a
// structured report (JSON, deterministic) and an exit code: 0 when every
// verdict passes, 1 on a negative verdict, 2 on an error.

#include <chrono>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncanon/famf.hpp"
#include "ncanon/freemono.hpp"
#include "ncanon/io.hpp"
#include "ncanon/monoidal.hpp"
#include "ncanon/strongify.hpp"

namespace ncanon::cli {

struct Options {
  std::string command;
  std::vector<std::string> fixtures;

  // check targets
  std::string category, monoidal, functor, transformation, coproducts;
  bool lax_algebra = false;

  // strongify / famf inputs
  std::string phi, psi, alpha, beta;
  bool search = false;
  bool literal = false;

  // search
  std::string search_for = "psi";
  std::string target;

  std::size_t max_word_len = 4;
  std::size_t max_family_len = 3;
  std::size_t search_bound = 1'000'000;
  bool structured = false;
  bool timing = false;
};

struct Outcome {
  json report;
  int exit_code = 0;
  double wall_ms = 0;
};

inline json to_json(const Word& w) {
  json a = json::array();
  for (ObjId x : w) a.push_back(index(x));
  return a;
}

inline json to_json(const ValidationReport& r, std::size_t max_violations = 20) {
  json j;
  j["ok"] = r.ok();
  j["checked"] = r.checked();
  j["violation_count"] = r.violations().size();
  json vs = json::array();
  for (std::size_t i = 0; i < r.violations().size() && i < max_violations; ++i)
    vs.push_back({{"law", r.violations()[i].law}, {"where", r.violations()[i].where}});
  j["violations"] = vs;
  return j;
}

inline json to_json(const std::map<Word, MorId>& family) {
  json a = json::array();
  for (const auto& [w, m] : family) a.push_back({{"word", to_json(w)}, {"morphism", index(m)}});
  return a;
}

/// Components of an n^2 family, defined entries only.
inline json binary_to_json(const std::vector<MorId>& fam, std::size_t n) {
  json a = json::array();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (fam[x * n + y] != kNoMorphism) a.push_back({x, y, index(fam[x * n + y])});
  return a;
}

inline json ids_to_json(const std::vector<MorId>& ms) {
  json a = json::array();
  for (MorId m : ms) a.push_back(index(m));
  return a;
}

namespace detail {

inline Outcome verdict(json report, bool pass, const std::string& positive = "pass",
                       const std::string& negative = "fail") {
  report["verdict"] = pass ? positive : negative;
  return {std::move(report), pass ? 0 : 1};
}

inline Outcome run_check(const Options& o, FixtureBundle& b) {
  json rep;
  ValidationReport r;
  if (!o.category.empty()) {
    rep["target"] = {{"kind", "category"}, {"name", o.category}};
    r = check_category(*b.category(o.category));
  } else if (!o.monoidal.empty()) {
    rep["target"] = {{"kind", "monoidal"}, {"name", o.monoidal}};
    MonoidalPtr M = b.monoidal_structure(o.monoidal);
    r = check_monoidal_category(*M);
    if (M->braiding) r.merge(check_braiding(*M), "braiding");
    if (o.lax_algebra) {
      r.merge(check_lax_algebra(*M, o.max_word_len), "lax-algebra");
      rep["truncation"] = {{"max_word_len", o.max_word_len}};
    }
  } else if (!o.functor.empty()) {
    if (b.is_monoidal_functor(o.functor)) {
      rep["target"] = {{"kind", "monoidal_functor"}, {"name", o.functor}};
      MonoidalFunctor F = b.monoidal_functor(o.functor);
      r = check_monoidal_functor(F);
      rep["strong"] = is_strong(F).strong;
      if (o.lax_algebra) {
        r.merge(check_lax_morphism(F, o.max_word_len), "lax-morphism");
        rep["truncation"] = {{"max_word_len", o.max_word_len}};
      }
    } else {
      rep["target"] = {{"kind", "functor"}, {"name", o.functor}};
      r = check_functor(b.functor(o.functor));
    }
  } else if (!o.transformation.empty()) {
    rep["target"] = {{"kind", "transformation"}, {"name", o.transformation}};
    NatTrans t = b.transformation(o.transformation);
    r = check_naturality(t);
    rep["invertible"] = r.ok() && is_natural_iso(t);
  } else if (!o.coproducts.empty()) {
    rep["target"] = {{"kind", "coproducts"}, {"name", o.coproducts}};
    r = check_coproduct_choice(*b.coproduct_choice(o.coproducts));
  } else {
    throw PreconditionViolated("check needs one of --category, --monoidal, --functor, --transformation, --coproducts");
  }
  rep["report"] = to_json(r);
  return verdict(std::move(rep), r.ok());
}

inline Outcome run_strongify(const Options& o, FixtureBundle& b) {
  if (o.functor.empty()) throw PreconditionViolated("strongify needs --functor");
  const MonoidalFunctor F = b.monoidal_functor(o.functor);
  const std::size_t N = o.max_word_len;
  json rep;
  rep["functor"] = o.functor;
  rep["truncation"] = {{"max_word_len", N}};
  PsiSource source;
  if (!o.psi.empty()) {
    rep["source"] = {{"kind", "psi"}, {"name", o.psi}};
    source = FromPsi{b.word_family(o.psi)};
  } else if (o.search) {
    rep["source"] = {{"kind", "search"}, {"search_bound", o.search_bound}};
    SearchLimits limits;
    limits.node_bound = o.search_bound;
    source = BySearch{limits};
  } else {
    const std::string name = o.phi.empty() ? "own" : o.phi;
    rep["source"] = {{"kind", "phi"}, {"name", name}, {"normalize", !o.literal}};
    source = FromPhi{o.phi.empty() || o.phi == "own" ? F.phi : b.binary_family(o.phi), BuildPsiOptions{!o.literal}};
  }
  StrongMonoidalWitness w;
  try {
    w = strongify_end_to_end(F, source, N);
  } catch (const HypothesisViolated& e) {
    rep["hypothesis"] = {{"which", e.which()}, {"message", e.what()}};
    return verdict(std::move(rep), false, "strong", "hypothesis-violated");
  }
  rep["is_strong"] = w.is_strong;
  rep["consistent"] = w.consistent();
  rep["matches_find_inverse"] = w.matches_find_inverse;
  rep["psi"] = to_json(w.psi);
  rep["inverse"] = to_json(w.inverse);
  rep["report"] = to_json(w.report);
  if (o.search) rep["search"] = {{"nodes", w.search_nodes}, {"solutions", w.search_solutions}};
  rep["verdict"] = to_string(w.verdict);
  return {std::move(rep), w.verdict == StrongVerdict::Strong ? 0 : 1};
}

inline Outcome run_famf(const Options& o, FixtureBundle& b) {
  if (o.functor.empty()) throw PreconditionViolated("famf needs --functor");
  const Functor F = b.functor(o.functor);
  const CoproductPtr a = b.coproducts_for(F.source);
  const CoproductPtr c = b.coproducts_for(F.target);
  const std::size_t N = o.max_family_len;
  const std::size_t n = F.source->object_count();
  json rep;
  rep["functor"] = o.functor;
  rep["coproducts"] = {{"source", a->name()}, {"target", c->name()}};
  rep["truncation"] = {{"max_family_len", N}};

  const LaxCoproductStructure L = canonical_lax_structure(F, a, c);
  rep["kappa"] = binary_to_json(L.kappa, n);
  if (L.kappa0) rep["kappa0"] = index(*L.kappa0);
  rep["lax_coherence"] = to_json(check_lax_structure(L));
  const PreservationVerdict pv = preserves_binary_coproducts(F, a, c);
  json pres = {{"binary", pv.binary}, {"pairs_checked", pv.pairs_checked}};
  if (pv.failing_pair) pres["failing_pair"] = {index(pv.failing_pair->first), index(pv.failing_pair->second)};
  if (pv.initial) pres["initial"] = *pv.initial;
  rep["preservation"] = pres;

  SearchLimits limits;
  limits.node_bound = o.search_bound;
  if (!o.alpha.empty()) {
    const BinaryCoproductFamily alpha = o.alpha == "kappa" ? L.kappa : b.binary_family(o.alpha);
    rep["mode"] = "alpha";
    try {
      auto res = build_alpha_prime(F, alpha, a, c, N, {!o.literal});
      rep["alpha_prime"] = to_json(res.alpha_prime);
      rep["report"] = to_json(res.report);
      return verdict(std::move(rep), res.report.ok() && res.preservation.binary);
    } catch (const HypothesisViolated& e) {
      rep["hypothesis"] = {{"which", e.which()}, {"message", e.what()}};
      return verdict(std::move(rep), false, "pass", "hypothesis-violated");
    }
  }
  if (!o.beta.empty()) {
    rep["mode"] = "beta";
    std::vector<MorId> beta;
    if (o.beta == "id") {
      for (std::size_t x = 0; x < n; ++x) beta.push_back(F.target->identity(F(to_obj(x))));
    } else {
      beta = b.transformation(o.beta).components;
    }
    try {
      auto v = beta_criterion(F, beta, a, c);
      rep["induced"] = binary_to_json(v.induced, n);
      if (v.failing_pair) rep["failing_pair"] = {index(v.failing_pair->first), index(v.failing_pair->second)};
      return verdict(std::move(rep), v.holds);
    } catch (const HypothesisViolated& e) {
      rep["hypothesis"] = {{"which", e.which()}, {"message", e.what()}};
      return verdict(std::move(rep), false, "pass", "hypothesis-violated");
    }
  }
  if (!o.psi.empty()) {
    rep["mode"] = "psi";
    auto v = kz_shortcut(F, b.word_family(o.psi), a, c, N);
    rep["report"] = to_json(v.report);
    rep["preserves"] = v.preserves;
    return verdict(std::move(rep), v.holds);
  }
  if (o.search) {
    rep["mode"] = "search";
    auto psi = search_kz_psi(F, a, c, N, limits);
    auto beta = search_beta(F, a, c, limits);
    const bool psi_exists = !psi.solutions.empty();
    const bool beta_exists = !beta.passing.empty();
    rep["psi_search"] = {{"nodes", psi.nodes}, {"solutions", psi.solutions.size()}};
    if (psi_exists) rep["psi"] = to_json(psi.solutions.front());
    rep["beta_search"] = {{"natural_isos", beta.natural_isos.size()}, {"passing", beta.passing.size()}};
    if (beta_exists) rep["beta"] = ids_to_json(beta.passing.front());
    rep["agree"] = psi_exists == beta_exists && beta_exists == pv.binary;
    return verdict(std::move(rep), psi_exists, "existence", "non-existence");
  }
  rep["mode"] = "preservation";
  return verdict(std::move(rep), pv.binary);
}

inline Outcome run_search(const Options& o, FixtureBundle& b) {
  if (o.functor.empty()) throw PreconditionViolated("search needs --functor");
  SearchLimits limits;
  limits.node_bound = o.search_bound;
  json rep;
  rep["functor"] = o.functor;
  rep["for"] = o.search_for;
  std::size_t found = 0;
  if (o.search_for == "psi") {
    const MonoidalFunctor F = b.monoidal_functor(o.functor);
    rep["truncation"] = {{"max_word_len", o.max_word_len}};
    auto s = search_psi(F, o.max_word_len, limits);
    found = s.solutions.size();
    rep["nodes"] = s.nodes;
    rep["rejected"] = s.rejected;
    if (found) rep["first"] = to_json(s.solutions.front());
  } else if (o.search_for == "kz") {
    const Functor F = b.functor(o.functor);
    rep["truncation"] = {{"max_family_len", o.max_family_len}};
    auto s = search_kz_psi(F, b.coproducts_for(F.source), b.coproducts_for(F.target), o.max_family_len, limits);
    found = s.solutions.size();
    rep["nodes"] = s.nodes;
    if (found) rep["first"] = to_json(s.solutions.front());
  } else if (o.search_for == "beta") {
    const Functor F = b.functor(o.functor);
    auto s = search_beta(F, b.coproducts_for(F.source), b.coproducts_for(F.target), limits);
    found = s.passing.size();
    rep["natural_isos"] = s.natural_isos.size();
    rep["nodes"] = s.nodes;
    if (found) rep["first"] = ids_to_json(s.passing.front());
  } else if (o.search_for == "alpha") {
    const Functor F = b.functor(o.functor);
    auto s = search_binary_isos(F, b.coproducts_for(F.source), b.coproducts_for(F.target), limits);
    found = s.size();
    if (found) rep["first"] = binary_to_json(s.front(), F.source->object_count());
  } else if (o.search_for == "nat-iso") {
    const Functor F = b.functor(o.functor);
    const Functor G = o.target.empty() ? F : b.functor(o.target);
    rep["target"] = o.target.empty() ? o.functor : o.target;
    auto s = search_nat_trans(F, G, true, limits);
    found = s.solutions.size();
    rep["nodes"] = s.nodes;
    if (found) rep["first"] = ids_to_json(s.solutions.front().components);
  } else {
    throw PreconditionViolated("unknown search target '" + o.search_for + "' (psi, kz, beta, alpha, nat-iso)");
  }
  rep["solutions"] = found;
  return verdict(std::move(rep), found > 0, "found", "none");
}

}  // namespace detail

inline std::string error_type(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const UnresolvedReference*>(&e)) return "UnresolvedReference";
  if (dynamic_cast<const UnknownCommand*>(&e)) return "UnknownCommand";
  if (dynamic_cast<const SearchSpaceTooLarge*>(&e)) return "SearchSpaceTooLarge";
  if (dynamic_cast<const MissingCoproduct*>(&e)) return "MissingCoproduct";
  if (dynamic_cast<const ComponentTypeMismatch*>(&e)) return "ComponentTypeMismatch";
  if (dynamic_cast<const InternalProofMismatch*>(&e)) return "InternalProofMismatch";
  if (dynamic_cast<const PreconditionViolated*>(&e)) return "PreconditionViolated";
  return "Error";
}

/// Runs one command. Module errors become an "error" report with exit code 2.
inline Outcome run(const Options& o, FixtureBundle& b) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    for (const auto& f : o.fixtures) b.load_file(f);
    if (o.command == "check")
      out = detail::run_check(o, b);
    else if (o.command == "strongify")
      out = detail::run_strongify(o, b);
    else if (o.command == "famf")
      out = detail::run_famf(o, b);
    else if (o.command == "search")
      out = detail::run_search(o, b);
    else
      throw UnknownCommand("unknown command '" + o.command + "'");
  } catch (const ValidationError& e) {
    out.report = {{"verdict", "error"}, {"error", {{"type", "ValidationError"}, {"message", e.what()}}}};
    out.report["error"]["report"] = to_json(e.report());
    out.exit_code = 2;
  } catch (const Error& e) {
    out.report = {{"verdict", "error"}, {"error", {{"type", error_type(e)}, {"message", e.what()}}}};
    out.exit_code = 2;
  }
  out.report["schema"] = 1;
  out.report["command"] = o.command;
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (o.timing) out.report["wall_ms"] = ms;
  out.report["exit_code"] = out.exit_code;
  out.wall_ms = ms;
  return out;
}

namespace detail {

inline void render(std::ostream& os, const json& j, const std::string& indent) {
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      os << indent << key << ":\n";
      render(os, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << indent << key << ": (" << v.size() << ")\n";
      for (std::size_t i = 0; i < v.size() && i < 20; ++i) {
        os << indent << "  -";
        for (const auto& [k2, v2] : v[i].items()) os << " " << k2 << "=" << v2.dump();
        os << "\n";
      }
      if (v.size() > 20) os << indent << "  ...\n";
    } else {
      os << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace detail

/// Human-readable report; the last line is the wall time of the run.
inline std::string render_text(const Outcome& out) {
  std::ostringstream os;
  os << "verdict: " << out.report.value("verdict", "?") << "\n";
  json rest = out.report;
  rest.erase("verdict");
  detail::render(os, rest, "");
  os << "wall time: " << static_cast<long long>(out.wall_ms) << " ms\n";
  return os.str();
}

}  // namespace ncanon::cli
