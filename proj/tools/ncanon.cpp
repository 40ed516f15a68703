#include <iostream>

#include "CLI11.hpp"
#include "ncanon/cli.hpp"
#include "ncanon/parallel.hpp"

int main(int argc, char** argv) {
  ncanon::cli::Options o;
  std::string report = "text";

  CLI::App app{"ncanon: exhaustive checks and constructions for monoidal functors on finite categories"};
  app.require_subcommand(1);
  app.add_option("--fixture", o.fixtures, "fixture file to load (repeatable)");
  app.add_option("--report", report, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--timing", o.timing, "include wall time in the structured report");

  auto* check = app.add_subcommand("check", "validate a fixture against its laws");
  check->add_option("--category", o.category);
  check->add_option("--monoidal", o.monoidal);
  check->add_option("--functor", o.functor);
  check->add_option("--transformation", o.transformation);
  check->add_option("--coproducts", o.coproducts);
  check->add_flag("--lax-algebra", o.lax_algebra, "also check the lax algebra / lax morphism equations");
  check->add_option("--max-word-len", o.max_word_len);

  auto* strongify = app.add_subcommand("strongify", "build or find a family psi and certify strength");
  strongify->add_option("--functor", o.functor)->required();
  auto* phi = strongify->add_option("--phi", o.phi, "binary family (twisted[:k], own, or a loaded name)");
  auto* psi = strongify->add_option("--psi", o.psi, "candidate family (loaded name or file)");
  auto* srch = strongify->add_flag("--search", o.search);
  phi->excludes(psi)->excludes(srch);
  psi->excludes(srch);
  strongify->add_flag("--literal", o.literal, "run the recursion on the binary family as given");
  strongify->add_option("--max-word-len", o.max_word_len);
  strongify->add_option("--search-bound", o.search_bound);

  auto* famf = app.add_subcommand("famf", "coproduct preservation for a functor");
  famf->add_option("--functor", o.functor)->required();
  famf->add_option("--base", o.fixtures, "fixture file with categories and coproduct choices");
  auto* alpha = famf->add_option("--alpha", o.alpha, "binary family (kappa, twisted[:k], or a loaded name)");
  auto* beta = famf->add_option("--beta", o.beta, "transformation F => F (id, beta_swap[:k], or a loaded name)");
  auto* fpsi = famf->add_option("--psi", o.psi);
  auto* fsrch = famf->add_flag("--search", o.search);
  alpha->excludes(beta)->excludes(fpsi)->excludes(fsrch);
  beta->excludes(fpsi)->excludes(fsrch);
  fpsi->excludes(fsrch);
  famf->add_flag("--literal", o.literal, "build alpha' from the binary family as given");
  famf->add_option("--max-family-len", o.max_family_len);
  famf->add_option("--search-bound", o.search_bound);

  auto* search = app.add_subcommand("search", "exhaustive searches");
  search->add_option("--functor", o.functor)->required();
  search->add_option("--for", o.search_for)->check(CLI::IsMember({"psi", "kz", "beta", "alpha", "nat-iso"}));
  search->add_option("--target", o.target, "second functor for nat-iso");
  search->add_option("--max-word-len", o.max_word_len);
  search->add_option("--max-family-len", o.max_family_len);
  search->add_option("--search-bound", o.search_bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  o.command = app.get_subcommands().front()->get_name();
  o.structured = report == "structured";

  ncanon::configure_threads_from_env();
  ncanon::FixtureBundle bundle;
  const auto out = ncanon::cli::run(o, bundle);
  if (o.structured)
    std::cout << out.report.dump(2) << "\n";
  else
    std::cout << ncanon::cli::render_text(out);
  return out.exit_code;
}
