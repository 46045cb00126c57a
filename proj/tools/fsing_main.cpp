#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "fsing/commands.hpp"
#include "fsing/error.hpp"

int main(int argc, char** argv) {
  using namespace fsing;
  CLI::App app{"F-singularity invariants over F_p: nu, test ideals, jumping numbers, Cartier maps on semigroup rings"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Options opt;
  std::string session_path;
  cli::Args a;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for randomized sweeps")->capture_default_str();
  app.add_flag("--timings", opt.timings, "Report wall-clock timings");

  auto add = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    // oracle reads its kind before the session.
    if (name == "oracle") s->add_option("kind", a.kind, "nu, eth-root, piece or transport")->required();
    if (name != "selftest") s->add_option("session", session_path, "Session file")->required();
    s->add_option("--in", a.in, "Ambient ring, R or S (default R when a subring is declared)");
    return s;
  };

  auto* nu = add("nu", "nu^a_J(p^e)");
  nu->add_option("--ideal,-J", a.ideal, "J: name, or comma-separated expressions");
  nu->add_option("--wrt", a.wrt, "a (default m)");
  nu->add_option("--e", a.e, "Level e");
  nu->add_flag("--r-presentation", a.r_presentation, "Decide containment through the presentation of R");

  auto* fpt = add("fpt", "F-pure threshold truncations nu/p^e for e = 1..e-max");
  fpt->add_option("--f", a.f, "f");
  fpt->add_option("--wrt", a.wrt, "m (default the maximal ideal)");
  fpt->add_option("--e-max", a.e_max, "Largest level");

  auto* tau = add("tau", "Test ideal tau(I^lambda)");
  tau->add_option("--ideal,-I", a.ideal, "I");
  tau->add_option("--lambda", a.lambda, "Exponent a/b");
  tau->add_option("--e-max", a.e_max, "Largest level of the chain");

  auto* jumps = add("jumps", "Level-e jumping candidates in (0, range]");
  jumps->add_option("--ideal,-I", a.ideal, "I");
  jumps->add_option("--e", a.e, "Level e");
  jumps->add_option("--range", a.range, "Upper end of the range");
  jumps->add_flag("--refine", a.refine, "Compare with level e+1");

  auto* summand = add("summand", "Filter S candidates through the summand R");
  summand->add_option("--ideal,-I", a.ideal, "I (generators in R)");
  summand->add_option("--e", a.e, "Level e");
  summand->add_option("--range", a.range, "Upper end of the range");

  auto* cyclic = add("cyclic", "Witness e' for f^(q'-q) in D^(e') f^(q'-1)");
  cyclic->add_option("--f", a.f, "f");
  cyclic->add_option("--e", a.e, "Level e");
  cyclic->add_option("--e-max", a.e_max, "Largest e' tried");

  auto* cartier = add("cartier", "Cartier image C^e J");
  cartier->add_option("--ideal,-J", a.ideal, "J");
  cartier->add_option("--e", a.e, "Level e");

  auto* bs = add("bs-check", "b(nu) = 0 mod p checks");
  bs->add_option("--b", a.b, "b-polynomial in s");
  bs->add_option("--key", a.key, "Catalog key");
  bs->add_option("--catalog", a.catalog, "Catalog file (default: built-in entries)");
  bs->add_option("--f", a.f, "f");
  bs->add_option("--wrt", a.wrt, "a (default m)");
  bs->add_option("--e", a.e, "Level, or range lo..hi in threshold mode");
  bs->add_option("--nu", a.nu, "Exponent range lo..hi in jump mode");
  bs->add_flag("--jump", a.jump, "Check at the exponents where the level ideal drops");
  bs->add_flag("--divisibility", a.divisibility, "Check b_R | b_S for every catalog pair");

  auto* orc = add("oracle", "Brute-force reference computations");
  orc->add_option("--f", a.f, "f");
  orc->add_option("--ideal", a.ideal, "Ideal");
  orc->add_option("--wrt", a.wrt, "Monomial ideal a (default mS)");
  orc->add_option("--e", a.e, "Level e");
  orc->add_option("--w", a.w, "Shift vector, e.g. [0,-2]");
  orc->add_option("--box", a.box, "Solver box");

  add("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kInvalid;
  }

  std::string command = app.get_subcommands().front()->get_name();
  std::unique_ptr<Session> session;
  if (command != "selftest") {
    try {
      session = std::make_unique<Session>(load_session(session_path));
    } catch (const Error& e) {
      auto r = cli::error_report(command, cli::kInvalid, e.what());
      std::cout << cli::render(r, opt.format);
      std::cerr << e.what() << "\n";
      return r.exit_code;
    }
  }
  auto report = cli::run(command, session.get(), a, opt);
  std::cout << cli::render(report, opt.format);
  if (report.json.contains("error")) std::cerr << report.json["error"].get<std::string>() << "\n";
  return report.exit_code;
}
