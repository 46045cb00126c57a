#include "fsing/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "fsing/cartier.hpp"
#include "fsing/error.hpp"
#include "fsing/oracle.hpp"
#include "fsing/selftest.hpp"

namespace fsing::cli {

using json = nlohmann::ordered_json;

namespace {

struct Range {
  std::uint64_t lo, hi;
};

std::uint64_t parse_count(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw DomainError(what + " must be a nonnegative integer, got '" + s + "'");
  return std::stoull(s);
}

unsigned parse_level(const std::string& s, unsigned fallback, const std::string& what) {
  if (s.empty()) return fallback;
  auto v = parse_count(s, what);
  if (v == 0 || v > 12) throw DomainError(what + " must be in 1..12");
  return static_cast<unsigned>(v);
}

// "3" or "1..3".
Range parse_range(const std::string& s, Range fallback, const std::string& what) {
  if (s.empty()) return fallback;
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto v = parse_count(s, what);
    return {v, v};
  }
  Range r{parse_count(s.substr(0, dots), what), parse_count(s.substr(dots + 2), what)};
  if (r.hi < r.lo) throw DomainError(what + " range is empty");
  return r;
}

IntVec parse_vector(const std::string& s) {
  std::string body = s;
  if (!body.empty() && body.front() == '[') body = body.substr(1);
  if (!body.empty() && body.back() == ']') body.pop_back();
  IntVec v;
  std::istringstream in(body);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(part, &used));
      if (part.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw DomainError("cannot read '" + s + "' as an integer vector");
    }
  }
  return v;
}

json strings(const Gens& g) {
  json a = json::array();
  for (const auto& p : g) {
    auto text = p.to_string();
    if (std::find(a.begin(), a.end(), text) == a.end()) a.push_back(text);
  }
  return a;
}

json fractions(const std::vector<Fraction>& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(f.to_string());
  return a;
}

const std::string& pick(const std::string& a, const std::string& b, const std::string& what) {
  if (!a.empty()) return a;
  if (!b.empty()) return b;
  throw DomainError("missing --" + what);
}

bool is_monomial_ideal(const Gens& a) {
  return std::all_of(a.begin(), a.end(), [](const Polynomial& g) { return g.terms().size() == 1; });
}

const SplitEmbedding& need_subring(const Session& s, const std::string& command) {
  if (!s.emb) throw DomainError(command + " needs a session with a subring");
  return *s.emb;
}

struct Ctx {
  const Session& s;
  const Args& a;
  json inputs = json::object();
  json result = json::object();
  json certs = json::object();
  int exit = kOk;

  void flag(int code) {
    // Violations outrank inconclusive results.
    if (code == kViolation || exit == kOk) exit = code;
  }
};

void cmd_nu(Ctx& c) {
  Where where = c.s.where(c.a.in);
  const std::string& jref = pick(c.a.ideal, c.a.f, "ideal");
  std::string aref = c.a.wrt.empty() ? "m" : c.a.wrt;
  Gens J = c.s.ideal(jref, where), A = c.s.ideal(aref, where);
  unsigned e = parse_level(c.a.e, 1, "e");
  c.inputs["ideal"] = strings(J);
  c.inputs["wrt"] = strings(A);
  c.inputs["e"] = e;
  NuOptions opt;
  opt.r_presentation = c.a.r_presentation;
  auto r = nu(J, A, e, where, opt);
  c.result["value"] = r.value;
  c.result["ratio"] = r.ratio.to_string();
  c.result["q"] = r.q;
  c.certs["bounds_checked"] = r.bounds_checked;
  c.certs["search_bound"] = r.seed;
  c.certs["membership_ring"] = where.in_r() && opt.r_presentation ? "presentation" : "S";
  json oc;
  if (J.size() == 1 && is_monomial_ideal(A)) {
    try {
      auto v = oracle::nu_dense(J[0], A, e);
      oc["status"] = v == r.value ? "agree" : "disagree";
      oc["value"] = v;
      if (v != r.value) c.flag(kViolation);
    } catch (const ResourceBound&) {
      oc["status"] = "skipped";
    }
  } else {
    oc["status"] = "not applicable";
  }
  c.certs["oracle"] = oc;
}

void cmd_fpt(Ctx& c) {
  Where where = c.s.where(c.a.in);
  Polynomial f = c.s.poly(pick(c.a.f, c.a.ideal, "f"));
  Gens m = c.s.ideal(c.a.wrt.empty() ? "m" : c.a.wrt, where);
  unsigned e_max = parse_level(c.a.e_max.empty() ? c.a.e : c.a.e_max, c.s.config.e_max, "e-max");
  c.inputs["f"] = f.to_string();
  c.inputs["wrt"] = strings(m);
  c.inputs["e_max"] = e_max;
  auto t = fpt_truncation(f, m, e_max, where);
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back({{"e", s.e}, {"nu", s.nu}, {"ratio", s.ratio.to_string()}});
  c.result["steps"] = steps;
  c.result["estimate"] = t.steps.back().ratio.to_string();
  c.certs["monotone"] = t.monotone;
  if (!t.monotone) c.flag(kViolation);
}

void cmd_tau(Ctx& c) {
  Where where = c.s.where(c.a.in);
  Gens I = c.s.ideal(pick(c.a.ideal, c.a.f, "ideal"), where);
  Fraction lambda = parse_fraction(c.a.lambda.empty() ? "1" : c.a.lambda);
  unsigned e_max = parse_level(c.a.e_max, c.s.config.e_max, "e-max");
  c.inputs["ideal"] = strings(I);
  c.inputs["lambda"] = lambda.to_string();
  c.inputs["e_max"] = e_max;
  auto t = test_ideal(I, lambda, e_max, where);
  c.result["tau"] = strings(t.tau);
  c.result["stabilized"] = t.stabilized;
  json chain = json::array();
  for (const auto& g : t.chain) chain.push_back(strings(g));
  c.result["chain"] = chain;
  c.certs["stabilization_level"] = t.stabilized ? json(t.e_star) : json(nullptr);
  c.certs["ascending"] = t.ascending;
  c.certs["maps_stable"] = t.maps_stable;
  if (!t.ascending) c.flag(kViolation);
  if (!t.stabilized || !t.maps_stable) c.flag(kInconclusive);
}

json spectrum_json(const JumpSpectrum& js) {
  json cands = json::array();
  for (const auto& k : js.candidates)
    cands.push_back({{"lambda", k.lambda.to_string()}, {"a", k.a}, {"before", strings(k.before)}, {"after", strings(k.after)}});
  return cands;
}

void cmd_jumps(Ctx& c) {
  Where where = c.s.where(c.a.in);
  Gens I = c.s.ideal(pick(c.a.ideal, c.a.f, "ideal"), where);
  unsigned e = parse_level(c.a.e, 1, "e");
  Fraction range = parse_fraction(c.a.range.empty() ? "1" : c.a.range);
  c.inputs["ideal"] = strings(I);
  c.inputs["e"] = e;
  c.inputs["range"] = range.to_string();
  auto js = jump_spectrum(I, e, range, where, c.a.refine);
  c.result["lambdas"] = fractions(js.lambdas());
  c.result["candidates"] = spectrum_json(js);
  c.certs["maps_stable"] = js.maps_stable;
  if (js.next_level) {
    c.certs["next_level"] = fractions(*js.next_level);
    c.certs["refinement_consistent"] = js.refinement_consistent;
    if (!js.refinement_consistent) c.flag(kInconclusive);
  }
  if (!js.maps_stable) c.flag(kInconclusive);
}

void cmd_summand(Ctx& c) {
  const auto& emb = need_subring(c.s, "summand");
  Gens I = c.s.ideal(pick(c.a.ideal, c.a.f, "ideal"), Where::R(emb));
  unsigned e = parse_level(c.a.e, 1, "e");
  Fraction range = parse_fraction(c.a.range.empty() ? "1" : c.a.range);
  c.inputs["ideal"] = strings(I);
  c.inputs["e"] = e;
  c.inputs["range"] = range.to_string();
  auto s_js = jump_spectrum(I, e, range, Where::S());
  auto r_js = jump_spectrum(I, e, range, Where::R(emb));
  auto rep = summand_filter(I, emb, e, s_js);
  auto s_l = s_js.lambdas(), r_l = r_js.lambdas();
  c.result["s_candidates"] = fractions(s_l);
  c.result["r_candidates"] = fractions(r_l);
  json verdicts = json::array();
  for (const auto& v : rep.verdicts) verdicts.push_back({{"lambda", v.lambda.to_string()}, {"survives", v.survives}});
  c.result["verdicts"] = verdicts;
  c.result["survivors"] = fractions(rep.survivors);
  bool contained = std::all_of(r_l.begin(), r_l.end(),
                               [&](const Fraction& x) { return std::find(s_l.begin(), s_l.end(), x) != s_l.end(); });
  bool fpt_order = r_l.empty() || (!s_l.empty() && s_l.front() <= r_l.front());
  bool filter_agrees = rep.survivors == r_l;
  c.certs["r_within_s"] = contained;
  c.certs["fpt_order"] = fpt_order;
  c.certs["filter_matches_r_spectrum"] = filter_agrees;
  c.certs["maps_stable"] = r_js.maps_stable;
  if (!contained || !fpt_order || !filter_agrees) c.flag(kViolation);
  if (!r_js.maps_stable) c.flag(kInconclusive);
}

void cmd_cyclic(Ctx& c) {
  Where where = c.s.where(c.a.in);
  Polynomial f = c.s.poly(pick(c.a.f, c.a.ideal, "f"));
  unsigned e = parse_level(c.a.e, 1, "e");
  unsigned e_max = parse_level(c.a.e_max, std::max(e, c.s.config.e_max), "e-max");
  c.inputs["f"] = f.to_string();
  c.inputs["e"] = e;
  c.inputs["e_max"] = e_max;
  auto w = cyclic_witness(f, e, e_max, where);
  c.result["verified"] = w.verified;
  c.result["e_prime"] = w.verified ? json(w.e_prime) : json(nullptr);
  c.certs["identity"] = "f^(q'-q) in D^(e')(f^(q'-1))";
  c.certs["decided_in"] = "S";
  if (!w.verified) c.flag(kInconclusive);
}

void cmd_cartier(Ctx& c) {
  Where where = c.s.where(c.a.in);
  Gens J = c.s.ideal(pick(c.a.ideal, c.a.f, "ideal"), where);
  unsigned e = parse_level(c.a.e, 1, "e");
  c.inputs["ideal"] = strings(J);
  c.inputs["e"] = e;
  if (!where.in_r()) {
    auto root = eth_root(Ideal(c.s.ring, J), FrobeniusContext(c.s.ring, e));
    c.result["image"] = strings(root.gens());
    return;
  }
  const auto& emb = *where.emb;
  auto img = cartier_image(J, emb, e);
  c.result["image"] = strings(img.image);
  c.result["maps"] = img.maps;
  c.certs["window"] = img.window;
  c.certs["stable"] = img.stable;
  c.certs["purity_box"] = emb.certificate().box;
  // β(C^e_S(JS)) must land inside the image.
  auto root = eth_root(Ideal(c.s.ring, J), FrobeniusContext(c.s.ring, e));
  Gens lower;
  bool in_box = true;
  for (const auto& g : root.gens()) {
    try {
      auto b = beta_project(g, emb);
      if (!b.is_zero()) lower.push_back(b);
    } catch (const ResourceBound&) {
      in_box = false;
    }
  }
  bool contains = r_ideal_contains(img.image, lower, emb);
  c.certs["beta_containment"] = in_box ? json(contains) : json("partial");
  if (!contains) c.flag(kViolation);
  if (emb.presentation().toric.gens().empty()) {
    oracle::TransportIso T(emb);
    auto expect = T.backward(eth_root(T.forward(J), FrobeniusContext(T.target(), e)));
    bool agree = r_ideal_equal(img.image, expect, emb);
    c.certs["transport"] = agree ? "agree" : "disagree";
    if (!agree) c.flag(kViolation);
  } else {
    c.certs["transport"] = "not applicable";
  }
  if (!img.stable) c.flag(kInconclusive);
}

void cmd_bs_check(Ctx& c) {
  Catalog file_catalog;
  const Catalog* catalog = &builtin_catalog();
  if (!c.a.catalog.empty()) {
    std::ifstream in(c.a.catalog);
    if (!in) throw DomainError("cannot open catalog " + c.a.catalog);
    file_catalog = load_catalog(in, c.a.catalog);
    catalog = &file_catalog;
  }
  if (c.a.divisibility) {
    json pairs = json::array();
    bool all = true;
    for (const auto& k : catalog_pairs(*catalog)) {
      const auto& bR = catalog->at(k + ":R");
      const auto& bS = catalog->at(k + ":S");
      bool d = divides(bR, bS);
      all = all && d;
      pairs.push_back({{"key", k}, {"b_R", bR.to_string()}, {"b_S", bS.to_string()}, {"divides", d}});
    }
    c.inputs["mode"] = "divisibility";
    c.result["pairs"] = pairs;
    c.result["verdict"] = all ? "pass" : "fail";
    if (!all) c.flag(kViolation);
    return;
  }

  std::optional<BPolynomial> b;
  if (!c.a.b.empty()) {
    b = BPolynomial::parse(c.a.b, "command line");
  } else if (!c.a.key.empty()) {
    auto it = catalog->find(c.a.key);
    if (it == catalog->end()) throw DomainError("no catalog entry '" + c.a.key + "'");
    b = it->second;
  } else {
    throw DomainError("missing --b or --key");
  }
  Where where = c.s.where(c.a.in);
  Polynomial f = c.s.poly(pick(c.a.f, c.a.ideal, "f"));
  std::uint32_t m_floor = c.s.config.m_floor;
  c.inputs["b"] = b->to_string();
  c.inputs["provenance"] = b->provenance();
  c.inputs["f"] = f.to_string();
  BCheckReport rep;
  if (c.a.jump) {
    unsigned e = parse_level(c.a.e, 1, "e");
    auto q = prime_power(c.s.ring->p(), e);
    Range nr = parse_range(c.a.nu, {0, q}, "nu");
    c.inputs["mode"] = "jump";
    c.inputs["e"] = e;
    c.inputs["nu"] = std::to_string(nr.lo) + ".." + std::to_string(nr.hi);
    rep = bs_jump_check(*b, f, e, nr.lo, nr.hi, where, m_floor);
  } else {
    Gens a = c.s.ideal(c.a.wrt.empty() ? "m" : c.a.wrt, where);
    Range er = parse_range(c.a.e, {1, c.s.config.e_max}, "e");
    if (er.lo == 0 || er.hi > 12) throw DomainError("e must be in 1..12");
    c.inputs["mode"] = "threshold";
    c.inputs["wrt"] = strings(a);
    c.inputs["e"] = std::to_string(er.lo) + ".." + std::to_string(er.hi);
    rep = bs_threshold_check(*b, f, a, static_cast<unsigned>(er.lo), static_cast<unsigned>(er.hi), where, m_floor);
  }
  c.result["b_mod_p"] = reduce_mod_p(*b, c.s.ring->p()).to_string();
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"e", e.e}, {"nu", e.nu}, {"residue", e.residue}, {"verdict", e.verdict}});
  c.result["entries"] = entries;
  std::string verdict = rep.any_fail() ? "fail" : rep.all_pass() ? "pass" : "inconclusive-small-p";
  c.result["verdict"] = verdict;
  c.certs["m_floor"] = m_floor;
  c.certs["where"] = rep.where;
  if (verdict == "fail") c.flag(kViolation);
  if (verdict == "inconclusive-small-p") c.flag(kInconclusive);
}

void cmd_oracle(Ctx& c) {
  const std::string kind = c.a.kind.empty() ? "nu" : c.a.kind;
  c.inputs["kind"] = kind;
  unsigned e = parse_level(c.a.e, 1, "e");
  c.inputs["e"] = e;
  if (kind == "nu") {
    Polynomial f = c.s.poly(pick(c.a.f, c.a.ideal, "f"));
    Gens a = c.s.ideal(c.a.wrt.empty() ? "mS" : c.a.wrt, Where::S());
    c.inputs["f"] = f.to_string();
    c.inputs["wrt"] = strings(a);
    auto v = oracle::nu_dense(f, a, e);
    auto main = nu({f}, a, e, Where::S()).value;
    c.result["value"] = v;
    c.certs["main_path"] = main;
    c.certs["agree"] = v == main;
    if (v != main) c.flag(kViolation);
  } else if (kind == "eth-root") {
    Gens I = c.s.ideal(pick(c.a.ideal, c.a.f, "ideal"), Where::S());
    c.inputs["ideal"] = strings(I);
    Ideal dense = oracle::eth_root_dense(Ideal(c.s.ring, I), e);
    bool agree = ideal_equal(dense, eth_root(Ideal(c.s.ring, I), FrobeniusContext(c.s.ring, e)));
    c.result["root"] = strings(dense.gens());
    c.certs["agree"] = agree;
    if (!agree) c.flag(kViolation);
  } else if (kind == "piece") {
    const auto& emb = need_subring(c.s, "oracle piece");
    IntVec w = parse_vector(c.a.w);
    if (w.size() != c.s.ring->n()) throw DomainError("--w needs one entry per ring variable");
    std::int64_t box = c.a.box.empty() ? 8 : static_cast<std::int64_t>(parse_count(c.a.box, "box"));
    c.inputs["w"] = w;
    c.inputs["box"] = box;
    auto sol = oracle::cartier_piece_solver(emb, e, w, box);
    auto main = graded_map(emb, e, w);
    c.result["dimension"] = sol.dimension;
    json basis = json::array();
    for (const auto& v : sol.basis) {
      json vec = json::array();
      for (const auto& [node, coeff] : v) vec.push_back({{"node", node}, {"coeff", coeff}});
      basis.push_back(vec);
    }
    c.result["basis"] = basis;
    bool agree = sol.dimension == (main ? 1u : 0u);
    c.certs["main_path_dimension"] = main ? 1 : 0;
    c.certs["agree"] = agree;
    if (!agree) c.flag(kViolation);
  } else if (kind == "transport") {
    const auto& emb = need_subring(c.s, "oracle transport");
    oracle::TransportIso T(emb);
    Gens J = c.s.ideal(pick(c.a.f, c.a.ideal, "f"), Where::R(emb));
    c.inputs["f"] = strings(J);
    json out = json::array();
    bool round = true;
    for (const auto& g : J) {
      auto t = T.forward(g);
      round = round && T.backward(t) == g;
      out.push_back(t.to_string());
    }
    json vars = json::array();
    for (const auto& v : T.target()->vars()) vars.push_back(v);
    c.result["variables"] = vars;
    c.result["image"] = out;
    c.certs["round_trip"] = round;
    if (!round) c.flag(kViolation);
  } else {
    throw DomainError("unknown oracle kind '" + kind + "' (nu, eth-root, piece, transport)");
  }
}

json session_inputs(const Session& s) {
  json in;
  in["session"] = s.source;
  in["prime"] = s.ring->p();
  in["ring"] = s.ring->vars();
  in["subring"] = s.emb ? json(s.subring) : json(nullptr);
  return in;
}

}  // namespace

Report error_report(const std::string& command, int exit_code, const std::string& message) {
  Report r;
  r.exit_code = exit_code;
  r.json["command"] = command;
  r.json["inputs"] = json::object();
  r.json["result"] = json::object();
  r.json["certificates"] = json::object();
  r.json["timings"] = json::object();
  r.json["error"] = message;
  return r;
}

Report run(const std::string& command, const Session* session, const Args& args, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  try {
    if (command == "selftest") {
      Report r;
      r.json["command"] = command;
      r.json["inputs"] = {{"seed", opt.seed}};
      json crit = json::array();
      json times = json::object();
      bool all = true;
      for (const auto& c : run_acceptance(opt.seed)) {
        all = all && c.passed;
        crit.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        times[std::to_string(c.id)] = c.seconds;
      }
      r.json["result"] = {{"criteria", crit}, {"passed", all}};
      r.json["certificates"] = {{"criteria_run", kCriteria}};
      r.json["timings"] = opt.timings ? times : json::object();
      r.exit_code = all ? kOk : kViolation;
      return r;
    }
    static const std::vector<std::string> known{"nu",      "fpt",     "tau",      "jumps",  "summand",
                                                "cyclic",  "cartier", "bs-check", "oracle"};
    if (std::find(known.begin(), known.end(), command) == known.end())
      return error_report(command, kInvalid, "unknown command '" + command + "'");
    if (!session) return error_report(command, kInvalid, command + " needs a session file");

    auto& limits = groebner_limits();
    limits.max_basis = session->config.max_basis;
    limits.max_degree = session->config.max_degree;

    Ctx c{*session, args};
    c.inputs = session_inputs(*session);
    if (command == "nu") cmd_nu(c);
    else if (command == "fpt") cmd_fpt(c);
    else if (command == "tau") cmd_tau(c);
    else if (command == "jumps") cmd_jumps(c);
    else if (command == "summand") cmd_summand(c);
    else if (command == "cyclic") cmd_cyclic(c);
    else if (command == "cartier") cmd_cartier(c);
    else if (command == "bs-check") cmd_bs_check(c);
    else cmd_oracle(c);

    if (command != "bs-check" || !c.inputs.contains("mode") || c.inputs["mode"] != "divisibility") {
      if (!c.inputs.contains("where")) c.inputs["where"] = session->where(args.in).tag();
    }
    c.certs["purity_box"] = session->emb ? json(session->emb->certificate().box) : json(nullptr);

    Report r;
    r.exit_code = c.exit;
    r.json["command"] = command;
    r.json["inputs"] = c.inputs;
    r.json["result"] = c.result;
    r.json["certificates"] = c.certs;
    json t = json::object();
    if (opt.timings)
      t["total_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.json["timings"] = t;
    return r;
  } catch (const ResourceBound& e) {
    return error_report(command, kResource, e.what());
  } catch (const OverflowError& e) {
    return error_report(command, kResource, e.what());
  } catch (const ParseError& e) {
    return error_report(command, kInvalid, e.what());
  } catch (const DomainError& e) {
    return error_report(command, kInvalid, e.what());
  } catch (const RingMismatch& e) {
    return error_report(command, kInvalid, e.what());
  } catch (const PurityRejected& e) {
    return error_report(command, kInvalid, e.what());
  } catch (const SessionError& e) {
    return error_report(command, kInvalid, e.what());
  } catch (const Error& e) {
    // Internal consistency checks (post-hoc bounds and the like).
    return error_report(command, kViolation, e.what());
  }
}

namespace {

void render_text(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); })) {
    out << prefix << ": ";
    bool first = true;
    for (const auto& x : j) {
      out << (first ? "" : ", ") << (x.is_string() ? x.get<std::string>() : x.dump());
      first = false;
    }
    out << "\n";
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

std::string render(const Report& r, const std::string& format) {
  if (format == "text") {
    std::ostringstream out;
    render_text(r.json, "", out);
    return out.str();
  }
  return r.json.dump(2) + "\n";
}

}  // namespace fsing::cli
