// groupalg: command-line frontend for the groupoid algebra toolkit.
//
// Subcommands mirror the library modules: groupoid, algebra, oracle, sgrp,
// paction, graph, selfsim, roe.  Exit codes: 0 analysis completed
// (regardless of verdicts), 1 input validation failure, 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <groupalg/algebra_analysis.hpp>
#include <groupalg/coarse.hpp>
#include <groupalg/graph.hpp>
#include <groupalg/groupoid.hpp>
#include <groupalg/inverse_semigroup.hpp>
#include <groupalg/json_io.hpp>
#include <groupalg/partial_action.hpp>
#include <groupalg/random_gen.hpp>
#include <groupalg/self_similar.hpp>

namespace {

using namespace groupalg;

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  int depth = 10;
};

class Reporter {
 public:
  Reporter(std::string command, bool json_mode)
      : json_mode_(json_mode), start_(std::chrono::steady_clock::now()) {
    report_["schema"] = "groupalg/1";
    report_["command"] = std::move(command);
    report_["checks"] = Json::array();
  }

  void input(std::string const& path, std::string const& contents) {
    // FNV-1a digest of the raw input bytes
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : contents) {
      h ^= c;
      h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    report_["input"] = {{"path", path}, {"digest", os.str()}};
  }

  void check(std::string const& name, Verdict const& v) {
    Json c = {{"name", name},
              {"verdict", v.value},
              {"reason", v.reason},
              {"witness", v.witness}};
    report_["checks"].push_back(c);
    if (!json_mode_)
      std::cout << name << ": " << (v.value ? "yes" : "no")
                << (v.reason.empty() ? "" : " (" + v.reason + ")") << "\n";
  }

  void check(std::string const& name, bool v, std::string const& reason = "") {
    check(name, v ? yes(reason) : no(reason));
  }

  void value(std::string const& name, Json const& v) {
    report_["values"][name] = v;
    if (!json_mode_) std::cout << name << ": " << v.dump() << "\n";
  }

  void text(std::string const& line) {
    if (!json_mode_) std::cout << line << "\n";
  }

  void payload(std::string const& name, Json const& v) {
    report_[name] = v;
    if (!json_mode_) std::cout << v.dump(2) << "\n";
  }

  int finish() {
    auto dt = std::chrono::steady_clock::now() - start_;
    report_["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    if (json_mode_) std::cout << report_.dump(2) << "\n";
    return 0;
  }

  int fail(std::string const& why, ValidationReport const& rep = {}) {
    report_["error"] = why;
    for (auto const& is : rep.issues)
      report_["issues"].push_back({{"rule", is.rule},
                                   {"witness", is.witness}});
    if (json_mode_) {
      std::cout << report_.dump(2) << "\n";
    } else {
      std::cerr << "error: " << why << "\n";
      for (auto const& is : rep.issues) {
        std::cerr << "  " << is.rule;
        if (!is.witness.empty()) {
          std::cerr << " [";
          for (size_t i = 0; i < is.witness.size(); ++i)
            std::cerr << (i ? ", " : "") << is.witness[i];
          std::cerr << "]";
        }
        std::cerr << "\n";
      }
    }
    return 1;
  }

 private:
  Json report_;
  bool json_mode_;
  std::chrono::steady_clock::time_point start_;
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("--in", "cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "unknown";
  }
}

std::string graph_kind_name(GraphVerdict k) {
  switch (k) {
    case GraphVerdict::simple_purely_infinite: return "simple_purely_infinite";
    case GraphVerdict::simple_af: return "simple_af";
    default: return "not_simple";
  }
}

int run_groupoid(Options const& opt, std::string const& path) {
  Reporter rep("groupoid", opt.json);
  std::string raw = read_file(path);
  rep.input(path, raw);
  FiniteGroupoid g;
  try {
    g = groupoid_from_json(Json::parse(raw));
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  auto val = validate(g);
  if (!val.ok()) return rep.fail("groupoid axioms fail", val);
  rep.value("arrows", g.n);
  rep.value("units", static_cast<int>(g.units().size()));
  rep.check("topologically_free", is_topologically_free(g));
  rep.check("effective", is_effective(g));
  rep.check("principal", is_principal(g));
  rep.check("topologically_principal", is_topologically_principal(g));
  rep.check("minimal", is_minimal(g));
  rep.check("hausdorff", is_hausdorff(g));
  return rep.finish();
}

int run_oracle(Options const& opt, std::string const& gpath,
               std::string const& cpath, std::string const& chk) {
  Reporter rep("oracle", opt.json);
  std::string raw = read_file(gpath);
  rep.input(gpath, raw);
  FiniteGroupoid g;
  TwoCocycle<Cx> sigma;
  try {
    g = groupoid_from_json(Json::parse(raw));
    sigma = cpath.empty()
                ? TwoCocycle<Cx>::trivial_on(g)
                : cocycle_from_json(Json::parse(read_file(cpath)), g);
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  auto val = validate(g);
  if (!val.ok()) return rep.fail("groupoid axioms fail", val);
  try {
    auto cval = validate_cocycle(sigma);
    if (!cval.ok()) return rep.fail("cocycle invalid", cval);
  } catch (std::exception const& e) {
    return rep.fail(std::string("cocycle invalid: ") + e.what());
  }
  auto alg = from_groupoid(g, sigma);
  if (chk == "simple" || chk == "crosscheck") {
    auto s = is_simple_burnside(alg);
    rep.check("simple", s.simple, s.reason);
  }
  if (chk == "maxabelian" || chk == "crosscheck")
    rep.check("diagonal_maximal_abelian",
              is_maximal_abelian(alg, diagonal_subspace(g)));
  if (chk == "crosscheck") {
    auto tf = is_topologically_free(g);
    auto mn = is_minimal(g);
    rep.check("topologically_free", tf);
    rep.check("minimal", mn);
    bool lhs = is_simple_burnside(alg).simple &&
               is_maximal_abelian(alg, diagonal_subspace(g));
    bool rhs = tf.value && mn.value;
    rep.check("agreement", lhs == rhs,
              "simple & maximal abelian diagonal vs topologically free & "
              "minimal");
  }
  return rep.finish();
}

int run_algebra(Options const& opt, std::string const& gpath,
                std::string const& cpath, std::string const& epath,
                std::string const& op) {
  Reporter rep("algebra", opt.json);
  std::string raw = read_file(gpath);
  rep.input(gpath, raw);
  FiniteGroupoid g;
  TwoCocycle<Cx> sigma;
  ConvElement<Cx> f;
  try {
    g = groupoid_from_json(Json::parse(raw));
    sigma = cpath.empty()
                ? TwoCocycle<Cx>::trivial_on(g)
                : cocycle_from_json(Json::parse(read_file(cpath)), g);
    auto val = validate(g);
    if (!val.ok()) return rep.fail("groupoid axioms fail", val);
    auto cval = validate_cocycle(sigma);
    if (!cval.ok()) return rep.fail("cocycle invalid", cval);
    if (epath.empty()) {
      Rng rng(opt.seed);
      f = random_element<Cx>(rng, g);
      rep.text("using a random element (fix with --seed)");
    } else {
      f = element_from_json(Json::parse(read_file(epath)), g);
    }
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  double inf = std::numeric_limits<double>::infinity();
  if (op == "norms") {
    rep.value("sup", norm(f, NormKind::sup));
    rep.value("star_d", norm(f, NormKind::star_d));
    rep.value("star_r", norm(f, NormKind::star_r));
    rep.value("I", norm(f, NormKind::I));
    auto m = regular_rep(f, sigma);
    rep.value("op_norm_p1", operator_norm(m, 1.0));
    rep.value("op_norm_p2", operator_norm(m, 2.0));
    rep.value("op_norm_pinf", operator_norm(m, inf));
  } else if (op == "rep") {
    auto m = regular_rep(f, sigma);
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
      Json row = Json::array();
      for (int j = 0; j < m.cols; ++j)
        row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(row);
    }
    rep.payload("regular_rep", rows);
  } else {  // expect
    auto ef = expectation_restrict(f, g.units());
    Json coeffs = Json::object();
    for (Arrow a : g.units())
      coeffs[g.label(a)] = {ef[a].real(), ef[a].imag()};
    rep.payload("expectation", coeffs);
    double lhs = norm(ef, NormKind::sup);
    rep.value("expectation_sup", lhs);
    auto m = regular_rep(f, sigma);
    for (double p : {1.0, 2.0, inf}) {
      double on = operator_norm(m, p);
      rep.check("dominated_p" + std::string(p == 1.0 ? "1"
                                            : p == 2.0 ? "2" : "inf"),
                lhs <= on + 1e-9);
    }
  }
  return rep.finish();
}

int run_sgrp(Options const& opt, std::string const& path,
             std::string const& chk) {
  Reporter rep("sgrp", opt.json);
  std::string raw = read_file(path);
  rep.input(path, raw);
  FiniteInverseSemigroup s;
  try {
    s = semigroup_from_json(Json::parse(raw));
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  auto val = validate_semigroup(s);
  if (!val.ok()) return rep.fail("inverse semigroup axioms fail", val);
  try {
    s.finalize();
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  rep.value("elements", s.m);
  rep.value("idempotents", static_cast<int>(s.idempotents.size()));
  rep.value("tight_filters", static_cast<int>(tight_filters(s).size()));
  if (chk.empty() || chk == "closed") rep.check("closed", is_closed_s(s));
  if (chk.empty() || chk == "topfree")
    rep.check("topologically_free", is_topologically_free_s(s));
  if (chk.empty() || chk == "minimal") rep.check("minimal", is_minimal_s(s));
  if (chk.empty() || chk == "loccontract")
    rep.check("locally_contracting", is_locally_contracting_s(s));
  if (chk == "tight-groupoid") {
    auto tg = tight_groupoid(s);
    rep.payload("tight_groupoid", groupoid_to_json(tg.g));
  }
  return rep.finish();
}

int run_paction(Options const& opt, std::string const& path,
                std::string const& chk, bool emit, int nfill) {
  Reporter rep("paction", opt.json);
  std::string raw = read_file(path);
  rep.input(path, raw);
  PartialActionInput in;
  try {
    in = paction_from_json(Json::parse(raw));
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  auto val = validate_action(in.pa);
  if (!val.ok()) return rep.fail("partial action axioms fail", val);
  if (in.u) {
    auto uval = validate_action_cocycle(in.pa, *in.u);
    if (!uval.ok()) return rep.fail("action cocycle invalid", uval);
  }
  if (emit) {
    auto tg = transformation_groupoid(in.pa);
    Json out;
    out["groupoid"] = groupoid_to_json(tg.g);
    if (in.u) {
      auto sigma = induced_cocycle(in.pa, *in.u, tg);
      Json values = Json::array();
      for (Arrow a = 0; a < tg.g.n; ++a)
        for (Arrow b = 0; b < tg.g.n; ++b)
          if (tg.g.composable(a, b) && sigma.at(a, b) != Cx{1})
            values.push_back({tg.g.label(a), tg.g.label(b),
                              sigma.at(a, b).real(), sigma.at(a, b).imag()});
      out["cocycle"] = {{"values", values}};
    }
    rep.payload("transformation_groupoid", out);
    return rep.finish();
  }
  if (chk.empty() || chk == "topfree")
    rep.check("topologically_free", is_topologically_free_pa(in.pa));
  if (chk.empty() || chk == "minimal")
    rep.check("minimal", is_minimal_pa(in.pa));
  if (chk.empty() || chk == "nfilling") {
    auto nf = is_n_filling_pa(in.pa, nfill);
    rep.check("n_filling_cover", nf.cover_condition);
    rep.check("n_filling", nf.full);
  }
  if (chk.empty() || chk == "localboundary") {
    auto lb = is_local_boundary_pa(in.pa);
    rep.check("local_boundary", lb.verdict);
  }
  return rep.finish();
}

int run_graph(Options const& opt, std::string const& path) {
  Reporter rep("graph", opt.json);
  std::string raw = read_file(path);
  rep.input(path, raw);
  DirectedGraph q;
  try {
    if (!path.empty() && path.size() >= 5 &&
        path.substr(path.size() - 5) == ".json")
      q = graph_from_json(Json::parse(raw));
    else
      q = parse_dot(raw);
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  auto val = validate_graph(q);
  if (!val.ok()) return rep.fail("graph invalid", val);
  auto v = simplicity_verdict(q);
  rep.check("every_cycle_has_entry", v.cycles_have_entries);
  rep.check("cofinal", v.cofinal);
  rep.value("verdict", graph_kind_name(v.kind));
  return rep.finish();
}

int run_selfsim(Options const& opt, std::string const& path) {
  Reporter rep("selfsim", opt.json);
  std::string raw = read_file(path);
  rep.input(path, raw);
  SelfSimilarAction a;
  try {
    a = selfsim_from_json(Json::parse(raw));
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  auto val = validate_action_ss(a);
  if (!val.ok()) return rep.fail("self-similar action invalid", val);
  auto cval = validate_cocycle_identities(a);
  if (!cval.ok()) return rep.fail("restriction identities fail", cval);
  auto v = verdict(a, opt.depth);
  rep.check("cofinal", v.cofinal);
  rep.check("every_cycle_has_entry", v.cycles_have_entries);
  rep.value("fixing_implies_slack", tri_name(v.fixing_implies_slack));
  rep.value("hausdorff_probe", tri_name(v.hausdorff));
  rep.value("verdict", v.summary);
  return rep.finish();
}

int run_roe(Options const& opt, std::string const& path,
            std::string const& chk) {
  Reporter rep("roe", opt.json);
  std::string raw = read_file(path);
  rep.input(path, raw);
  CoarseInput in;
  try {
    in = coarse_from_json(Json::parse(raw));
  } catch (std::exception const& e) {
    return rep.fail(e.what());
  }
  rep.value("points", in.cs.nx);
  rep.value("carrier_pairs", static_cast<int>(in.cs.carrier.size()));
  if (chk == "simple") {
    rep.check("simple", is_simple_coarse(in.cs));
    rep.value("principal_ideals",
              static_cast<int>(coarse_ideals(in.cs).size()));
  } else if (chk == "decompose") {
    auto pieces = decompose_into_bisections(in.cs, in.cs.carrier);
    int n = n_of(in.cs, in.cs.carrier);
    rep.value("n_of_carrier", n);
    rep.value("pieces", static_cast<int>(pieces.size()));
    rep.check("piece_bound", static_cast<int>(pieces.size()) <= n * n + 1);
    Json list = Json::array();
    for (auto const& piece : pieces) {
      Json pj = Json::array();
      for (auto const& [x, y] : piece)
        pj.push_back({in.labels[x], in.labels[y]});
      list.push_back(pj);
    }
    rep.payload("bisections", list);
  } else {  // normbound
    Rng rng(opt.seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    ControlledMatrix t(in.cs.nx, in.blockdim);
    for (auto const& [x, y] : in.cs.carrier)
      for (auto& c : t.block(x, y).data) c = Cx(val(rng), val(rng));
    double inf = std::numeric_limits<double>::infinity();
    for (double p : {1.0, 2.0, inf}) {
      auto r = matrix_rep_norm_bound(in.cs, t, p);
      std::string tag = p == 1.0 ? "p1" : p == 2.0 ? "p2" : "pinf";
      rep.value("exact_" + tag, r.exact);
      rep.value("bound_" + tag, r.bound);
      rep.check("bounded_" + tag, r.exact <= r.bound + 1e-9);
    }
  }
  return rep.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoid algebra toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "emit a JSON report");
  app.add_option("--seed", opt.seed, "seed for randomized runs");
  app.add_option("--depth", opt.depth, "search depth for semi-decisions")
      ->check(CLI::PositiveNumber);

  std::string in_path, gpath, cpath, epath, chk, op;
  bool emit = false;
  int nfill = 1;

  auto* c_groupoid = app.add_subcommand("groupoid", "groupoid checkers");
  c_groupoid->add_option("--in", in_path, "groupoid.json")->required();

  auto* c_oracle = app.add_subcommand("oracle", "algebra simplicity oracle");
  c_oracle->add_option("--groupoid", gpath, "groupoid.json")->required();
  c_oracle->add_option("--cocycle", cpath, "cocycle.json");
  c_oracle->add_option("--check", chk, "simple|maxabelian|crosscheck")
      ->required()
      ->check(CLI::IsMember({"simple", "maxabelian", "crosscheck"}));

  auto* c_algebra = app.add_subcommand("algebra", "convolution computations");
  c_algebra->add_option("--groupoid", gpath, "groupoid.json")->required();
  c_algebra->add_option("--cocycle", cpath, "cocycle.json");
  c_algebra->add_option("--element", epath, "element.json");
  c_algebra->add_option("--op", op, "norms|rep|expect")
      ->required()
      ->check(CLI::IsMember({"norms", "rep", "expect"}));

  auto* c_sgrp = app.add_subcommand("sgrp", "inverse semigroup checkers");
  c_sgrp->add_option("--in", in_path, "semigroup.json")->required();
  c_sgrp->add_option("--check", chk,
                     "closed|topfree|minimal|loccontract|tight-groupoid")
      ->check(CLI::IsMember(
          {"closed", "topfree", "minimal", "loccontract", "tight-groupoid"}));

  auto* c_paction = app.add_subcommand("paction", "partial action checkers");
  c_paction->add_option("--in", in_path, "paction.json")->required();
  c_paction->add_option("--check", chk,
                        "topfree|minimal|nfilling|localboundary")
      ->check(CLI::IsMember(
          {"topfree", "minimal", "nfilling", "localboundary"}));
  c_paction->add_flag("--emit-groupoid", emit,
                      "print the transformation groupoid");
  c_paction->add_option("--n", nfill, "n for the n-filling check")
      ->check(CLI::PositiveNumber);

  auto* c_graph = app.add_subcommand("graph", "graph algebra verdict");
  c_graph->add_option("--in", in_path, "graph .dot or .json")->required();
  c_graph->add_flag("--verdict", "print the simplicity verdict (default)");

  auto* c_selfsim = app.add_subcommand("selfsim", "self-similar actions");
  c_selfsim->add_option("--in", in_path, "selfsim.json")->required();
  c_selfsim->add_flag("--verdict", "print the theorem verdict (default)");

  auto* c_roe = app.add_subcommand("roe", "coarse spaces and Roe matrices");
  c_roe->add_option("--in", in_path, "coarse.json")->required();
  c_roe->add_option("--check", chk, "simple|decompose|normbound")
      ->required()
      ->check(CLI::IsMember({"simple", "decompose", "normbound"}));

  for (auto* sc : app.get_subcommands([](CLI::App const*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_groupoid) return run_groupoid(opt, in_path);
    if (*c_oracle) return run_oracle(opt, gpath, cpath, chk);
    if (*c_algebra) return run_algebra(opt, gpath, cpath, epath, op);
    if (*c_sgrp) return run_sgrp(opt, in_path, chk);
    if (*c_paction) return run_paction(opt, in_path, chk, emit, nfill);
    if (*c_graph) return run_graph(opt, in_path);
    if (*c_selfsim) return run_selfsim(opt, in_path);
    if (*c_roe) return run_roe(opt, in_path, chk);
  } catch (CLI::ValidationError const& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
