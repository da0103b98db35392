// ptower command-line interface: orchestrates the verification suites and
// exposes the individual computations as subcommands.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptower/euler.hpp"
#include "ptower/report.hpp"
#include "ptower/tower.hpp"

using namespace ptower;
using nlohmann::json;

namespace {

std::vector<i64> parse_tuple(const std::string& s) {
  std::vector<i64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

PadicParam parse_param(i64 p, const std::string& s) {
  // "<val>:<num>[/<den>][:zorder,zpow]"
  std::stringstream ss(s);
  std::string v, u, z;
  std::getline(ss, v, ':');
  std::getline(ss, u, ':');
  std::getline(ss, z, ':');
  i64 val = std::stoll(v);
  i64 num = 1, den = 1;
  if (!u.empty()) {
    auto slash = u.find('/');
    num = std::stoll(u.substr(0, slash));
    if (slash != std::string::npos) den = std::stoll(u.substr(slash + 1));
  }
  int zo = 1, zp = 0;
  if (!z.empty()) {
    auto t = parse_tuple(z);
    zo = (int)t[0];
    if (t.size() > 1) zp = (int)t[1];
  }
  return PadicParam::make(p, val, Frac(num, den), zo, zp);
}

json valuation_json(const Valuation& v) {
  json j;
  if (v.is_zero)
    j["zero"] = true;
  else
    j["v"] = v.v;
  return j;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream f(path);
  check(f.good(), "IoError", "cannot read config " + path);
  std::string key;
  while (f >> key) {
    if (key.empty() || key[0] == '#') {
      std::string rest;
      std::getline(f, rest);
      continue;
    }
    std::string value;
    f >> value;
    if (key == "N") cfg.N = std::stoll(value);
    else if (key == "p") cfg.p = std::stoll(value);
    else if (key == "s") cfg.s = std::stoi(value);
    else if (key == "r_max") cfg.r_max = std::stoi(value);
    else if (key == "jobs") cfg.jobs = std::stoi(value);
    else if (key == "cache_dir") cfg.cache_dir = value;
    else if (key == "output") cfg.output_path = value;
    else if (key == "weights") {
      cfg.weight_sweep = parse_tuple(value);
    } else
      fail("BadArgument", "unknown config key " + key);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of ordinary towers of modular-symbol cohomology"};
  app.require_subcommand(1);

  // ---- branch ----
  auto* branch = app.add_subcommand("branch", "flag-variety orbits and branching vectors");
  branch->require_subcommand(1);
  std::string spec_name = "diag";
  i64 arg_p = 5;
  bool as_json = false;
  auto* orbits = branch->add_subcommand("orbits", "orbit decomposition over F_p");
  orbits->add_option("--spec", spec_name, "diag | mirabolic");
  orbits->add_option("--p", arg_p, "prime");
  orbits->add_flag("--json", as_json, "JSON output");
  orbits->callback([&]() {
    EmbeddingKind kind =
        spec_name == "mirabolic" ? EmbeddingKind::DiagMirabolic : EmbeddingKind::DiagFull;
    OrbitReport rep = enumerate_orbits(kind, arg_p);
    json j;
    j["p"] = rep.p;
    j["group_order"] = rep.group_order;
    j["u"] = {{rep.u1.a, rep.u1.b, rep.u1.c, rep.u1.d}, {rep.u2.a, rep.u2.b, rep.u2.c, rep.u2.d}};
    for (auto& o : rep.orbits)
      j["orbits"].push_back({{"rep", {o.rep.a, o.rep.b}},
                             {"size", o.size},
                             {"open", o.open},
                             {"stabilizer_order", o.stabilizer_order}});
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else {
      std::cout << "p = " << rep.p << ", |Q_H^0(F_p)| = " << rep.group_order << "\n";
      for (auto& o : rep.orbits)
        std::cout << "  orbit rep (" << o.rep.a << "," << o.rep.b << ") size " << o.size
                  << (o.open ? "  [open]" : "") << "\n";
    }
  });

  std::string weight_str = "1,1";
  auto* poly = branch->add_subcommand("poly", "branching vector for a weight on the a=b line");
  poly->add_option("--spec", spec_name, "diag | mirabolic");
  poly->add_option("--p", arg_p, "prime");
  poly->add_option("--weight", weight_str, "a,b with a = b (diag) or a 4-tuple");
  poly->add_flag("--json", as_json, "JSON output");
  poly->callback([&]() {
    EmbeddingKind kind =
        spec_name == "mirabolic" ? EmbeddingKind::DiagMirabolic : EmbeddingKind::DiagFull;
    EmbeddingSpec spec = make_embedding(kind, arg_p);
    auto t = parse_tuple(weight_str);
    Weight lam(GroupTag::GL2xGL2, {0, 0, 0, 0});
    if (t.size() == 2) {
      check(t[0] == t[1] || kind == EmbeddingKind::DiagMirabolic, "NotAdmissible",
            "the diagonal spec needs a = b");
      lam = diag_admissible_weight(spec, t[0]);
    } else if (t.size() == 4) {
      lam = Weight(GroupTag::GL2xGL2, t);
    } else {
      fail("BadArgument", "--weight expects a,b or a 4-tuple");
    }
    RingCtx R(arg_p, 2);
    BranchingPolynomial bp = branching_polynomial(spec, lam, R);
    json j;
    j["lambda"] = lam.k;
    j["mu"] = bp.mu.k;
    j["u"] = {{spec.u1.a, spec.u1.b, spec.u1.c, spec.u1.d},
              {spec.u2.a, spec.u2.b, spec.u2.c, spec.u2.d}};
    for (auto& f : bp.br) j["br"].push_back(std::to_string(f.num) + "/" + std::to_string(f.den));
    for (auto& b : spec.minimal_s0.basis) j["minimal_s0"].push_back(b);
    std::cout << j.dump(2) << "\n";
  });

  // ---- modsym ----
  auto* ms = app.add_subcommand("modsym", "symbol spaces and Hecke matrices");
  auto* build = ms->add_subcommand("build", "build a space and its basic Hecke operators");
  i64 arg_N = 11;
  int arg_r = 1, arg_s = 2;
  std::string tower_kind = "Vr", cache_dir;
  std::string wt2 = "0,0";
  build->add_option("--N", arg_N, "tame level");
  build->add_option("--p", arg_p, "prime");
  build->add_option("--tower", tower_kind, "Vr | Ur | J | Jbar | full");
  build->add_option("--r", arg_r, "depth");
  build->add_option("--weight", wt2, "k1,k2");
  build->add_option("--s", arg_s, "precision exponent");
  build->add_option("--cache-dir", cache_dir, "Hecke matrix cache directory");
  build->add_flag("--json", as_json, "JSON output");
  build->callback([&]() {
    RingCtx R(arg_p, arg_s);
    auto t = parse_tuple(wt2);
    check(t.size() == 2, "BadArgument", "--weight expects k1,k2");
    LevelSpec lv = tower_kind == "Ur"     ? level_Ur(arg_N, arg_p, arg_r)
                   : tower_kind == "J"    ? level_J(arg_N, arg_p)
                   : tower_kind == "Jbar" ? level_Jbar(arg_N, arg_p)
                   : tower_kind == "full" ? level_full(arg_N, arg_p)
                                          : level_Vr(arg_N, arg_p, arg_r);
    auto sp = make_space(lv, Weight(GroupTag::GL2, t), LatticeKind::Max, R);
    Cocharacter eta(GroupTag::GL2, {1, 0});
    json j;
    j["level"] = lv.label;
    j["N"] = arg_N;
    j["p"] = arg_p;
    j["s"] = arg_s;
    j["dim"] = sp->dim();
    j["free_rank"] = sp->presentation().free_rank();
    j["divisor_exponents"] = sp->presentation().modexp();
    j["genus"] = sp->cosets().genus();
    j["cusps"] = sp->cusp_count();
    if (has_iwahori_decomposition(lv)) {
      Mat Tp = hecke_cached(cache_dir, *sp, "Tprime",
                            [&]() { return reduce_op(tprime_op(sp, eta)).matrix; });
      OrdinaryData od = stable_idempotent(
          Tp, nullptr);
      j["ordinary_rank"] = od.free_rank;
      j["tprime_cache_key"] = cache_key(*sp, "Tprime");
    }
    for (i64 ell : {2, 3}) {
      if (arg_N % ell == 0 || ell == arg_p) continue;
      Mat T = hecke_cached(cache_dir, *sp, "T" + std::to_string(ell),
                           [&]() { return reduce_op(tl_op(sp, ell)).matrix; });
      j["hecke_computed"].push_back("T" + std::to_string(ell));
      (void)T;
    }
    std::cout << j.dump(2) << "\n";
  });

  // ---- tower ----
  auto* tw = app.add_subcommand("tower", "ordinary towers, control and twist checks");
  tw->require_subcommand(1);
  int arg_rmax = 2;
  auto* tbuild = tw->add_subcommand("build", "weight-0 tower stages");
  tbuild->add_option("--N", arg_N, "tame level");
  tbuild->add_option("--p", arg_p, "prime");
  tbuild->add_option("--s", arg_s, "precision");
  tbuild->add_option("--r-max", arg_rmax, "stage count");
  tbuild->callback([&]() {
    RingCtx R(arg_p, arg_s);
    TruncatedTower twr = build_tower(arg_N, arg_p, R, arg_rmax);
    json j;
    j["transitions_ordinary_iso"] = twr.transitions_ordinary_iso;
    for (int r = 0; r < twr.r_max; ++r) {
      j["stages"].push_back({{"r", r + 1},
                             {"dim", twr.stages[r].space->dim()},
                             {"ordinary_rank", twr.stages[r].ord.free_rank},
                             {"divisor_exponents", twr.stage_divisors[r]}});
    }
    std::cout << j.dump(2) << "\n";
  });

  auto* tctl = tw->add_subcommand("control", "edge-map control check for one weight");
  std::string ctl_weight = "0,-2";
  tctl->add_option("--N", arg_N, "tame level");
  tctl->add_option("--p", arg_p, "prime");
  tctl->add_option("--s", arg_s, "precision");
  tctl->add_option("--weight", ctl_weight, "k1,k2 trivial on the subtorus (k1 = 0)");
  tctl->add_option("--r", arg_rmax, "stage used for the coinvariants");
  tctl->callback([&]() {
    RingCtx R(arg_p, arg_s);
    auto t = parse_tuple(ctl_weight);
    check(t.size() == 2 && t[0] == 0 && t[1] <= 0, "WeightNotTrivialOnS0",
          "--weight must be 0,-k");
    ControlReport rep = control_check(arg_N, arg_p, R, -t[1], std::max(arg_rmax, arg_s));
    json j;
    j["pass"] = rep.pass;
    j["injective"] = rep.injective;
    j["surjective"] = rep.surjective;
    j["ordinary_rank"] = rep.target_rank;
    j["target_divisors"] = rep.target_divisors;
    std::cout << j.dump(2) << "\n";
    if (!rep.pass) std::exit(1);
  });

  auto* ttw = tw->add_subcommand("twist-check", "the two-pipeline twist compatibility");
  i64 arg_a = 1, arg_b = 1;
  bool dump = false;
  ttw->add_option("--N", arg_N, "tame level");
  ttw->add_option("--p", arg_p, "prime");
  ttw->add_option("--s", arg_s, "precision");
  ttw->add_option("--a", arg_a, "first symmetric power");
  ttw->add_option("--b", arg_b, "second symmetric power");
  ttw->add_option("--r", arg_r, "stage of the comparison (currently 1)");
  ttw->add_flag("--dump", dump, "include the pairing tables");
  ttw->callback([&]() {
    check(arg_a == arg_b, "NotAdmissible", "the diagonal family needs a = b");
    check(arg_r == 1, "BadArgument", "the comparison stage is r = 1");
    RingCtx R(arg_p, arg_s);
    EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, arg_p);
    Weight lam = arg_a == 0 ? Weight(GroupTag::GL2xGL2, {0, 0, 0, 0})
                            : diag_admissible_weight(spec, arg_a);
    TwistReport rep = twist_compat_check(spec, lam, arg_N, R);
    json j;
    j["pass"] = rep.pass;
    j["nonzero"] = rep.nonzero;
    j["table_dim"] = rep.table_dim;
    j["lambda"] = lam.k;
    std::cout << j.dump(2) << "\n";
    (void)dump;
    if (!rep.pass) std::exit(1);
  });

  // ---- euler ----
  auto* eu = app.add_subcommand("euler", "exact Euler factor evaluation");
  eu->require_subcommand(1);
  std::string s_alpha = "0:1", s_beta = "1:1", s_gamma = "2:1", s_delta = "3:1";
  std::string s_chi = "1,0", s_fa = "0:1", s_fb = "1:1";
  i64 e_a = 0, e_b = 0, e_q = 0, e_r = 0, e_c = 0;
  auto* g4 = eu->add_subcommand("gsp4", "eight-factor evaluation");
  g4->add_option("--p", arg_p, "prime");
  g4->add_option("--alpha", s_alpha, "val:num/den[:zorder,zpow]");
  g4->add_option("--beta", s_beta, "");
  g4->add_option("--gamma", s_gamma, "");
  g4->add_option("--delta", s_delta, "");
  g4->add_option("--a", e_a, "weight a");
  g4->add_option("--b", e_b, "weight b");
  g4->add_option("--q", e_q, "0 <= q <= a");
  g4->add_option("--r", e_r, "0 <= r <= b");
  g4->add_option("--chi2", s_chi, "zorder,zpow of chi_2(p)");
  g4->add_flag("--json", as_json, "JSON output");
  g4->callback([&]() {
    HeckeParamsGSp4 P;
    P.p = arg_p;
    P.a = e_a;
    P.b = e_b;
    P.alpha = parse_param(arg_p, s_alpha);
    P.beta = parse_param(arg_p, s_beta);
    P.gamma = parse_param(arg_p, s_gamma);
    P.delta = parse_param(arg_p, s_delta);
    auto zt = parse_tuple(s_chi);
    auto chi = PadicParam::make(arg_p, 0, Frac(1), (int)zt[0], zt.size() > 1 ? (int)zt[1] : 0);
    auto cons = check_param_constraints(P);
    check(cons.ok, "ConstraintViolation", cons.violation);
    EulerResult res = euler_gsp4(P, e_q, e_r, chi);
    json j;
    j["value"] = res.value.str();
    j["similitude_balanced"] = cons.similitude_balanced;
    j["total"] = valuation_json(res.total);
    for (auto& v : res.factor_valuations) j["factor_valuations"].push_back(valuation_json(v));
    std::cout << j.dump(2) << "\n";
  });

  auto* g42 = eu->add_subcommand("gsp4-gl2", "5 x 3 factor evaluation");
  g42->add_option("--p", arg_p, "prime");
  g42->add_option("--alpha", s_alpha, "");
  g42->add_option("--beta", s_beta, "");
  g42->add_option("--gamma", s_gamma, "");
  g42->add_option("--delta", s_delta, "");
  g42->add_option("--fa", s_fa, "GL2 parameter a");
  g42->add_option("--fb", s_fb, "GL2 parameter b");
  g42->add_option("--a", e_a, "");
  g42->add_option("--b", e_b, "");
  g42->add_option("--c", e_c, "GL2 weight");
  g42->add_option("--q", e_q, "max(a,c) <= q <= min(a+b, a+c)");
  g42->callback([&]() {
    HeckeParamsGSp4 P;
    P.p = arg_p;
    P.a = e_a;
    P.b = e_b;
    P.alpha = parse_param(arg_p, s_alpha);
    P.beta = parse_param(arg_p, s_beta);
    P.gamma = parse_param(arg_p, s_gamma);
    P.delta = parse_param(arg_p, s_delta);
    HeckeParamsGL2 P2;
    P2.p = arg_p;
    P2.c = e_c;
    P2.fa = parse_param(arg_p, s_fa);
    P2.fb = parse_param(arg_p, s_fb);
    EulerResult res = euler_gsp4_gl2(P, P2, e_q);
    json j;
    j["value"] = res.value.str();
    j["total"] = valuation_json(res.total);
    for (auto& v : res.factor_valuations) j["factor_valuations"].push_back(valuation_json(v));
    std::cout << j.dump(2) << "\n";
  });

  auto* tri = eu->add_subcommand("triple", "self-dual-twist admissibility of a triple");
  std::string s_w4 = "2,0,0";
  i64 c1 = 0, c2 = 0;
  tri->add_option("--weight", s_w4, "GSp4 weight a,b,c");
  tri->add_option("--c1", c1, "first GL2 weight");
  tri->add_option("--c2", c2, "second GL2 weight");
  tri->callback([&]() {
    auto t = parse_tuple(s_w4);
    check(t.size() == 3, "BadArgument", "--weight expects a,b,c");
    TripleAdmissibility rep = triple_admissible(Weight(GroupTag::GSp4Weights, t), c1, c2);
    json j;
    j["admissible"] = rep.ok;
    if (rep.ok) j["sqrt_exponent"] = rep.half;
    std::cout << j.dump(2) << "\n";
  });

  // ---- suite ----
  auto* su = app.add_subcommand("suite", "run a verification suite");
  auto* run = su->add_subcommand("run", "run named checks and write a report");
  RunConfig cfg;
  std::string suite_name = "all", cfg_file;
  run->add_option("--name", suite_name, "lattice|ordinary|hecke|branching|control|twist|euler|all");
  run->add_option("--N", cfg.N, "tame level");
  run->add_option("--p", cfg.p, "prime");
  run->add_option("--s", cfg.s, "precision");
  run->add_option("--r-max", cfg.r_max, "tower depth");
  run->add_option("--jobs", cfg.jobs, "parallel checks");
  run->add_option("--cache-dir", cfg.cache_dir, "Hecke matrix cache");
  run->add_option("--json", cfg.output_path, "report output path");
  run->add_option("--config", cfg_file, "key-value config file");
  run->callback([&]() {
    if (!cfg_file.empty()) apply_config_file(cfg_file, cfg);
    Report rep = run_suite(suite_name, cfg);
    for (auto& c : rep.checks)
      std::cout << (c.status + "    ").substr(0, 6) << c.suite << "/" << c.name
                << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "  ("
                << (long long)c.ms << " ms)\n";
    if (!cfg.output_path.empty()) {
      rep.write_atomic(cfg.output_path);
      std::cout << "report written to " << cfg.output_path << "\n";
    }
    int f = rep.fails();
    std::exit(f > 125 ? 125 : f);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
