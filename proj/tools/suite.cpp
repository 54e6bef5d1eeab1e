#include "suite.hpp"

#include "algebra_spec.hpp"
#include "voacheck/pz_dual.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

namespace voacheck::cli {

bool SuiteItem::ok() const {
  if (expected == Verdict::Fail) return report.failed() && report.witness.has_value();
  return report.verdict == expected;
}

bool SuiteResult::ok() const {
  for (const auto& it : items)
    if (!it.ok()) return false;
  return !items.empty();
}

void validate_config(const SuiteConfig& cfg) {
  if (cfg.z <= 0) throw std::invalid_argument("--z must be a positive rational");
  if (cfg.cutoff < 4) throw std::invalid_argument("--cutoff must be at least 4");
  if (cfg.degree < 1) throw std::invalid_argument("--degree must be at least 1");
  if (cfg.report != "text" && cfg.report != "json") throw std::invalid_argument("--report must be text or json");
  if (cfg.window.size() > 3) throw std::invalid_argument("--window takes at most three ranges");
  for (const auto& r : cfg.window)
    if (r.lo > r.hi) throw std::invalid_argument("--window range with LO > HI");
  if (cfg.weights) {
    if (cfg.weights->lo > cfg.weights->hi) throw std::invalid_argument("--weights range with LO > HI");
    if (cfg.weights->hi > cfg.cutoff) throw std::invalid_argument("--weights reaches above --cutoff");
  }
}

namespace {

Vec e(int i) { return Vec::basis(i); }

using Names = std::function<std::string(int)>;

// Reports outlive the suite's modules, so name lookups own what they read.
Names names_of(const ModulePtr& m) {
  return [m](int k) { return m->name(k); };
}
Names names_of(const VertexAlgebra& a) {
  return [a](int k) { return a.name(k); };
}

VertexAlgebra two_dim() {
  CommAssocSpec s;
  s.names = {"1", "a"};
  s.unit = 0;
  s.table[{1, 1}] = e(0);
  return VertexAlgebra::comm_assoc(s);
}

bool builtin(const SuiteConfig& cfg) { return cfg.algebra == "builtin" || cfg.algebra == "comm2"; }

VertexAlgebra comm_algebra(const SuiteConfig& cfg) {
  if (builtin(cfg)) return two_dim();
  return VertexAlgebra::comm_assoc(parse_algebra_spec(cfg.algebra));
}

void require_builtin(const SuiteConfig& cfg) {
  if (!builtin(cfg)) throw std::invalid_argument("suite " + cfg.suite + " does not take an algebra file");
}

// Suite default, with --window / --weights applied on top.
Window window_for(const SuiteConfig& cfg, std::vector<Var> vars, IntRange exps, IntRange weights) {
  Window w;
  w.weights = cfg.weights.value_or(weights);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    IntRange r = exps;
    if (!cfg.window.empty()) r = cfg.window[std::min(i, cfg.window.size() - 1)];
    w.set(vars[i], r);
  }
  return w;
}

// A report that records a computed fact; Fail carries the two sides as witness.
CheckReport fact(std::string check, bool holds, std::string note, Vec left = {}, Vec right = {}, int weight = 0) {
  CheckReport r;
  r.check = std::move(check);
  r.points = 1;
  r.note = std::move(note);
  r.verdict = holds ? Verdict::Pass : Verdict::Fail;
  if (!holds) r.witness = Witness{{}, {}, weight, std::move(left), std::move(right)};
  return r;
}

class Runner {
 public:
  explicit Runner(SuiteResult& out) : out_(out) {}

  template <class F>
  void item(std::string name, Verdict expected, Names names, F&& run) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteItem it;
    it.name = std::move(name);
    it.expected = expected;
    it.names = std::move(names);
    try {
      it.report = run();
    } catch (const CutoffEscape& ex) {
      it.report.check = it.name;
      it.report.verdict = Verdict::Inconclusive;
      it.report.escaped = 1;
      it.report.note = ex.what();
    }
    it.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out_.items.push_back(std::move(it));
  }

 private:
  SuiteResult& out_;
};

void two_dim_line(const SuiteConfig& cfg, Runner& run) {
  require_builtin(cfg);
  auto v = two_dim();
  TableModuleData d;
  d.names = {"w"};
  d.weights = {0};
  d.act = [](int u, int n, int) { return (u == 0 && n == -1) ? e(0) : Vec{}; };
  d.bound = [](int, int) { return -1; };
  d.space = "Cw";
  auto w = table_module(v, d);
  const Window cube = window_for(cfg, {Var::X0, Var::X1, Var::X2}, {-3, 3}, {0, 0});
  Window sq;
  sq.weights = cube.weights;
  sq.set(Var::X1, *cube.ranges[1]).set(Var::X2, *cube.ranges[2]);
  run.item("module-commutator a a w", Verdict::Pass, names_of(w),
           [&] { return check_module_commutator(*w, e(1), e(1), e(0), sq); });
  run.item("module-jacobi a a w", Verdict::Fail, names_of(w),
           [&] { return check_module_jacobi(*w, e(1), e(1), e(0), cube); });
}

void virasoro_dichotomy(const SuiteConfig& cfg, Runner& run) {
  require_builtin(cfg);
  std::vector<Scalar> cs = cfg.c_given ? std::vector<Scalar>{cfg.c} : std::vector<Scalar>{0, 1};
  for (const Scalar& c : cs) {
    auto vir = VertexAlgebra::virasoro(c, cfg.cutoff);
    const std::string tag = " c=" + to_string(c);
    const int om = vir.find("L(-2)1").value();
    auto orbit = std::make_shared<OrbitResult>(gv_ge0_orbit(*adjoint_module(vir)));
    run.item("omega_3 omega = c/2 1" + tag, Verdict::Pass, names_of(vir), [&] {
      Vec got = vir.mode(om, 3, om), want = Vec::basis(vir.unit(), c / 2);
      return fact("omega3-omega", got == want, "omega_3 omega = " + got.to_string(vir.name_fn()), got, want);
    });
    if (c != 0) {
      run.item("unit in orbit" + tag, Verdict::Pass, names_of(vir), [&] {
        std::string note = orbit->note;
        if (orbit->unit_in_orbit) {
          const auto& u = *orbit->unit_in_orbit;
          note = "1 = " + to_string(u.coeff) + " " + vir.name(u.v) + "_" + std::to_string(u.n) + " " + vir.name(u.w);
        }
        return fact("orbit-membership", orbit->unit_in_orbit.has_value(), note);
      });
    } else {
      run.item("orbit inside V+" + tag, Verdict::Pass, names_of(vir), [&] {
        for (const Vec& s : orbit->spanning)
          if (s[vir.unit()] != 0) return fact("orbit-in-plus", false, "orbit vector with a unit component", s, {});
        return fact("orbit-in-plus", true, std::to_string(orbit->spanning.size()) + " orbit vectors");
      });
      run.item("V+ is an ideal, unit excluded" + tag, Verdict::Pass, names_of(vir), [&] {
        if (orbit->exclusion && orbit->unit_excluded) return *orbit->exclusion;
        return fact("unit-excluded", false, "exclusion not settled: " + orbit->note);
      });
    }
  }
}

PzMapCandidate identity_map(const ModulePtr& v, const Scalar& z) {
  auto w3 = tensor_module(v, v);
  const int d = v->dim();
  return PzMapCandidate(
      v, v, w3, z, [d](int x, int y, int s) { return s == 0 ? e(x * d + y) : Vec{}; }, "identity");
}

void badlambda(const SuiteConfig& cfg, Runner& run) {
  auto a = comm_algebra(cfg);
  auto v = adjoint_module(a);
  auto f = identity_map(v, cfg.z);
  auto tens = tensor_over_algebra(v, v);
  const int d = v->dim();
  // the identity is balanced, hence a P(z)-intertwining map, only when no relation is needed
  const Verdict jacobi_expected = tens.dim < d * d ? Verdict::Fail : Verdict::Pass;
  const Window pl = window_for(cfg, {Var::X0, Var::X1}, {-3, 3}, {0, 0});
  Window x1;
  x1.weights = pl.weights;
  x1.set(Var::X1, *pl.ranges[1]);
  auto names = names_of(f.w3_ptr());
  run.item("identity map: im-commutator", Verdict::Pass, names, [&] {
    std::vector<CheckReport> parts;
    for (int u = 0; u < d; ++u)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) parts.push_back(check_im_commutator(f, e(u), e(x), e(y), x1));
    return combine("im-commutator", parts);
  });
  run.item("identity map: im-jacobi", jacobi_expected, names, [&] {
    std::vector<CheckReport> parts;
    for (int u = 0; u < d; ++u)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) parts.push_back(check_im_jacobi(f, e(u), e(x), e(y), pl));
    return combine("im-jacobi", parts);
  });
  auto ws = std::make_shared<WarningSpace>();
  run.item("full dual is a weak module", Verdict::Pass, names, [&] {
    *ws = warning_space(v, v, cfg.z, window_for(cfg, {Var::X0, Var::X1, Var::X2}, {-2, 2}, {0, 0}));
    ws->report.note = "warning dim " + std::to_string(ws->dim) + ", compatible dim " +
                      std::to_string(ws->compatible_dim);
    return ws->report;
  });
  run.item("compatible subspace = (W1 (x)_V W2)*", Verdict::Pass, names, [&] {
    const int comp = ws->compatible_dim;
    bool annihilates = true;
    for (const Vec& c : ws->compatible)
      for (const Vec& r : tens.relations) annihilates = annihilates && c.dot(r) == 0;
    return fact("compatible-vs-tensor", annihilates && comp == tens.dim,
                "compatible dim " + std::to_string(comp) + ", dim W1 (x)_V W2 = " + std::to_string(tens.dim) +
                    ", warning dim " + std::to_string(ws->dim));
  });
}

void theta_f(const SuiteConfig& cfg, Runner& run) {
  require_builtin(cfg);
  auto vir = VertexAlgebra::virasoro(cfg.c_given ? cfg.c : Scalar(0), cfg.cutoff);
  const int om = vir.find("L(-2)1").value();
  auto tf = theta_f_builder(vir, e(0));  // invalid_argument when c != 0
  auto names = names_of(vir);
  run.item("theta_f is a g(V)>=0 hom", Verdict::Pass, names,
           [&] { return is_gv_ge0_hom(*tf.quotient, *tf.target, tf.theta); });
  run.item("theta_f is a V hom", Verdict::Fail, names, [&] { return is_v_hom(*tf.quotient, *tf.target, tf.theta); });
  auto cand = from_theta(tf.quotient, tf.target, tf.theta);
  ClassifyScope scope;
  scope.v = {om};
  scope.w2 = {vir.unit(), om};
  scope.window = window_for(cfg, {Var::X0, Var::X1, Var::X2}, {-2, 2}, {0, cfg.cutoff});
  auto cls = std::make_shared<Classification>();
  run.item("classified quasi-only", Verdict::Pass, names, [&] {
    *cls = classify(cand, scope);
    return fact("classify", cls->cls == IoClass::QuasiOnly, io_class_name(cls->cls));
  });
  run.item("candidate io-jacobi", Verdict::Fail, names, [&] {
    if (cls->jacobi_witness) return *cls->jacobi_witness;
    return fact("io-jacobi", true, "no jacobi failure in scope");
  });
}

void collapse(const SuiteConfig& cfg, Runner& run) {
  require_builtin(cfg);
  auto vir = VertexAlgebra::virasoro(cfg.c_given ? cfg.c : Scalar(1), cfg.cutoff);
  if (vir.central_charge() == 0) throw std::invalid_argument("suite collapse needs c != 0");
  auto v = adjoint_module(vir);
  auto vv = direct_sum(v, v);
  auto homs = gv_ge0_hom_space(*vv, *vv);
  ClassifyScope scope;
  scope.v = {vir.find("L(-2)1").value(), vir.find("L(-3)1").value()};
  for (int b = 0; b < vv->dim(); ++b)
    if (vv->weight(b) <= 2) scope.w1.push_back(b);
  for (int b = 0; b < vir.dim(); ++b)
    if (vir.weight(b) <= 2) scope.w2.push_back(b);
  scope.window = window_for(cfg, {Var::X0, Var::X1, Var::X2}, {-2, 1}, {0, cfg.cutoff});
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coeff(-4, 4);
  run.item("hom space solved", Verdict::Pass, names_of(vv), [&] {
    return fact("gv-hom-space", !homs.empty(), "dim " + std::to_string(homs.size()));
  });
  for (int i = 0; i < 50; ++i) {
    std::vector<Vec> theta(vv->dim());
    for (const auto& h : homs) {
      const int c = coeff(rng);
      for (int b = 0; b < vv->dim(); ++b) theta[b].add(h[b], c);
    }
    run.item("random hom " + std::to_string(i) + " intertwining", Verdict::Pass, names_of(vv), [&] {
      auto cls = classify(from_theta(vv, vv, theta), scope);
      if (cls.cls == IoClass::Intertwining) return fact("classify", true, "intertwining");
      if (!cls.reports.empty()) {
        CheckReport r = cls.reports.front();
        r.note = io_class_name(cls.cls) + "; " + r.note;
        return r;
      }
      return fact("classify", false, io_class_name(cls.cls));
    });
  }
}


// Mode-by-mode comparison of map_to_io(io_to_map(c)) with c on in-cutoff modes.
CheckReport round_trip(const IntertwinerCandidate& c, const Scalar& z) {
  auto back = map_to_io(io_to_map(c, z));
  CheckReport r;
  r.check = "round-trip";
  const int top = c.w3().max_weight();
  for (int x = 0; x < c.w1().dim(); ++x)
    for (int y = 0; y < c.w2().dim(); ++y) {
      const int s = c.w1().weight(x) + c.w2().weight(y);
      for (int n = c.bound(x, y) + 2; s - n - 1 <= top; --n) {
        ++r.points;
        Vec want = c.mode(x, n, y), got = back.mode(x, n, y);
        if (!(want == got)) {
          r.verdict = Verdict::Fail;
          r.witness = Witness{{Var::X0, Var::X1, Var::X2}, make_exponents({{Var::X0, x}, {Var::X1, n}, {Var::X2, y}}),
                              s - n - 1, got, want};
          r.note = "witness exponents are (w1 label, n, w2 label)";
          return r;
        }
      }
    }
  return r;
}

void roundtrip(const SuiteConfig& cfg, Runner& run) {
  auto a = comm_algebra(cfg);
  auto aadj = adjoint_module(a);
  auto tens = tensor_module(aadj, aadj);
  auto vir = VertexAlgebra::virasoro(cfg.c_given ? cfg.c : Scalar(1), cfg.cutoff);
  auto vadj = adjoint_module(vir);
  for (std::uint64_t k = 0; k < 10; ++k) {
    const std::uint64_t seed = cfg.seed * 1000 + k;
    run.item("comm-assoc candidate " + std::to_string(k), Verdict::Pass, names_of(tens),
             [&] { return round_trip(random_graded_candidate(aadj, aadj, tens, seed), cfg.z); });
    run.item("virasoro candidate " + std::to_string(k), Verdict::Pass, names_of(vir),
             [&] { return round_trip(random_graded_candidate(vadj, vadj, vadj, seed), cfg.z); });
  }
}

void associativity(const SuiteConfig& cfg, Runner& run) {
  std::mt19937_64 rng(cfg.seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto a = comm_algebra(cfg);
  auto m = tensor_module(adjoint_module(a), adjoint_module(a));
  run.item("comm-assoc instances", Verdict::Pass, names_of(m), [&] {
    std::vector<CheckReport> parts;
    for (int i = 0; i < 50; ++i) {
      Vec u, v, w;
      for (int k = 0; k < a.dim(); ++k) u.add(k, pick(-3, 3)), v.add(k, pick(-3, 3));
      for (int k = 0; k < m->dim(); ++k) w.add(k, pick(-3, 3));
      parts.push_back(check_associativity_formula(*m, u, v, w, pick(-4, 2), pick(-4, 2)));
    }
    return combine("associativity-formula", parts);
  });
  auto vir = VertexAlgebra::virasoro(cfg.c_given ? cfg.c : Scalar(1), std::max(cfg.cutoff, 8));
  auto adj = adjoint_module(vir);
  std::vector<int> low;
  for (int b = 0; b < vir.dim(); ++b)
    if (vir.weight(b) <= 3) low.push_back(b);
  run.item("virasoro instances", Verdict::Pass, names_of(vir), [&] {
    std::vector<CheckReport> parts;
    int redrawn = 0;
    while (parts.size() < 50) {
      const int u = low[pick(0, low.size() - 1)], v = low[pick(0, low.size() - 1)], w = low[pick(0, low.size() - 1)];
      auto r = check_associativity_formula(*adj, e(u), e(v), e(w), pick(-3, 3), pick(-3, 3));
      if (r.verdict == Verdict::Inconclusive) {
        ++redrawn;
        continue;
      }
      parts.push_back(r);
    }
    auto r = combine("associativity-formula", parts);
    r.note = std::to_string(redrawn) + " escaping draws redrawn";
    return r;
  });
}

void induced(const SuiteConfig& cfg, Runner& run) {
  auto a = comm_algebra(cfg);
  InducedSpec spec;
  spec.degree_bound = cfg.degree;
  auto w = induced_level_one_module(a, spec);
  const Window cube = window_for(cfg, {Var::X0, Var::X1, Var::X2}, {-2, 2}, {0, 0});
  Window sq;
  sq.weights = cube.weights;
  sq.set(Var::X1, *cube.ranges[1]).set(Var::X2, *cube.ranges[2]);
  run.item("module-commutator below the degree bound", Verdict::Pass, names_of(w), [&] {
    std::vector<CheckReport> parts;
    for (int u = 0; u < a.dim(); ++u)
      for (int v = 0; v < a.dim(); ++v)
        for (int b = 0; b < w->dim(); ++b)
          if (w->pbw_degree(b) + 2 <= cfg.degree) parts.push_back(check_module_commutator(*w, e(u), e(v), e(b), sq));
    return combine("module-commutator", parts);
  });
  run.item("not a weak module", Verdict::Pass, names_of(w), [&] { return check_not_weak_module(*w, cube); });
}

using SuiteFn = void (*)(const SuiteConfig&, Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all = {
      {"appendix-2dim", two_dim_line}, {"virasoro-dichotomy", virasoro_dichotomy},
      {"badlambda", badlambda},         {"theta-f", theta_f},
      {"collapse", collapse},           {"roundtrip", roundtrip},
      {"associativity", associativity}, {"induced", induced},
  };
  return all;
}


using Json = nlohmann::ordered_json;

Json vec_json(const Vec& v, const Names& names) {
  Json out = Json::object();
  for (const auto& [k, c] : v) out[names ? names(k) : "e" + std::to_string(k)] = to_string(c);
  return out;
}

Json range_json(const IntRange& r) { return Json::array({r.lo, r.hi}); }

Json window_json(const Window& w) {
  Json out = Json::object();
  for (Var v : kAllVars)
    if (const auto& r = w.ranges[static_cast<int>(v)]) out[var_name(v)] = range_json(*r);
  out["weights"] = range_json(w.weights);
  return out;
}

Json witness_json(const Witness& w, const Names& names) {
  Json ex = Json::object();
  for (Var v : w.vars.list()) ex[var_name(v)] = at(w.exponents, v);
  return Json{{"exponents", ex}, {"weight", w.weight}, {"left", vec_json(w.left, names)},
              {"right", vec_json(w.right, names)}};
}

std::string expected_name(Verdict v) { return v == Verdict::Fail ? "fail-with-witness" : verdict_name(v); }

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suites()) out.push_back(name);
  return out;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  validate_config(cfg);
  SuiteResult out;
  out.suite = cfg.suite;
  Runner run(out);
  bool found = false;
  for (const auto& [name, fn] : suites())
    if (name == cfg.suite) {
      fn(cfg, run);
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  for (const auto& it : out.items) {
    out.pass += it.report.verdict == Verdict::Pass;
    out.fail += it.report.verdict == Verdict::Fail;
    out.inconclusive += it.report.verdict == Verdict::Inconclusive;
  }
  return out;
}

std::string text_report(const SuiteConfig& cfg, const SuiteResult& r) {
  std::string out = "suite " + r.suite + " (seed " + std::to_string(cfg.seed) + ")\n";
  double total = 0;
  for (const auto& it : r.items) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3fs", it.seconds);
    total += it.seconds;
    out += std::string(it.ok() ? "  ok   " : "  BAD  ") + it.name + ": expected " + expected_name(it.expected) +
           ", got " + describe(it.report, it.names) + " [" + secs + "]\n";
  }
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3fs", total);
  out += "summary: " + std::to_string(r.pass) + " pass, " + std::to_string(r.fail) + " fail, " +
         std::to_string(r.inconclusive) + " inconclusive; " + (r.ok() ? "all as expected" : "UNEXPECTED") + " in " +
         secs + "\n";
  return out;
}

std::string json_report(const SuiteConfig& cfg, const SuiteResult& r) {
  Json config = {{"suite", cfg.suite},   {"algebra", cfg.algebra},          {"c", to_string(cfg.c)},
                 {"c_given", cfg.c_given}, {"cutoff", cfg.cutoff},          {"z", to_string(cfg.z)},
                 {"degree", cfg.degree}, {"seed", cfg.seed}};
  Json win = Json::array();
  for (const auto& w : cfg.window) win.push_back(range_json(w));
  config["window"] = win;
  config["weights"] = cfg.weights ? range_json(*cfg.weights) : Json(nullptr);
  Json items = Json::array();
  for (const auto& it : r.items) {
    Json j = {{"name", it.name},
              {"check", it.report.check},
              {"expected", expected_name(it.expected)},
              {"verdict", verdict_name(it.report.verdict)},
              {"ok", it.ok()},
              {"points", it.report.points},
              {"escaped", it.report.escaped},
              {"window", window_json(it.report.window)},
              {"note", it.report.note}};
    j["witness"] = it.report.witness ? witness_json(*it.report.witness, it.names) : Json(nullptr);
    items.push_back(std::move(j));
  }
  Json out = {{"schema", "voacheck-report/1"},
              {"config", config},
              {"items", items},
              {"summary", {{"pass", r.pass}, {"fail", r.fail}, {"inconclusive", r.inconclusive}, {"ok", r.ok()}}}};
  return out.dump(2) + "\n";
}

}  // namespace voacheck::cli
