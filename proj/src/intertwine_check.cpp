#include "voacheck/intertwine.hpp"

#include <algorithm>

namespace voacheck {

namespace {

std::optional<int> weight_if_homogeneous(const Vec& v, const WeightFn& wt) {
  try {
    return homogeneous_weight(v, wt);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// Total input weight of (v, w1, w2), when all three are homogeneous.
std::optional<int> input_weight(const IntertwinerCandidate& c, const Vec& v, const Vec& w1, const Vec& w2) {
  auto a = weight_if_homogeneous(v, c.w1().algebra().weight_fn());
  auto b = weight_if_homogeneous(w1, c.w1().weight_fn());
  auto d = weight_if_homogeneous(w2, c.w2().weight_fn());
  if (!a || !b || !d) return std::nullopt;
  return *a + *b + *d;
}

bool outside(const std::optional<int>& base, int shift, const IntRange& weights) {
  return base && !weights.contains(*base + shift);
}

}  // namespace

IoSides io_jacobi_sides(const IntertwinerCandidate& c, const Vec& v, const Vec& w1, const Vec& w2) {
  const IntertwinerCandidate cc = c;
  const int lo_c = -c.bound(w1, w2) - 1;
  const int lo_2 = -c.w2().mode_bound(v, w2) - 1;
  const int lo_1 = -c.w1().mode_bound(v, w1) - 1;
  const WeightFn wt = c.w3().weight_fn();
  const std::string space = c.w3().space();
  const auto base = input_weight(c, v, w1, w2);

  CoefficientOracle p12(
      {Var::X1, Var::X2},
      [cc, v, w1, w2, base](const Exponents& e, const IntRange& ws) {
        if (outside(base, at(e, Var::X1) + at(e, Var::X2), ws)) return Vec{};
        Vec inner = cc.mode(w1, -at(e, Var::X2) - 1, w2);
        return cc.w3().act(v, -at(e, Var::X1) - 1, inner);
      },
      wt, space, [lo_c](Var x, const IntRange&) { return x == Var::X2 ? Bound{lo_c, std::nullopt} : Bound{}; });
  CoefficientOracle p21(
      {Var::X1, Var::X2},
      [cc, v, w1, w2, base](const Exponents& e, const IntRange& ws) {
        if (outside(base, at(e, Var::X1) + at(e, Var::X2), ws)) return Vec{};
        Vec inner = cc.w2().act(v, -at(e, Var::X1) - 1, w2);
        return cc.mode(w1, -at(e, Var::X2) - 1, inner);
      },
      wt, space, [lo_2](Var x, const IntRange&) { return x == Var::X1 ? Bound{lo_2, std::nullopt} : Bound{}; });
  CoefficientOracle inner(
      {Var::X0, Var::X2},
      [cc, v, w1, w2, base](const Exponents& e, const IntRange& ws) {
        if (outside(base, at(e, Var::X0) + at(e, Var::X2), ws)) return Vec{};
        Vec vw = cc.w1().act(v, -at(e, Var::X0) - 1, w1);
        return cc.mode(vw, -at(e, Var::X2) - 1, w2);
      },
      wt, space, [lo_1](Var x, const IntRange&) { return x == Var::X0 ? Bound{lo_1, std::nullopt} : Bound{}; });

  auto left = multiply(DeltaKernel::make(DeltaKernelKind::JacobiLeft), p12);
  auto middle = multiply(DeltaKernel::make(DeltaKernelKind::JacobiMiddle), p21);
  return IoSides{multiply(DeltaKernel::make(DeltaKernelKind::JacobiRight), inner),
                 scale_and_add(-1, middle, left), inner};
}

CheckReport check_io_commutator(const IntertwinerCandidate& c, const Vec& v, const Vec& w1,
                                const Vec& w2, const Window& win) {
  auto s = io_jacobi_sides(c, v, w1, w2);
  return equal_on_window(residue(s.iterate, Var::X0), residue(s.product, Var::X0), win, "io-commutator");
}

CheckReport check_io_jacobi(const IntertwinerCandidate& c, const Vec& v, const Vec& w1,
                            const Vec& w2, const Window& win) {
  auto s = io_jacobi_sides(c, v, w1, w2);
  return equal_on_window(s.iterate, s.product, win, "io-jacobi");
}

CheckReport check_L_minus1(const IntertwinerCandidate& c, const Vec& w1, const Window& win) {
  const IntertwinerCandidate cc = c;
  std::vector<CheckReport> parts;
  Vec dw;
  try {
    dw = l_minus_one(c.w1(), w1);
  } catch (const CutoffEscape& e) {
    CheckReport r;
    r.check = "L(-1)-derivative";
    r.verdict = Verdict::Inconclusive;
    r.escaped = 1;
    r.note = e.what();
    return r;
  }
  for (int b = 0; b < c.w2().dim(); ++b) {
    const Vec w2 = Vec::basis(b);
    CoefficientOracle deriv(
        {Var::X},
        [cc, w1, w2, base = input_weight(c, Vec::basis(c.w1().algebra().unit()), w1, w2)](const Exponents& e,
                                                                                          const IntRange& ws) {
          const int k = at(e, Var::X);
          if (outside(base, k + 1, ws)) return Vec{};
          return Scalar(k + 1) * cc.mode(w1, -k - 2, w2);
        },
        c.w3().weight_fn(), c.w3().space());
    parts.push_back(equal_on_window(deriv, c.field(dw, w2), win, "L(-1)-derivative"));
    if (parts.back().failed()) break;
  }
  return combine("L(-1)-derivative", parts);
}

CheckReport check_truncation(const IntertwinerCandidate& c, int extra) {
  CheckReport rep;
  rep.check = "truncation";
  for (int a = 0; a < c.w1().dim(); ++a)
    for (int b = 0; b < c.w2().dim(); ++b) {
      const int hi = c.bound(a, b);
      for (int n = hi + 1; n <= hi + extra; ++n) {
        ++rep.points;
        Vec r;
        try {
          r = c.raw_mode(a, n, b);
        } catch (const CutoffEscape&) {
          ++rep.escaped;
          continue;
        }
        if (!r.is_zero()) {
          rep.verdict = Verdict::Fail;
          rep.witness = Witness{{Var::X0, Var::X1}, make_exponents({{Var::X0, a}, {Var::X1, n}}), b, r, Vec{}};
          rep.note = "mode above the declared bound is nonzero";
          return rep;
        }
      }
      for (int n = hi; n > hi - extra; --n) {
        ++rep.points;
        Vec r;
        try {
          r = c.mode(a, n, b);
        } catch (const CutoffEscape&) {
          ++rep.escaped;
          continue;
        }
        const int expect = c.w1().weight(a) + c.w2().weight(b) - n - 1;
        for (const auto& [k, x] : r)
          if (c.w3().weight(k) != expect) {
            rep.verdict = Verdict::Fail;
            rep.witness = Witness{{Var::X0, Var::X1}, make_exponents({{Var::X0, a}, {Var::X1, n}}), b, r, Vec{}};
            rep.note = "mode has weight " + std::to_string(c.w3().weight(k)) + ", expected " + std::to_string(expect);
            return rep;
          }
      }
    }
  if (rep.escaped) rep.verdict = Verdict::Inconclusive;
  return rep;
}

CheckReport yh_action_check(const IntertwinerCandidate& c, const Vec& v, int n, const Vec& w1,
                            const Window& win, const std::vector<int>& w2s) {
  Window w;
  w.weights = win.weights;
  w.set(Var::X0, {-n - 1, -n - 1});
  w.set(Var::X2, win.ranges[static_cast<int>(Var::X2)].value_or(IntRange{-3, 3}));
  std::vector<CheckReport> parts;
  std::vector<int> bs = w2s;
  if (bs.empty())
    for (int b = 0; b < c.w2().dim(); ++b) bs.push_back(b);
  for (int b : bs) {
    auto s = io_jacobi_sides(c, v, w1, Vec::basis(b));
    parts.push_back(equal_on_window(residue(s.product, Var::X1), s.inner, w, "yh-action"));
    if (parts.back().failed()) break;
  }
  return combine("yh-action", parts);
}

std::string io_class_name(IoClass c) {
  switch (c) {
    case IoClass::Intertwining: return "intertwining";
    case IoClass::QuasiOnly: return "quasi-only";
    case IoClass::Neither: return "neither";
    case IoClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

Classification classify(const IntertwinerCandidate& c, const ClassifyScope& scope) {
  auto all = [](const std::vector<int>& s, int d) {
    if (!s.empty()) return s;
    std::vector<int> out(d);
    for (int i = 0; i < d; ++i) out[i] = i;
    return out;
  };
  const auto vs = all(scope.v, c.w1().algebra().dim());
  const auto w1s = all(scope.w1, c.w1().dim());
  const auto w2s = all(scope.w2, c.w2().dim());
  const Window& win = scope.window;

  Classification out;
  auto neither = [&](CheckReport r) {
    out.cls = IoClass::Neither;
    out.reports.push_back(std::move(r));
    return out;
  };
  bool unsure = false;
  auto note_unsure = [&](const CheckReport& r) {
    if (r.verdict != Verdict::Inconclusive) return;
    unsure = true;
    out.reports.push_back(r);
  };

  CheckReport tr = check_truncation(c);
  if (tr.failed()) return neither(tr);
  note_unsure(tr);

  Window xwin;
  xwin.weights = win.weights;
  xwin.set(Var::X, win.ranges[static_cast<int>(Var::X2)].value_or(IntRange{-3, 3}));
  for (int a : w1s) {
    CheckReport r = check_L_minus1(c, Vec::basis(a), xwin);
    if (r.failed()) return neither(r);
    note_unsure(r);
  }
  Window cwin;
  cwin.weights = win.weights;
  for (Var x : {Var::X1, Var::X2}) cwin.ranges[static_cast<int>(x)] = win.ranges[static_cast<int>(x)];

  std::optional<CheckReport> jac_fail;
  for (int v : vs)
    for (int a : w1s)
      for (int b : w2s) {
        const Vec V = Vec::basis(v), A = Vec::basis(a), B = Vec::basis(b);
        CheckReport com = check_io_commutator(c, V, A, B, cwin);
        if (com.failed()) return neither(com);
        note_unsure(com);
        if (jac_fail) continue;
        CheckReport jac = check_io_jacobi(c, V, A, B, win);
        if (jac.failed()) {
          jac.note = "v=" + c.w1().algebra().name(v) + " w1=" + c.w1().name(a) + " w2=" + c.w2().name(b) +
                     (jac.note.empty() ? "" : "; " + jac.note);
          jac_fail = jac;
        }
        note_unsure(jac);
      }
  if (jac_fail) {
    out.jacobi_witness = jac_fail;
    out.reports.push_back(*jac_fail);
    out.cls = unsure ? IoClass::Inconclusive : IoClass::QuasiOnly;
    return out;
  }
  out.cls = unsure ? IoClass::Inconclusive : IoClass::Intertwining;
  return out;
}

}  // namespace voacheck
