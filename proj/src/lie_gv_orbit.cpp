#include "voacheck/lie_gv.hpp"

#include <algorithm>

namespace voacheck {

namespace {

// The adjoint module shares the algebra's labels; only then is "1 in the orbit" meaningful.
bool is_adjoint_like(const Module& m) {
  return m.space() == m.algebra().space() && m.dim() == m.algebra().dim();
}

std::optional<Scalar> unit_multiple(const Vec& r, int unit) {
  if (r.size() != 1 || r[unit] == 0) return std::nullopt;
  return 1 / r[unit];
}

}  // namespace

OrbitResult gv_ge0_orbit(const Module& m) {
  const VertexAlgebra& a = m.algebra();
  OrbitResult res;
  std::map<int, Echelon> by_weight;
  const bool adjoint = is_adjoint_like(m);
  for (int v = 0; v < a.dim(); ++v)
    for (int w = 0; w < m.dim(); ++w)
      for (int n = 0; n <= m.mode_bound(v, w); ++n) {
        Vec r;
        try {
          r = m.act(v, n, w);
        } catch (const CutoffEscape&) {
          ++res.escaped;
          continue;
        }
        if (r.is_zero()) continue;
        res.spanning.push_back(r);
        by_weight[homogeneous_weight(r, m.weight_fn())].insert(r);
        if (adjoint && !res.unit_in_orbit)
          if (auto c = unit_multiple(r, a.unit())) res.unit_in_orbit = UnitCertificate{v, n, w, *c};
      }

  const bool truncated = a.cutoff().has_value() || res.escaped > 0;
  for (int s = m.min_weight(); s <= m.max_weight(); ++s) {
    OrbitSlice sl;
    sl.weight = s;
    sl.dim = static_cast<int>(m.basis_of_weight(s).size());
    auto it = by_weight.find(s);
    sl.reached = it == by_weight.end() ? 0 : static_cast<int>(it->second.rank());
    sl.inconclusive = truncated && sl.reached < sl.dim;
    if (sl.dim > 0) res.slices.push_back(sl);
  }

  if (!adjoint || res.unit_in_orbit) return res;
  if (!truncated) {
    // Every product was computed, so the span is the orbit itself.
    res.unit_excluded = !by_weight[a.weight(a.unit())].contains(Vec::basis(a.unit()));
    res.note = "exhaustive";
    return res;
  }
  // V = C1 + V_+ with weights of V_+ positive; 1_n and v_n 1 vanish for n >= 0, so the
  // orbit lies in V_+ once V_+ is an ideal.
  std::vector<Vec> plus;
  bool graded = a.weight(a.unit()) == 0;
  for (int l = 0; l < a.dim(); ++l) {
    if (l == a.unit()) continue;
    if (a.weight(l) <= 0) graded = false;
    plus.push_back(Vec::basis(l));
  }
  if (!graded) {
    res.note = "weight-0 slice is larger than C1; no exclusion route";
    return res;
  }
  res.exclusion = check_ideal(a, plus);
  res.unit_excluded = res.exclusion->passed();
  res.note = res.unit_excluded ? "orbit inside V_+, an ideal at this cutoff"
                               : "V_+ is not shown to be an ideal: " + verdict_name(res.exclusion->verdict);
  return res;
}

namespace {

CheckReport hom_check(const Module& from, const Module& to, const std::vector<Vec>& theta,
                      bool all_modes, std::string check) {
  const VertexAlgebra& a = from.algebra();
  if (!(a == to.algebra())) throw std::invalid_argument(check + ": modules over different algebras");
  if (static_cast<int>(theta.size()) != from.dim())
    throw std::invalid_argument(check + ": need one image per basis vector");
  CheckReport rep;
  rep.check = std::move(check);
  auto image = [&](const Vec& x) {
    Vec out;
    for (const auto& [k, c] : x) out.add(theta[k], c);
    return out;
  };
  const int top = std::max(from.max_weight(), to.max_weight());
  int lo_seen = 0, hi_seen = -1;
  for (int v = 0; v < a.dim(); ++v)
    for (int w = 0; w < from.dim(); ++w) {
      const Vec tw = theta[w];
      const int hi = std::max(from.mode_bound(v, w), to.mode_bound(Vec::basis(v), tw));
      const int lo = all_modes ? a.weight(v) + from.weight(w) - 1 - top : 0;
      lo_seen = std::min(lo_seen, lo);
      hi_seen = std::max(hi_seen, hi);
      for (int n = hi; n >= lo; --n) {
        ++rep.points;
        Vec left, right;
        try {
          left = image(from.act(v, n, w));
          right = to.act(Vec::basis(v), n, tw);
        } catch (const CutoffEscape&) {
          ++rep.escaped;
          continue;
        }
        if (!(left == right)) {
          rep.verdict = Verdict::Fail;
          rep.witness = Witness{{Var::X0, Var::X1}, make_exponents({{Var::X0, v}, {Var::X1, n}}), w, left, right};
          rep.note = "theta(" + a.name(v) + "_" + std::to_string(n) + " " + from.name(w) + ") != " +
                     a.name(v) + "_" + std::to_string(n) + " theta(" + from.name(w) + ")";
          return rep;
        }
      }
    }
  rep.note = "modes n in [" + std::to_string(lo_seen) + ", " + std::to_string(hi_seen) + "]";
  if (rep.escaped) {
    rep.verdict = Verdict::Inconclusive;
    rep.note += ", " + std::to_string(rep.escaped) + " beyond cutoff";
  }
  return rep;
}

}  // namespace

CheckReport is_gv_ge0_hom(const Module& from, const Module& to, const std::vector<Vec>& theta) {
  return hom_check(from, to, theta, false, "gv-ge0-hom");
}

CheckReport is_v_hom(const Module& from, const Module& to, const std::vector<Vec>& theta) {
  return hom_check(from, to, theta, true, "v-hom");
}

std::vector<std::vector<Vec>> gv_ge0_hom_space(const Module& from, const Module& to) {
  const VertexAlgebra& a = from.algebra();
  if (!(a == to.algebra())) throw std::invalid_argument("gv_ge0_hom_space: modules over different algebras");
  std::map<std::pair<int, int>, int> index;  // (b, w) -> unknown
  std::vector<std::pair<int, int>> unknowns;
  for (int b = 0; b < from.dim(); ++b)
    for (int w : to.basis_of_weight(from.weight(b))) {
      index[{b, w}] = static_cast<int>(unknowns.size());
      unknowns.emplace_back(b, w);
    }
  auto theta_of = [&](const Vec& x) {  // theta(x) as rows: target label -> row over unknowns
    std::map<int, Vec> out;
    for (const auto& [b, c] : x)
      for (int w : to.basis_of_weight(from.weight(b))) out[w].add(index.at({b, w}), c);
    return out;
  };
  std::vector<Vec> eqs;
  for (int v = 0; v < a.dim(); ++v)
    for (int b = 0; b < from.dim(); ++b) {
      int hi = from.mode_bound(v, b);
      for (int w : to.basis_of_weight(from.weight(b))) hi = std::max(hi, to.mode_bound(v, w));
      for (int n = 0; n <= hi; ++n) {
        std::map<int, Vec> rows;
        try {
          rows = theta_of(from.act(v, n, b));
          for (int w : to.basis_of_weight(from.weight(b)))
            for (const auto& [t, c] : to.act(v, n, w)) rows[t].add(index.at({b, w}), -c);
        } catch (const CutoffEscape&) {
          continue;
        }
        for (auto& [t, row] : rows)
          if (!row.is_zero()) eqs.push_back(row);
      }
    }
  std::vector<std::vector<Vec>> out;
  for (const Vec& sol : null_space(eqs, static_cast<int>(unknowns.size()))) {
    std::vector<Vec> theta(from.dim());
    for (const auto& [i, c] : sol) theta[unknowns[i].first].add(unknowns[i].second, c);
    out.push_back(theta);
  }
  return out;
}

CheckReport check_not_weak_module(const Module& m, const Window& win) {
  const VertexAlgebra& a = m.algebra();
  CheckReport rep;
  rep.check = "not-weak-module";
  rep.window = win;
  for (int w = 0; w < m.dim(); ++w)
    for (int u = 0; u < a.dim(); ++u)
      for (int v = 0; v < a.dim(); ++v) {
        if (u == a.unit() || v == a.unit()) continue;
        const Vec U = Vec::basis(u), V = Vec::basis(v), W = Vec::basis(w);
        CheckReport jac = check_module_jacobi(m, U, V, W, win);
        rep.points += jac.points;
        rep.escaped += jac.escaped;
        if (!jac.failed()) continue;
        CheckReport com = check_module_commutator(m, U, V, W, win);
        if (!com.passed()) continue;
        rep.verdict = Verdict::Pass;
        rep.witness = jac.witness;
        rep.note = "u=" + a.name(u) + " v=" + a.name(v) + " w=" + m.name(w) +
                   ": Jacobi fails, commutator formula holds";
        return rep;
      }
  rep.verdict = Verdict::Inconclusive;
  rep.note = "no witness in window";
  return rep;
}

}  // namespace voacheck
