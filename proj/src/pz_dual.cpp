#include "voacheck/pz_dual.hpp"

#include <algorithm>
#include <set>

namespace voacheck {

DualFunctional DualFunctional::finite(ModulePtr w1, ModulePtr w2, Vec coords) {
  DualFunctional d;
  d.w1 = std::move(w1);
  d.w2 = std::move(w2);
  d.coords = std::move(coords);
  return d;
}

DualFunctional DualFunctional::dual_basis(ModulePtr w1, ModulePtr w2, int a, int b) {
  const int l = a * w2->dim() + b;
  return finite(std::move(w1), std::move(w2), Vec::basis(l));
}

Scalar DualFunctional::operator()(int a, int b) const {
  if (coords) return (*coords)[label(a, b)];
  return lazy ? lazy(a, b) : Scalar(0);
}

Scalar DualFunctional::operator()(const Vec& x, const Vec& y) const {
  Scalar out = 0;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      const Scalar v = (*this)(a, b);
      if (v != 0) out += ca * cb * v;
    }
  return out;
}

std::optional<int> DualFunctional::max_weight() const {
  if (!coords) return std::nullopt;
  int best = w1->min_weight() + w2->min_weight();
  const int d2 = w2->dim();
  for (const auto& [l, c] : *coords) best = std::max(best, w1->weight(l / d2) + w2->weight(l % d2));
  return best;
}

WeightFn pair_weight(const Module& w1, const Module& w2) {
  const Module* m1 = &w1;
  const Module* m2 = &w2;
  return [m1, m2](int l) { return m1->weight(l / m2->dim()) + m2->weight(l % m2->dim()); };
}

std::string pair_space(const Module& w1, const Module& w2) {
  return "(" + w1.space() + " (x) " + w2.space() + ")*";
}

namespace {

// Pair coordinates whose weight lies in ws.
std::vector<std::pair<int, int>> pairs_in(const Module& w1, const Module& w2, const IntRange& ws) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < w1.dim(); ++a)
    for (int b = 0; b < w2.dim(); ++b)
      if (ws.contains(w1.weight(a) + w2.weight(b))) out.emplace_back(a, b);
  return out;
}

// Weights carried by a finite functional; nullopt means "any".
std::optional<std::set<int>> support_weights(const DualFunctional& l) {
  if (!l.coords) return std::nullopt;
  std::set<int> s;
  const int d2 = l.w2->dim();
  for (const auto& [x, c] : *l.coords) s.insert(l.w1->weight(x / d2) + l.w2->weight(x % d2));
  return s;
}

// One homogeneous piece c * x1^xpow * u of a vector-valued expansion of v.
struct Piece {
  Vec u;
  int wt = 0;
  int xpow = 0;
  Scalar c;
};

// v itself, homogeneous components only.
std::vector<Piece> plain_pieces(const VertexAlgebra& a, const Vec& v) {
  std::vector<Piece> out;
  for (const auto& [l, c] : v) out.push_back(Piece{Vec::basis(l), a.weight(l), 0, c});
  return out;
}

// e^{x L(1)} (-x^-2)^{L(0)} v = sum_m (-1)^wt / m! x^{m - 2 wt} L(1)^m v.
std::vector<Piece> opposite_pieces(const VertexAlgebra& a, const Vec& v) {
  std::vector<Piece> out;
  for (const auto& [l, c] : v) {
    const int wt = a.weight(l);
    Vec u = Vec::basis(l);
    for (int m = 0; !u.is_zero(); ++m) {
      out.push_back(Piece{u, wt - m, m - 2 * wt, c * Scalar(sign_power(wt)) / factorial(m)});
      u = a.L(1, u);
    }
  }
  return out;
}

int max_bound(const Module& m, const std::vector<Piece>& ps) {
  int best = -1;
  for (const auto& p : ps)
    for (int w = 0; w < m.dim(); ++w) best = std::max(best, m.mode_bound(p.u, Vec::basis(w)));
  return best;
}

// Functional-valued oracle built from a per-pair value.
using PairValue = std::function<Scalar(const Exponents&, int a, int b)>;
CoefficientOracle functional_oracle(VarSet vars, const DualFunctional& lam, PairValue f,
                                    CoefficientOracle::Support support) {
  const ModulePtr w1 = lam.w1, w2 = lam.w2;
  const int d2 = w2->dim();
  return CoefficientOracle(
      vars,
      [w1, w2, d2, f](const Exponents& e, const IntRange& ws) {
        Vec out;
        for (const auto& [a, b] : pairs_in(*w1, *w2, ws)) out.add(a * d2 + b, f(e, a, b));
        return out;
      },
      [w1, w2, d2](int l) { return w1->weight(l / d2) + w2->weight(l % d2); }, pair_space(*w1, *w2),
      std::move(support));
}

// lambda(Y1(piece, x0) a (x) b) at x0^k, x1^xpow (one variable when `with_x1` is false).
// Uses the functional's weights to skip values that must vanish.
CoefficientOracle left_slot(const DualFunctional& lam, std::vector<Piece> ps, bool with_x1) {
  const auto sw = support_weights(lam);
  const ModulePtr w1 = lam.w1, w2 = lam.w2;
  const int lo0 = -max_bound(*w1, ps) - 1;
  std::optional<int> hi0;
  int xlo = 0, xhi = 0;
  for (size_t i = 0; i < ps.size(); ++i) {
    xlo = i ? std::min(xlo, ps[i].xpow) : ps[i].xpow;
    xhi = i ? std::max(xhi, ps[i].xpow) : ps[i].xpow;
  }
  if (auto top = lam.max_weight()) {
    int wmin = 0;
    for (size_t i = 0; i < ps.size(); ++i) wmin = i ? std::min(wmin, ps[i].wt) : ps[i].wt;
    hi0 = *top - wmin - w1->min_weight() - w2->min_weight();
  }
  VarSet vars = with_x1 ? VarSet{Var::X0, Var::X1} : VarSet{Var::X0};
  return functional_oracle(
      vars, lam,
      [lam, ps, sw, with_x1](const Exponents& e, int a, int b) {
        const int k = at(e, Var::X0);
        Scalar out = 0;
        for (const auto& p : ps) {
          if (with_x1 && p.xpow != at(e, Var::X1)) continue;
          // (u)_{-k-1} a has weight wt u + wt a + k
          if (sw && !sw->count(p.wt + lam.w1->weight(a) + k + lam.w2->weight(b))) continue;
          out += p.c * lam(lam.w1->act(p.u, -k - 1, Vec::basis(a)), Vec::basis(b));
        }
        return out;
      },
      [lo0, hi0, xlo, xhi](Var x, const IntRange&) {
        if (x == Var::X0) return Bound{lo0, hi0};
        return Bound{xlo, xhi};
      });
}

// lambda(a (x) Y2(piece, x1^{+-1}) b) in x1. With `inverted`, the piece's mode n sits at
// x1^{xpow + n + 1} (the opposite field); otherwise at x1^{-n-1}.
CoefficientOracle right_slot(const DualFunctional& lam, std::vector<Piece> ps, bool inverted) {
  const auto sw = support_weights(lam);
  const ModulePtr w1 = lam.w1, w2 = lam.w2;
  const int mb = max_bound(*w2, ps);
  const auto top = lam.max_weight();
  std::optional<int> lo, hi;
  const int mins = w1->min_weight() + w2->min_weight();
  if (!inverted) {
    lo = -mb - 1;
    if (top) {
      int wmin = ps.empty() ? 0 : ps[0].wt;
      for (const auto& p : ps) wmin = std::min(wmin, p.wt);
      hi = *top - wmin - mins;
    }
  } else {
    for (size_t i = 0; i < ps.size(); ++i) {
      const int h = ps[i].xpow + mb + 1;
      hi = i ? std::max(*hi, h) : h;
      if (top) {
        const int l = ps[i].xpow + ps[i].wt + mins - *top;
        lo = i ? std::min(*lo, l) : l;
      }
    }
  }
  return functional_oracle(
      {Var::X1}, lam,
      [lam, ps, sw, inverted](const Exponents& e, int a, int b) {
        const int k = at(e, Var::X1);
        Scalar out = 0;
        for (const auto& p : ps) {
          const int n = inverted ? k - p.xpow - 1 : -k - 1;
          if (sw && !sw->count(lam.w1->weight(a) + p.wt + lam.w2->weight(b) - n - 1)) continue;
          out += p.c * lam(Vec::basis(a), lam.w2->act(p.u, n, Vec::basis(b)));
        }
        return out;
      },
      [lo, hi](Var, const IntRange&) { return Bound{lo, hi}; });
}

}  // namespace

CoefficientOracle tau_extended(const Vec& v, const DualFunctional& lambda, const Scalar& z, TauForm form) {
  const VertexAlgebra& a = lambda.w1->algebra();
  if (form == TauForm::Tau) {
    // z^-1 d((x1-x0)/z) lambda(Y1(v,x0)w1 (x) w2) + x0^-1 d((z-x1)/(-x0)) lambda(w1 (x) Y2(v,x1)w2)
    auto left = multiply(DeltaKernel::make(DeltaKernelKind::PzLeft, z), left_slot(lambda, plain_pieces(a, v), false));
    auto right = multiply(DeltaKernel::make(DeltaKernelKind::PzMiddle, z),
                          right_slot(lambda, plain_pieces(a, v), false));
    return scale_and_add(1, left, right);
  }
  // z^-1 d((x1^-1 - x0)/z) lambda(Y1(e^{x1 L(1)}(-x1^-2)^{L(0)}v, x0)w1 (x) w2)
  //   + x0^-1 d((z - x1^-1)/(-x0)) lambda(w1 (x) Y2^o(v, x1)w2)
  const auto ps = opposite_pieces(a, v);
  auto left = multiply(DeltaKernel::make(DeltaKernelKind::PzLeft, z).inverted(Var::X1), left_slot(lambda, ps, true));
  auto right =
      multiply(DeltaKernel::make(DeltaKernelKind::PzMiddle, z).inverted(Var::X1), right_slot(lambda, ps, true));
  return scale_and_add(1, left, right);
}

CoefficientOracle tau_restricted(const Vec& v, const DualFunctional& lambda, const Scalar& z, TauForm form) {
  return residue(tau_extended(v, lambda, z, form), Var::X0);
}

CoefficientOracle tau0_transformed(const Vec& v, const DualFunctional& lambda, const Scalar& z) {
  const VertexAlgebra& a = lambda.w1->algebra();
  std::optional<CoefficientOracle> sum;
  for (const auto& p : opposite_pieces(a, v)) {
    auto term = shift(invert_variable(tau_extended(p.u, lambda, z, TauForm::Tau0), Var::X1), Var::X1, p.xpow);
    sum = sum ? scale_and_add(p.c, term, *sum) : scale_and_add(p.c, term, zero_oracle(term.vars(), term.weight_of(), term.space()));
  }
  if (!sum) {
    const ModulePtr w1 = lambda.w1, w2 = lambda.w2;
    return zero_oracle({Var::X0, Var::X1}, [w1, w2](int l) { return pair_weight(*w1, *w2)(l); },
                       pair_space(*w1, *w2));
  }
  return *sum;
}

namespace {

bool is_finite_dimensional(const Module& m) { return !m.algebra().cutoff().has_value(); }

IntRange all_pair_weights(const Module& w1, const Module& w2) {
  return {w1.min_weight() + w2.min_weight(), w1.max_weight() + w2.max_weight()};
}

// Declared top x1 power of tau(Y^o_t(v, x))lambda: the second term vanishes above it.
int restricted_top(const DualFunctional& lam, int v) {
  return *lam.max_weight() - lam.w1->algebra().weight(v) - lam.w1->min_weight() - lam.w2->min_weight();
}

}  // namespace

CheckReport check_compatibility(const DualFunctional& lambda, const Scalar& z, const Window& win, int extra) {
  if (!lambda.coords) throw std::invalid_argument("check_compatibility: needs a finitely supported functional");
  const VertexAlgebra& a = lambda.w1->algebra();
  std::vector<CheckReport> parts;
  for (int v = 0; v < a.dim(); ++v) {
    const Vec ev = Vec::basis(v);
    CoefficientOracle r = tau_restricted(ev, lambda, z, TauForm::Tau);
    const int top = restricted_top(lambda, v);
    // lower truncation with respect to Y_t, i.e. nothing above the declared top here
    CheckReport tr;
    tr.check = "compatibility";
    for (int k = top + 1; k <= top + extra; ++k) {
      ++tr.points;
      Vec val;
      try {
        val = r(make_exponents({{Var::X1, k}}), win.weights);
      } catch (const CutoffEscape&) {
        ++tr.escaped;
        continue;
      }
      if (!val.is_zero()) {
        tr.verdict = Verdict::Fail;
        tr.witness = Witness{{Var::X1}, make_exponents({{Var::X1, k}}), v, val, Vec{}};
        tr.note = "lower truncation fails for v=" + a.name(v);
        break;
      }
    }
    if (tr.escaped && !tr.failed()) tr.verdict = Verdict::Inconclusive;
    parts.push_back(tr);
    if (tr.failed()) break;
    auto bounded = r.with_support([top](Var, const IntRange&) { return Bound{std::nullopt, top}; });
    auto rhs = multiply(DeltaKernel::make(DeltaKernelKind::PzRight, z), bounded);
    CheckReport eq = equal_on_window(tau_extended(ev, lambda, z, TauForm::Tau), rhs, win, "compatibility");
    if (eq.failed()) eq.note = "v=" + a.name(v) + (eq.note.empty() ? "" : "; " + eq.note);
    parts.push_back(eq);
    if (eq.failed()) break;
  }
  return combine("compatibility", parts);
}

std::vector<Vec> compatible_subspace(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z) {
  if (!w1->algebra().is_comm_assoc() || !is_finite_dimensional(*w1) || !is_finite_dimensional(*w2))
    throw std::invalid_argument("compatible_subspace: finite-dimensional comm-assoc case only");
  const VertexAlgebra& a = w1->algebra();
  const int n = w1->dim() * w2->dim();
  const IntRange ws = all_pair_weights(*w1, *w2);
  // one row per (v, x0, x1, pair coordinate) of the defect, columns = dual basis vectors
  std::map<std::tuple<int, int, int, int>, Vec> rows;
  for (int i = 0; i < n; ++i) {
    auto lam = DualFunctional::finite(w1, w2, Vec::basis(i));
    for (int v = 0; v < a.dim(); ++v) {
      const Vec ev = Vec::basis(v);
      CoefficientOracle r = tau_restricted(ev, lam, z, TauForm::Tau);
      const int top = restricted_top(lam, v);
      auto rhs = multiply(DeltaKernel::make(DeltaKernelKind::PzRight, z),
                          r.with_support([top](Var, const IntRange&) { return Bound{std::nullopt, top}; }));
      auto defect = scale_and_add(-1, rhs, tau_extended(ev, lam, z, TauForm::Tau));
      for (int e0 = -3; e0 <= 3; ++e0)
        for (int e1 = -3; e1 <= 3; ++e1)
          for (const auto& [l, c] : defect(make_exponents({{Var::X0, e0}, {Var::X1, e1}}), ws))
            rows[{v, e0, e1, l}].add(i, c);
      for (int k = top + 1; k <= top + 3; ++k)
        for (const auto& [l, c] : r(make_exponents({{Var::X1, k}}), ws)) rows[{v, 100, k, l}].add(i, c);
    }
  }
  std::vector<Vec> eqs;
  for (auto& [key, row] : rows)
    if (!row.is_zero()) eqs.push_back(row);
  return null_space(eqs, n);
}

TensorOverAlgebra tensor_over_algebra(const ModulePtr& w1, const ModulePtr& w2) {
  const VertexAlgebra& a = w1->algebra();
  if (!a.is_comm_assoc()) throw std::invalid_argument("tensor_over_algebra: comm-assoc case only");
  const int d2 = w2->dim();
  auto ech = std::make_shared<Echelon>();
  TensorOverAlgebra out;
  for (int v = 0; v < a.dim(); ++v)
    for (int x = 0; x < w1->dim(); ++x)
      for (int y = 0; y < d2; ++y) {
        Vec rel;
        for (const auto& [p, c] : w1->act(v, -1, x)) rel.add(p * d2 + y, c);
        for (const auto& [q, c] : w2->act(v, -1, y)) rel.add(x * d2 + q, -c);
        if (rel.is_zero()) continue;
        out.relations.push_back(rel);
        ech->insert(rel);
      }
  std::map<int, int> index;
  for (int l = 0; l < w1->dim() * d2; ++l)
    if (!ech->is_pivot(l)) {
      index[l] = static_cast<int>(out.basis.size());
      out.basis.push_back(l);
    }
  out.dim = static_cast<int>(out.basis.size());
  out.project = [ech, index](const Vec& x) {
    Vec out;
    for (const auto& [l, c] : ech->reduce(x)) out.add(index.at(l), c);
    return out;
  };
  return out;
}

DualFunctional f_vee(const PzMapCandidate& f, const Vec& alpha) {
  const PzMapCandidate ff = f;
  auto value = [ff, alpha](int a, int b) {
    Scalar out = 0;
    for (const auto& [l, c] : alpha) out += c * ff.slice(a, b, ff.w3().weight(l))[l];
    return out;
  };
  if (is_finite_dimensional(f.w1()) && is_finite_dimensional(f.w2())) {
    Vec coords;
    for (int a = 0; a < f.w1().dim(); ++a)
      for (int b = 0; b < f.w2().dim(); ++b) coords.add(a * f.w2().dim() + b, value(a, b));
    return DualFunctional::finite(f.w1_ptr(), f.w2_ptr(), coords);
  }
  DualFunctional d;
  d.w1 = f.w1_ptr();
  d.w2 = f.w2_ptr();
  d.lazy = value;
  return d;
}

CheckReport check_fvee_intertwines(const PzMapCandidate& f, const Window& win, const std::vector<Vec>& alphas) {
  std::vector<Vec> as = alphas;
  if (as.empty())
    for (int l = 0; l < f.w3().dim(); ++l) as.push_back(Vec::basis(l));
  const VertexAlgebra& a = f.w1().algebra();
  const PzMapCandidate ff = f;
  std::vector<CheckReport> parts;
  for (int v = 0; v < a.dim(); ++v)
    for (const Vec& alpha : as) {
      const DualFunctional lam = f_vee(f, alpha);
      // <alpha, Y3(v, x1) F(w1 (x) w2)>: at x1^k the source slice is wt(alpha) - wt v - k
      CoefficientOracle lhs = functional_oracle(
          {Var::X1}, lam,
          [ff, v, alpha](const Exponents& e, int x, int y) {
            const int k = at(e, Var::X1);
            const Module& m3 = ff.w3();
            Scalar out = 0;
            for (const auto& [l, c] : alpha) {
              const int s = m3.weight(l) - ff.w1().algebra().weight(v) - k;
              if (s < m3.min_weight()) continue;
              const Vec src = ff.slice(x, y, s);
              if (src.is_zero()) continue;
              out += c * m3.act(Vec::basis(v), -k - 1, src)[l];
            }
            return out;
          },
          nullptr);
      CheckReport r = equal_on_window(lhs, tau_restricted(Vec::basis(v), lam, f.z(), TauForm::Tau), win,
                                      "fvee-intertwines");
      if (r.failed()) r.note = "v=" + a.name(v) + (r.note.empty() ? "" : "; " + r.note);
      parts.push_back(r);
      if (r.failed()) return combine("fvee-intertwines", parts);
    }
  return combine("fvee-intertwines", parts);
}

PcorrespReport check_pcorresp(const PzMapCandidate& f, const Window& win) {
  PcorrespReport out;
  out.report.check = "pcorresp";
  const VertexAlgebra& a = f.w1().algebra();
  std::vector<CheckReport> com, comp, jac;
  for (int v = 0; v < a.dim(); ++v)
    for (int x = 0; x < f.w1().dim(); ++x)
      for (int y = 0; y < f.w2().dim(); ++y) {
        const Vec V = Vec::basis(v), X = Vec::basis(x), Y = Vec::basis(y);
        com.push_back(check_im_commutator(f, V, X, Y, win));
        jac.push_back(check_im_jacobi(f, V, X, Y, win));
      }
  const CheckReport c = combine("im-commutator", com);
  if (c.verdict != Verdict::Pass) {
    out.report.verdict = Verdict::Inconclusive;
    out.report.note = "precondition: im-commutator is " + verdict_name(c.verdict);
    return out;
  }
  for (int l = 0; l < f.w3().dim(); ++l) {
    comp.push_back(check_compatibility(f_vee(f, Vec::basis(l)), f.z(), win));
    if (comp.back().failed()) break;
  }
  const CheckReport cr = combine("compatibility", comp);
  const CheckReport jr = combine("im-jacobi", jac);
  out.compatibility = cr.verdict;
  out.jacobi = jr.verdict;
  out.report.points = cr.points + jr.points;
  out.report.escaped = cr.escaped + jr.escaped;
  if (cr.verdict == Verdict::Inconclusive || jr.verdict == Verdict::Inconclusive)
    out.report.verdict = Verdict::Inconclusive;
  else
    out.report.verdict = cr.verdict == jr.verdict ? Verdict::Pass : Verdict::Fail;
  out.report.note = "image compatibility " + verdict_name(cr.verdict) + ", im-jacobi " + verdict_name(jr.verdict);
  if (jr.failed()) out.report.witness = jr.witness;
  else if (cr.failed()) out.report.witness = cr.witness;
  return out;
}

namespace {

class TauDualModule : public Module {
 public:
  TauDualModule(ModulePtr w1, ModulePtr w2, Scalar z, int bound)
      : w1_(std::move(w1)), w2_(std::move(w2)), z_(std::move(z)), bound_(bound) {}

  const VertexAlgebra& algebra() const override { return w1_->algebra(); }
  int dim() const override { return w1_->dim() * w2_->dim(); }
  int weight(int l) const override { return pair_weight(*w1_, *w2_)(l); }
  std::string name(int l) const override {
    return "(" + w1_->name(l / w2_->dim()) + "(x)" + w2_->name(l % w2_->dim()) + ")*";
  }
  std::string space() const override { return pair_space(*w1_, *w2_); }
  int mode_bound(int, int) const override { return bound_; }

  Vec act(int v, int n, int l) const override {
    const auto key = std::make_tuple(v, n, l);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto lam = DualFunctional::finite(w1_, w2_, Vec::basis(l));
    Vec out = tau_restricted(Vec::basis(v), lam, z_, TauForm::Tau0)(make_exponents({{Var::X1, -n - 1}}),
                                                                    all_pair_weights(*w1_, *w2_));
    cache_.emplace(key, out);
    return out;
  }

 private:
  ModulePtr w1_, w2_;
  Scalar z_;
  int bound_;
  mutable std::map<std::tuple<int, int, int>, Vec> cache_;
};

}  // namespace

ModulePtr tau_dual_module(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z, int bound) {
  if (!is_finite_dimensional(*w1) || !is_finite_dimensional(*w2))
    throw std::invalid_argument("tau_dual_module: finite-dimensional case only");
  return std::make_shared<TauDualModule>(w1, w2, z, bound);
}

WarningSpace warning_space(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z, const Window& win) {
  if (!w1->algebra().is_comm_assoc())
    throw std::invalid_argument("warning_space: finite-dimensional comm-assoc case only");
  auto m = tau_dual_module(w1, w2, z);
  const VertexAlgebra& a = w1->algebra();
  std::vector<CheckReport> parts;

  CheckReport tr;
  tr.check = "truncation";
  CheckReport unit;
  unit.check = "unit-action";
  for (int l = 0; l < m->dim() && !tr.failed() && !unit.failed(); ++l) {
    for (int v = 0; v < a.dim(); ++v)
      for (int n = m->mode_bound(v, l) + 1; n <= m->mode_bound(v, l) + 3; ++n) {
        ++tr.points;
        if (Vec r = m->act(v, n, l); !r.is_zero() && !tr.failed()) {
          tr.verdict = Verdict::Fail;
          tr.witness = Witness{{Var::X0, Var::X1}, make_exponents({{Var::X0, v}, {Var::X1, n}}), l, r, Vec{}};
        }
      }
    for (int n = -3; n <= 2; ++n) {
      ++unit.points;
      const Vec got = m->act(a.unit(), n, l);
      const Vec want = n == -1 ? Vec::basis(l) : Vec{};
      if (got != want && !unit.failed()) {
        unit.verdict = Verdict::Fail;
        unit.witness = Witness{{Var::X1}, make_exponents({{Var::X1, n}}), l, got, want};
      }
    }
  }
  parts.push_back(tr);
  parts.push_back(unit);
  for (int u = 0; u < a.dim(); ++u)
    for (int v = 0; v < a.dim(); ++v)
      for (int l = 0; l < m->dim(); ++l) {
        parts.push_back(check_module_jacobi(*m, Vec::basis(u), Vec::basis(v), Vec::basis(l), win));
        if (parts.back().failed()) break;
      }
  WarningSpace out;
  out.report = combine("warning-space", parts);
  out.dim = m->dim();
  out.compatible = compatible_subspace(w1, w2, z);
  out.compatible_dim = static_cast<int>(out.compatible.size());
  out.report.note = "module dim " + std::to_string(out.dim) + ", compatible dim " + std::to_string(out.compatible_dim);
  return out;
}

CheckReport check_compatibility_stable(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z, int lo, int hi) {
  const auto basis = compatible_subspace(w1, w2, z);
  auto m = tau_dual_module(w1, w2, z);
  Echelon span;
  for (const Vec& b : basis) span.insert(b);
  CheckReport rep;
  rep.check = "compatibility-stability";
  const VertexAlgebra& a = w1->algebra();
  for (size_t i = 0; i < basis.size(); ++i)
    for (int v = 0; v < a.dim(); ++v)
      for (int n = lo; n <= hi; ++n) {
        ++rep.points;
        const Vec img = m->act(Vec::basis(v), n, basis[i]);
        if (!span.contains(img)) {
          rep.verdict = Verdict::Fail;
          rep.witness = Witness{{Var::X1}, make_exponents({{Var::X1, n}}), v, img, span.reduce(img)};
          rep.note = "tau image of compatible basis vector " + std::to_string(i) + " leaves the subspace";
          return rep;
        }
      }
  return rep;
}

}  // namespace voacheck
