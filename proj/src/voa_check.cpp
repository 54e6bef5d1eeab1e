#include "voacheck/voa.hpp"

#include <algorithm>

namespace voacheck {

namespace {

int algebra_bound(const VertexAlgebra& a, const Vec& u, const Vec& v) {
  int best = -1;
  for (const auto& [i, ci] : u)
    for (const auto& [j, cj] : v) best = std::max(best, a.mode_bound(i, j));
  return best;
}

}  // namespace

CoefficientOracle module_field(const Module& m, const Vec& v, const Vec& w) {
  const Module* mp = &m;
  const int lo = -m.mode_bound(v, w) - 1;
  return CoefficientOracle(
      {Var::X},
      [mp, v, w](const Exponents& e, const IntRange&) { return mp->act(v, -at(e, Var::X) - 1, w); },
      m.weight_fn(), m.space(),
      [lo](Var, const IntRange&) { return Bound{lo, std::nullopt}; });
}

CoefficientOracle y_o_action(const Module& m, const Vec& v, const Vec& w) {
  const VertexAlgebra& a = m.algebra();
  const int wt = homogeneous_weight(v, a.weight_fn());
  std::vector<std::pair<Scalar, Vec>> terms;  // ((-1)^wt / k!, L(1)^k v)
  Vec cur = v;
  for (int k = 0; !cur.is_zero(); ++k) {
    terms.emplace_back(Scalar(sign_power(wt)) / factorial(k), cur);
    cur = a.L(1, cur);
  }
  int hi = -1'000'000;
  for (std::size_t k = 0; k < terms.size(); ++k)
    hi = std::max(hi, m.mode_bound(terms[k].second, w) + static_cast<int>(k) - 2 * wt + 1);
  const Module* mp = &m;
  return CoefficientOracle(
      {Var::X},
      [mp, terms, w, wt](const Exponents& e, const IntRange&) {
        Vec out;
        for (std::size_t k = 0; k < terms.size(); ++k)
          out.add(mp->act(terms[k].second, at(e, Var::X) - static_cast<int>(k) + 2 * wt - 1, w),
                  terms[k].first);
        return out;
      },
      m.weight_fn(), m.space(), [hi](Var, const IntRange&) { return Bound{std::nullopt, hi}; });
}

CoefficientOracle contragredient_action(const Module& m, const Vec& v, const Vec& alpha) {
  const Module* mp = &m;
  return CoefficientOracle(
      {Var::X},
      [mp, v, alpha](const Exponents& e, const IntRange& weights) {
        Vec out;
        for (int b = 0; b < mp->dim(); ++b) {
          if (!weights.contains(mp->weight(b))) continue;
          Vec y = y_o_action(*mp, v, Vec::basis(b))(e, {-1'000'000, 1'000'000});
          out.add(b, alpha.dot(y));
        }
        return out;
      },
      m.weight_fn(), "dual(" + m.space() + ")");
}

JacobiSides module_jacobi_sides(const Module& m, const Vec& u, const Vec& v, const Vec& w) {
  const Module* mp = &m;
  const VertexAlgebra& a = m.algebra();
  const int lo_v = -m.mode_bound(v, w) - 1;
  const int lo_u = -m.mode_bound(u, w) - 1;
  const int lo_uv = -algebra_bound(a, u, v) - 1;

  CoefficientOracle p12(
      {Var::X1, Var::X2},
      [mp, u, v, w](const Exponents& e, const IntRange&) {
        Vec inner = mp->act(v, -at(e, Var::X2) - 1, w);
        return mp->act(u, -at(e, Var::X1) - 1, inner);
      },
      m.weight_fn(), m.space(), [lo_v](Var x, const IntRange&) {
        return x == Var::X2 ? Bound{lo_v, std::nullopt} : Bound{};
      });
  CoefficientOracle p21(
      {Var::X1, Var::X2},
      [mp, u, v, w](const Exponents& e, const IntRange&) {
        Vec inner = mp->act(u, -at(e, Var::X1) - 1, w);
        return mp->act(v, -at(e, Var::X2) - 1, inner);
      },
      m.weight_fn(), m.space(), [lo_u](Var x, const IntRange&) {
        return x == Var::X1 ? Bound{lo_u, std::nullopt} : Bound{};
      });
  CoefficientOracle iter(
      {Var::X0, Var::X2},
      [mp, u, v, w](const Exponents& e, const IntRange&) {
        Vec uv = mp->algebra().mode(u, -at(e, Var::X0) - 1, v);
        return mp->act(uv, -at(e, Var::X2) - 1, w);
      },
      m.weight_fn(), m.space(), [lo_uv](Var x, const IntRange&) {
        return x == Var::X0 ? Bound{lo_uv, std::nullopt} : Bound{};
      });

  auto left = multiply(DeltaKernel::make(DeltaKernelKind::JacobiLeft), p12);
  auto middle = multiply(DeltaKernel::make(DeltaKernelKind::JacobiMiddle), p21);
  return JacobiSides{multiply(DeltaKernel::make(DeltaKernelKind::JacobiRight), iter),
                     scale_and_add(-1, middle, left)};
}

CheckReport check_module_commutator(const Module& m, const Vec& u, const Vec& v, const Vec& w,
                                    const Window& win) {
  auto sides = module_jacobi_sides(m, u, v, w);
  return equal_on_window(residue(sides.iterate, Var::X0), residue(sides.product, Var::X0), win,
                         "module-commutator");
}

CheckReport check_module_jacobi(const Module& m, const Vec& u, const Vec& v, const Vec& w,
                                const Window& win) {
  auto sides = module_jacobi_sides(m, u, v, w);
  return equal_on_window(sides.iterate, sides.product, win, "module-jacobi");
}

CheckReport check_associativity_formula(const Module& m, const Vec& u, const Vec& v, const Vec& w,
                                        int p, int q) {
  CheckReport rep;
  rep.check = "associativity-formula";
  rep.points = 1;
  const VertexAlgebra& a = m.algebra();
  const int l = std::max(0, m.mode_bound(u, w) + 1);
  const int mm = std::max(0, m.mode_bound(v, w) - q);
  try {
    Vec lhs = m.act(u, p, m.act(v, q, w));
    Vec rhs;
    for (int i = 0; i <= mm; ++i)
      for (int j = 0; j <= l; ++j) {
        Scalar c = binomial_coeff(p - l, i) * binomial_coeff(l, j);
        if (c == 0) continue;
        rhs.add(m.act(a.mode(u, p - l - i + j, v), q + l + i - j, w), c);
      }
    rep.note = "l=" + std::to_string(l) + " m=" + std::to_string(mm);
    if (!(lhs == rhs)) {
      rep.verdict = Verdict::Fail;
      rep.witness = Witness{{Var::X0, Var::X1}, make_exponents({{Var::X0, p}, {Var::X1, q}}), 0, lhs, rhs};
      rep.witness->weight = homogeneous_weight(lhs.is_zero() ? rhs : lhs, m.weight_fn());
    }
  } catch (const CutoffEscape& e) {
    rep.escaped = 1;
    rep.verdict = Verdict::Inconclusive;
    rep.note = e.what();
  }
  return rep;
}

CheckReport check_ideal(const VertexAlgebra& a, const std::vector<Vec>& s) {
  CheckReport rep;
  rep.check = "ideal";
  Echelon span;
  for (const Vec& x : s) span.insert(x);
  const int top = a.max_weight();
  auto fail = [&](int u, int n, const Vec& r, const std::string& what) {
    rep.verdict = Verdict::Fail;
    rep.witness = Witness{{Var::X0, Var::X1}, make_exponents({{Var::X0, u}, {Var::X1, n}}),
                          homogeneous_weight(r, a.weight_fn()), r, span.reduce(r)};
    rep.note = what + " leaves the subspace";
  };
  for (const Vec& x : s) {
    if (x.is_zero()) continue;
    const int wx = homogeneous_weight(x, a.weight_fn());
    for (int u = 0; u < a.dim(); ++u) {
      const int hi = algebra_bound(a, Vec::basis(u), x);
      const int lo = a.weight(u) + wx - 1 - top;
      for (int n = hi; n >= lo; --n) {
        ++rep.points;
        Vec r;
        try {
          r = a.mode(Vec::basis(u), n, x);
        } catch (const CutoffEscape&) {
          ++rep.escaped;
          continue;
        }
        if (!span.contains(r)) {
          fail(u, n, r, a.name(u) + "_" + std::to_string(n) + " applied to a spanning vector");
          return rep;
        }
      }
    }
    if (wx + 1 > top) continue;
    ++rep.points;
    try {
      Vec d = a.D(x);
      if (!span.contains(d)) {
        fail(a.unit(), -2, d, "D applied to a spanning vector");
        return rep;
      }
    } catch (const CutoffEscape&) {
      ++rep.escaped;
    }
  }
  if (rep.escaped) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = std::to_string(rep.escaped) + " products beyond cutoff";
  }
  return rep;
}

}  // namespace voacheck
