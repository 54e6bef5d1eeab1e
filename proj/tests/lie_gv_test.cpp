#include "voacheck/lie_gv.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace voacheck;

namespace {

VertexAlgebra two_dim() {
  CommAssocSpec s;
  s.names = {"1", "a"};
  s.unit = 0;
  s.table[{1, 1}] = Vec::basis(0);
  return VertexAlgebra::comm_assoc(s);
}

Vec e(int i) { return Vec::basis(i); }

GvElement key(int l, int n) {
  GvElement x;
  x.add({l, n}, 1);
  return x;
}

// Basis keys of g(V) built from labels of weight <= max_wt and modes in [-1, max_n].
std::vector<GvKey> low_keys(const GvAlgebra& g, int max_wt, int max_n) {
  std::vector<GvKey> out;
  const auto& a = g.algebra();
  for (int l = 0; l < a.dim(); ++l)
    if (a.weight(l) <= max_wt)
      for (int n = -1; n <= max_n; ++n)
        if (g.is_basis_key({l, n}) && !g.normal_form(l, n).is_zero()) out.push_back({l, n});
  return out;
}

}  // namespace

TEST(NormalForm, UnitModesVanishAwayFromMinusOne) {
  GvAlgebra g(VertexAlgebra::virasoro(Scalar(1, 2), 6));
  const int one = g.algebra().unit();
  for (int n = -5; n <= 5; ++n) {
    if (n == -1) continue;
    EXPECT_TRUE(g.normal_form(one, n).is_zero()) << n;
  }
  EXPECT_EQ(g.normal_form(one, -1), key(one, -1));
  EXPECT_FALSE(g.v_to_gvneg(e(one)).is_zero());
  EXPECT_TRUE(g.v_to_gvneg(Vec{}).is_zero());
}

TEST(NormalForm, CommAssocKeepsOnlyMinusOne) {
  GvAlgebra g(two_dim());
  for (int l = 0; l < 2; ++l)
    for (int n = -4; n <= 4; ++n) {
      if (n == -1)
        EXPECT_EQ(g.normal_form(l, n), key(l, n));
      else
        EXPECT_TRUE(g.normal_form(l, n).is_zero()) << l << " " << n;
    }
}

TEST(NormalForm, QuotientRelationHolds) {
  // (Dv)(n) + n v(n-1) = 0 in g(V)
  auto vir = VertexAlgebra::virasoro(Scalar(3, 4), 7);
  GvAlgebra g(vir);
  int total = 0, escaped = 0;
  for (int l = 0; l < vir.dim(); ++l) {
    if (vir.weight(l) >= 7) continue;
    const Vec d = vir.D(e(l));
    for (int n = -4; n <= 5; ++n) {
      ++total;
      try {
        GvElement x = g.normal_form(d, n);
        x.add(g.normal_form(e(l), n - 1), Scalar(n));
        EXPECT_TRUE(x.is_zero()) << vir.name(l) << " n=" << n << ": " << g.describe(x);
      } catch (const CutoffEscape&) {
        ++escaped;
      }
    }
  }
  EXPECT_LT(escaped * 2, total);
}

TEST(NormalForm, MinusOneEmbeddingIsInjective) {
  auto vir = VertexAlgebra::virasoro(0, 6);
  GvAlgebra g(vir);
  std::set<GvKey> seen;
  for (int l = 0; l < vir.dim(); ++l) {
    GvElement x = g.v_to_gvneg(e(l));
    ASSERT_EQ(x.size(), 1u);
    seen.insert(x.begin()->first);
  }
  EXPECT_EQ(static_cast<int>(seen.size()), vir.dim());
}

TEST(Bracket, CommAssocIsAbelian) {
  GvAlgebra g(two_dim());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) EXPECT_TRUE(g.bracket(key(a, -1), key(b, -1)).is_zero());
}

TEST(Bracket, VirasoroRelation) {
  // omega(k+1) is L(k): [L(m), L(n)] = (m-n) L(m+n) + (m^3-m)/12 c delta 1(-1)
  const Scalar c(5, 3);
  auto vir = VertexAlgebra::virasoro(c, 6);
  GvAlgebra g(vir);
  const int w = vir.find("L(-2)1").value();
  const int one = vir.unit();
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      GvElement lhs = g.bracket(g.normal_form(w, m + 1), g.normal_form(w, n + 1));
      GvElement rhs;
      rhs.add(g.normal_form(w, m + n + 1), Scalar(m - n));
      if (m + n == 0) rhs.add({one, -1}, c * frac(long(m) * m * m - m, 12));
      EXPECT_EQ(lhs, rhs) << m << " " << n << ": " << g.describe(lhs) << " vs " << g.describe(rhs);
    }
}

TEST(Bracket, UnitIsCentral) {
  auto vir = VertexAlgebra::virasoro(Scalar(1, 2), 6);
  GvAlgebra g(vir);
  for (const GvKey& k : low_keys(g, 4, 3)) {
    EXPECT_TRUE(g.bracket(key(vir.unit(), -1), key(k.first, k.second)).is_zero()) << g.name(k);
    EXPECT_TRUE(g.bracket(key(k.first, k.second), key(vir.unit(), -1)).is_zero()) << g.name(k);
  }
}

TEST(Bracket, LieAxiomsAndGrading) {
  auto vir = VertexAlgebra::virasoro(Scalar(-2, 7), 7);
  GvAlgebra g(vir);
  auto keys = low_keys(g, 3, 2);
  ASSERT_GE(keys.size(), 6u);
  int total = 0, escaped = 0;
  for (const auto& p : keys)
    for (const auto& q : keys) {
      GvElement x = key(p.first, p.second), y = key(q.first, q.second);
      GvElement xy = g.bracket(x, y);
      GvElement s = g.bracket(y, x);
      s.add(xy);
      EXPECT_TRUE(s.is_zero()) << g.name(p) << " " << g.name(q);
      EXPECT_TRUE(g.contains(GvSubalgebra::piece(g.degree(p) + g.degree(q)), xy)) << g.describe(xy);
      for (const auto& r : keys) {
        GvElement z = key(r.first, r.second);
        ++total;
        try {
          GvElement j = g.bracket(x, g.bracket(y, z));
          j.add(g.bracket(y, g.bracket(z, x)));
          j.add(g.bracket(z, g.bracket(x, y)));
          EXPECT_TRUE(j.is_zero()) << g.name(p) << " " << g.name(q) << " " << g.name(r);
        } catch (const CutoffEscape&) {
          ++escaped;
        }
      }
    }
  EXPECT_LT(escaped * 2, total);
}

TEST(Bracket, ActsAsCommutatorOnAdjoint) {
  // The adjoint module is a g(V)-module: [x,y] acts as xy - yx.
  auto vir = VertexAlgebra::virasoro(Scalar(7, 2), 8);
  auto adj = adjoint_module(vir);
  GvAlgebra g(vir);
  auto keys = low_keys(g, 4, 2);
  for (const auto& p : keys)
    for (const auto& q : keys)
      for (int w = 0; w < vir.dim(); ++w) {
        if (vir.weight(w) + g.degree(p) + g.degree(q) > 8 || vir.weight(w) > 4) continue;
        GvElement x = key(p.first, p.second), y = key(q.first, q.second);
        Vec lhs = g.act(*adj, g.bracket(x, y), e(w));
        Vec rhs = g.act(*adj, x, g.act(*adj, y, e(w))) - g.act(*adj, y, g.act(*adj, x, e(w)));
        EXPECT_EQ(lhs, rhs) << g.name(p) << " " << g.name(q) << " " << vir.name(w);
      }
}

TEST(Subalgebras, SplitAndMembership) {
  auto vir = VertexAlgebra::virasoro(1, 6);
  GvAlgebra g(vir);
  const int w = vir.find("L(-2)1").value();
  GvElement x = g.normal_form(w, -1);
  x.add(g.normal_form(w, 2), 3);
  x.add(g.normal_form(w, 0), -1);
  auto [neg, nonneg] = g.split(x);
  EXPECT_TRUE(g.contains(GvSubalgebra::neg(), neg));
  EXPECT_TRUE(g.contains(GvSubalgebra::non_neg(), nonneg));
  EXPECT_FALSE(g.contains(GvSubalgebra::non_neg(), x));
  GvElement sum = neg;
  sum.add(nonneg);
  EXPECT_EQ(sum, x);
  // L(1) has degree -1, L(-1) degree 1, omega(-1) = L(-2) degree 2
  EXPECT_TRUE(g.contains(GvSubalgebra::minus(), g.normal_form(w, 2)));
  EXPECT_TRUE(g.contains(GvSubalgebra::plus(), g.normal_form(w, 0)));
  EXPECT_TRUE(g.contains(GvSubalgebra::piece(0), g.normal_form(w, 1)));
  EXPECT_TRUE(g.contains(GvSubalgebra::piece(2), g.normal_form(w, -1)));
}

TEST(Orbit, NonzeroCentralChargeCertificate) {
  const Scalar c(1, 2);
  auto vir = VertexAlgebra::virasoro(c, 6);
  auto res = gv_ge0_orbit(*adjoint_module(vir));
  ASSERT_TRUE(res.unit_in_orbit.has_value());
  const auto& cert = *res.unit_in_orbit;
  const int w = vir.find("L(-2)1").value();
  EXPECT_EQ(cert.v, w);
  EXPECT_EQ(cert.n, 3);
  EXPECT_EQ(cert.w, w);
  EXPECT_EQ(cert.coeff, 2 / c);
  EXPECT_EQ(vir.mode(cert.v, cert.n, cert.w), Vec::basis(vir.unit(), 1 / cert.coeff));
  EXPECT_FALSE(res.unit_excluded);
}

TEST(Orbit, ZeroCentralChargeExcludesUnit) {
  auto vir = VertexAlgebra::virasoro(0, 6);
  auto res = gv_ge0_orbit(*adjoint_module(vir));
  EXPECT_FALSE(res.unit_in_orbit.has_value());
  ASSERT_TRUE(res.exclusion.has_value());
  EXPECT_TRUE(res.exclusion->passed());
  EXPECT_TRUE(res.unit_excluded);
  for (const Vec& v : res.spanning) EXPECT_EQ(v[vir.unit()], 0);
  ASSERT_FALSE(res.slices.empty());
  EXPECT_EQ(res.slices.front().weight, 0);
  EXPECT_EQ(res.slices.front().reached, 0);
}

TEST(Orbit, CommAssocOrbitIsZero) {
  auto res = gv_ge0_orbit(*adjoint_module(two_dim()));
  EXPECT_TRUE(res.spanning.empty());
  EXPECT_TRUE(res.unit_excluded);
  for (const auto& s : res.slices) EXPECT_FALSE(s.inconclusive);
}

namespace {

// C = V/V_+ and theta: 1~ -> 1.
struct LineIntoVacuum {
  VertexAlgebra vir = VertexAlgebra::virasoro(0, 6);
  ModulePtr adj = adjoint_module(vir);
  std::shared_ptr<const QuotientModule> line;
  std::vector<Vec> theta;
  LineIntoVacuum() {
    std::vector<Vec> plus;
    for (int b = 0; b < vir.dim(); ++b)
      if (vir.weight(b) >= 1) plus.push_back(e(b));
    line = quotient_module(adj, plus, 1);
    theta = {e(vir.unit())};
  }
};

}  // namespace

TEST(Homomorphisms, LineIntoVacuum) {
  LineIntoVacuum f;
  ASSERT_EQ(f.line->dim(), 1);
  EXPECT_TRUE(is_gv_ge0_hom(*f.line, *f.adj, f.theta).passed());
  auto rep = is_v_hom(*f.line, *f.adj, f.theta);
  ASSERT_TRUE(rep.failed()) << describe(rep);
  EXPECT_EQ(at(rep.witness->exponents, Var::X0), f.vir.find("L(-2)1").value());
  EXPECT_EQ(at(rep.witness->exponents, Var::X1), -1);
  EXPECT_TRUE(rep.witness->left.is_zero());
  EXPECT_EQ(rep.witness->right, f.vir.omega());
}

TEST(Homomorphisms, IdentityAndScalarMultiples) {
  auto vir = VertexAlgebra::virasoro(Scalar(1, 3), 5);
  auto adj = adjoint_module(vir);
  std::vector<Vec> id, twice;
  for (int b = 0; b < vir.dim(); ++b) {
    id.push_back(e(b));
    twice.push_back(Vec::basis(b, 2));
  }
  EXPECT_NE(is_gv_ge0_hom(*adj, *adj, id).verdict, Verdict::Fail);
  EXPECT_NE(is_v_hom(*adj, *adj, id).verdict, Verdict::Fail);
  EXPECT_NE(is_v_hom(*adj, *adj, twice).verdict, Verdict::Fail);
  auto v = two_dim();
  auto m = adjoint_module(v);
  EXPECT_TRUE(is_v_hom(*m, *m, {e(0), e(1)}).passed());
  EXPECT_TRUE(is_v_hom(*m, *m, {Vec::basis(0, 3), Vec::basis(1, 3)}).passed());
  // multiplication by a commutes with the action; 1 -> 1, a -> 2a does not
  EXPECT_TRUE(is_v_hom(*m, *m, {e(1), e(0)}).passed());
  EXPECT_TRUE(is_v_hom(*m, *m, {e(0), Vec::basis(1, 2)}).failed());
}

TEST(Induced, VacuumOverTwoDimIsPolynomialRing) {
  auto v = two_dim();
  InducedSpec spec;
  spec.degree_bound = 3;
  auto w = induced_level_one_module(v, spec);
  ASSERT_EQ(w->dim(), 4);  // 1, t, t^2, t^3 with t = a(-1)
  for (int k = 0; k < 4; ++k) EXPECT_EQ(w->pbw_degree(k), k);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(w->act(1, -1, k), e(k + 1));
  EXPECT_THROW(w->act(1, -1, 3), CutoffEscape);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(w->act(0, -1, k), e(k));  // level one
    for (int n : {-3, -2, 0, 1, 2}) EXPECT_TRUE(w->act(1, n, k).is_zero());
  }
}

TEST(Induced, VacuumOverTwoDimIsNotWeakModule) {
  auto v = two_dim();
  InducedSpec spec;
  spec.degree_bound = 2;
  auto w = induced_level_one_module(v, spec);
  auto win = Window::cube({Var::X0, Var::X1, Var::X2}, {-2, 2}, {0, 0});
  EXPECT_TRUE(check_module_commutator(*w, e(1), e(1), e(0),
                                      Window{}.set(Var::X1, {-3, 3}).set(Var::X2, {-3, 3}))
                  .passed());
  auto rep = check_not_weak_module(*w, win);
  ASSERT_TRUE(rep.passed()) << describe(rep);
  ASSERT_TRUE(rep.witness.has_value());
  // 1(-1) vs a(-1)a(-1) on the vacuum
  EXPECT_NE(rep.witness->left, rep.witness->right);
}

TEST(Induced, AdjointHasNoWitness) {
  auto v = two_dim();
  auto rep = check_not_weak_module(*adjoint_module(v), Window::cube({Var::X0, Var::X1, Var::X2}, {-2, 2}, {0, 0}));
  EXPECT_EQ(rep.verdict, Verdict::Inconclusive);
  EXPECT_FALSE(rep.witness.has_value());
}

TEST(Induced, VirasoroVacuumDimensionsMatchSymmetricAlgebra) {
  const int cut = 6;
  auto vir = VertexAlgebra::virasoro(0, cut);
  InducedSpec spec;
  spec.weight_cutoff = cut;
  spec.degree_bound = cut;
  auto w = induced_level_one_module(vir, spec);
  // sym[s] = number of multisets of basis vectors of V_+ of total weight s
  std::vector<long> sym(cut + 1, 0);
  sym[0] = 1;
  for (int l = 0; l < vir.dim(); ++l) {
    const int d = vir.weight(l);
    if (l == vir.unit()) continue;
    for (int s = d; s <= cut; ++s) sym[s] += sym[s - d];
  }
  for (int s = 0; s <= cut; ++s)
    EXPECT_EQ(static_cast<long>(w->basis_of_weight(s).size()), sym[s]) << "weight " << s;
}

TEST(Induced, VirasoroVacuumCommutatorHoldsJacobiFails) {
  auto vir = VertexAlgebra::virasoro(0, 4);
  InducedSpec spec;
  spec.weight_cutoff = 4;
  spec.degree_bound = 2;
  auto w = induced_level_one_module(vir, spec);
  const Vec om = vir.omega();
  const Vec vac = e(0);
  auto com = check_module_commutator(*w, om, om, vac, Window{}.set(Var::X1, {-2, 1}).set(Var::X2, {-2, 1}));
  EXPECT_NE(com.verdict, Verdict::Fail) << describe(com, w->name_fn());
  auto jac = check_module_jacobi(*w, om, om, vac, Window::cube({Var::X0, Var::X1, Var::X2}, {-2, 1}, {0, 4}));
  EXPECT_TRUE(jac.failed()) << describe(jac, w->name_fn());
}

TEST(Induced, LowestWeightModuleStartsAtV_r) {
  auto vir = VertexAlgebra::virasoro(Scalar(1, 2), 6);
  InducedSpec spec;
  spec.variant = InducedSpec::Variant::Lowest;
  spec.lowest = 0;
  spec.weight_cutoff = 3;
  spec.generator_weight = 4;
  spec.degree_bound = 3;
  auto m = induced_level_one_module(vir, spec);
  EXPECT_EQ(m->min_weight(), 0);
  auto bottom = m->basis_of_weight(0);
  ASSERT_EQ(bottom.size(), 1u);
  EXPECT_EQ(m->pbw_degree(bottom[0]), 0);
  // 1(-1) is the identity and L(0) kills the bottom
  EXPECT_EQ(m->act(vir.unit(), -1, bottom[0]), e(bottom[0]));
  EXPECT_TRUE(m->act(vir.find("L(-2)1").value(), 1, bottom[0]).is_zero());

  auto v = two_dim();
  spec.generator_weight = 0;
  auto m2 = induced_level_one_module(v, spec);
  EXPECT_EQ(m2->dim(), 2);  // M = V_(0) = V
  EXPECT_EQ(m2->act(1, -1, 0), e(1));
}

TEST(Homomorphisms, SolvedSpaceDimensions) {
  auto one = VertexAlgebra::virasoro(1, 6);
  auto v1 = adjoint_module(one);
  auto s1 = gv_ge0_hom_space(*v1, *v1);
  ASSERT_EQ(s1.size(), 1u);  // only multiples of the identity when c != 0
  EXPECT_NE(is_v_hom(*v1, *v1, s1[0]).verdict, Verdict::Fail);
  auto vv = direct_sum(v1, v1);
  auto s2 = gv_ge0_hom_space(*vv, *vv);
  EXPECT_EQ(s2.size(), 4u);
  for (const auto& th : s2) {
    EXPECT_NE(is_gv_ge0_hom(*vv, *vv, th).verdict, Verdict::Fail);
    EXPECT_NE(is_v_hom(*vv, *vv, th).verdict, Verdict::Fail);
  }
  auto zero = VertexAlgebra::virasoro(0, 6);
  auto v0 = adjoint_module(zero);
  auto s0 = gv_ge0_hom_space(*v0, *v0);
  ASSERT_EQ(s0.size(), 2u);  // the identity and the projection onto the unit line
  int not_v_hom = 0;
  for (const auto& th : s0) {
    EXPECT_NE(is_gv_ge0_hom(*v0, *v0, th).verdict, Verdict::Fail);
    not_v_hom += is_v_hom(*v0, *v0, th).failed();
  }
  EXPECT_EQ(not_v_hom, 2);  // neither basis element alone commutes with omega_{-1}
}
