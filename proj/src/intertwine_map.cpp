#include "voacheck/intertwine.hpp"

#include "voacheck/linalg.hpp"

#include <algorithm>

namespace voacheck {

namespace {

// Only modules over a truncated algebra can have slices beyond what they store.
bool truncated(const Module& m) { return m.algebra().cutoff().has_value(); }

Scalar z_power(const Scalar& z, int k) { return power(z, k); }

}  // namespace

PzMapCandidate::PzMapCandidate(ModulePtr w1, ModulePtr w2, ModulePtr w3, Scalar z, SliceFn slice,
                               std::string label)
    : w1_(std::move(w1)),
      w2_(std::move(w2)),
      w3_(std::move(w3)),
      z_(std::move(z)),
      slice_(std::make_shared<SliceFn>(std::move(slice))),
      label_(std::move(label)),
      cache_(std::make_shared<std::map<std::tuple<int, int, int>, Vec>>()) {
  if (z_ <= 0) throw std::invalid_argument("P(z) map: z must be a positive rational (branch p = 0)");
  if (!(w1_->algebra() == w2_->algebra()) || !(w2_->algebra() == w3_->algebra()))
    throw std::invalid_argument("P(z) map: modules over different algebras");
}

Vec PzMapCandidate::slice(int w1, int w2, int s) const {
  if (s < w3_->min_weight()) return Vec{};
  if (s > w3_->max_weight()) {
    if (truncated(*w3_))
      throw CutoffEscape("P(z) map: weight " + std::to_string(s) + " slice beyond the truncation of " + w3_->space());
    return Vec{};
  }
  const auto key = std::make_tuple(w1, w2, s);
  if (auto it = cache_->find(key); it != cache_->end()) return it->second;
  const Module* m3 = w3_.get();
  Vec v = (*slice_)(w1, w2, s).filtered([m3, s](int l) { return m3->weight(l) == s; });
  cache_->emplace(key, v);
  return v;
}

Vec PzMapCandidate::slice(const Vec& w1, const Vec& w2, int s) const {
  Vec out;
  for (const auto& [a, ca] : w1)
    for (const auto& [b, cb] : w2) out.add(slice(a, b, s), ca * cb);
  return out;
}

PzMapCandidate io_to_map(const IntertwinerCandidate& c, const Scalar& z) {
  const IntertwinerCandidate cc = c;
  const Scalar zz = z;
  return PzMapCandidate(
      c.w1_ptr(), c.w2_ptr(), c.w3_ptr(), z,
      [cc, zz](int a, int b, int s) {
        const int n = cc.w1().weight(a) + cc.w2().weight(b) - s - 1;
        return z_power(zz, -n - 1) * cc.mode(a, n, b);
      },
      "io_to_map(" + c.label() + ")");
}

IntertwinerCandidate map_to_io(const PzMapCandidate& f) {
  const PzMapCandidate ff = f;
  return IntertwinerCandidate(
      f.w1_ptr(), f.w2_ptr(), f.w3_ptr(),
      [ff](int a, int n, int b) {
        const int s = ff.w1().weight(a) + ff.w2().weight(b) - n - 1;
        return z_power(ff.z(), n + 1) * ff.slice(a, b, s);
      },
      [ff](int a, int b) { return ff.w1().weight(a) + ff.w2().weight(b) - 1 - ff.w3().min_weight(); },
      "map_to_io(" + f.label() + ")");
}

ImSides im_jacobi_sides(const PzMapCandidate& f, const Vec& v, const Vec& w1, const Vec& w2) {
  const PzMapCandidate ff = f;
  const Module& m3 = f.w3();
  const WeightFn wt = m3.weight_fn();
  const std::string space = m3.space();
  const int min3 = m3.min_weight();
  const VertexAlgebra& a = f.w1().algebra();
  int vmin = 0;
  bool first = true;
  for (const auto& [l, c] : v) {
    vmin = first ? a.weight(l) : std::min(vmin, a.weight(l));
    first = false;
  }

  // Y3(v,x1)F(w1 (x) w2): at x1^k and slice t the source slice is t - wt v - k.
  CoefficientOracle g(
      {Var::X1},
      [ff, v, w1, w2, min3](const Exponents& e, const IntRange& ws) {
        const int k = at(e, Var::X1);
        const VertexAlgebra& alg = ff.w1().algebra();
        Vec out;
        for (int t = ws.lo; t <= ws.hi; ++t)
          for (const auto& [l, c] : v) {
            const int s = t - alg.weight(l) - k;
            if (s < min3) continue;
            Vec src = ff.slice(w1, w2, s);
            if (src.is_zero()) continue;
            out.add(ff.w3().act(Vec::basis(l), -k - 1, src).filtered([&](int x) { return ff.w3().weight(x) == t; }),
                    c);
          }
        return out;
      },
      wt, space,
      [vmin, min3](Var, const IntRange& ws) { return Bound{std::nullopt, ws.hi - vmin - min3}; });

  const int lo2 = -f.w2().mode_bound(v, w2) - 1;
  CoefficientOracle h(
      {Var::X1},
      [ff, v, w1, w2](const Exponents& e, const IntRange& ws) {
        Vec x = ff.w2().act(v, -at(e, Var::X1) - 1, w2);
        Vec out;
        if (x.is_zero()) return out;
        for (int t = ws.lo; t <= ws.hi; ++t) out.add(ff.slice(w1, x, t));
        return out;
      },
      wt, space, [lo2](Var, const IntRange&) { return Bound{lo2, std::nullopt}; });

  const int lo1 = -f.w1().mode_bound(v, w1) - 1;
  CoefficientOracle i(
      {Var::X0},
      [ff, v, w1, w2](const Exponents& e, const IntRange& ws) {
        Vec x = ff.w1().act(v, -at(e, Var::X0) - 1, w1);
        Vec out;
        if (x.is_zero()) return out;
        for (int t = ws.lo; t <= ws.hi; ++t) out.add(ff.slice(x, w2, t));
        return out;
      },
      wt, space, [lo1](Var, const IntRange&) { return Bound{lo1, std::nullopt}; });

  const Scalar z = f.z();
  auto right = multiply(DeltaKernel::make(DeltaKernelKind::PzRight, z), g);
  auto middle = multiply(DeltaKernel::make(DeltaKernelKind::PzMiddle, z), h);
  return ImSides{scale_and_add(-1, middle, right), multiply(DeltaKernel::make(DeltaKernelKind::PzLeft, z), i)};
}

CheckReport check_im_commutator(const PzMapCandidate& f, const Vec& v, const Vec& w1, const Vec& w2,
                                const Window& win) {
  auto s = im_jacobi_sides(f, v, w1, w2);
  return equal_on_window(residue(s.product, Var::X0), residue(s.iterate, Var::X0), win, "im-commutator");
}

CheckReport check_im_jacobi(const PzMapCandidate& f, const Vec& v, const Vec& w1, const Vec& w2,
                            const Window& win) {
  auto s = im_jacobi_sides(f, v, w1, w2);
  return equal_on_window(s.product, s.iterate, win, "im-jacobi");
}

namespace {

// F with F(a (x) b) given by table[a * dim(W2) + b] in W3, projected to slices.
PzMapCandidate table_map(const ModulePtr& w1, const ModulePtr& w2, const ModulePtr& w3, const Scalar& z,
                         std::shared_ptr<std::vector<Vec>> table, std::string label) {
  const int d2 = w2->dim();
  return PzMapCandidate(
      w1, w2, w3, z, [table, d2](int a, int b, int) { return (*table)[a * d2 + b]; }, std::move(label));
}

}  // namespace

std::vector<PzMapCandidate> im_commutator_space(const ModulePtr& w1, const ModulePtr& w2, const ModulePtr& w3,
                                                const Scalar& z, const Window& win) {
  for (const ModulePtr& m : {w1, w2, w3})
    if (m->algebra().cutoff()) throw std::invalid_argument("im_commutator_space: finite-dimensional modules only");
  const int d1 = w1->dim(), d2 = w2->dim(), d3 = w3->dim();
  const int n = d1 * d2 * d3;
  const VertexAlgebra& a = w1->algebra();
  std::map<std::tuple<int, int, int, int, int>, Vec> rows;  // (v, x, y, x1, label) -> row
  const IntRange xs = win.ranges[static_cast<int>(Var::X1)].value_or(IntRange{-3, 3});
  for (int i = 0; i < n; ++i) {
    auto table = std::make_shared<std::vector<Vec>>(d1 * d2);
    (*table)[i / d3] = Vec::basis(i % d3);
    const PzMapCandidate f = table_map(w1, w2, w3, z, table, "unit");
    for (int v = 0; v < a.dim(); ++v)
      for (int x = 0; x < d1; ++x)
        for (int y = 0; y < d2; ++y) {
          auto s = im_jacobi_sides(f, Vec::basis(v), Vec::basis(x), Vec::basis(y));
          auto defect = scale_and_add(-1, residue(s.iterate, Var::X0), residue(s.product, Var::X0));
          for (int k = xs.lo; k <= xs.hi; ++k)
            for (const auto& [l, c] : defect(make_exponents({{Var::X1, k}}), win.weights))
              rows[{v, x, y, k, l}].add(i, c);
        }
  }
  std::vector<Vec> eqs;
  for (auto& [key, row] : rows)
    if (!row.is_zero()) eqs.push_back(row);
  std::vector<PzMapCandidate> out;
  int idx = 0;
  for (const Vec& sol : null_space(eqs, n)) {
    auto table = std::make_shared<std::vector<Vec>>(d1 * d2);
    for (const auto& [i, c] : sol) (*table)[i / d3].add(i % d3, c);
    out.push_back(table_map(w1, w2, w3, z, table, "commutator-map" + std::to_string(idx++)));
  }
  return out;
}

PzMapCandidate combine_maps(const std::vector<PzMapCandidate>& maps, const std::vector<Scalar>& c) {
  if (maps.empty() || maps.size() != c.size()) throw std::invalid_argument("combine_maps: size mismatch");
  const std::vector<PzMapCandidate> ms = maps;
  const std::vector<Scalar> cs = c;
  return PzMapCandidate(
      maps[0].w1_ptr(), maps[0].w2_ptr(), maps[0].w3_ptr(), maps[0].z(),
      [ms, cs](int a, int b, int s) {
        Vec out;
        for (size_t i = 0; i < ms.size(); ++i)
          if (cs[i] != 0) out.add(ms[i].slice(a, b, s), cs[i]);
        return out;
      },
      "combination");
}

}  // namespace voacheck
