#include "voacheck/intertwine.hpp"

#include <algorithm>
#include <random>

namespace voacheck {

IntertwinerCandidate::IntertwinerCandidate(ModulePtr w1, ModulePtr w2, ModulePtr w3, ModeFn mode,
                                           BoundFn bound, std::string label)
    : w1_(std::move(w1)),
      w2_(std::move(w2)),
      w3_(std::move(w3)),
      mode_(std::make_shared<ModeFn>(std::move(mode))),
      bound_(std::move(bound)),
      label_(std::move(label)),
      cache_(std::make_shared<std::map<std::tuple<int, int, int>, Vec>>()) {
  if (!(w1_->algebra() == w2_->algebra()) || !(w2_->algebra() == w3_->algebra()))
    throw std::invalid_argument("intertwiner candidate: modules over different algebras");
}

Vec IntertwinerCandidate::mode(int w1, int n, int w2) const {
  if (n > bound_(w1, w2)) return Vec{};
  const auto key = std::make_tuple(w1, n, w2);
  if (auto it = cache_->find(key); it != cache_->end()) return it->second;
  Vec v = (*mode_)(w1, n, w2);
  cache_->emplace(key, v);
  return v;
}

Vec IntertwinerCandidate::mode(const Vec& w1, int n, const Vec& w2) const {
  Vec out;
  for (const auto& [a, ca] : w1)
    for (const auto& [b, cb] : w2) out.add(mode(a, n, b), ca * cb);
  return out;
}

int IntertwinerCandidate::bound(const Vec& w1, const Vec& w2) const {
  int best = -1;
  for (const auto& [a, ca] : w1)
    for (const auto& [b, cb] : w2) best = std::max(best, bound_(a, b));
  return best;
}

CoefficientOracle IntertwinerCandidate::field(const Vec& w1, const Vec& w2) const {
  const IntertwinerCandidate self = *this;
  const int lo = -bound(w1, w2) - 1;
  std::optional<int> base;
  try {
    base = homogeneous_weight(w1, w1_->weight_fn()) + homogeneous_weight(w2, w2_->weight_fn());
  } catch (const std::invalid_argument&) {
  }
  return CoefficientOracle(
      {Var::X},
      [self, w1, w2, base](const Exponents& e, const IntRange& ws) {
        // (w1)_{-k-1} w2 has weight wt w1 + wt w2 + k
        if (base && !ws.contains(*base + at(e, Var::X))) return Vec{};
        return self.mode(w1, -at(e, Var::X) - 1, w2);
      },
      w3_->weight_fn(), w3_->space(), [lo](Var, const IntRange&) { return Bound{lo, std::nullopt}; });
}

IntertwinerCandidate IntertwinerCandidate::combine(const Scalar& a, const IntertwinerCandidate& other,
                                                   const Scalar& b) const {
  const IntertwinerCandidate x = *this, y = other;
  return IntertwinerCandidate(
      w1_, w2_, w3_,
      [x, y, a, b](int p, int n, int q) { return a * x.mode(p, n, q) + b * y.mode(p, n, q); },
      [x, y](int p, int q) { return std::max(x.bound(p, q), y.bound(p, q)); }, label_ + "+" + other.label_);
}

IntertwinerCandidate IntertwinerCandidate::perturbed(int w1, int n, int w2, const Vec& value) const {
  const IntertwinerCandidate x = *this;
  return IntertwinerCandidate(
      w1_, w2_, w3_,
      [x, w1, n, w2, value](int p, int m, int q) {
        return (p == w1 && m == n && q == w2) ? value : x.mode(p, m, q);
      },
      [x, w1, n, w2](int p, int q) { return (p == w1 && q == w2) ? std::max(n, x.bound(p, q)) : x.bound(p, q); },
      label_ + "~perturbed");
}

Vec l_minus_one(const Module& m, const Vec& w) {
  const Vec om = m.algebra().omega();
  if (om.is_zero()) return Vec{};
  return m.act(om, 0, w);
}

IntertwinerCandidate transpose_op(const ModulePtr& m) {
  ModulePtr v = adjoint_module(m->algebra());
  const Module* mp = m.get();
  auto mode = [m, mp](int w, int n, int u) {
    const int hi = mp->mode_bound(u, w);
    Vec out;
    Vec term;  // L(-1)^k u_{n+k} w / k!
    for (int k = 0; n + k <= hi; ++k) {
      term = mp->act(Vec::basis(u), n + k, Vec::basis(w));
      for (int i = 0; i < k && !term.is_zero(); ++i) term = l_minus_one(*mp, term);
      out.add(term, Scalar(sign_power(n + k + 1)) / factorial(k));
    }
    return out;
  };
  auto bound = [mp](int w, int u) { return mp->mode_bound(u, w); };
  return IntertwinerCandidate(m, v, m, mode, bound, "transpose(" + m->space() + ")");
}

IntertwinerCandidate from_theta(const ModulePtr& w1, const ModulePtr& w2, std::vector<Vec> theta) {
  if (static_cast<int>(theta.size()) != w1->dim())
    throw std::invalid_argument("from_theta: need one image per basis vector of W1");
  IntertwinerCandidate t = transpose_op(w2);
  auto images = std::make_shared<std::vector<Vec>>(std::move(theta));
  return IntertwinerCandidate(
      w1, t.w2_ptr(), w2, [t, images](int w, int n, int u) { return t.mode((*images)[w], n, Vec::basis(u)); },
      [t, images](int w, int u) {
        const Vec& img = (*images)[w];
        return img.is_zero() ? -1 : t.bound(img, Vec::basis(u));
      },
      "from_theta");
}

IntertwinerCandidate random_graded_candidate(const ModulePtr& w1, const ModulePtr& w2, const ModulePtr& w3,
                                             std::uint64_t seed, int depth) {
  const Module* m1 = w1.get();
  const Module* m2 = w2.get();
  const Module* m3 = w3.get();
  const int min3 = w3->min_weight();
  auto bound = [m1, m2, min3](int a, int b) { return m1->weight(a) + m2->weight(b) - 1 - min3; };
  auto mode = [=](int a, int n, int b) {
    Vec out;
    if (n < bound(a, b) - depth) return out;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(n + 1'000'000),
                      static_cast<std::uint32_t>(b)};
    std::mt19937 rng(seq);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int l : m3->basis_of_weight(m1->weight(a) + m2->weight(b) - n - 1)) out.add(l, coeff(rng));
    return out;
  };
  return IntertwinerCandidate(w1, w2, w3, mode, bound, "random(" + std::to_string(seed) + ")");
}

IntertwinerCandidate zero_candidate(const ModulePtr& w1, const ModulePtr& w2, const ModulePtr& w3) {
  return IntertwinerCandidate(
      w1, w2, w3, [](int, int, int) { return Vec{}; }, [](int, int) { return -1; }, "zero");
}

ThetaF theta_f_builder(const VertexAlgebra& a, const Vec& f) {
  ThetaF out;
  out.target = adjoint_module(a);
  out.orbit = gv_ge0_orbit(*out.target);
  if (out.orbit.unit_in_orbit)
    throw std::invalid_argument("theta_f_builder: the unit lies in g(V)_{>=0} V, so the orbit is all of V");
  if (!out.orbit.unit_excluded)
    throw std::invalid_argument("theta_f_builder: the orbit is not settled at this cutoff");
  std::optional<int> full_from;
  if (!a.is_comm_assoc()) {
    // L(0) = omega_1 lies in g(V)_{>=0} and is invertible on V_+, so V_+ is in the orbit.
    for (const auto& s : out.orbit.slices)
      if (s.weight >= 1 && s.reached != s.dim)
        throw std::invalid_argument("theta_f_builder: orbit misses part of weight " + std::to_string(s.weight));
    full_from = 1;
  }
  out.quotient = quotient_module(out.target, out.orbit.spanning, full_from);
  if (f.is_zero()) throw std::invalid_argument("theta_f_builder: f is zero");
  for (const auto& [k, c] : f)
    if (k < 0 || k >= out.quotient->dim()) throw std::invalid_argument("theta_f_builder: f outside the quotient");
  for (int q = 0; q < out.quotient->dim(); ++q) out.theta.push_back(Vec::basis(a.unit(), f[q]));
  return out;
}

}  // namespace voacheck
