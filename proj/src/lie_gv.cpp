#include "voacheck/lie_gv.hpp"

#include <algorithm>
#include <sstream>

namespace voacheck {

void GvElement::add(const GvKey& k, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GvElement::add(const GvElement& o, const Scalar& c) {
  if (c == 0) return;
  for (const auto& [k, x] : o.terms_) add(k, x * c);
}

Scalar GvElement::operator[](const GvKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Vec GvElement::at_mode(int n) const {
  Vec out;
  for (const auto& [k, c] : terms_)
    if (k.second == n) out.add(k.first, c);
  return out;
}

GvAlgebra::GvAlgebra(VertexAlgebra a) : a_(std::move(a)) {}

const Echelon& GvAlgebra::relations(int weight) const {
  auto it = relations_.find(weight);
  if (it != relations_.end()) return it->second;
  Echelon e;
  for (int y : a_.basis_of_weight(weight - 1)) e.insert(a_.D(Vec::basis(y)), Vec::basis(y));
  int j = 0;
  for (const Vec& k : a_.d_kernel(weight)) e.insert(k, Vec::basis(kKernelTag + j++));
  return relations_.emplace(weight, std::move(e)).first->second;
}

bool GvAlgebra::is_basis_key(const GvKey& k) const {
  if (k.second == -1) return true;
  if (k.second < -1) return false;
  return !relations(a_.weight(k.first)).is_pivot(k.first);
}

GvElement GvAlgebra::normal_form(const Vec& v, int n) const {
  GvElement out;
  for (const auto& [label, c] : v) {
    const GvKey key{label, n};
    auto it = nf_cache_.find(key);
    if (it == nf_cache_.end()) {
      GvElement x;
      if (n == -1) {
        x.add(key, 1);
      } else if (n < -1) {
        // v(-1-k) = (D^k v / k!)(-1)
        const int k = -1 - n;
        Vec d = Vec::basis(label);
        for (int i = 0; i < k && !d.is_zero(); ++i) d = a_.D(d);
        for (const auto& [l, dc] : d) x.add({l, -1}, dc / factorial(k));
      } else {
        Vec comb;
        Vec r = relations(a_.weight(label)).reduce(Vec::basis(label), &comb);
        for (const auto& [l, rc] : r) x.add({l, n}, rc);
        if (n > 0) {
          Vec y = comb.filtered([](int t) { return t < kKernelTag; });
          if (!y.is_zero()) x.add(normal_form(y, n - 1), Scalar(-n));
        }
      }
      it = nf_cache_.emplace(key, std::move(x)).first;
    }
    out.add(it->second, c);
  }
  return out;
}

GvElement GvAlgebra::bracket(const GvElement& x, const GvElement& y) const {
  GvElement out;
  for (const auto& [k1, c1] : x)
    for (const auto& [k2, c2] : y) {
      const auto [u, m] = k1;
      const auto [v, n] = k2;
      const int hi = a_.mode_bound(u, v);
      for (int i = 0; i <= hi; ++i) {
        Scalar b = binomial_coeff(m, i);
        if (b == 0) continue;
        Vec p = a_.mode(u, i, v);
        if (p.is_zero()) continue;
        out.add(normal_form(p, m + n - i), b * c1 * c2);
      }
    }
  return out;
}

int GvAlgebra::degree(const GvElement& x) const {
  std::optional<int> d;
  for (const auto& [k, c] : x) {
    if (d && *d != degree(k)) throw std::invalid_argument("GvAlgebra::degree: element is not homogeneous");
    d = degree(k);
  }
  return d.value_or(0);
}

bool GvAlgebra::contains(GvSubalgebra s, const GvElement& x) const {
  for (const auto& [k, c] : x) {
    bool in = false;
    switch (s.kind) {
      case GvSubalgebra::Kind::NonNeg: in = k.second >= 0; break;
      case GvSubalgebra::Kind::Neg: in = k.second < 0; break;
      case GvSubalgebra::Kind::GradedPiece: in = degree(k) == s.degree; break;
      case GvSubalgebra::Kind::Plus: in = degree(k) > 0; break;
      case GvSubalgebra::Kind::Minus: in = degree(k) < 0; break;
    }
    if (!in) return false;
  }
  return true;
}

std::pair<GvElement, GvElement> GvAlgebra::split(const GvElement& x) const {
  GvElement neg, nonneg;
  for (const auto& [k, c] : x) (k.second < 0 ? neg : nonneg).add(k, c);
  return {neg, nonneg};
}

std::string GvAlgebra::name(const GvKey& k) const {
  return a_.name(k.first) + "(" + std::to_string(k.second) + ")";
}

std::string GvAlgebra::describe(const GvElement& x) const {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << to_string(c) << "*";
    os << name(k);
  }
  return os.str();
}

Vec GvAlgebra::act(const Module& m, const GvElement& x, const Vec& w) const {
  Vec out;
  for (const auto& [k, c] : x) out.add(m.act(Vec::basis(k.first), k.second, w), c);
  return out;
}

}  // namespace voacheck
