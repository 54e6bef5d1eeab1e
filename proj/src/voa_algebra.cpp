#include "voacheck/voa.hpp"

#include <algorithm>
#include <sstream>

namespace voacheck {

Vec CommAssocSpec::product(int i, int j) const {
  auto it = table.find({i, j});
  return it == table.end() ? Vec{} : it->second;
}

Vec CommAssocSpec::product(const Vec& a, const Vec& b) const {
  Vec out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) out.add(product(i, j), ci * cj);
  return out;
}

std::vector<SpecViolation> validate(const CommAssocSpec& s) {
  std::vector<SpecViolation> out;
  const int d = s.dim();
  if (d == 0) return {{"range", {}, "empty basis"}};
  if (s.unit < 0 || s.unit >= d) return {{"unit", {s.unit}, "unit is not a basis element"}};
  for (const auto& [key, val] : s.table)
    for (const auto& [k, c] : val)
      if (key.first < 0 || key.first >= d || key.second < 0 || key.second >= d || k < 0 || k >= d)
        out.push_back({"range", {key.first, key.second}, "label out of range"});
  if (!out.empty()) return out;
  for (int i = 0; i < d; ++i)
    if (!(s.product(s.unit, i) == Vec::basis(i)) || !(s.product(i, s.unit) == Vec::basis(i)))
      out.push_back({"unit", {s.unit, i}, s.names[s.unit] + " does not act as identity on " + s.names[i]});
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j)
      if (!(s.product(i, j) == s.product(j, i)))
        out.push_back({"commutativity", {i, j}, s.names[i] + s.names[j] + " != " + s.names[j] + s.names[i]});
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec l = s.product(s.product(i, j), Vec::basis(k));
        Vec r = s.product(Vec::basis(i), s.product(j, k));
        if (!(l == r))
          out.push_back({"associativity", {i, j, k},
                         "(" + s.names[i] + s.names[j] + ")" + s.names[k] + " = " +
                             l.to_string([&](int t) { return s.names[t]; }) + " but " + s.names[i] +
                             "(" + s.names[j] + s.names[k] + ") = " +
                             r.to_string([&](int t) { return s.names[t]; })});
      }
  return out;
}

int homogeneous_weight(const Vec& v, const WeightFn& wt, int fallback) {
  if (v.is_zero()) return fallback;
  const int w = wt(v.begin()->first);
  for (const auto& [k, c] : v)
    if (wt(k) != w) throw std::invalid_argument("vector is not homogeneous");
  return w;
}

// ---------------------------------------------------------------------------

class VertexAlgebra::Impl {
 public:
  virtual ~Impl() = default;
  std::vector<std::string> names;
  std::vector<int> weights;
  int unit = 0;
  Vec omega;
  Scalar c = 0;
  std::optional<int> cutoff;
  std::string space;

  virtual Vec mode(int u, int n, int v) const = 0;
  virtual int mode_bound(int u, int v) const = 0;
  virtual Vec L(int n, int v) const = 0;
  virtual std::vector<Vec> d_kernel(int s) const = 0;
  virtual const CommAssocSpec* spec() const { return nullptr; }
};

namespace {

class CommAssocImpl : public VertexAlgebra::Impl {
 public:
  explicit CommAssocImpl(CommAssocSpec s) : spec_(std::move(s)) {
    names = spec_.names;
    weights.assign(names.size(), 0);
    unit = spec_.unit;
    space = "comm{";
    for (std::size_t i = 0; i < names.size(); ++i) space += (i ? "," : "") + names[i];
    space += "}";
  }
  Vec mode(int u, int n, int v) const override {
    return n == -1 ? spec_.product(u, v) : Vec{};
  }
  int mode_bound(int, int) const override { return -1; }
  Vec L(int, int) const override { return Vec{}; }
  std::vector<Vec> d_kernel(int s) const override {
    std::vector<Vec> out;
    if (s == 0)
      for (int i = 0; i < spec_.dim(); ++i) out.push_back(Vec::basis(i));
    return out;
  }
  const CommAssocSpec* spec() const override { return &spec_; }

 private:
  CommAssocSpec spec_;
};

// PBW monomial L(-m1)...L(-mk)1, m1 >= ... >= mk >= 2.
using Mono = std::vector<int>;
using MonoVec = std::map<Mono, Scalar>;

int mono_weight(const Mono& m) {
  int s = 0;
  for (int x : m) s += x;
  return s;
}

void add_to(MonoVec& acc, const Mono& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = acc.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

void add_to(MonoVec& acc, const MonoVec& v, const Scalar& c) {
  for (const auto& [m, x] : v) add_to(acc, m, x * c);
}

class VirasoroImpl : public VertexAlgebra::Impl {
 public:
  VirasoroImpl(const Scalar& cc, int n) {
    c = cc;
    cutoff = n;
    std::ostringstream os;
    os << "vir(c=" << to_string(cc) << ",N=" << n << ")";
    space = os.str();
    for (int w = 0; w <= n; ++w) {
      std::vector<Mono> parts;
      Mono cur;
      enumerate(w, w, cur, parts);
      std::sort(parts.begin(), parts.end(), std::greater<>());
      for (auto& p : parts) {
        index_[p] = static_cast<int>(monos_.size());
        names.push_back(mono_name(p));
        weights.push_back(w);
        monos_.push_back(std::move(p));
      }
    }
    unit = 0;
    omega = Vec::basis(index_.at(Mono{2}));
  }

  Vec mode(int u, int n, int v) const override {
    const int w = weights[u] + weights[v] - n - 1;
    if (w < 0) return Vec{};
    if (w > 3 * *cutoff)
      throw CutoffEscape("weight " + std::to_string(w) + " is far beyond cutoff " +
                         std::to_string(*cutoff));
    return to_basis(vmode(monos_[u], n, monos_[v]));
  }

  int mode_bound(int u, int v) const override { return weights[u] + weights[v] - 1; }

  Vec L(int n, int v) const override {
    if (weights[v] - n < 0) return Vec{};
    return to_basis(applyL(n, monos_[v]));
  }

  std::vector<Vec> d_kernel(int s) const override {
    std::vector<int> slice;
    for (int i = 0; i < static_cast<int>(monos_.size()); ++i)
      if (weights[i] == s) slice.push_back(i);
    // columns: slice positions; rows: coordinates of the images in weight s + 1
    std::map<Mono, Vec> rows;
    for (int k = 0; k < static_cast<int>(slice.size()); ++k)
      for (const auto& [m, x] : applyL(-1, monos_[slice[k]])) rows[m].add(k, x);
    std::vector<Vec> eqs;
    for (auto& [m, r] : rows) eqs.push_back(r);
    std::vector<Vec> out;
    for (const Vec& sol : null_space(eqs, static_cast<int>(slice.size())))
      out.push_back(sol.mapped([&](int k) { return Vec::basis(slice[k]); }));
    return out;
  }

 private:
  static void enumerate(int remaining, int maxpart, Mono& cur, std::vector<Mono>& out) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 2; --p) {
      cur.push_back(p);
      enumerate(remaining - p, p, cur, out);
      cur.pop_back();
    }
  }

  static std::string mono_name(const Mono& m) {
    std::string s;
    for (int x : m) s += "L(-" + std::to_string(x) + ")";
    return s + "1";
  }

  Vec to_basis(const MonoVec& mv) const {
    Vec out;
    for (const auto& [m, x] : mv) {
      auto it = index_.find(m);
      if (it == index_.end())
        throw CutoffEscape(mono_name(m) + " has weight " + std::to_string(mono_weight(m)) +
                           " > cutoff " + std::to_string(*cutoff));
      out.add(it->second, x);
    }
    return out;
  }

  // L(j) on a monomial, straightened into descending order.
  const MonoVec& applyL(int j, const Mono& m) const {
    auto key = std::make_pair(j, m);
    if (auto it = l_cache_.find(key); it != l_cache_.end()) return it->second;
    MonoVec out;
    if (mono_weight(m) - j < 0) {
      // lands below weight 0
    } else if (m.empty()) {
      if (j <= -2) out[Mono{-j}] = 1;
    } else if (j < 0 && -j >= m[0]) {
      Mono p;
      p.push_back(-j);
      p.insert(p.end(), m.begin(), m.end());
      out[p] = 1;
    } else {
      const int m1 = m[0];
      const Mono rest(m.begin() + 1, m.end());
      // L(j)L(-m1) R = L(-m1) L(j) R + (j + m1) L(j - m1) R + c/12 (j^3 - j) delta_{j,m1} R
      const MonoVec inner = applyL(j, rest);
      for (const auto& [p, x] : inner) add_to(out, applyL(-m1, p), x);
      if (j + m1 != 0) add_to(out, applyL(j - m1, rest), Scalar(j + m1));
      if (j == m1) add_to(out, rest, c * frac((long)j * j * j - j, 12));
    }
    return l_cache_.emplace(key, std::move(out)).first->second;
  }

  MonoVec applyL(int j, const MonoVec& v) const {
    MonoVec out;
    for (const auto& [m, x] : v) add_to(out, applyL(j, m), x);
    return out;
  }

  // u_q w via the iterate formula with u = omega_{1-m} u'.
  const MonoVec& vmode(const Mono& u, int q, const Mono& w) const {
    auto key = std::make_tuple(u, q, w);
    if (auto it = m_cache_.find(key); it != m_cache_.end()) return it->second;
    MonoVec out;
    const int wu = mono_weight(u), ww = mono_weight(w);
    if (wu + ww - q - 1 < 0) {
      // below weight 0
    } else if (u.empty()) {
      if (q == -1) out[w] = 1;
    } else {
      const int m = u[0];
      const Mono up(u.begin() + 1, u.end());
      const int p = 1 - m;
      const int wup = wu - m;
      const int imax = std::max(wup + ww - 1 - q, ww + 1);
      for (int i = 0; i <= imax; ++i) {
        Scalar coef = binomial_coeff(p, i) * sign_power(i);
        if (coef == 0) continue;
        // omega_{p-i} u'_{q+i} w
        const MonoVec& t1 = vmode(up, q + i, w);
        if (!t1.empty()) add_to(out, applyL(p - i - 1, t1), coef);
        // -(-1)^p u'_{p+q-i} omega_i w
        const MonoVec& lw = applyL(i - 1, w);
        Scalar c2 = -coef * sign_power(p);
        for (const auto& [mono, x] : lw) add_to(out, vmode(up, p + q - i, mono), c2 * x);
      }
    }
    return m_cache_.emplace(key, std::move(out)).first->second;
  }

  std::vector<Mono> monos_;
  std::map<Mono, int> index_;
  // Memo tables: filled on demand, observationally invisible.
  mutable std::map<std::pair<int, Mono>, MonoVec> l_cache_;
  mutable std::map<std::tuple<Mono, int, Mono>, MonoVec> m_cache_;
};

}  // namespace

CommAssocSpec completed(CommAssocSpec spec) {
  if (spec.unit >= 0 && spec.unit < spec.dim())
    for (int i = 0; i < spec.dim(); ++i) {
      spec.table.try_emplace({spec.unit, i}, Vec::basis(i));
      spec.table.try_emplace({i, spec.unit}, Vec::basis(i));
    }
  for (int i = 0; i < spec.dim(); ++i)
    for (int j = 0; j < spec.dim(); ++j)
      if (i != j && spec.table.count({i, j}) == 0 && spec.table.count({j, i}) != 0)
        spec.table[{i, j}] = spec.table.at({j, i});
  return spec;
}

VertexAlgebra VertexAlgebra::comm_assoc(CommAssocSpec spec) {
  spec = completed(std::move(spec));
  auto violations = validate(spec);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::string w;
    for (int k : v.witness) w += (w.empty() ? "" : ",") + spec.names.at(k);
    throw SpecError(v.axiom + " fails at (" + w + "): " + v.detail, violations);
  }
  return VertexAlgebra(std::make_shared<CommAssocImpl>(std::move(spec)));
}

VertexAlgebra VertexAlgebra::virasoro(const Scalar& c, int cutoff) {
  if (cutoff < 4) throw std::invalid_argument("virasoro: cutoff must be at least 4");
  return VertexAlgebra(std::make_shared<VirasoroImpl>(c, cutoff));
}

int VertexAlgebra::dim() const { return static_cast<int>(impl_->names.size()); }
int VertexAlgebra::weight(int label) const { return impl_->weights.at(label); }
std::string VertexAlgebra::name(int label) const { return impl_->names.at(label); }
std::optional<int> VertexAlgebra::find(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (impl_->names[i] == name) return i;
  return std::nullopt;
}
int VertexAlgebra::unit() const { return impl_->unit; }
Vec VertexAlgebra::omega() const { return impl_->omega; }
const Scalar& VertexAlgebra::central_charge() const { return impl_->c; }
std::optional<int> VertexAlgebra::cutoff() const { return impl_->cutoff; }
bool VertexAlgebra::is_comm_assoc() const { return impl_->spec() != nullptr; }
const CommAssocSpec& VertexAlgebra::spec() const {
  if (!impl_->spec()) throw std::logic_error("not a commutative associative algebra");
  return *impl_->spec();
}
const std::string& VertexAlgebra::space() const { return impl_->space; }

WeightFn VertexAlgebra::weight_fn() const {
  auto impl = impl_;
  return [impl](int l) { return impl->weights.at(l); };
}

std::function<std::string(int)> VertexAlgebra::name_fn() const {
  auto impl = impl_;
  return [impl](int l) { return impl->names.at(l); };
}

std::vector<int> VertexAlgebra::basis_of_weight(int s) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (impl_->weights[i] == s) out.push_back(i);
  return out;
}

int VertexAlgebra::max_weight() const {
  return impl_->weights.empty() ? 0 : *std::max_element(impl_->weights.begin(), impl_->weights.end());
}

Vec VertexAlgebra::mode(int u, int n, int v) const { return impl_->mode(u, n, v); }

Vec VertexAlgebra::mode(const Vec& u, int n, const Vec& v) const {
  Vec out;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v) out.add(impl_->mode(a, n, b), ca * cb);
  return out;
}

int VertexAlgebra::mode_bound(int u, int v) const { return impl_->mode_bound(u, v); }

Vec VertexAlgebra::L(int n, const Vec& v) const {
  Vec out;
  for (const auto& [b, cb] : v) out.add(impl_->L(n, b), cb);
  return out;
}

Vec VertexAlgebra::D(const Vec& v) const { return L(-1, v); }

std::vector<Vec> VertexAlgebra::d_kernel(int s) const { return impl_->d_kernel(s); }

}  // namespace voacheck
