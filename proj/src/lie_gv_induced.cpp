#include "voacheck/lie_gv.hpp"

#include <algorithm>
#include <functional>

namespace voacheck {

namespace {

void accumulate(std::map<std::pair<std::vector<int>, int>, Scalar>& acc,
                const std::map<std::pair<std::vector<int>, int>, Scalar>& v, const Scalar& c) {
  if (c == 0) return;
  for (const auto& [s, x] : v) {
    auto [it, inserted] = acc.try_emplace(s, x * c);
    if (!inserted) {
      it->second += x * c;
      if (it->second == 0) acc.erase(it);
    }
  }
}

GvElement single(const GvKey& k) {
  GvElement e;
  e.add(k, 1);
  return e;
}

}  // namespace

InducedModule::InducedModule(std::shared_ptr<const GvAlgebra> g, InducedSpec spec)
    : g_(std::move(g)), spec_(spec) {
  const VertexAlgebra& a = g_->algebra();
  const bool vacuum = spec_.variant == InducedSpec::Variant::Vacuum;
  if (spec_.degree_bound < 0) throw std::invalid_argument("induced module: negative degree bound");
  if (vacuum) {
    seeds_ = {a.unit()};
    for (int l = 0; l < a.dim(); ++l)
      if (l != a.unit() && a.weight(l) <= spec_.weight_cutoff) gens_.push_back({l, -1});
  } else {
    const int r = spec_.lowest;
    for (int l = 0; l < a.dim(); ++l)
      if (a.weight(l) < r) throw std::invalid_argument("induced module: V has weights below r");
    seeds_ = a.basis_of_weight(r);
    if (seeds_.empty()) throw std::invalid_argument("induced module: V_(r) is zero");
    for (int l = 0; l < a.dim(); ++l) {
      if (a.weight(l) > spec_.generator_weight) continue;
      for (int n = -1; a.weight(l) - n - 1 > 0; ++n) {
        const GvKey k{l, n};
        const int d = g_->degree(k);
        if (d <= spec_.weight_cutoff - r && g_->is_basis_key(k)) gens_.push_back(k);
      }
    }
  }
  for (int i = 0; i < static_cast<int>(gens_.size()); ++i) gen_index_[gens_[i]] = i;

  const int base = vacuum ? 0 : spec_.lowest;
  std::vector<State> states;
  Mono cur;
  std::function<void(int, int)> grow = [&](int from, int wt) {
    for (int s : seeds_) states.push_back({cur, s});
    if (static_cast<int>(cur.size()) == spec_.degree_bound) return;
    for (int i = from; i < static_cast<int>(gens_.size()); ++i) {
      const int d = g_->degree(gens_[i]);
      if (wt + d > spec_.weight_cutoff) continue;
      cur.push_back(i);
      grow(i, wt + d);
      cur.pop_back();
    }
  };
  if (base <= spec_.weight_cutoff) grow(0, base);
  std::sort(states.begin(), states.end(), [&](const State& x, const State& y) {
    const int wx = mono_weight(x.first), wy = mono_weight(y.first);
    if (wx != wy) return wx < wy;
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return x < y;
  });
  for (const State& s : states) {
    index_[s] = static_cast<int>(basis_.size());
    basis_.push_back(s);
  }
}

int InducedModule::mono_weight(const Mono& m) const {
  int w = spec_.variant == InducedSpec::Variant::Vacuum ? 0 : spec_.lowest;
  for (int i : m) w += g_->degree(gens_[i]);
  return w;
}

int InducedModule::weight(int label) const { return mono_weight(basis_.at(label).first); }

std::string InducedModule::name(int label) const {
  const auto& [m, seed] = basis_.at(label);
  const std::string s = g_->algebra().name(seed);
  if (m.empty()) return s;
  std::string out;
  for (int i : m) out += g_->name(gens_[i]);
  return out + "⊗" + s;
}

std::string InducedModule::space() const {
  return (spec_.variant == InducedSpec::Variant::Vacuum ? "ind-vac(" : "ind-low" + std::to_string(spec_.lowest) + "(") +
         g_->algebra().space() + ")";
}

Vec InducedModule::to_vec(const SVec& v) const {
  Vec out;
  for (const auto& [s, c] : v) out.add(index_.at(s), c);
  return out;
}

Vec InducedModule::act(int v, int n, int w) const {
  return act(g_->normal_form(v, n), Vec::basis(w));
}

Vec InducedModule::act(const GvElement& x, const Vec& w) const {
  SVec acc;
  for (const auto& [l, c] : w) {
    const auto& [m, seed] = basis_.at(l);
    accumulate(acc, apply(x, m, seed), c);
  }
  return to_vec(acc);
}

InducedModule::SVec InducedModule::apply(const GvElement& x, const Mono& m, int seed) const {
  const bool vacuum = spec_.variant == InducedSpec::Variant::Vacuum;
  const int unit = g_->algebra().unit();
  SVec out;
  for (const auto& [k, c] : x) {
    auto it = gen_index_.find(k);
    if (it != gen_index_.end()) {
      accumulate(out, insert(it->second, m, seed), c);
      continue;
    }
    const bool inducing = vacuum ? (k.second >= 0 || k.first == unit) : g_->degree(k) <= 0;
    if (!inducing)
      throw CutoffEscape("induced module: creation operator " + g_->name(k) + " beyond truncation");
    accumulate(out, act_inducing(k, m, seed), c);
  }
  return out;
}

InducedModule::SVec InducedModule::insert(int gen, const Mono& m, int seed) const {
  const auto key = std::make_tuple(false, gens_[gen], State{m, seed});
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  SVec out;
  if (m.empty() || gen <= m.front()) {
    Mono nm;
    nm.reserve(m.size() + 1);
    nm.push_back(gen);
    nm.insert(nm.end(), m.begin(), m.end());
    if (static_cast<int>(nm.size()) > spec_.degree_bound || mono_weight(nm) > spec_.weight_cutoff)
      throw CutoffEscape("induced module: PBW monomial beyond truncation");
    out[{nm, seed}] = 1;
  } else {
    // g m0 rest = m0 (g rest) + [g, m0] rest
    const Mono rest(m.begin() + 1, m.end());
    out = left_multiply(m.front(), insert(gen, rest, seed));
    accumulate(out, apply(g_->bracket(single(gens_[gen]), single(gens_[m.front()])), rest, seed), 1);
  }
  return cache_.emplace(key, std::move(out)).first->second;
}

InducedModule::SVec InducedModule::act_inducing(const GvKey& k, const Mono& m, int seed) const {
  if (m.empty()) return seed_action(k, seed);
  const auto key = std::make_tuple(true, k, State{m, seed});
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const Mono rest(m.begin() + 1, m.end());
  SVec out = left_multiply(m.front(), act_inducing(k, rest, seed));
  accumulate(out, apply(g_->bracket(single(k), single(gens_[m.front()])), rest, seed), 1);
  return cache_.emplace(key, std::move(out)).first->second;
}

InducedModule::SVec InducedModule::left_multiply(int gen, const SVec& v) const {
  SVec out;
  for (const auto& [s, c] : v) accumulate(out, insert(gen, s.first, s.second), c);
  return out;
}

InducedModule::SVec InducedModule::seed_action(const GvKey& k, int seed) const {
  const VertexAlgebra& a = g_->algebra();
  SVec out;
  if (spec_.variant == InducedSpec::Variant::Vacuum) {
    // g_{>=0} kills the seed; 1(-1) acts as 1.
    if (k == GvKey{a.unit(), -1}) out[{Mono{}, seed}] = 1;
    return out;
  }
  // Degree 0 preserves V_(r); negative degree lands below r, where V is zero.
  if (g_->degree(k) < 0) return out;
  for (const auto& [l, c] : a.mode(k.first, k.second, seed)) out[{Mono{}, l}] = c;
  return out;
}

std::shared_ptr<const InducedModule> induced_level_one_module(const VertexAlgebra& a,
                                                             const InducedSpec& spec) {
  return std::make_shared<InducedModule>(std::make_shared<GvAlgebra>(a), spec);
}

}  // namespace voacheck
