#include "voacheck/voa.hpp"

#include <algorithm>

namespace voacheck {

int Module::mode_bound(int v, int w) const {
  return algebra().weight(v) + weight(w) - 1 - min_weight();
}

Vec Module::act(const Vec& v, int n, const Vec& w) const {
  Vec out;
  for (const auto& [a, ca] : v)
    for (const auto& [b, cb] : w) out.add(act(a, n, b), ca * cb);
  return out;
}

int Module::mode_bound(const Vec& v, const Vec& w) const {
  int best = -1;
  for (const auto& [a, ca] : v)
    for (const auto& [b, cb] : w) best = std::max(best, mode_bound(a, b));
  return best;
}

WeightFn Module::weight_fn() const {
  return [this](int l) { return weight(l); };
}

std::function<std::string(int)> Module::name_fn() const {
  return [this](int l) { return name(l); };
}

int Module::min_weight() const {
  int m = 0;
  for (int i = 0; i < dim(); ++i) m = i == 0 ? weight(i) : std::min(m, weight(i));
  return m;
}

int Module::max_weight() const {
  int m = 0;
  for (int i = 0; i < dim(); ++i) m = i == 0 ? weight(i) : std::max(m, weight(i));
  return m;
}

std::vector<int> Module::basis_of_weight(int s) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (weight(i) == s) out.push_back(i);
  return out;
}

namespace {

class Adjoint : public Module {
 public:
  explicit Adjoint(VertexAlgebra a) : a_(std::move(a)) {}
  const VertexAlgebra& algebra() const override { return a_; }
  int dim() const override { return a_.dim(); }
  int weight(int l) const override { return a_.weight(l); }
  std::string name(int l) const override { return a_.name(l); }
  std::string space() const override { return a_.space(); }
  Vec act(int v, int n, int w) const override { return a_.mode(v, n, w); }
  int mode_bound(int v, int w) const override { return a_.mode_bound(v, w); }

 private:
  VertexAlgebra a_;
};

class CommAssocModule : public Module {
 public:
  CommAssocModule(VertexAlgebra a, std::vector<std::string> names,
                  std::vector<std::vector<Vec>> rho, std::string space)
      : a_(std::move(a)), names_(std::move(names)), rho_(std::move(rho)), space_(std::move(space)) {}
  const VertexAlgebra& algebra() const override { return a_; }
  int dim() const override { return static_cast<int>(names_.size()); }
  int weight(int) const override { return 0; }
  std::string name(int l) const override { return names_.at(l); }
  std::string space() const override { return space_; }
  Vec act(int v, int n, int w) const override { return n == -1 ? rho_.at(v).at(w) : Vec{}; }
  int mode_bound(int, int) const override { return -1; }

 private:
  VertexAlgebra a_;
  std::vector<std::string> names_;
  std::vector<std::vector<Vec>> rho_;
  std::string space_;
};

class TableModule : public Module {
 public:
  TableModule(VertexAlgebra a, TableModuleData d) : a_(std::move(a)), d_(std::move(d)) {}
  const VertexAlgebra& algebra() const override { return a_; }
  int dim() const override { return static_cast<int>(d_.names.size()); }
  int weight(int l) const override { return d_.weights.at(l); }
  std::string name(int l) const override { return d_.names.at(l); }
  std::string space() const override { return d_.space; }
  Vec act(int v, int n, int w) const override { return d_.act(v, n, w); }
  int mode_bound(int v, int w) const override {
    return d_.bound ? d_.bound(v, w) : Module::mode_bound(v, w);
  }

 private:
  VertexAlgebra a_;
  TableModuleData d_;
};

class TensorModule : public Module {
 public:
  TensorModule(ModulePtr a, ModulePtr b) : a_(std::move(a)), b_(std::move(b)) {}
  const VertexAlgebra& algebra() const override { return a_->algebra(); }
  int dim() const override { return a_->dim() * b_->dim(); }
  int weight(int l) const override { return a_->weight(l / b_->dim()) + b_->weight(l % b_->dim()); }
  std::string name(int l) const override {
    return a_->name(l / b_->dim()) + "⊗" + b_->name(l % b_->dim());
  }
  std::string space() const override { return a_->space() + "⊗" + b_->space(); }
  Vec act(int v, int n, int w) const override {
    const int i = w / b_->dim(), j = w % b_->dim();
    Vec out;
    for (const auto& [k, c] : b_->act(v, n, j)) out.add(i * b_->dim() + k, c);
    return out;
  }
  int mode_bound(int v, int w) const override { return b_->mode_bound(v, w % b_->dim()); }

 private:
  ModulePtr a_, b_;
};

class DirectSum : public Module {
 public:
  DirectSum(ModulePtr a, ModulePtr b) : a_(std::move(a)), b_(std::move(b)) {}
  const VertexAlgebra& algebra() const override { return a_->algebra(); }
  int dim() const override { return a_->dim() + b_->dim(); }
  int weight(int l) const override {
    return l < a_->dim() ? a_->weight(l) : b_->weight(l - a_->dim());
  }
  std::string name(int l) const override {
    return l < a_->dim() ? "(" + a_->name(l) + ",0)" : "(0," + b_->name(l - a_->dim()) + ")";
  }
  std::string space() const override { return a_->space() + "⊕" + b_->space(); }
  Vec act(int v, int n, int w) const override {
    if (w < a_->dim()) return a_->act(v, n, w);
    Vec out;
    for (const auto& [k, c] : b_->act(v, n, w - a_->dim())) out.add(k + a_->dim(), c);
    return out;
  }
  int mode_bound(int v, int w) const override {
    return w < a_->dim() ? a_->mode_bound(v, w) : b_->mode_bound(v, w - a_->dim());
  }

 private:
  ModulePtr a_, b_;
};

}  // namespace

ModulePtr adjoint_module(const VertexAlgebra& a) { return std::make_shared<Adjoint>(a); }

ModulePtr comm_assoc_module(const VertexAlgebra& a, std::vector<std::string> names,
                            std::vector<std::vector<Vec>> rho, std::string space) {
  if (!a.is_comm_assoc()) throw std::invalid_argument("comm_assoc_module: algebra is not commutative associative");
  const int d = static_cast<int>(names.size());
  if (static_cast<int>(rho.size()) != a.dim())
    throw std::invalid_argument("comm_assoc_module: need one matrix per algebra basis element");
  for (const auto& m : rho)
    if (static_cast<int>(m.size()) != d) throw std::invalid_argument("comm_assoc_module: matrix size mismatch");
  auto apply = [&](const Vec& u, const Vec& w) {
    Vec out;
    for (const auto& [i, ci] : u)
      for (const auto& [j, cj] : w) out.add(rho[i][j], ci * cj);
    return out;
  };
  for (int w = 0; w < d; ++w) {
    if (!(rho[a.unit()][w] == Vec::basis(w)))
      throw std::invalid_argument("comm_assoc_module: unit does not act as identity on " + names[w]);
    for (int u = 0; u < a.dim(); ++u)
      for (int v = 0; v < a.dim(); ++v) {
        Vec lhs = apply(a.spec().product(u, v), Vec::basis(w));
        Vec rhs = apply(Vec::basis(u), rho[v][w]);
        if (!(lhs == rhs))
          throw std::invalid_argument("comm_assoc_module: (" + a.name(u) + a.name(v) + ")." + names[w] +
                                      " != " + a.name(u) + ".(" + a.name(v) + "." + names[w] + ")");
      }
  }
  return std::make_shared<CommAssocModule>(a, std::move(names), std::move(rho), std::move(space));
}

ModulePtr table_module(const VertexAlgebra& a, TableModuleData data) {
  if (data.names.size() != data.weights.size())
    throw std::invalid_argument("table_module: names and weights differ in length");
  return std::make_shared<TableModule>(a, std::move(data));
}

ModulePtr tensor_module(const ModulePtr& w1, const ModulePtr& w2) {
  if (!(w1->algebra() == w2->algebra()))
    throw std::invalid_argument("tensor_module: modules over different algebras");
  if (!w1->algebra().is_comm_assoc())
    throw std::invalid_argument("tensor_module: only defined over commutative associative algebras");
  return std::make_shared<TensorModule>(w1, w2);
}

int tensor_label(const Module& w2, int a, int b) { return a * w2.dim() + b; }

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b) {
  if (!(a->algebra() == b->algebra()))
    throw std::invalid_argument("direct_sum: modules over different algebras");
  return std::make_shared<DirectSum>(a, b);
}

// ---------------------------------------------------------------------------

QuotientModule::QuotientModule(ModulePtr w, const std::vector<Vec>& s, std::optional<int> full_from)
    : parent_(std::move(w)), full_from_(full_from) {
  for (const Vec& v : s) sub_.insert(v);
  for (int l = 0; l < parent_->dim(); ++l) {
    if (sub_.is_pivot(l)) continue;
    if (full_from_ && parent_->weight(l) >= *full_from_) continue;
    rep_index_[l] = static_cast<int>(reps_.size());
    reps_.push_back(l);
  }
}

std::string QuotientModule::space() const { return parent_->space() + "/S"; }

Vec QuotientModule::project(const Vec& w) const {
  Vec r = sub_.reduce(w);
  Vec out;
  for (const auto& [k, c] : r) {
    if (full_from_ && parent_->weight(k) >= *full_from_) continue;
    out.add(rep_index_.at(k), c);
  }
  return out;
}

Vec QuotientModule::lift(const Vec& q) const {
  Vec out;
  for (const auto& [k, c] : q) out.add(reps_.at(k), c);
  return out;
}

Vec QuotientModule::act(int v, int n, int w) const {
  const int target = algebra().weight(v) + weight(w) - n - 1;
  if (full_from_ && target >= *full_from_) return Vec{};
  return project(parent_->act(v, n, reps_.at(w)));
}

std::shared_ptr<const QuotientModule> quotient_module(const ModulePtr& w, const std::vector<Vec>& s,
                                                      std::optional<int> full_from) {
  return std::make_shared<QuotientModule>(w, s, full_from);
}

}  // namespace voacheck
