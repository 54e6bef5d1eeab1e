#pragma once

// Vertex algebras (commutative associative ones and the Virasoro vacuum module),
// their modules, and the module-level Jacobi / commutator / associativity checks.

#include "voacheck/formal.hpp"
#include "voacheck/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace voacheck {

/// Multiplication table of a finite-dimensional commutative associative unital algebra.
struct CommAssocSpec {
  std::vector<std::string> names;
  int unit = 0;
  std::map<std::pair<int, int>, Vec> table;  // absent entries are 0

  int dim() const { return static_cast<int>(names.size()); }
  Vec product(int i, int j) const;
  Vec product(const Vec& a, const Vec& b) const;
};

struct SpecViolation {
  std::string axiom;  // "commutativity", "associativity", "unit", "range"
  std::vector<int> witness;
  std::string detail;
};

/// Fills in products with the unit and the mirror of every one-sided entry. Entries that
/// are given explicitly are kept, so contradictions still reach validate.
CommAssocSpec completed(CommAssocSpec spec);

/// Exhaustive over basis pairs and triples.
std::vector<SpecViolation> validate(const CommAssocSpec& spec);

class SpecError : public std::invalid_argument {
 public:
  SpecError(const std::string& what, std::vector<SpecViolation> v)
      : std::invalid_argument(what), violations(std::move(v)) {}
  std::vector<SpecViolation> violations;
};

class VertexAlgebra {
 public:
  class Impl;

  /// Y(a,x)b = ab, every weight 0, omega = 0. The table is completed first. Throws SpecError.
  static VertexAlgebra comm_assoc(CommAssocSpec spec);
  /// Vacuum module of the Virasoro algebra with central charge c. Computations run in
  /// the full PBW module; only results that must be expressed in the basis of weight
  /// <= cutoff raise CutoffEscape.
  static VertexAlgebra virasoro(const Scalar& c, int cutoff);

  int dim() const;
  int weight(int label) const;
  std::string name(int label) const;
  std::optional<int> find(const std::string& name) const;
  int unit() const;
  Vec omega() const;
  const Scalar& central_charge() const;
  std::optional<int> cutoff() const;
  bool is_comm_assoc() const;
  const CommAssocSpec& spec() const;  // comm-assoc algebras only
  const std::string& space() const;
  WeightFn weight_fn() const;
  std::function<std::string(int)> name_fn() const;
  std::vector<int> basis_of_weight(int s) const;
  int max_weight() const;

  /// u_n v.
  Vec mode(int u, int n, int v) const;
  Vec mode(const Vec& u, int n, const Vec& v) const;
  /// u_n v = 0 for every n > mode_bound(u, v).
  int mode_bound(int u, int v) const;
  Vec L(int n, const Vec& v) const;
  Vec D(const Vec& v) const;
  /// Basis of ker D inside the weight-s slice (computed exactly even at the cutoff).
  std::vector<Vec> d_kernel(int s) const;

  friend bool operator==(const VertexAlgebra& a, const VertexAlgebra& b) {
    return a.impl_ == b.impl_;
  }

 private:
  explicit VertexAlgebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// The weight of a homogeneous vector; throws std::invalid_argument otherwise.
/// The zero vector has weight `fallback`.
int homogeneous_weight(const Vec& v, const WeightFn& wt, int fallback = 0);

/// A weak module with a finite (possibly truncated) basis labelled 0..dim()-1.
class Module {
 public:
  virtual ~Module() = default;
  virtual const VertexAlgebra& algebra() const = 0;
  virtual int dim() const = 0;
  virtual int weight(int label) const = 0;
  virtual std::string name(int label) const = 0;
  virtual std::string space() const = 0;
  /// v_n w for algebra basis v and module basis w. May raise CutoffEscape.
  virtual Vec act(int v, int n, int w) const = 0;
  /// v_n w = 0 for every n > mode_bound(v, w). Defaults to the weight bound.
  virtual int mode_bound(int v, int w) const;

  Vec act(const Vec& v, int n, const Vec& w) const;
  int mode_bound(const Vec& v, const Vec& w) const;
  WeightFn weight_fn() const;
  std::function<std::string(int)> name_fn() const;
  int min_weight() const;
  int max_weight() const;
  std::vector<int> basis_of_weight(int s) const;
};
using ModulePtr = std::shared_ptr<const Module>;

ModulePtr adjoint_module(const VertexAlgebra& a);

/// Module over a comm-assoc algebra given by matrices: rho[u][w] is u.w.
/// Throws std::invalid_argument when the matrices do not form a unital representation.
ModulePtr comm_assoc_module(const VertexAlgebra& a, std::vector<std::string> names,
                            std::vector<std::vector<Vec>> rho, std::string space);

/// A module given by an action table. Nothing is validated: this is how non-modules
/// (such as C w with a trivial action) are described.
struct TableModuleData {
  std::vector<std::string> names;
  std::vector<int> weights;
  std::function<Vec(int v, int n, int w)> act;
  std::function<int(int v, int w)> bound;  // optional
  std::string space;
};
ModulePtr table_module(const VertexAlgebra& a, TableModuleData data);

/// W1 (x) W2 over a comm-assoc algebra with v acting on the second factor.
/// Label of w1 (x) w2 is w1 * dim(W2) + w2.
ModulePtr tensor_module(const ModulePtr& w1, const ModulePtr& w2);
int tensor_label(const Module& w2, int a, int b);

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);

/// W / S for a submodule S given by spanning vectors. With `full_from`, S is declared to
/// contain every weight slice >= full_from, so results landing there project to 0
/// without being computed. Quotient labels follow the non-pivot labels of W in order.
class QuotientModule;
std::shared_ptr<const QuotientModule> quotient_module(const ModulePtr& w, const std::vector<Vec>& s,
                                                      std::optional<int> full_from = std::nullopt);

class QuotientModule : public Module {
 public:
  QuotientModule(ModulePtr w, const std::vector<Vec>& s, std::optional<int> full_from);
  const VertexAlgebra& algebra() const override { return parent_->algebra(); }
  int dim() const override { return static_cast<int>(reps_.size()); }
  int weight(int label) const override { return parent_->weight(reps_.at(label)); }
  std::string name(int label) const override { return parent_->name(reps_.at(label)) + "~"; }
  std::string space() const override;
  Vec act(int v, int n, int w) const override;

  Vec project(const Vec& w) const;
  Vec lift(const Vec& q) const;
  const Module& parent() const { return *parent_; }

 private:
  ModulePtr parent_;
  Echelon sub_;
  std::optional<int> full_from_;
  std::vector<int> reps_;         // quotient label -> parent label
  std::map<int, int> rep_index_;  // parent label -> quotient label
};

/// Y_M(v, x)w as a series in X: coefficient of x^k is v_{-k-1} w.
CoefficientOracle module_field(const Module& m, const Vec& v, const Vec& w);

/// Y^o(v,x)w = Y(e^{xL(1)}(-x^{-2})^{L(0)} v, x^{-1})w for homogeneous v, as a series in X.
CoefficientOracle y_o_action(const Module& m, const Vec& v, const Vec& w);

/// Y'(v,x)alpha for a functional alpha given by dual-basis coordinates of m. The value at
/// x^k is the functional w -> alpha(coefficient of x^k in Y^o(v,x)w), restricted to the basis
/// vectors of the requested weight slices.
CoefficientOracle contragredient_action(const Module& m, const Vec& v, const Vec& alpha);

/// Sides of the module Jacobi identity, as oracles in (x0, x1, x2).
struct JacobiSides {
  CoefficientOracle iterate;  // x2^-1 d((x1-x0)/x2) Y(Y(u,x0)v,x2)w
  CoefficientOracle product;  // JacobiLeft Y(u,x1)Y(v,x2)w - JacobiMiddle Y(v,x2)Y(u,x1)w
};
JacobiSides module_jacobi_sides(const Module& m, const Vec& u, const Vec& v, const Vec& w);

/// [Y(u,x1),Y(v,x2)]w = Res_x0 x2^-1 d((x1-x0)/x2) Y(Y(u,x0)v,x2)w on the (x1,x2) window.
/// Reports the iterate side as left.
CheckReport check_module_commutator(const Module& m, const Vec& u, const Vec& v, const Vec& w,
                                    const Window& win);
/// Three-term module Jacobi identity on the (x0,x1,x2) window; iterate side is left.
CheckReport check_module_jacobi(const Module& m, const Vec& u, const Vec& v, const Vec& w,
                                const Window& win);

/// u_p v_q w against the double sum with l, m taken from the mode bounds.
CheckReport check_associativity_formula(const Module& m, const Vec& u, const Vec& v, const Vec& w,
                                        int p, int q);

/// Closure of span(S) under u_n for every basis u and every n with in-cutoff results,
/// and under D. The witness records u's label as x0, n as x1 and the offending vector.
CheckReport check_ideal(const VertexAlgebra& a, const std::vector<Vec>& s);

}  // namespace voacheck
