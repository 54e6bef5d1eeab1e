#pragma once

// The Lie algebra g(V) = V (x) C[t,t^-1] / Im(D (x) 1 + 1 (x) d/dt): normal forms, bracket,
// subalgebras, the g(V)_{>=0} orbit of a module, homomorphism tests and the induced
// level-one modules.

#include "voacheck/voa.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace voacheck {

/// Key (label, n) stands for the class of e_label (x) t^n.
using GvKey = std::pair<int, int>;

/// A finite sum of keys in normal form. Keys with n = -1 may carry any label; keys with
/// n >= 0 only labels that are not pivots of the relation echelon of their weight.
class GvElement {
 public:
  using Storage = std::map<GvKey, Scalar>;

  void add(const GvKey& k, const Scalar& c);
  void add(const GvElement& o, const Scalar& c = 1);
  bool is_zero() const { return terms_.empty(); }
  Scalar operator[](const GvKey& k) const;
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const { return terms_.size(); }
  /// Components at mode n, as a vector of V.
  Vec at_mode(int n) const;

  friend bool operator==(const GvElement& a, const GvElement& b) { return a.terms_ == b.terms_; }

 private:
  Storage terms_;
};

struct GvSubalgebra {
  enum class Kind { NonNeg, Neg, GradedPiece, Plus, Minus };
  Kind kind = Kind::NonNeg;
  int degree = 0;  // GradedPiece only

  static GvSubalgebra non_neg() { return {Kind::NonNeg, 0}; }
  static GvSubalgebra neg() { return {Kind::Neg, 0}; }
  static GvSubalgebra piece(int d) { return {Kind::GradedPiece, d}; }
  static GvSubalgebra plus() { return {Kind::Plus, 0}; }
  static GvSubalgebra minus() { return {Kind::Minus, 0}; }
};

class GvAlgebra {
 public:
  explicit GvAlgebra(VertexAlgebra a);

  const VertexAlgebra& algebra() const { return a_; }

  /// Class of v (x) t^n. n <= -2 goes to (D^k v / k!)(-1); n >= 0 is reduced modulo
  /// D(V) + ker D, with (Dy)(n) = -n y(n-1). May raise CutoffEscape.
  GvElement normal_form(const Vec& v, int n) const;
  GvElement normal_form(int v, int n) const { return normal_form(Vec::basis(v), n); }
  GvElement v_to_gvneg(const Vec& v) const { return normal_form(v, -1); }

  /// [u(m), v(n)] = sum_i C(m,i) (u_i v)(m+n-i).
  GvElement bracket(const GvElement& x, const GvElement& y) const;

  /// wt(u (x) t^m) = wt u - m - 1.
  int degree(const GvKey& k) const { return a_.weight(k.first) - k.second - 1; }
  /// Degree of a homogeneous element; throws std::invalid_argument otherwise.
  int degree(const GvElement& x) const;
  bool contains(GvSubalgebra s, const GvElement& x) const;
  /// x = negative part + non-negative part.
  std::pair<GvElement, GvElement> split(const GvElement& x) const;
  /// Whether (label, n) is a basis key of the normal form.
  bool is_basis_key(const GvKey& k) const;

  std::string name(const GvKey& k) const;
  std::string describe(const GvElement& x) const;

  /// Action on a module: (v, n) acts as v_n.
  Vec act(const Module& m, const GvElement& x, const Vec& w) const;

 private:
  const Echelon& relations(int weight) const;

  VertexAlgebra a_;
  mutable std::map<int, Echelon> relations_;
  mutable std::map<GvKey, GvElement> nf_cache_;
};

/// Tags in relation echelons at or above this offset stand for ker D vectors.
inline constexpr int kKernelTag = 1'000'000;

struct OrbitSlice {
  int weight = 0;
  int dim = 0;      // dimension of the slice
  int reached = 0;  // dimension of the orbit inside it
  bool inconclusive = false;
};

struct UnitCertificate {
  int v = 0;
  int n = 0;
  int w = 0;
  Scalar coeff;  // unit = coeff * v_n w
};

struct OrbitResult {
  std::vector<Vec> spanning;  // non-zero v_n w found, n >= 0
  std::vector<OrbitSlice> slices;
  std::optional<UnitCertificate> unit_in_orbit;
  /// Set when unit is shown not to lie in the orbit; `exclusion` holds the ideal check.
  bool unit_excluded = false;
  std::optional<CheckReport> exclusion;
  long escaped = 0;
  std::string note;
};

/// span{v_n w : v basis, n >= 0, w basis of m} restricted to in-cutoff slices. The unit
/// question (for the adjoint module) is settled positively by a single-product certificate
/// or negatively through V = C1 + V_+ with V_+ an ideal.
OrbitResult gv_ge0_orbit(const Module& m);

/// theta given by images of the basis of `from` in `to`. Checks theta(v_n w) = v_n theta(w)
/// for all n >= 0. Witness: x0 = v, x1 = n, weight = index of w.
CheckReport is_gv_ge0_hom(const Module& from, const Module& to, const std::vector<Vec>& theta);
/// Same over every n from the mode bound down to the truncation floor.
CheckReport is_v_hom(const Module& from, const Module& to, const std::vector<Vec>& theta);

/// Basis of the weight-preserving g(V)_{>=0}-homomorphisms from -> to, solved exactly from
/// the equations of is_gv_ge0_hom that stay inside the truncation. Weight preservation is
/// forced by L(0) = omega_1; it is assumed for comm-assoc algebras too.
std::vector<std::vector<Vec>> gv_ge0_hom_space(const Module& from, const Module& to);

struct InducedSpec {
  enum class Variant { Vacuum, Lowest };
  Variant variant = Variant::Vacuum;
  int lowest = 0;          // r, Lowest only
  int weight_cutoff = 0;   // module weight bound
  int degree_bound = 4;    // PBW degree bound
  int generator_weight = 0;  // Lowest only: V-weight bound on creation generators
};

/// U(g) (x)_P seed with P = g_{>=0} + C1(-1) acting on C (Vacuum) or
/// P = g_(0) + g_(-) acting on V_(r) through modes (Lowest). Level one.
class InducedModule : public Module {
 public:
  InducedModule(std::shared_ptr<const GvAlgebra> g, InducedSpec spec);

  const VertexAlgebra& algebra() const override { return g_->algebra(); }
  int dim() const override { return static_cast<int>(basis_.size()); }
  int weight(int label) const override;
  std::string name(int label) const override;
  std::string space() const override;
  Vec act(int v, int n, int w) const override;

  Vec act(const GvElement& x, const Vec& w) const;
  const std::vector<GvKey>& generators() const { return gens_; }
  int pbw_degree(int label) const { return static_cast<int>(basis_.at(label).first.size()); }
  const GvAlgebra& lie() const { return *g_; }

 private:
  using Mono = std::vector<int>;  // non-decreasing generator indices
  using State = std::pair<Mono, int>;
  using SVec = std::map<State, Scalar>;

  SVec apply(const GvElement& x, const Mono& m, int seed) const;
  SVec insert(int gen, const Mono& m, int seed) const;
  SVec act_inducing(const GvKey& k, const Mono& m, int seed) const;
  SVec left_multiply(int gen, const SVec& v) const;
  SVec seed_action(const GvKey& k, int seed) const;
  int mono_weight(const Mono& m) const;
  Vec to_vec(const SVec& v) const;

  std::shared_ptr<const GvAlgebra> g_;
  InducedSpec spec_;
  std::vector<GvKey> gens_;
  std::map<GvKey, int> gen_index_;
  std::vector<int> seeds_;  // seed labels in V (Lowest) or {unit} (Vacuum)
  std::vector<State> basis_;
  std::map<State, int> index_;
  mutable std::map<std::tuple<bool, GvKey, State>, SVec> cache_;  // (inducing?, key, state)
};

std::shared_ptr<const InducedModule> induced_level_one_module(const VertexAlgebra& a,
                                                             const InducedSpec& spec);

/// Bounded search over basis triples (u, v, w) for a Jacobi failure with the commutator
/// formula holding. Pass means a witness was found (so m is not a weak module); no witness
/// gives Inconclusive. Note names the triple.
CheckReport check_not_weak_module(const Module& m, const Window& win);

}  // namespace voacheck
