#pragma once

// Candidates for (quasi-)intertwining operators and (quasi-)P(z)-intertwining maps,
// the constructions from module maps, the operator/map correspondence and the checks.

#include "voacheck/lie_gv.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace voacheck {

/// A mode family (w1)_n w2 in W3 for basis w1 of W1 and w2 of W2. Candidates are graded:
/// (w1)_n w2 has weight wt w1 + wt w2 - n - 1, and the checks skip evaluations whose
/// weight lies outside the window.
class IntertwinerCandidate {
 public:
  using ModeFn = std::function<Vec(int w1, int n, int w2)>;
  using BoundFn = std::function<int(int w1, int w2)>;

  /// Modes are memoized. `bound` is the lower-truncation certificate:
  /// (w1)_n w2 = 0 for n > bound(w1, w2).
  IntertwinerCandidate(ModulePtr w1, ModulePtr w2, ModulePtr w3, ModeFn mode, BoundFn bound,
                       std::string label = "candidate");

  const Module& w1() const { return *w1_; }
  const Module& w2() const { return *w2_; }
  const Module& w3() const { return *w3_; }
  ModulePtr w1_ptr() const { return w1_; }
  ModulePtr w2_ptr() const { return w2_; }
  ModulePtr w3_ptr() const { return w3_; }
  const std::string& label() const { return label_; }

  /// Zero above the bound; otherwise the (memoized) mode function.
  Vec mode(int w1, int n, int w2) const;
  Vec mode(const Vec& w1, int n, const Vec& w2) const;
  /// The mode function itself, ignoring the bound.
  Vec raw_mode(int w1, int n, int w2) const { return (*mode_)(w1, n, w2); }
  int bound(int w1, int w2) const { return bound_(w1, w2); }
  int bound(const Vec& w1, const Vec& w2) const;
  /// Y(w1, x)w2 in X: coefficient of x^k is (w1)_{-k-1} w2.
  CoefficientOracle field(const Vec& w1, const Vec& w2) const;

  /// a * this + b * other (same modules).
  IntertwinerCandidate combine(const Scalar& a, const IntertwinerCandidate& other, const Scalar& b) const;
  /// Replaces a single mode value; used for negative controls.
  IntertwinerCandidate perturbed(int w1, int n, int w2, const Vec& value) const;

 private:
  ModulePtr w1_, w2_, w3_;
  std::shared_ptr<ModeFn> mode_;
  BoundFn bound_;
  std::string label_;
  std::shared_ptr<std::map<std::tuple<int, int, int>, Vec>> cache_;
};

/// L(-1) = omega_0 on a module (0 for comm-assoc algebras).
Vec l_minus_one(const Module& m, const Vec& w);

/// Y^t(w, x)v = e^{xL(-1)} Y_M(v, -x)w: a candidate of type (M; M, V). The coefficient of
/// x^{-n-1} is sum_k (-1)^{n+k+1}/k! L(-1)^k v_{n+k} w.
IntertwinerCandidate transpose_op(const ModulePtr& m);

/// Y(w, x)v = Y_2^t(theta(w), x)v for theta: W1 -> W2 given on the basis of W1.
IntertwinerCandidate from_theta(const ModulePtr& w1, const ModulePtr& w2, std::vector<Vec> theta);

/// A graded candidate whose modes for n in [bound - depth, bound] are pseudo-random small
/// integer vectors of the right weight (a fixed function of seed and the mode index), with
/// bound(w1, w2) = wt w1 + wt w2 - 1 - min weight of W3. Lower modes are 0.
IntertwinerCandidate random_graded_candidate(const ModulePtr& w1, const ModulePtr& w2, const ModulePtr& w3,
                                             std::uint64_t seed, int depth = 4);

/// The zero candidate of the given type.
IntertwinerCandidate zero_candidate(const ModulePtr& w1, const ModulePtr& w2, const ModulePtr& w3);

/// W = V / (g(V)_{>=0} V) together with theta_f(w) = f(w) 1, f given by coordinates on
/// the quotient basis. Throws std::invalid_argument when the unit lies in the orbit
/// or when the orbit is not settled at the cutoff.
struct ThetaF {
  std::shared_ptr<const QuotientModule> quotient;
  ModulePtr target;  // adjoint module of V
  std::vector<Vec> theta;
  OrbitResult orbit;
};
ThetaF theta_f_builder(const VertexAlgebra& a, const Vec& f);

struct IoSides {
  CoefficientOracle iterate;  // x2^-1 d((x1-x0)/x2) Y(Y1(v,x0)w1, x2)w2
  CoefficientOracle product;  // JacobiLeft Y3(v,x1)Y(w1,x2)w2 - JacobiMiddle Y(w1,x2)Y2(v,x1)w2
  CoefficientOracle inner;    // Y(Y1(v,x0)w1, x2)w2 without the kernel
};
IoSides io_jacobi_sides(const IntertwinerCandidate& c, const Vec& v, const Vec& w1, const Vec& w2);

CheckReport check_io_commutator(const IntertwinerCandidate& c, const Vec& v, const Vec& w1,
                                const Vec& w2, const Window& win);
CheckReport check_io_jacobi(const IntertwinerCandidate& c, const Vec& v, const Vec& w1,
                            const Vec& w2, const Window& win);
/// d/dx Y(w1,x)w2 = Y(L(-1)w1,x)w2 coefficientwise in X, for every basis w2.
CheckReport check_L_minus1(const IntertwinerCandidate& c, const Vec& w1, const Window& win);
/// (w1)_n w2 = 0 for the first `extra` modes above the declared bound, and the modes
/// down to `extra` below it have the graded weight.
CheckReport check_truncation(const IntertwinerCandidate& c, int extra = 3);

/// v_n acting on Y(w1, x) through the residue in x1 of the product side, compared with
/// Y(v_n w1, x), for the basis vectors w2 listed (all if empty). The window's X2 range and
/// weights are used.
CheckReport yh_action_check(const IntertwinerCandidate& c, const Vec& v, int n, const Vec& w1,
                            const Window& win, const std::vector<int>& w2s = {});

enum class IoClass { Intertwining, QuasiOnly, Neither, Inconclusive };
std::string io_class_name(IoClass c);

/// Which basis vectors the classification quantifies over; empty means all.
struct ClassifyScope {
  std::vector<int> v, w1, w2;
  Window window;
};

struct Classification {
  IoClass cls = IoClass::Inconclusive;
  std::vector<CheckReport> reports;  // the deciding report and any inconclusive ones
  std::optional<CheckReport> jacobi_witness;
};
Classification classify(const IntertwinerCandidate& c, const ClassifyScope& scope);

/// F: W1 (x) W2 -> completion of W3, as weight-slice projections (within W3's truncation).
class PzMapCandidate {
 public:
  using SliceFn = std::function<Vec(int w1, int w2, int s)>;

  /// z must be a positive rational.
  PzMapCandidate(ModulePtr w1, ModulePtr w2, ModulePtr w3, Scalar z, SliceFn slice,
                 std::string label = "map");

  const Module& w1() const { return *w1_; }
  const Module& w2() const { return *w2_; }
  const Module& w3() const { return *w3_; }
  ModulePtr w1_ptr() const { return w1_; }
  ModulePtr w2_ptr() const { return w2_; }
  ModulePtr w3_ptr() const { return w3_; }
  const Scalar& z() const { return z_; }
  const std::string& label() const { return label_; }

  /// Projection of F(w1 (x) w2) to the weight-s slice; zero below W3's lowest weight and
  /// CutoffEscape above its highest.
  Vec slice(int w1, int w2, int s) const;
  Vec slice(const Vec& w1, const Vec& w2, int s) const;

 private:
  ModulePtr w1_, w2_, w3_;
  Scalar z_;
  std::shared_ptr<SliceFn> slice_;
  std::string label_;
  std::shared_ptr<std::map<std::tuple<int, int, int>, Vec>> cache_;
};

/// F(w1 (x) w2) = sum_n (w1)_n w2 z^{-n-1} (branch p = 0).
PzMapCandidate io_to_map(const IntertwinerCandidate& c, const Scalar& z);
/// (w1)_n w2 = z^{n+1} times the projection of F(w1 (x) w2) to weight wt w1 + wt w2 - n - 1.
IntertwinerCandidate map_to_io(const PzMapCandidate& f);

/// Sides of the P(z) Jacobi identity in (x0, x1).
struct ImSides {
  CoefficientOracle product;  // PzRight Y3(v,x1)F(w1 (x) w2) - PzMiddle F(w1 (x) Y2(v,x1)w2)
  CoefficientOracle iterate;  // PzLeft F(Y1(v,x0)w1 (x) w2)
};
ImSides im_jacobi_sides(const PzMapCandidate& f, const Vec& v, const Vec& w1, const Vec& w2);

/// Residue in x0 of both sides, on the x1 window. Reports the product side as left.
CheckReport check_im_commutator(const PzMapCandidate& f, const Vec& v, const Vec& w1, const Vec& w2,
                                const Window& win);
CheckReport check_im_jacobi(const PzMapCandidate& f, const Vec& v, const Vec& w1, const Vec& w2,
                            const Window& win);

/// Finite-dimensional modules: a basis of the maps F passing check_im_commutator for every
/// basis triple on the window, solved exactly. Each basis map is given by its table
/// F(w1 (x) w2) in W3 (one slice per weight).
std::vector<PzMapCandidate> im_commutator_space(const ModulePtr& w1, const ModulePtr& w2, const ModulePtr& w3,
                                                const Scalar& z, const Window& win);

/// sum_i c_i F_i over maps of the same type and z.
PzMapCandidate combine_maps(const std::vector<PzMapCandidate>& maps, const std::vector<Scalar>& c);

}  // namespace voacheck
