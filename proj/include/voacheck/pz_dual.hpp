#pragma once

// The tau action on (W1 (x) W2)*, the P(z)-compatibility condition, F^vee, and the
// warning space in the finite-dimensional commutative case.

#include "voacheck/intertwine.hpp"

#include <functional>
#include <optional>

namespace voacheck {

/// A functional on W1 (x) W2. Coordinates are over the labels a * dim(W2) + b, the
/// weight of a coordinate is wt a + wt b. Either finitely supported (coords) or given
/// lazily (used for F^vee(alpha), which can have infinite support).
struct DualFunctional {
  ModulePtr w1, w2;
  std::optional<Vec> coords;
  std::function<Scalar(int a, int b)> lazy;

  static DualFunctional finite(ModulePtr w1, ModulePtr w2, Vec coords);
  static DualFunctional dual_basis(ModulePtr w1, ModulePtr w2, int a, int b);

  int label(int a, int b) const { return a * w2->dim() + b; }
  Scalar operator()(int a, int b) const;
  Scalar operator()(const Vec& x, const Vec& y) const;
  /// Highest coordinate weight; only for finite functionals.
  std::optional<int> max_weight() const;
};

/// Weight function and space name shared by all functional-valued oracles.
WeightFn pair_weight(const Module& w1, const Module& w2);
std::string pair_space(const Module& w1, const Module& w2);

/// The two forms of the generating-function action.
///  Tau0: tau(x0^-1 d((x1^-1 - z)/x0) Y_t(v, x1)) lambda
///  Tau:  tau(x0^-1 d((x1 - z)/x0) Y^o_t(v, x1)) lambda
enum class TauForm { Tau0, Tau };

/// Two-variable action in (x0, x1), valued in functionals.
CoefficientOracle tau_extended(const Vec& v, const DualFunctional& lambda, const Scalar& z,
                               TauForm form = TauForm::Tau0);
/// Residue in x0 of tau_extended: tau(Y_t(v, x))lambda (Tau0) or tau(Y^o_t(v, x))lambda (Tau),
/// as an oracle in x1.
CoefficientOracle tau_restricted(const Vec& v, const DualFunctional& lambda, const Scalar& z,
                                 TauForm form = TauForm::Tau0);

/// Substitutes x1 -> x1^-1 and v -> e^{x1 L(1)}(-x1^-2)^{L(0)} v in the Tau0 form. Equal to
/// the Tau form when the two descriptions agree.
CoefficientOracle tau0_transformed(const Vec& v, const DualFunctional& lambda, const Scalar& z);

/// The compatibility condition in the Tau form, for every basis v of the algebra. First
/// checks that tau(Y^o_t(v, x))lambda vanishes for `extra` powers above its declared
/// top (the lower truncation condition); needs a finite functional.
CheckReport check_compatibility(const DualFunctional& lambda, const Scalar& z, const Window& win,
                                int extra = 3);

/// Finite-dimensional comm-assoc case: a basis (as coordinate vectors) of the compatible
/// functionals, solved exactly from the defects of check_compatibility on a window.
std::vector<Vec> compatible_subspace(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z);

/// W1 (x) W2 modulo (v.w1) (x) w2 - w1 (x) (v.w2).
struct TensorOverAlgebra {
  int dim = 0;
  std::vector<Vec> relations;  // spanning relations, over pair labels
  std::vector<int> basis;      // pair labels whose classes form a basis
  /// Class of a pair-label vector in coordinates over `basis`.
  std::function<Vec(const Vec&)> project;
};
TensorOverAlgebra tensor_over_algebra(const ModulePtr& w1, const ModulePtr& w2);

/// <F^vee(alpha), w1 (x) w2> = <alpha, F(w1 (x) w2)>; alpha is finitely supported over W3.
DualFunctional f_vee(const PzMapCandidate& f, const Vec& alpha);

/// F^vee((Y3')^o(v, x1) alpha) = tau(Y^o_t(v, x1)) F^vee(alpha) coefficientwise on the
/// window (x1 and weights), for every basis v and the given alphas (dual basis if empty).
CheckReport check_fvee_intertwines(const PzMapCandidate& f, const Window& win,
                                   const std::vector<Vec>& alphas = {});

/// Image compatibility of F^vee on the dual basis of W3 against check_im_jacobi on all
/// basis triples. Passes when the two verdicts agree; the note carries both.
struct PcorrespReport {
  CheckReport report;
  Verdict compatibility = Verdict::Inconclusive;
  Verdict jacobi = Verdict::Inconclusive;
};
PcorrespReport check_pcorresp(const PzMapCandidate& f, const Window& win);

/// (W1 (x) W2)* with tau(Y_t(., x)) as a module (finite-dimensional case). Mode n of v is
/// the coefficient of x^{-n-1}; every mode above `bound` is declared zero.
ModulePtr tau_dual_module(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z, int bound = -1);

/// The largest weak module inside (W1 (x) W2)* in the finite-dimensional comm-assoc case:
/// checks that the full dual is one (truncation, Jacobi identity, unit action) and compares
/// its dimension with the compatible subspace.
struct WarningSpace {
  CheckReport report;
  int dim = 0;
  int compatible_dim = 0;
  std::vector<Vec> compatible;
};
WarningSpace warning_space(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z, const Window& win);

/// Compatible functionals are carried to compatible functionals by every tau(Y_t(v, x))
/// mode in [lo, hi]; exact linear algebra.
CheckReport check_compatibility_stable(const ModulePtr& w1, const ModulePtr& w2, const Scalar& z,
                                       int lo = -3, int hi = 2);

}  // namespace voacheck
