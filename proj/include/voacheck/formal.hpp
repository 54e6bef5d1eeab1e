#pragma once

// Formal distributions as lazy coefficient oracles, formal delta-function
// kernels, residues and window-bounded equality.

#include "voacheck/scalar.hpp"
#include "voacheck/vec.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace voacheck {

/// Raised when a truncated space cannot represent a result. Never means zero.
class CutoffEscape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formal variables. X is the lone variable of one-variable series.
enum class Var { X0 = 0, X1 = 1, X2 = 2, X = 3 };
inline constexpr int kVarCount = 4;
inline constexpr std::array<Var, kVarCount> kAllVars = {Var::X0, Var::X1, Var::X2, Var::X};
std::string var_name(Var v);

class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr VarSet(std::initializer_list<Var> vs) {
    for (Var v : vs) mask_ |= bit(v);
  }
  constexpr bool contains(Var v) const { return (mask_ & bit(v)) != 0; }
  constexpr VarSet with(Var v) const { VarSet s; s.mask_ = mask_ | bit(v); return s; }
  constexpr VarSet without(Var v) const { VarSet s; s.mask_ = mask_ & ~bit(v); return s; }
  constexpr VarSet unite(VarSet o) const { VarSet s; s.mask_ = mask_ | o.mask_; return s; }
  constexpr bool empty() const { return mask_ == 0; }
  friend constexpr bool operator==(VarSet a, VarSet b) { return a.mask_ == b.mask_; }
  std::vector<Var> list() const;
  std::string to_string() const;

 private:
  static constexpr unsigned bit(Var v) { return 1u << static_cast<unsigned>(v); }
  unsigned mask_ = 0;
};

/// Integer exponent per variable; entries for variables outside the context stay 0.
using Exponents = std::array<int, kVarCount>;
inline int& at(Exponents& e, Var v) { return e[static_cast<int>(v)]; }
inline int at(const Exponents& e, Var v) { return e[static_cast<int>(v)]; }
Exponents make_exponents(std::initializer_list<std::pair<Var, int>> entries);

struct IntRange {
  int lo = 0;
  int hi = 0;
  bool contains(int x) const { return lo <= x && x <= hi; }
};

/// Exponent support of a series in one variable, possibly open on either side.
struct Bound {
  std::optional<int> lo;
  std::optional<int> hi;
};

/// Finite verification box: exponent ranges for the checked variables plus weight slices.
struct Window {
  std::array<std::optional<IntRange>, kVarCount> ranges{};
  IntRange weights{0, 0};

  static Window cube(VarSet vars, IntRange exps, IntRange weights);
  Window& set(Var v, IntRange r) { ranges[static_cast<int>(v)] = r; return *this; }
  std::string to_string() const;
};

using WeightFn = std::function<int(int label)>;

/// A formal distribution in up to four variables, valued in a graded space.
/// Evaluation is pure; values are restricted to the requested weight slices.
class CoefficientOracle {
 public:
  using Eval = std::function<Vec(const Exponents&, const IntRange& weights)>;
  using Support = std::function<Bound(Var, const IntRange& weights)>;

  CoefficientOracle(VarSet vars, Eval eval, WeightFn weight_of, std::string space,
                    Support support = nullptr);

  VarSet vars() const { return vars_; }
  const std::string& space() const { return space_; }
  const WeightFn& weight_of() const { return weight_of_; }

  Vec operator()(const Exponents& e, const IntRange& weights) const;
  Bound support(Var v, const IntRange& weights) const;

  CoefficientOracle with_support(Support support) const;

 private:
  VarSet vars_;
  Eval eval_;
  WeightFn weight_of_;
  std::string space_;
  Support support_;
};

/// The one-dimensional scalar space: label 0, weight 0.
inline constexpr const char* kScalarSpace = "scalar";
WeightFn scalar_weight();

CoefficientOracle zero_oracle(VarSet vars, WeightFn weight_of, std::string space);
/// value * (monomial with exponents e)
CoefficientOracle monomial_oracle(VarSet vars, const Exponents& e, Vec value, WeightFn weight_of,
                                  std::string space);

enum class DeltaKernelKind {
  JacobiLeft,    // x0^-1 d((x1-x2)/x0)
  JacobiMiddle,  // x0^-1 d((x2-x1)/(-x0))
  JacobiRight,   // x2^-1 d((x1-x0)/x2)
  PzLeft,        // z^-1 d((x1-x0)/z)
  PzMiddle,      // x0^-1 d((z-x1)/(-x0))
  PzRight,       // x0^-1 d((x1-z)/x0)
  PzInv,         // x0^-1 d((x1^-1 - z)/x0)
};
std::string kernel_name(DeltaKernelKind k);
bool is_pz_kind(DeltaKernelKind k);

/// c^-1 d((a - b)/c) = sum_n c^{-n-1} (a-b)^n, with (a-b)^n expanded in nonnegative powers
/// of b. Terms are indexed by (i, j) with n = i + j: b carries i, a carries j.
/// A slot is either the scalar z or a variable raised to sign * (its exponent).
class DeltaKernel {
 public:
  struct Slot {
    bool is_z = false;
    Var var = Var::X0;
    int sign = 1;
  };

  static DeltaKernel make(DeltaKernelKind kind, const std::optional<Scalar>& z = std::nullopt);

  /// Substitutes var -> var^{-1}.
  DeltaKernel inverted(Var v) const;

  VarSet vars() const;
  Scalar coefficient(long i, long j) const;
  /// Exponent carried by variable v in term (i, j); v must be a slot variable.
  long exponent(Var v, long i, long j) const;

  const Slot& prefactor() const { return slots_[0]; }
  const Slot& a() const { return slots_[1]; }
  const Slot& b() const { return slots_[2]; }

 private:
  std::array<Slot, 3> slots_{};  // prefactor, a, b
  bool alternating_ = false;     // extra (-1)^n from a (-x0) denominator
  Scalar z_ = 0;
};

/// delta_kernel as a scalar-valued oracle. Throws std::invalid_argument when z is missing
/// or zero on a Pz kind, or supplied on a Jacobi kind.
CoefficientOracle delta_kernel(DeltaKernelKind kind, const std::optional<Scalar>& z = std::nullopt);
CoefficientOracle kernel_oracle(const DeltaKernel& k);

/// kernel * f. Each coefficient is a finite sum; the truncation comes from f's support.
/// Throws std::logic_error when the sum is not finite under f's declared support.
CoefficientOracle multiply(const DeltaKernel& kernel, const CoefficientOracle& f);

/// Coefficient of var^{-1}.
CoefficientOracle residue(const CoefficientOracle& o, Var v);

/// a * o1 + o2. Throws std::invalid_argument on variable-set or space mismatch.
CoefficientOracle scale_and_add(const Scalar& a, const CoefficientOracle& o1,
                                const CoefficientOracle& o2);

/// o(var -> var^{-1}).
CoefficientOracle invert_variable(const CoefficientOracle& o, Var v);

/// var^k * o.
CoefficientOracle shift(const CoefficientOracle& o, Var v, int k);

/// Adds a variable the oracle does not depend on: coefficients vanish unless its exponent is 0.
CoefficientOracle extend(const CoefficientOracle& o, Var v);

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct Witness {
  VarSet vars;
  Exponents exponents{};
  int weight = 0;
  Vec left;
  Vec right;
};

struct CheckReport {
  std::string check;
  Verdict verdict = Verdict::Pass;
  Window window;
  std::optional<Witness> witness;
  long points = 0;
  long escaped = 0;
  std::string note;

  bool passed() const { return verdict == Verdict::Pass; }
  bool failed() const { return verdict == Verdict::Fail; }
};

/// Compares o1 and o2 on every (exponent tuple, weight slice) of the window, in
/// lexicographic order of exponents (x0 slowest). The first discrepancy is the witness.
/// Points whose evaluation leaves a truncated space are skipped and counted; if any were
/// skipped and no discrepancy was found the verdict is Inconclusive.
CheckReport equal_on_window(const CoefficientOracle& o1, const CoefficientOracle& o2,
                            const Window& w, std::string check = "equal_on_window");

/// Folds sub-reports: first Fail wins, then Inconclusive, else Pass.
CheckReport combine(std::string check, const std::vector<CheckReport>& parts);

std::string describe(const CheckReport& r, const std::function<std::string(int)>& name = nullptr);

}  // namespace voacheck
