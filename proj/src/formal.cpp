#include "voacheck/formal.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace voacheck {

std::string var_name(Var v) {
  switch (v) {
    case Var::X0: return "x0";
    case Var::X1: return "x1";
    case Var::X2: return "x2";
    case Var::X: return "x";
  }
  return "?";
}

std::vector<Var> VarSet::list() const {
  std::vector<Var> out;
  for (Var v : kAllVars)
    if (contains(v)) out.push_back(v);
  return out;
}

std::string VarSet::to_string() const {
  std::string out = "{";
  for (Var v : list()) {
    if (out.size() > 1) out += ",";
    out += var_name(v);
  }
  return out + "}";
}

Exponents make_exponents(std::initializer_list<std::pair<Var, int>> entries) {
  Exponents e{};
  for (const auto& [v, k] : entries) at(e, v) = k;
  return e;
}

Window Window::cube(VarSet vars, IntRange exps, IntRange weights) {
  Window w;
  for (Var v : vars.list()) w.set(v, exps);
  w.weights = weights;
  return w;
}

std::string Window::to_string() const {
  std::ostringstream os;
  for (Var v : kAllVars) {
    const auto& r = ranges[static_cast<int>(v)];
    if (r) os << var_name(v) << ":[" << r->lo << "," << r->hi << "] ";
  }
  os << "wt:[" << weights.lo << "," << weights.hi << "]";
  return os.str();
}

// ---------------------------------------------------------------------------

CoefficientOracle::CoefficientOracle(VarSet vars, Eval eval, WeightFn weight_of, std::string space,
                                     Support support)
    : vars_(vars),
      eval_(std::move(eval)),
      weight_of_(std::move(weight_of)),
      space_(std::move(space)),
      support_(std::move(support)) {}

Vec CoefficientOracle::operator()(const Exponents& e, const IntRange& weights) const {
  Exponents clean{};
  for (Var v : vars_.list()) at(clean, v) = at(e, v);
  Vec raw = eval_(clean, weights);
  return raw.filtered([&](int label) { return weights.contains(weight_of_(label)); });
}

Bound CoefficientOracle::support(Var v, const IntRange& weights) const {
  if (!vars_.contains(v)) return Bound{0, 0};
  if (!support_) return Bound{};
  return support_(v, weights);
}

CoefficientOracle CoefficientOracle::with_support(Support support) const {
  CoefficientOracle out = *this;
  out.support_ = std::move(support);
  return out;
}

WeightFn scalar_weight() {
  return [](int) { return 0; };
}

CoefficientOracle zero_oracle(VarSet vars, WeightFn weight_of, std::string space) {
  return CoefficientOracle(
      vars, [](const Exponents&, const IntRange&) { return Vec{}; }, std::move(weight_of),
      std::move(space), [](Var, const IntRange&) { return Bound{0, -1}; });
}

CoefficientOracle monomial_oracle(VarSet vars, const Exponents& e, Vec value, WeightFn weight_of,
                                  std::string space) {
  Exponents key{};
  for (Var v : vars.list()) at(key, v) = at(e, v);
  return CoefficientOracle(
      vars,
      [key, value](const Exponents& q, const IntRange&) { return q == key ? value : Vec{}; },
      std::move(weight_of), std::move(space),
      [key](Var v, const IntRange&) { return Bound{at(key, v), at(key, v)}; });
}

// ---------------------------------------------------------------------------

std::string kernel_name(DeltaKernelKind k) {
  switch (k) {
    case DeltaKernelKind::JacobiLeft: return "JacobiLeft";
    case DeltaKernelKind::JacobiMiddle: return "JacobiMiddle";
    case DeltaKernelKind::JacobiRight: return "JacobiRight";
    case DeltaKernelKind::PzLeft: return "PzLeft";
    case DeltaKernelKind::PzMiddle: return "PzMiddle";
    case DeltaKernelKind::PzRight: return "PzRight";
    case DeltaKernelKind::PzInv: return "PzInv";
  }
  return "?";
}

bool is_pz_kind(DeltaKernelKind k) {
  return k == DeltaKernelKind::PzLeft || k == DeltaKernelKind::PzMiddle ||
         k == DeltaKernelKind::PzRight || k == DeltaKernelKind::PzInv;
}

DeltaKernel DeltaKernel::make(DeltaKernelKind kind, const std::optional<Scalar>& z) {
  if (is_pz_kind(kind)) {
    if (!z || *z == 0)
      throw std::invalid_argument(kernel_name(kind) + " needs a nonzero z");
  } else if (z) {
    throw std::invalid_argument(kernel_name(kind) + " takes no z");
  }
  using S = Slot;
  const S zs{true, Var::X0, 1};
  auto var = [](Var v, int sign = 1) { return S{false, v, sign}; };
  DeltaKernel k;
  if (z) k.z_ = *z;
  switch (kind) {
    case DeltaKernelKind::JacobiLeft:
      k.slots_ = {var(Var::X0), var(Var::X1), var(Var::X2)};
      break;
    case DeltaKernelKind::JacobiMiddle:
      k.slots_ = {var(Var::X0), var(Var::X2), var(Var::X1)};
      k.alternating_ = true;
      break;
    case DeltaKernelKind::JacobiRight:
      k.slots_ = {var(Var::X2), var(Var::X1), var(Var::X0)};
      break;
    case DeltaKernelKind::PzLeft:
      k.slots_ = {zs, var(Var::X1), var(Var::X0)};
      break;
    case DeltaKernelKind::PzMiddle:
      k.slots_ = {var(Var::X0), zs, var(Var::X1)};
      k.alternating_ = true;
      break;
    case DeltaKernelKind::PzRight:
      k.slots_ = {var(Var::X0), var(Var::X1), zs};
      break;
    case DeltaKernelKind::PzInv:
      k.slots_ = {var(Var::X0), var(Var::X1, -1), zs};
      break;
  }
  return k;
}

DeltaKernel DeltaKernel::inverted(Var v) const {
  DeltaKernel k = *this;
  bool found = false;
  for (auto& s : k.slots_)
    if (!s.is_z && s.var == v) {
      s.sign = -s.sign;
      found = true;
    }
  if (!found) throw std::invalid_argument("inverted: kernel does not involve " + var_name(v));
  return k;
}

VarSet DeltaKernel::vars() const {
  VarSet s;
  for (const auto& slot : slots_)
    if (!slot.is_z) s = s.with(slot.var);
  return s;
}

Scalar DeltaKernel::coefficient(long i, long j) const {
  const long n = i + j;
  Scalar c = binomial_coeff(n, i);
  if (c == 0) return c;
  if (i % 2 != 0) c = -c;
  if (alternating_ && n % 2 != 0) c = -c;
  if (slots_[0].is_z) c *= power(z_, -n - 1);
  if (slots_[1].is_z) c *= power(z_, j);
  if (slots_[2].is_z) c *= power(z_, i);
  return c;
}

long DeltaKernel::exponent(Var v, long i, long j) const {
  if (!slots_[0].is_z && slots_[0].var == v) return slots_[0].sign * (-i - j - 1);
  if (!slots_[1].is_z && slots_[1].var == v) return slots_[1].sign * j;
  if (!slots_[2].is_z && slots_[2].var == v) return slots_[2].sign * i;
  throw std::invalid_argument("exponent: kernel does not involve " + var_name(v));
}

namespace {

constexpr long long kInf = 1LL << 50;

struct LinConstraint {
  long long a = 0, b = 0;  // a*i + b*j in [lo, hi]
  long long lo = -kInf, hi = kInf;
};

struct Interval {
  long long lo, hi;
};

long long sat(long long x) { return std::clamp(x, -kInf, kInf); }
bool finite(long long x) { return x > -kInf && x < kInf; }

// Range of coef * x for x in iv (coef in {-1,0,1}).
Interval scaled(long long coef, Interval iv) {
  if (coef == 0) return {0, 0};
  if (coef > 0) return iv;
  return {sat(-iv.hi), sat(-iv.lo)};
}

// Tightens x given lo <= coef*x + rest <= hi with rest in restRange.
Interval tighten(Interval x, long long coef, long long lo, long long hi, Interval rest) {
  if (coef == 0) return x;
  long long low = (lo <= -kInf || rest.hi >= kInf) ? -kInf : sat(lo - rest.hi);
  long long high = (hi >= kInf || rest.lo <= -kInf) ? kInf : sat(hi - rest.lo);
  if (coef < 0) {
    std::swap(low, high);
    low = sat(-low);
    high = sat(-high);
  }
  return {std::max(x.lo, low), std::min(x.hi, high)};
}

}  // namespace

CoefficientOracle multiply(const DeltaKernel& kernel, const CoefficientOracle& f) {
  const VarSet kvars = kernel.vars();
  const VarSet fvars = f.vars();
  const VarSet all = kvars.unite(fvars);
  auto eval = [kernel, f, kvars, fvars](const Exponents& t, const IntRange& weights) -> Vec {
    std::vector<LinConstraint> cons;
    for (Var v : kvars.list()) {
      // exponent(v, i, j) = a*i + b*j + c
      const long long c = kernel.exponent(v, 0, 0);
      const long long a = kernel.exponent(v, 1, 0) - c;
      const long long b = kernel.exponent(v, 0, 1) - c;
      LinConstraint lc{a, b};
      if (!fvars.contains(v)) {
        lc.lo = lc.hi = at(t, v) - c;
      } else {
        Bound bd = f.support(v, weights);
        if (bd.hi) lc.lo = at(t, v) - *bd.hi - c;
        if (bd.lo) lc.hi = at(t, v) - *bd.lo - c;
      }
      cons.push_back(lc);
    }
    Interval I{0, kInf}, J{-kInf, kInf};
    for (int round = 0; round < 32; ++round) {
      Interval oldI = I, oldJ = J;
      for (const auto& lc : cons) {
        I = tighten(I, lc.a, lc.lo, lc.hi, scaled(lc.b, J));
        J = tighten(J, lc.b, lc.lo, lc.hi, scaled(lc.a, I));
      }
      if (I.lo > I.hi || J.lo > J.hi) return Vec{};
      if (oldI.lo == I.lo && oldI.hi == I.hi && oldJ.lo == J.lo && oldJ.hi == J.hi) break;
    }
    if (!finite(I.lo) || !finite(I.hi) || !finite(J.lo) || !finite(J.hi))
      throw std::logic_error("kernel product is not a finite sum under the declared support");
    if ((I.hi - I.lo + 1) * (J.hi - J.lo + 1) > 4'000'000)
      throw std::logic_error("kernel product summation box too large");
    Vec out;
    for (long long i = I.lo; i <= I.hi; ++i) {
      for (long long j = J.lo; j <= J.hi; ++j) {
        bool ok = true;
        for (const auto& lc : cons) {
          long long val = lc.a * i + lc.b * j;
          if (val < lc.lo || val > lc.hi) { ok = false; break; }
        }
        if (!ok) continue;
        Scalar coeff = kernel.coefficient(static_cast<long>(i), static_cast<long>(j));
        if (coeff == 0) continue;
        Exponents r = t;
        for (Var v : kvars.list())
          at(r, v) = fvars.contains(v)
                         ? static_cast<int>(at(t, v) - kernel.exponent(v, static_cast<long>(i),
                                                                       static_cast<long>(j)))
                         : 0;
        out.add(f(r, weights), coeff);
      }
    }
    return out;
  };
  return CoefficientOracle(all, eval, f.weight_of(), f.space());
}

CoefficientOracle kernel_oracle(const DeltaKernel& k) {
  auto one = monomial_oracle(VarSet{}, Exponents{}, Vec::basis(0), scalar_weight(), kScalarSpace);
  return multiply(k, one);
}

CoefficientOracle delta_kernel(DeltaKernelKind kind, const std::optional<Scalar>& z) {
  return kernel_oracle(DeltaKernel::make(kind, z));
}

CoefficientOracle residue(const CoefficientOracle& o, Var v) {
  if (!o.vars().contains(v))
    throw std::invalid_argument("residue: " + var_name(v) + " not among " + o.vars().to_string());
  auto eval = [o, v](const Exponents& e, const IntRange& w) {
    Exponents full = e;
    at(full, v) = -1;
    return o(full, w);
  };
  auto support = [o](Var u, const IntRange& w) { return o.support(u, w); };
  return CoefficientOracle(o.vars().without(v), eval, o.weight_of(), o.space(), support);
}

CoefficientOracle scale_and_add(const Scalar& a, const CoefficientOracle& o1,
                                const CoefficientOracle& o2) {
  if (!(o1.vars() == o2.vars()))
    throw std::invalid_argument("scale_and_add: variable sets " + o1.vars().to_string() + " and " +
                                o2.vars().to_string() + " differ");
  if (o1.space() != o2.space())
    throw std::invalid_argument("scale_and_add: value spaces '" + o1.space() + "' and '" +
                                o2.space() + "' differ");
  auto eval = [a, o1, o2](const Exponents& e, const IntRange& w) {
    Vec out = o2(e, w);
    if (a != 0) out.add(o1(e, w), a);
    return out;
  };
  auto support = [o1, o2](Var v, const IntRange& w) {
    Bound b1 = o1.support(v, w), b2 = o2.support(v, w);
    Bound out;
    if (b1.lo && b2.lo) out.lo = std::min(*b1.lo, *b2.lo);
    if (b1.hi && b2.hi) out.hi = std::max(*b1.hi, *b2.hi);
    return out;
  };
  return CoefficientOracle(o1.vars(), eval, o1.weight_of(), o1.space(), support);
}

CoefficientOracle invert_variable(const CoefficientOracle& o, Var v) {
  if (!o.vars().contains(v))
    throw std::invalid_argument("invert_variable: " + var_name(v) + " not present");
  auto eval = [o, v](const Exponents& e, const IntRange& w) {
    Exponents f = e;
    at(f, v) = -at(e, v);
    return o(f, w);
  };
  auto support = [o, v](Var u, const IntRange& w) {
    Bound b = o.support(u, w);
    if (u != v) return b;
    Bound out;
    if (b.hi) out.lo = -*b.hi;
    if (b.lo) out.hi = -*b.lo;
    return out;
  };
  return CoefficientOracle(o.vars(), eval, o.weight_of(), o.space(), support);
}

CoefficientOracle shift(const CoefficientOracle& o, Var v, int k) {
  if (!o.vars().contains(v)) throw std::invalid_argument("shift: " + var_name(v) + " not present");
  auto eval = [o, v, k](const Exponents& e, const IntRange& w) {
    Exponents f = e;
    at(f, v) -= k;
    return o(f, w);
  };
  auto support = [o, v, k](Var u, const IntRange& w) {
    Bound b = o.support(u, w);
    if (u == v) {
      if (b.lo) *b.lo += k;
      if (b.hi) *b.hi += k;
    }
    return b;
  };
  return CoefficientOracle(o.vars(), eval, o.weight_of(), o.space(), support);
}

CoefficientOracle extend(const CoefficientOracle& o, Var v) {
  if (o.vars().contains(v)) return o;
  auto eval = [o, v](const Exponents& e, const IntRange& w) {
    if (at(e, v) != 0) return Vec{};
    return o(e, w);
  };
  auto support = [o, v](Var u, const IntRange& w) {
    if (u == v) return Bound{0, 0};
    return o.support(u, w);
  };
  return CoefficientOracle(o.vars().with(v), eval, o.weight_of(), o.space(), support);
}

// ---------------------------------------------------------------------------

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

void for_each_point(const std::vector<Var>& vars, const Window& w, std::size_t depth, Exponents& e,
                    const std::function<bool(const Exponents&)>& visit, bool& stop) {
  if (stop) return;
  if (depth == vars.size()) {
    if (!visit(e)) stop = true;
    return;
  }
  const IntRange r = *w.ranges[static_cast<int>(vars[depth])];
  for (int k = r.lo; k <= r.hi && !stop; ++k) {
    at(e, vars[depth]) = k;
    for_each_point(vars, w, depth + 1, e, visit, stop);
  }
}

}  // namespace

CheckReport equal_on_window(const CoefficientOracle& o1, const CoefficientOracle& o2,
                            const Window& w, std::string check) {
  if (!(o1.vars() == o2.vars()))
    throw std::invalid_argument("equal_on_window: variable sets differ");
  if (o1.space() != o2.space())
    throw std::invalid_argument("equal_on_window: value spaces differ");
  const auto vars = o1.vars().list();
  for (Var v : vars)
    if (!w.ranges[static_cast<int>(v)])
      throw std::invalid_argument("equal_on_window: window lacks a range for " + var_name(v));
  if (w.weights.lo > w.weights.hi) throw std::invalid_argument("equal_on_window: empty weights");

  CheckReport rep;
  rep.check = std::move(check);
  rep.window = w;
  Exponents e{};
  bool stop = false;
  std::string first_escape;
  for_each_point(vars, w, 0, e, [&](const Exponents& p) {
    ++rep.points;
    Vec a, b;
    try {
      a = o1(p, w.weights);
      b = o2(p, w.weights);
    } catch (const CutoffEscape& ex) {
      if (rep.escaped++ == 0) first_escape = ex.what();
      return true;
    }
    if (a == b) return true;
    const auto& wt = o1.weight_of();
    for (int s = w.weights.lo; s <= w.weights.hi; ++s) {
      auto slice = [&](const Vec& x) { return x.filtered([&](int l) { return wt(l) == s; }); };
      Vec la = slice(a), lb = slice(b);
      if (la == lb) continue;
      rep.witness = Witness{o1.vars(), p, s, la, lb};
      break;
    }
    return false;
  }, stop);

  if (rep.witness) {
    rep.verdict = Verdict::Fail;
  } else if (rep.escaped > 0) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = std::to_string(rep.escaped) + " point(s) left the truncated range (first: " +
               first_escape + ")";
  } else {
    rep.verdict = Verdict::Pass;
  }
  return rep;
}

CheckReport combine(std::string check, const std::vector<CheckReport>& parts) {
  CheckReport out;
  out.check = std::move(check);
  out.verdict = Verdict::Pass;
  for (const auto& p : parts) {
    out.points += p.points;
    out.escaped += p.escaped;
    if (p.verdict == Verdict::Fail) {
      out.verdict = Verdict::Fail;
      out.witness = p.witness;
      out.window = p.window;
      out.note = p.check + (p.note.empty() ? "" : ": " + p.note);
      return out;
    }
    if (p.verdict == Verdict::Inconclusive && out.verdict == Verdict::Pass) {
      out.verdict = Verdict::Inconclusive;
      out.note = p.check + ": " + p.note;
    }
  }
  if (!parts.empty() && out.verdict == Verdict::Pass) out.window = parts.front().window;
  return out;
}

std::string describe(const CheckReport& r, const std::function<std::string(int)>& name) {
  std::ostringstream os;
  os << r.check << ": " << verdict_name(r.verdict) << " (" << r.points << " points";
  if (r.escaped) os << ", " << r.escaped << " escaped";
  os << ")";
  if (r.witness) {
    auto nm = name ? name : [](int k) { return "e" + std::to_string(k); };
    os << " witness at ";
    for (Var v : r.witness->vars.list()) os << var_name(v) << "^" << at(r.witness->exponents, v) << " ";
    os << "wt " << r.witness->weight << ": left " << r.witness->left.to_string(nm) << ", right "
       << r.witness->right.to_string(nm);
  }
  if (!r.note.empty()) os << " [" << r.note << "]";
  return os.str();
}

}  // namespace voacheck
