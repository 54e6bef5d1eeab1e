#pragma once

#include "voacheck/scalar.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <string>

namespace voacheck {

/// Sparse exact vector over integer basis labels. Zero coordinates are never stored.
class Vec {
 public:
  using Storage = std::map<int, Scalar>;

  Vec() = default;
  static Vec basis(int index, const Scalar& coeff = 1) {
    Vec v;
    v.add(index, coeff);
    return v;
  }

  void add(int index, const Scalar& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = coords_.try_emplace(index, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) coords_.erase(it);
    }
  }
  void add(const Vec& other, const Scalar& coeff = 1) {
    if (coeff == 0) return;
    for (const auto& [k, c] : other.coords_) add(k, c * coeff);
  }

  Scalar operator[](int index) const {
    auto it = coords_.find(index);
    return it == coords_.end() ? Scalar(0) : it->second;
  }

  bool is_zero() const { return coords_.empty(); }
  std::size_t size() const { return coords_.size(); }
  const Storage& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  Vec& operator+=(const Vec& o) { add(o); return *this; }
  Vec& operator-=(const Vec& o) { add(o, -1); return *this; }
  Vec& operator*=(const Scalar& s) {
    if (s == 0) { coords_.clear(); return *this; }
    for (auto& [k, c] : coords_) c *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const Scalar& s, Vec a) { return a *= s; }
  friend bool operator==(const Vec& a, const Vec& b) { return a.coords_ == b.coords_; }

  /// Keeps the coordinates whose label satisfies keep.
  Vec filtered(const std::function<bool(int)>& keep) const {
    Vec out;
    for (const auto& [k, c] : coords_)
      if (keep(k)) out.coords_.emplace(k, c);
    return out;
  }

  /// Linear map applied label by label.
  Vec mapped(const std::function<Vec(int)>& image) const {
    Vec out;
    for (const auto& [k, c] : coords_) out.add(image(k), c);
    return out;
  }

  Scalar dot(const Vec& o) const {
    Scalar s = 0;
    const auto& small = size() <= o.size() ? coords_ : o.coords_;
    const auto& large = size() <= o.size() ? o : *this;
    for (const auto& [k, c] : small) s += c * large[k];
    return s;
  }

  std::string to_string(const std::function<std::string(int)>& name) const;
  friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
    return os << v.to_string([](int k) { return "e" + std::to_string(k); });
  }

 private:
  Storage coords_;
};

}  // namespace voacheck
