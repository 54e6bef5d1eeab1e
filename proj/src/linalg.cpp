#include "voacheck/linalg.hpp"

namespace voacheck {

Vec Echelon::reduce(const Vec& v, Vec* combination) const {
  Vec r = v;
  Vec comb;
  for (const auto& [pivot, row] : rows_) {
    Scalar c = r[pivot];
    if (c == 0) continue;
    r.add(row.v, -c);
    comb.add(row.tag, c);
  }
  if (combination) *combination = std::move(comb);
  return r;
}

bool Echelon::insert(const Vec& v, const Vec& tag) {
  Vec comb;
  Vec r = reduce(v, &comb);
  if (r.is_zero()) return false;
  Vec t = tag - comb;
  const int pivot = r.begin()->first;
  const Scalar inv = 1 / r.begin()->second;
  r *= inv;
  t *= inv;
  rows_.emplace(pivot, Row{std::move(r), std::move(t)});
  return true;
}

std::vector<Vec> null_space(const std::vector<Vec>& rows, int ncols) {
  std::vector<std::pair<int, Vec>> piv;  // reduced rows with their pivot
  for (const Vec& row : rows) {
    Vec r = row;
    for (const auto& [p, pr] : piv)
      if (Scalar c = r[p]; c != 0) r.add(pr, -c);
    if (r.is_zero()) continue;
    const int p = r.begin()->first;
    r *= 1 / r.begin()->second;
    for (auto& [q, qr] : piv)
      if (Scalar c = qr[p]; c != 0) qr.add(r, -c);
    piv.emplace_back(p, std::move(r));
  }
  std::map<int, const Vec*> by_pivot;
  for (const auto& [p, r] : piv) by_pivot[p] = &r;
  std::vector<Vec> out;
  for (int f = 0; f < ncols; ++f) {
    if (by_pivot.count(f)) continue;
    Vec x = Vec::basis(f);
    for (const auto& [p, r] : by_pivot)
      if (Scalar c = (*r)[f]; c != 0) x.add(p, -c);
    out.push_back(std::move(x));
  }
  return out;
}

std::size_t rank_of(const std::vector<Vec>& vs) {
  Echelon e;
  for (const Vec& v : vs) e.insert(v);
  return e.rank();
}

}  // namespace voacheck
