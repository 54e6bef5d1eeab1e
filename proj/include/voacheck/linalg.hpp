#pragma once

// Exact linear algebra over sparse rational vectors.

#include "voacheck/vec.hpp"

#include <map>
#include <utility>
#include <vector>

namespace voacheck {

/// Incremental row echelon form. Each row carries a tag: the combination of inserted
/// vectors (as given by their tags) that the row equals.
class Echelon {
 public:
  /// Returns false when v already lies in the span.
  bool insert(const Vec& v, const Vec& tag = {});

  /// Remainder of v modulo the span. With `combination`, v = remainder + sum of tags.
  Vec reduce(const Vec& v, Vec* combination = nullptr) const;
  bool contains(const Vec& v) const { return reduce(v).is_zero(); }

  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(int label) const { return rows_.count(label) != 0; }

 private:
  struct Row {
    Vec v;
    Vec tag;
  };
  std::map<int, Row> rows_;  // keyed by pivot = smallest label of the row
};

/// Basis of {x : r . x = 0 for every row r}, x supported on labels 0..ncols-1.
std::vector<Vec> null_space(const std::vector<Vec>& rows, int ncols);

/// Rank of the span of the given vectors.
std::size_t rank_of(const std::vector<Vec>& vs);

}  // namespace voacheck
