#pragma once

#include <cstdint>
#include <vector>

#include "sgf/common.hpp"

namespace sgf {

enum class EntryKind { delta_pair, smooth, delta_derivative_row, series_column, vandermonde, plane_wave };

struct EntryPart {
  EntryKind kind;
  cd value;
};

// One cell of a distributional determinant after its integrals are done.
// consumes lists the integration variables the cell's distribution acts on.
struct DistDetEntry {
  std::vector<EntryPart> parts;
  std::vector<int> consumes;

  cd value() const;
  cd value_without_deltas() const;
};

struct DistDetResult {
  cd value;
  cd delta_free;  // all delta_pair parts dropped
  int64_t terms = 0;
};

inline constexpr int64_t dist_det_budget = 720;

// permutation expansion of an n x n row-major cell array; checks that every
// term consumes each of the n_vars variables exactly once
DistDetResult dist_det(const std::vector<DistDetEntry>& cells, int n, int n_vars,
                       int64_t budget = dist_det_budget);

}  // namespace sgf
