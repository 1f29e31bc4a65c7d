#include "sgf/distdet.hpp"

#include <algorithm>
#include <numeric>

namespace sgf {

cd DistDetEntry::value() const {
  cd s{0.0};
  for (const auto& p : parts) s += p.value;
  return s;
}

cd DistDetEntry::value_without_deltas() const {
  cd s{0.0};
  for (const auto& p : parts)
    if (p.kind != EntryKind::delta_pair) s += p.value;
  return s;
}

DistDetResult dist_det(const std::vector<DistDetEntry>& cells, int n, int n_vars, int64_t budget) {
  if (int(cells.size()) != n * n) throw ValidationError("cell array does not match the determinant size");
  if (factorial(n) > double(budget)) throw ResourceError("determinant expansion exceeds the term budget");
  DistDetResult r;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> used(n_vars);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
    std::fill(used.begin(), used.end(), 0);
    cd t{sign_pow(inv)}, t0{sign_pow(inv)};
    for (int i = 0; i < n; ++i) {
      const DistDetEntry& e = cells[size_t(i) * n + p[i]];
      for (int v : e.consumes) {
        if (v < 0 || v >= n_vars) throw VerificationError("cell consumes an unknown variable");
        ++used[v];
      }
      t *= e.value();
      t0 *= e.value_without_deltas();
    }
    for (int v = 0; v < n_vars; ++v)
      if (used[v] != 1) throw VerificationError("determinant term does not consume every variable exactly once");
    r.value += t;
    r.delta_free += t0;
    ++r.terms;
  } while (std::next_permutation(p.begin(), p.end()));
  return r;
}

}  // namespace sgf
