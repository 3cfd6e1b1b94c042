#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coniq/pauli.hpp"

namespace coniq {

// One D_{2m} = [[2m, 2m-2, 2]] error-detecting code level.
struct CodeSpec {
  int m = 0;
  int n = 0;  // physical qubits, 2m
  int k = 0;  // logical qubits, 2m-2
  int d = 2;
  std::vector<PauliOperator> stabilizers;  // X^n, Z^n
  std::vector<PauliOperator> logical_x;    // X_Li = X_i X_{i+1}   (1-based i)
  std::vector<PauliOperator> logical_z;    // Z_Li = Z_{i+1} Z_{i+2}
};

CodeSpec code_spec(int n);

// Concatenation profile [n_1, ..., n_l]; level 1 nearest the physical layer.
struct ConcatProfile {
  std::vector<int> levels;

  int depth() const { return static_cast<int>(levels.size()); }
  bool empty() const { return levels.empty(); }
  int n_at(int level) const { return levels.at(level - 1); }       // 1-based
  int k_at(int level) const { return levels.at(level - 1) - 2; }
  ConcatProfile prefix(int level) const {
    ConcatProfile p;
    p.levels.assign(levels.begin(), levels.begin() + level);
    return p;
  }
  std::string str() const;
};

ConcatProfile parse_profile(const std::string& text);  // "4,4,6,6"

struct ProfileCounts {
  long physical = 1;
  long logical = 1;
  double rate = 1.0;
};
ProfileCounts profile_counts(const ConcatProfile& profile);

// Logical qubit address (i_1, ..., i_l) within a top-level register; zero-based.
struct RegisterAddress {
  std::vector<int> indices;
  bool operator==(const RegisterAddress& o) const { return indices == o.indices; }
  bool operator!=(const RegisterAddress& o) const { return !(*this == o); }
  std::string str() const;
};

RegisterAddress parse_address(const std::string& text);  // "0.3"
bool address_valid(const ConcatProfile& profile, const RegisterAddress& addr);
// Enumerate all addresses; the level-1 index varies fastest.
std::vector<RegisterAddress> all_addresses(const ConcatProfile& profile);
// Linear index of an address (mixed radix, level-1 index least significant).
long address_linear(const ConcatProfile& profile, const RegisterAddress& addr);

// Sub-register offsets within one block, per axis, plus the block stride in
// units of the next-lower-level grid.
struct CoordMap {
  std::vector<int> offs_x;  // I*
  std::vector<int> offs_y;  // J*
  int stride_x = 1;
  int stride_y = 1;
  int fanout() const {
    return static_cast<int>(offs_x.size() > offs_y.size() ? offs_x.size()
                                                          : offs_y.size());
  }
  // Offset of sub-register s along each axis (linear arrangement: exactly one
  // axis has more than one offset).
  int sub_x(int s) const { return offs_x.size() > 1 ? offs_x[s] : offs_x[0]; }
  int sub_y(int s) const { return offs_y.size() > 1 ? offs_y[s] : offs_y[0]; }
};

struct CollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {i*stride + i' | i in I, i' in offs}, sorted. Throws CollisionError on
// duplicates (cannot occur when stride > max offset).
std::vector<double> tensor_coords(const std::vector<double>& coords,
                                  const std::vector<int>& offs, int stride);

// Compact layout per the alternating-axis rule: level i arranges its n_i
// sub-registers linearly along x when i is odd, along y when i is even;
// stride = n_i (max offset + 1).
std::vector<CoordMap> register_layout(const ConcatProfile& profile);

// Layout used by the compiler: same arrangement but with stride 2*n_i + 1
// along the arrangement axis. The extra cells per block hold the reference
// copy measured by the verified state preparation (offsets n_i..2n_i-1) plus
// one always-free parking cell (offset 2n_i) used by permutation gadgets.
std::vector<CoordMap> workspace_layout(const ConcatProfile& profile);

struct GridPoint {
  double x = 0;
  double y = 0;
  bool operator==(const GridPoint& o) const { return x == o.x && y == o.y; }
  bool operator<(const GridPoint& o) const {
    return x != o.x ? x < o.x : y < o.y;
  }
};

// Physical cell of the level-`sublevel` sub-block reached by descending
// `path` (one sub-register index per level, top level first), starting from a
// register origin on the top-level grid.
GridPoint compose_origin(const std::vector<CoordMap>& layout, GridPoint origin,
                         const std::vector<int>& path);

// All physical data cells of a register, ordered hierarchically: the first
// n_1 entries are level-1 block 0 of level-2 block 0, and so on (level-1
// qubit index varies fastest).
std::vector<GridPoint> register_cells(const ConcatProfile& profile,
                                      const std::vector<CoordMap>& layout,
                                      GridPoint origin);

struct LogicalSupport {
  std::vector<GridPoint> x_support;
  std::vector<GridPoint> z_support;
};

// Physical support of the recursively expanded logical X/Z operators of one
// address (Table-pattern expansion applied level by level).
LogicalSupport address_to_physical(const ConcatProfile& profile,
                                   GridPoint origin,
                                   const RegisterAddress& addr,
                                   const std::vector<CoordMap>& layout);

// Physical support of every code stabilizer generator at every level, for a
// register at `origin`: level-l generators act on each level-l block's cells
// (X-type and Z-type full-block products expanded transversally).
struct StabilizerSupports {
  // For each generator: type 'X' or 'Z' and the supporting cells.
  std::vector<std::pair<char, std::vector<GridPoint>>> generators;
};
StabilizerSupports code_stabilizer_supports(const ConcatProfile& profile,
                                            const std::vector<CoordMap>& layout,
                                            GridPoint origin);

}  // namespace coniq
