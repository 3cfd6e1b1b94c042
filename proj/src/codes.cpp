#include "coniq/codes.hpp"

#include <algorithm>
#include <sstream>

namespace coniq {

CodeSpec code_spec(int n) {
  if (n != 4 && n != 6)
    throw std::invalid_argument("UnsupportedSize: D_n requires n in {4,6}");
  CodeSpec c;
  c.n = n;
  c.m = n / 2;
  c.k = n - 2;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  c.stabilizers.push_back(PauliOperator::from_support(n, 'X', all));
  c.stabilizers.push_back(PauliOperator::from_support(n, 'Z', all));
  for (int i = 0; i < c.k; ++i) {
    c.logical_x.push_back(PauliOperator::from_support(n, 'X', {i, i + 1}));
    c.logical_z.push_back(PauliOperator::from_support(n, 'Z', {i + 1, i + 2}));
  }
  return c;
}

std::string ConcatProfile::str() const {
  std::string s;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(levels[i]);
  }
  return s;
}

ConcatProfile parse_profile(const std::string& text) {
  ConcatProfile p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad profile entry: " + tok);
    }
    if (pos != tok.size() || (v != 4 && v != 6))
      throw std::invalid_argument("bad profile entry: " + tok);
    p.levels.push_back(v);
  }
  return p;
}

ProfileCounts profile_counts(const ConcatProfile& profile) {
  ProfileCounts pc;
  for (int n : profile.levels) {
    pc.physical *= n;
    pc.logical *= n - 2;
  }
  pc.rate = static_cast<double>(pc.logical) / static_cast<double>(pc.physical);
  return pc;
}

std::string RegisterAddress::str() const {
  std::string s;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(indices[i]);
  }
  return s;
}

RegisterAddress parse_address(const std::string& text) {
  RegisterAddress a;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '.')) {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v < 0)
      throw std::invalid_argument("bad address component: " + tok);
    a.indices.push_back(v);
  }
  if (a.indices.empty()) throw std::invalid_argument("empty address");
  return a;
}

bool address_valid(const ConcatProfile& profile, const RegisterAddress& addr) {
  if (static_cast<int>(addr.indices.size()) != profile.depth()) return false;
  for (int j = 0; j < profile.depth(); ++j)
    if (addr.indices[j] < 0 || addr.indices[j] >= profile.k_at(j + 1))
      return false;
  return true;
}

std::vector<RegisterAddress> all_addresses(const ConcatProfile& profile) {
  std::vector<RegisterAddress> out;
  long total = profile_counts(profile).logical;
  for (long lin = 0; lin < total; ++lin) {
    RegisterAddress a;
    long rem = lin;
    for (int j = 0; j < profile.depth(); ++j) {
      int k = profile.k_at(j + 1);
      a.indices.push_back(static_cast<int>(rem % k));
      rem /= k;
    }
    out.push_back(a);
  }
  return out;
}

long address_linear(const ConcatProfile& profile, const RegisterAddress& addr) {
  long lin = 0;
  long stride = 1;
  for (int j = 0; j < profile.depth(); ++j) {
    lin += addr.indices[j] * stride;
    stride *= profile.k_at(j + 1);
  }
  return lin;
}

std::vector<double> tensor_coords(const std::vector<double>& coords,
                                  const std::vector<int>& offs, int stride) {
  std::vector<double> out;
  out.reserve(coords.size() * offs.size());
  for (double c : coords)
    for (int o : offs) out.push_back(c * stride + o);
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1])
      throw CollisionError("tensor_coords: duplicate coordinate");
  return out;
}

static std::vector<CoordMap> layout_impl(const ConcatProfile& profile,
                                         bool workspace) {
  std::vector<CoordMap> maps;
  for (int i = 1; i <= profile.depth(); ++i) {
    int n = profile.n_at(i);
    CoordMap m;
    std::vector<int> offs(n);
    for (int s = 0; s < n; ++s) offs[s] = s;
    int stride = workspace ? 2 * n + 1 : n;
    if (i % 2 == 1) {
      m.offs_x = offs;
      m.offs_y = {0};
      m.stride_x = stride;
      m.stride_y = 1;
    } else {
      m.offs_x = {0};
      m.offs_y = offs;
      m.stride_x = 1;
      m.stride_y = stride;
    }
    maps.push_back(m);
  }
  return maps;
}

std::vector<CoordMap> register_layout(const ConcatProfile& profile) {
  return layout_impl(profile, false);
}

std::vector<CoordMap> workspace_layout(const ConcatProfile& profile) {
  return layout_impl(profile, true);
}

GridPoint compose_origin(const std::vector<CoordMap>& layout, GridPoint origin,
                         const std::vector<int>& path) {
  int top = static_cast<int>(layout.size());
  GridPoint p = origin;
  for (std::size_t step = 0; step < path.size(); ++step) {
    const CoordMap& m = layout[top - 1 - static_cast<int>(step)];
    p.x = p.x * m.stride_x + m.sub_x(path[step]);
    p.y = p.y * m.stride_y + m.sub_y(path[step]);
  }
  return p;
}

static void cells_rec(const ConcatProfile& profile,
                      const std::vector<CoordMap>& layout, int level,
                      std::vector<int>& path, GridPoint origin,
                      std::vector<GridPoint>& out) {
  if (level == 0) {
    out.push_back(compose_origin(layout, origin, path));
    return;
  }
  for (int s = 0; s < profile.n_at(level); ++s) {
    path.push_back(s);
    cells_rec(profile, layout, level - 1, path, origin, out);
    path.pop_back();
  }
}

std::vector<GridPoint> register_cells(const ConcatProfile& profile,
                                      const std::vector<CoordMap>& layout,
                                      GridPoint origin) {
  std::vector<GridPoint> out;
  std::vector<int> path;
  cells_rec(profile, layout, profile.depth(), path, origin, out);
  return out;
}

// Physical support of the logical operator of type `type` for address digits
// addr[0..level-1] (level-1 digit first) within the level-`level` block
// reached by `path` (top level first).
static void logical_support_rec(const ConcatProfile& profile,
                                const std::vector<CoordMap>& layout, int level,
                                std::vector<int>& path,
                                const std::vector<int>& addr, char type,
                                GridPoint origin, std::vector<GridPoint>& out) {
  int a = addr[level - 1];
  if (level == 1) {
    // Base patterns: X_La = {a, a+1}, Z_La = {a+1, a+2}, zero-based.
    int q0 = type == 'X' ? a : a + 1;
    for (int q = q0; q <= q0 + 1; ++q) {
      path.push_back(q);
      out.push_back(compose_origin(layout, origin, path));
      path.pop_back();
    }
    return;
  }
  int s0 = type == 'X' ? a : a + 1;
  for (int s = s0; s <= s0 + 1; ++s) {
    path.push_back(s);
    logical_support_rec(profile, layout, level - 1, path, addr, type, origin,
                        out);
    path.pop_back();
  }
}

LogicalSupport address_to_physical(const ConcatProfile& profile,
                                   GridPoint origin,
                                   const RegisterAddress& addr,
                                   const std::vector<CoordMap>& layout) {
  if (!address_valid(profile, addr))
    throw std::out_of_range("AddressOutOfRange: " + addr.str());
  LogicalSupport ls;
  std::vector<int> path;
  logical_support_rec(profile, layout, profile.depth(), path, addr.indices,
                      'X', origin, ls.x_support);
  logical_support_rec(profile, layout, profile.depth(), path, addr.indices,
                      'Z', origin, ls.z_support);
  std::sort(ls.x_support.begin(), ls.x_support.end());
  std::sort(ls.z_support.begin(), ls.z_support.end());
  return ls;
}

StabilizerSupports code_stabilizer_supports(
    const ConcatProfile& profile, const std::vector<CoordMap>& layout,
    GridPoint origin) {
  StabilizerSupports out;
  int depth = profile.depth();
  // Enumerate blocks at each level by their path from the top.
  std::vector<std::vector<int>> paths{{}};
  for (int level = depth; level >= 1; --level) {
    // `paths` currently holds all paths to level-`level` blocks.
    for (const auto& bp : paths) {
      // Lower addresses (digits for levels 1..level-1), level-1 digit first.
      ConcatProfile lower = profile.prefix(level - 1);
      std::vector<RegisterAddress> lows = all_addresses(lower);
      if (lows.empty()) lows.push_back(RegisterAddress{});
      for (const auto& low : lows) {
        for (char type : {'X', 'Z'}) {
          std::vector<GridPoint> cells;
          for (int s = 0; s < profile.n_at(level); ++s) {
            std::vector<int> path = bp;
            path.push_back(s);
            if (level == 1) {
              cells.push_back(compose_origin(layout, origin, path));
            } else {
              logical_support_rec(profile, layout, level - 1, path, low.indices,
                                  type, origin, cells);
            }
          }
          std::sort(cells.begin(), cells.end());
          out.generators.emplace_back(type, std::move(cells));
        }
      }
    }
    // Extend paths one level down.
    std::vector<std::vector<int>> next;
    for (const auto& bp : paths)
      for (int s = 0; s < profile.n_at(level); ++s) {
        std::vector<int> p = bp;
        p.push_back(s);
        next.push_back(std::move(p));
      }
    paths = std::move(next);
  }
  return out;
}

}  // namespace coniq
