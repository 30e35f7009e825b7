#include <algorithm>
#include <map>
#include <numeric>

#include "qrigid/graded.hpp"

namespace qrigid {

namespace {

using Perm = std::vector<std::size_t>;

Perm compose(const Perm& a, const Perm& b) {  // (a o b)(x) = a(b(x))
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
  return c;
}

FiniteGroup from_permutations(const std::vector<Perm>& perms,
                              std::vector<std::string> names);

}  // namespace

void FiniteGroup::finalize() {
  const std::size_t m = table_.size();
  if (m == 0) throw InvalidGroup("empty table");
  for (const auto& row : table_) {
    if (row.size() != m) throw InvalidGroup("table is not square");
    for (std::size_t v : row)
      if (v >= m) throw InvalidGroup("entry out of range");
  }
  for (std::size_t a = 0; a < m; ++a)
    if (table_[0][a] != a || table_[a][0] != a)
      throw InvalidGroup("element 0 is not the identity");
  // Latin square property.
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<bool> seen_row(m, false), seen_col(m, false);
    for (std::size_t b = 0; b < m; ++b) {
      if (seen_row[table_[a][b]] || seen_col[table_[b][a]])
        throw InvalidGroup("table is not a Latin square");
      seen_row[table_[a][b]] = true;
      seen_col[table_[b][a]] = true;
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw InvalidGroup("table is not associative");
  inv_.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < m; ++b)
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        inv_[a] = b;
        found = true;
        break;
      }
    if (!found) throw InvalidGroup("missing inverse");
  }
  if (names_.empty()) {
    names_.resize(m);
    for (std::size_t a = 0; a < m; ++a) names_[a] = "g" + std::to_string(a);
  } else if (names_.size() != m) {
    throw InvalidGroup("names length mismatch");
  }
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = a + 1; b < order(); ++b)
      if (mult(a, b) != mult(b, a)) return false;
  return true;
}

bool FiniteGroup::is_central(std::size_t g) const {
  for (std::size_t b = 0; b < order(); ++b)
    if (mult(g, b) != mult(b, g)) return false;
  return true;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table,
                                    std::vector<std::string> names) {
  FiniteGroup g;
  g.table_ = std::move(table);
  g.names_ = std::move(names);
  g.finalize();
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t m) {
  if (m == 0) throw InvalidGroup("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
  std::vector<std::string> names(m);
  for (std::size_t a = 0; a < m; ++a) {
    names[a] = std::to_string(a);
    for (std::size_t b = 0; b < m; ++b) table[a][b] = (a + b) % m;
  }
  return from_table(std::move(table), std::move(names));
}

namespace {

FiniteGroup from_permutations(const std::vector<Perm>& perms,
                              std::vector<std::string> names) {
  std::map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  std::vector<std::vector<std::size_t>> table(perms.size(),
                                              std::vector<std::size_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      const auto it = index.find(compose(perms[a], perms[b]));
      if (it == index.end()) throw InvalidGroup("permutation set not closed");
      table[a][b] = it->second;
    }
  return FiniteGroup::from_table(std::move(table), std::move(names));
}

std::string perm_name(const Perm& p) {
  std::string s;
  for (std::size_t v : p) s += std::to_string(v);
  return s;
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(std::size_t m) {
  if (m == 0 || m > 5) throw InvalidGroup("symmetric(m) supported for 1 <= m <= 5");
  Perm p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> perms;
  std::vector<std::string> names;
  do {
    perms.push_back(p);
    names.push_back(perm_name(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return from_permutations(perms, std::move(names));
}

FiniteGroup FiniteGroup::dihedral(std::size_t m) {
  // Built from the presentation r^a s^b, s r = r^{-1} s, rather than from the
  // action on m vertices, which stops being faithful at m = 2. Rotations sit
  // at indices 0..m-1, reflections at m..2m-1.
  if (m < 2) throw InvalidGroup("dihedral(m) needs m >= 2");
  const auto idx = [m](std::size_t a, std::size_t b) { return b * m + a; };
  std::vector<std::vector<std::size_t>> table(2 * m, std::vector<std::size_t>(2 * m));
  std::vector<std::string> names(2 * m);
  for (std::size_t a = 0; a < m; ++a) {
    names[idx(a, 0)] = "r" + std::to_string(a);
    names[idx(a, 1)] = "s" + std::to_string(a);
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t e = 0; e < 2; ++e) {
          const std::size_t rot = b ? (a + m - c % m) % m : (a + c) % m;
          table[idx(a, b)][idx(c, e)] = idx(rot, b ^ e);
        }
  }
  return from_table(std::move(table), std::move(names));
}

FiniteGroup FiniteGroup::quaternion() {
  // Elements +-1, +-i, +-j, +-k at indices 0..7 (even: +, odd: -).
  // axis 0 is the scalar 1; axis products follow ij = k cyclically.
  const auto idx = [](int axis, int sign) { return 2 * axis + (sign < 0 ? 1 : 0); };
  static const int axis_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {
      {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
  std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ax_a = a / 2, sg_a = (a % 2) ? -1 : 1;
      const int ax_b = b / 2, sg_b = (b % 2) ? -1 : 1;
      table[a][b] = static_cast<std::size_t>(
          idx(axis_mul[ax_a][ax_b], sg_a * sg_b * sign_mul[ax_a][ax_b]));
    }
  return from_table(std::move(table),
                    {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

}  // namespace qrigid
