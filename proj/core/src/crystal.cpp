#include "qchar/crystal.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

namespace qchar {

namespace {

// (index, exponent) of node i, ascending.
std::vector<std::pair<int, int>> support(const Monomial& m, int node) {
  std::vector<std::pair<int, int>> s;
  for (const auto& f : m.factors())
    if (f.node == node) s.emplace_back(f.index, f.exp);
  return s;
}

}  // namespace

PhiEps phi_eps(const Monomial& m, int node) {
  int sum = 0, best = 0;
  for (auto [k, u] : support(m, node)) {
    sum += u;
    best = std::max(best, sum);
  }
  return {best, best - sum};
}

std::optional<Monomial> f_op(const DynkinData& data, const Monomial& m, int node, CrystalConvention c) {
  auto s = support(m, node);
  int sum = 0, best = 0;
  std::optional<int> pos;
  for (auto [k, u] : s) {
    sum += u;
    bool better = sum > best || (sum == best && pos && c == CrystalConvention::largest_max);
    if (better && sum > 0) {
      best = sum;
      pos = k;
    }
  }
  if (!pos) return std::nullopt;
  Monomial out = m;
  apply_a_inverse(data, out, node, *pos + 1, 1);
  return out;
}

std::optional<Monomial> e_op(const DynkinData& data, const Monomial& m, int node, CrystalConvention c) {
  auto s = support(m, node);
  // Suffix deficits -T_q, scanned right to left.
  int tail = 0, best = 0;
  std::optional<int> pos;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    tail += it->second;
    int deficit = -tail;
    bool better = deficit > best || (deficit == best && pos && c == CrystalConvention::largest_max);
    if (better && deficit > 0) {
      best = deficit;
      pos = it->first;
    }
  }
  if (!pos) return std::nullopt;
  Monomial out = m;
  apply_a_inverse(data, out, node, *pos - 1, -1);
  return out;
}

Crystal generate_crystal(const DynkinData& data, const Monomial& start, std::size_t bound, CrystalConvention c) {
  for (int i = 1; i <= data.rank(); ++i)
    if (e_op(data, start, i, c)) throw InvalidArgument(start.to_string() + " is not highest weight");
  Crystal cr;
  std::unordered_map<Monomial, std::size_t> seen;
  cr.nodes.push_back(start);
  seen.emplace(start, 0);
  for (std::size_t n = 0; n < cr.nodes.size(); ++n) {
    for (int i = 1; i <= data.rank(); ++i) {
      auto f = f_op(data, cr.nodes[n], i, c);
      if (!f) continue;
      auto [it, fresh] = seen.try_emplace(*f, cr.nodes.size());
      if (fresh) {
        if (cr.nodes.size() >= bound) throw BoundExceeded(bound);
        cr.nodes.push_back(std::move(*f));
      }
      cr.edges.push_back({n, it->second, i});
    }
  }
  return cr;
}

void write_crystal_edges(std::ostream& os, const Crystal& crystal) {
  for (const auto& e : crystal.edges)
    os << crystal.nodes[e.from] << " --" << e.node << "--> " << crystal.nodes[e.to] << '\n';
}

}  // namespace qchar
