#pragma once

#include "qchar/monomial.hpp"
#include "qchar/root_data.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace qchar {

/// Which extremal position the operators act at. With prefix sums
/// S_k = sum_{l <= k} u_{i,l}:
///  - kashiwara: f acts at the smallest k attaining max S_k, e at the largest
///    position attaining the maximal suffix deficit; f and e are inverse bijections.
///  - largest_max: f acts at the largest k attaining max S_k, e at the smallest
///    position attaining the maximal suffix deficit. Kept for comparison only.
enum class CrystalConvention { kashiwara, largest_max };

struct PhiEps {
  int phi = 0;
  int eps = 0;
};

PhiEps phi_eps(const Monomial& m, int node);

/// m * A_{i,k+1}^{-1} at the chosen position, or nullopt when phi_i(m) = 0.
std::optional<Monomial> f_op(const DynkinData& data, const Monomial& m, int node,
                             CrystalConvention c = CrystalConvention::kashiwara);
/// m * A_{i,k-1} at the chosen position, or nullopt when eps_i(m) = 0.
std::optional<Monomial> e_op(const DynkinData& data, const Monomial& m, int node,
                             CrystalConvention c = CrystalConvention::kashiwara);

struct CrystalEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  int node = 0;
};

struct Crystal {
  std::vector<Monomial> nodes;  // breadth-first discovery order
  std::vector<CrystalEdge> edges;
};

/// Closure of start under every f_i. Throws InvalidArgument unless start is
/// highest weight and BoundExceeded past `bound` nodes.
Crystal generate_crystal(const DynkinData& data, const Monomial& start, std::size_t bound,
                         CrystalConvention c = CrystalConvention::kashiwara);

/// One "m --i--> m'" line per edge.
void write_crystal_edges(std::ostream& os, const Crystal& crystal);

}  // namespace qchar
