#pragma once

#include "qchar/tpoly.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qchar {

enum class DynkinKind { A, D, E6, E7, E8, custom };

/// Integral weight in the fundamental-weight basis: coeffs[i-1] is the
/// coefficient of the i-th fundamental weight.
struct Weight {
  std::vector<int> coeffs;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coeffs(std::move(c)) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }
  static Weight fundamental(int rank, int node);

  int rank() const noexcept { return static_cast<int>(coeffs.size()); }
  int operator[](int node) const { return coeffs.at(node - 1); }
  bool is_dominant() const;
  bool is_zero() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(int k, Weight a);

  /// "2w1+w3", "-w2", "0".
  std::string to_string() const;
  static Weight parse(std::string_view text, int rank);

  friend auto operator<=>(const Weight&, const Weight&) = default;
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// Simply-laced Dynkin diagram with its Cartan matrix and root system.
///
/// Nodes are labelled 1..rank. The exceptional series uses a chain
/// (n-1) - ... - 2 - 1 with node n attached to node n-3, so that E8 is
/// 7-6-5-4-3-2-1 with 8 hanging off 5. Type D uses the chain 1 - ... - (n-2)
/// with n-1 and n attached to n-2. Immutable after construction.
class DynkinData {
 public:
  static DynkinData build(DynkinKind kind, int rank);
  /// "A5", "D4", "E6", "E7", "E8".
  static DynkinData parse(std::string_view name);
  /// Tree given by 1-based edges; must be of finite type.
  static DynkinData from_edges(int rank, const std::vector<std::pair<int, int>>& edges);
  /// Reads one edge "i j" per line ('#' starts a comment).
  static DynkinData from_edge_file(const std::filesystem::path& path);
  /// Accepts trees whose Cartan matrix is not positive definite (affine or
  /// hyperbolic diagrams). Only the expansion engine's depth guard is meaningful
  /// for such data; root-system queries throw.
  static DynkinData indefinite_from_edges(int rank, const std::vector<std::pair<int, int>>& edges);

  DynkinKind kind() const noexcept { return kind_; }
  int rank() const noexcept { return rank_; }
  std::string name() const;
  bool is_finite_type() const noexcept { return finite_; }

  int cartan(int i, int j) const { return cartan_[idx(i) * rank_ + idx(j)]; }
  const std::vector<int>& neighbors(int node) const { return adjacency_.at(idx(node)); }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

  /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
  const std::vector<std::vector<int>>& positive_roots() const;
  /// Simple root alpha_i in fundamental-weight coordinates (column i of the Cartan matrix).
  Weight simple_root(int node) const;
  /// Converts simple-root coordinates to fundamental-weight coordinates.
  Weight root_to_weight(const std::vector<int>& root_coords) const;
  /// Sum of simple-root coordinates of the weight, as numerator over determinant().
  long long height_numerator(const Weight& w) const;
  long long determinant() const noexcept { return det_; }
  /// (x|y) * determinant(), using the normalized form with (alpha_i|alpha_i) = 2.
  long long scaled_inner(const Weight& x, const Weight& y) const;
  /// Simple reflection s_i applied to w.
  Weight reflect(const Weight& w, int node) const;

  friend bool operator==(const DynkinData& a, const DynkinData& b) {
    return a.rank_ == b.rank_ && a.cartan_ == b.cartan_;
  }

 private:
  DynkinData() = default;
  static DynkinData make(DynkinKind kind, int rank, const std::vector<std::pair<int, int>>& edges,
                         bool require_finite);
  std::size_t idx(int node) const;
  void require_finite(const char* what) const;

  DynkinKind kind_ = DynkinKind::custom;
  int rank_ = 0;
  bool finite_ = false;
  std::vector<int> cartan_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
  long long det_ = 1;
  std::vector<long long> inverse_scaled_;  // det * C^{-1}
  std::vector<std::vector<int>> positive_roots_;
};

/// Finite map Weight -> TPoly; absent keys are zero, stored values are nonzero.
class ClassicalChar {
 public:
  using Map = std::map<Weight, TPoly>;

  void add(const Weight& w, const TPoly& p);
  TPoly coefficient(const Weight& w) const;
  const Map& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Sum of all coefficients evaluated at t = 1.
  Integer total_at_one() const;
  /// Coefficientwise specialization t -> 0 (requires no negative exponents).
  ClassicalChar at_t_zero() const;
  ClassicalChar dominant_part() const;

  friend bool operator==(const ClassicalChar&, const ClassicalChar&) = default;

 private:
  Map terms_;
};

/// Dimension of V(lambda) via the Weyl dimension formula.
Integer weyl_dim(const DynkinData& data, const Weight& lambda);

/// Dominant weight in the Weyl orbit of mu, by simple-reflection descent.
Weight dominant_representative(const DynkinData& data, Weight mu);

/// Size of the Weyl orbit of a dominant weight, |W| / |W_mu|.
Integer orbit_size(const DynkinData& data, const Weight& dominant);

/// All weights of the Weyl orbit of mu. Only sensible for small orbits.
std::vector<Weight> weyl_orbit(const DynkinData& data, const Weight& mu);

/// Dominant weights mu <= lambda, each paired with its multiplicity in V(lambda),
/// via Freudenthal's recursion. Sorted by descending height.
std::vector<std::pair<Weight, Integer>> freudenthal_dominant(const DynkinData& data, const Weight& lambda);

/// Full character of V(lambda) (all weights, constant coefficients).
ClassicalChar freudenthal_char(const DynkinData& data, const Weight& lambda);

}  // namespace qchar
