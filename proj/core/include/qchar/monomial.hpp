#pragma once

#include "qchar/root_data.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qchar {

/// One sparse entry: variable (node, spectral index k standing for q^k) with
/// an integer exponent. Used for Y-exponents and for A^{-1} multiplicities.
struct Factor {
  std::int32_t index = 0;
  std::int16_t node = 0;
  std::int16_t exp = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

inline bool factor_key_less(const Factor& a, const Factor& b) noexcept {
  return a.node != b.node ? a.node < b.node : a.index < b.index;
}

/// Monomial in the variables Y_{i,q^k}; canonical (sorted by (i,k), no zero
/// exponents).
class Monomial {
 public:
  Monomial() = default;
  static Monomial one() { return {}; }
  static Monomial y(int node, int index, int exp = 1);
  /// From arbitrary factors; duplicates are combined and zeros dropped.
  static Monomial from_factors(std::vector<Factor> factors);
  /// Parses "Y[1,14] Y[1,16]^-1"; "1" is the empty monomial.
  static Monomial parse(std::string_view text);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  int exponent(int node, int index) const;

  bool is_i_dominant(int node) const;
  bool is_l_dominant() const;

  Monomial& operator*=(const Monomial& other);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  Monomial inverse() const;
  /// Adds `delta` to the exponent of Y_{node,q^index}.
  void multiply_y(int node, int index, int delta);
  /// Every spectral index shifted by s.
  Monomial shifted(int s) const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

std::ostream& operator<<(std::ostream& os, const Monomial& m);

/// A_{i,q^k} = Y_{i,q^{k+1}} Y_{i,q^{k-1}} prod_{j~i} Y_{j,q^k}^{-1}.
Monomial a_monomial(const DynkinData& data, int node, int index);

/// m * A_{i,q^k}^{-r}, in place.
void apply_a_inverse(const DynkinData& data, Monomial& m, int node, int index, int r = 1);

/// Sum of u_{i,q^k}(m) * w_i over all factors.
Weight weight_of(const DynkinData& data, const Monomial& m);

/// Multiplicities v_{i,q^k} of A_{i,q^k}^{-1}; sorted by (i,k), all positive.
class VVector {
 public:
  VVector() = default;
  static VVector from_entries(std::vector<Factor> entries);
  /// Parses "A[5,1] A[5,3]^2"; "1" or "" is the empty vector.
  static VVector parse(std::string_view text);

  const std::vector<Factor>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  int count(int node, int index) const;
  void add(int node, int index, int r);
  long depth() const noexcept;

  VVector& operator+=(const VVector& o);
  friend VVector operator+(VVector a, const VVector& b) { return a += b; }
  /// this - o when every entry stays nonnegative.
  std::optional<VVector> minus(const VVector& o) const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const VVector&, const VVector&) = default;
  friend bool operator<(const VVector& a, const VVector& b);

 private:
  std::vector<Factor> entries_;
};

/// anchor * prod A^{-v}.
Monomial reconstruct(const DynkinData& data, const Monomial& anchor, const VVector& v);

/// The v-vector with m = upper * prod A^{-v}, or nullopt when m is not <= upper.
std::optional<VVector> vvector_between(const DynkinData& data, const Monomial& m, const Monomial& upper);

/// Monomial tagged with its v-vector relative to an l-dominant anchor.
class AnchoredMonomial {
 public:
  explicit AnchoredMonomial(std::shared_ptr<const Monomial> anchor);
  AnchoredMonomial(std::shared_ptr<const Monomial> anchor, VVector v, Monomial value);
  static AnchoredMonomial at_anchor(const Monomial& anchor);

  const Monomial& anchor() const noexcept { return *anchor_; }
  const std::shared_ptr<const Monomial>& anchor_ptr() const noexcept { return anchor_; }
  const VVector& vvec() const noexcept { return v_; }
  const Monomial& monomial() const noexcept { return value_; }
  long depth() const noexcept { return v_.depth(); }

  /// Multiplies by A_{i,q^k}^{-r}; depth grows by exactly r.
  AnchoredMonomial multiply_a_inverse(const DynkinData& data, int node, int index, int r = 1) const;

 private:
  std::shared_ptr<const Monomial> anchor_;
  VVector v_;
  Monomial value_;
};

/// Roots of the Drinfeld polynomials on the q-orbit: roots[i-1] is the
/// sorted multiset of k with P_i(u) = prod (1 - u q^k).
class DrinfeldData {
 public:
  DrinfeldData() = default;
  explicit DrinfeldData(int rank) : roots_(rank) {}
  /// "i:k" tokens separated by commas; repetition encodes multiplicity.
  static DrinfeldData parse(std::string_view spec, int rank);
  /// Inverse of to_monomial; throws on negative exponents.
  static DrinfeldData from_monomial(const Monomial& m, int rank);

  int rank() const noexcept { return static_cast<int>(roots_.size()); }
  void add_root(int node, int index);
  const std::vector<int>& roots(int node) const { return roots_.at(node - 1); }
  bool empty() const;
  std::size_t degree() const;
  /// All (node, index) roots in (node, index) order.
  std::vector<std::pair<int, int>> all_roots() const;

  Monomial to_monomial() const;
  std::string to_string() const;

  friend bool operator==(const DrinfeldData&, const DrinfeldData&) = default;

 private:
  std::vector<std::vector<int>> roots_;
};

// ---------------------------------------------------------------- packing

/// Layout of the 16-bit packed triple: node in the top 4 bits, halved index
/// offset in the middle 8 bits, multiplicity in the low 4 bits. The unit
/// 0x0000 escapes to a wide entry of four further units
/// (node, offset low, offset high, multiplicity).
struct PackingWindow {
  std::int32_t base = 0;
  bool halve = false;
  /// Per-node index parity used when halving; parity[i-1] in {0, 1}.
  std::vector<std::uint8_t> parity;

  /// Smallest window covering all entries; halving when every node has a fixed parity.
  static PackingWindow covering(int rank, std::span<const VVector> vectors);
  static PackingWindow covering(int rank, std::span<const Factor> entries);
};

constexpr std::uint16_t kWideEscape = 0x0000;

std::vector<std::uint16_t> pack_vvector(const VVector& v, const PackingWindow& w);
/// Decodes one v-vector; throws ParseError on a corrupted stream.
VVector unpack_vvector(std::span<const std::uint16_t> units, const PackingWindow& w);
/// Number of packed triples (wide entries count once).
std::size_t packed_triple_count(std::span<const std::uint16_t> units);

}  // namespace qchar

template <>
struct std::hash<qchar::Monomial> {
  std::size_t operator()(const qchar::Monomial& m) const noexcept { return m.hash(); }
};

template <>
struct std::hash<qchar::VVector> {
  std::size_t operator()(const qchar::VVector& v) const noexcept { return v.hash(); }
};
