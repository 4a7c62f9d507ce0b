#pragma once

#include "qchar/engine.hpp"
#include "qchar/monomial.hpp"
#include "qchar/qchar.hpp"

#include <map>
#include <memory>
#include <vector>

namespace qchar {

/// Throws OrderViolation when an earlier factor has a root index exceeding a
/// later factor's by 2 or more.
void check_order(const std::vector<DrinfeldData>& factors);

/// A permutation (indices into factors) satisfying check_order; stable
/// otherwise. Throws OrderViolation when no such order exists.
std::vector<std::size_t> suggest_order(const std::vector<DrinfeldData>& factors);

/// qch of the standard module of the product of the factors' anchors, in the
/// given order. Inputs in chi normalization are converted.
QChar twisted_product(const QChar& first, const QChar& second);
QChar twisted_product(const std::vector<QChar>& factors);

/// Engine results for fundamentals at index 0, shifted on demand.
class FundamentalCache {
 public:
  explicit FundamentalCache(std::shared_ptr<const DynkinData> data, EngineOptions options = {});
  const std::shared_ptr<const DynkinData>& data() const noexcept { return data_; }
  QChar fundamental(int node, int index);

 private:
  std::shared_ptr<const DynkinData> data_;
  EngineOptions options_;
  std::map<int, QChar> cache_;
};

/// qch(M(Q)): twisted product of the fundamentals of every root, ordered by suggest_order.
QChar standard_qch(FundamentalCache& cache, const DrinfeldData& q);

struct KLResult {
  /// a_{PQ}(t) for every l-dominant Q < P that entered the triangular system.
  std::vector<std::pair<Monomial, TPoly>> coefficients;
  /// chi of L(P), anchored at m_P.
  QChar simple;

  TPoly coefficient(const Monomial& q) const;
};

/// Bar-invariance descent on the dominant-monomial matrix. standards maps each
/// l-dominant monomial to the qch (or chi) of its standard module.
KLResult kl_simple(const DrinfeldData& p, const std::map<Monomial, QChar>& standards);
/// Builds the needed standards from fundamentals first.
KLResult kl_simple(FundamentalCache& cache, const DrinfeldData& p);

}  // namespace qchar
