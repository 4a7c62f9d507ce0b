#pragma once

#include "qchar/engine.hpp"
#include "qchar/monomial.hpp"
#include "qchar/qchar.hpp"
#include "qchar/root_data.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qchar {

/// ch_t: Y_{i,a} -> y_i, summed by weight. chi input is converted to qch first.
ClassicalChar restrict_qchar(const QChar& q);

/// coefficient(mu) == coefficient(s_i mu) for every stored mu and every i.
bool is_weyl_invariant(const DynkinData& data, const ClassicalChar& ch);

/// M(P, lambda, t) in peeling order.
struct DecompositionTable {
  std::vector<std::pair<Weight, TPoly>> rows;

  TPoly multiplicity(const Weight& lambda) const;
  friend bool operator==(const DecompositionTable&, const DecompositionTable&) = default;
};

/// Greedy peeling by irreducible characters, highest dominant weight first
/// (root height, then lexicographically larger). Throws NonInvariant on
/// non-Weyl-invariant input.
DecompositionTable decompose(const DynkinData& data, const ClassicalChar& ch);

/// Oriented edges (i -> j meaning m(i) - m(j) = 1).
struct Orientation {
  std::vector<std::pair<int, int>> arrows;

  /// Every edge points from the lower node number to the higher one.
  static Orientation canonical(const DynkinData& data);
  /// canonical() with the edges whose bit is set in mask reversed (edge order as in data.edges()).
  static Orientation flipped(const DynkinData& data, std::uint64_t mask);
};

/// Height function m with m(1) = 0.
std::vector<int> height_function(const DynkinData& data, const Orientation& o);

/// Q_i(u) = (1 - u q^{m(i)})^{<lambda, h_i>}.
DrinfeldData q_for_weight(const DynkinData& data, const Weight& lambda);
DrinfeldData q_for_weight(const DynkinData& data, const Weight& lambda, const Orientation& o);

/// ch_t L(Q_lambda) from a tolerant engine run; warnings are appended when given.
ClassicalChar graded_char(std::shared_ptr<const DynkinData> data, const Weight& lambda, const EngineOptions& options = {},
                          std::vector<std::string>* warnings = nullptr);

/// graded_char specialized at t = 0.
ClassicalChar classical_char_t0(std::shared_ptr<const DynkinData> data, const Weight& lambda,
                                const EngineOptions& options = {});

struct ICResult {
  std::vector<Weight> weights;
  std::vector<std::vector<TPoly>> P;
  std::vector<std::vector<TPoly>> IC;
  /// Row lambda's t -> 0 specialization matched the Freudenthal multiplicities.
  std::vector<bool> freudenthal_ok;
  std::vector<std::string> warnings;
};

/// Rows of P are the dominant coefficients of ch_t L(Q_lambda); IC = P * P(0)^{-1}.
/// The weights must be listed in a dominance-compatible order (higher first)
/// and contain every dominant weight occurring in the rows.
ICResult ic_matrix(std::shared_ptr<const DynkinData> data, const std::vector<Weight>& weights,
                   const EngineOptions& options = {});

/// IC from precomputed graded characters (one per weight, same order).
ICResult ic_from_chars(const DynkinData& data, const std::vector<Weight>& weights,
                       const std::vector<ClassicalChar>& chars);

}  // namespace qchar
