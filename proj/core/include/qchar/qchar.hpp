#pragma once

#include "qchar/monomial.hpp"
#include "qchar/root_data.hpp"
#include "qchar/tpoly.hpp"

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace qchar {

/// qch carries the extra t^{d(m,m_P;m,m_P)} twist; chi is the plain t-analog.
enum class Normalization { qch, chi };

struct QCharTerm {
  VVector v;
  Monomial monomial;
  TPoly coeff;
};

/// t-analog of a q-character, anchored at an l-dominant monomial.
///
/// Terms are kept in canonical order: by depth, then by v-vector. Colorings
/// are present only when the engine was asked to keep them; colorings()[n]
/// belongs to terms()[n] and holds one polynomial per node.
class QChar {
 public:
  QChar(std::shared_ptr<const DynkinData> data, Monomial anchor, Normalization norm = Normalization::qch);

  const DynkinData& data() const noexcept { return *data_; }
  const std::shared_ptr<const DynkinData>& data_ptr() const noexcept { return data_; }
  const Monomial& anchor() const noexcept { return anchor_; }
  Normalization normalization() const noexcept { return norm_; }

  const std::vector<QCharTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool has_colorings() const noexcept { return !colorings_.empty(); }
  const std::vector<std::vector<TPoly>>& colorings() const noexcept { return colorings_; }

  /// Appends a term; zero coefficients are dropped. Call canonicalize() after
  /// out-of-order appends.
  void append(QCharTerm term);
  void append(QCharTerm term, std::vector<TPoly> coloring);
  /// Sorts into canonical order and merges duplicate v-vectors.
  void canonicalize();

  /// Coefficient of m (zero when absent). Linear scan; build index() for bulk lookups.
  TPoly coefficient(const Monomial& m) const;
  std::unordered_map<Monomial, std::size_t> index() const;

  /// Sum of all coefficients at t = 1.
  Integer total_at_one() const;
  long max_depth() const;
  std::size_t l_dominant_count() const;

  QChar to_qch() const;
  QChar to_chi() const;
  QChar shifted(int s) const;
  /// Same terms with every coefficient replaced by its bar.
  QChar bar() const;

  /// Structural equality (data, anchor, normalization, terms); colorings ignored.
  friend bool operator==(const QChar& a, const QChar& b);

 private:
  std::shared_ptr<const DynkinData> data_;
  Monomial anchor_;
  Normalization norm_;
  std::vector<QCharTerm> terms_;
  std::vector<std::vector<TPoly>> colorings_;
};

bool canonical_term_less(const VVector& a, const VVector& b);

/// d(m1, P1; m2, P2) where m1 = P1 * prod A^{-v1}, m2 = P2 * prod A^{-v2}.
long d_pairing(const VVector& v1, const Monomial& anchor1, const VVector& v2, const Monomial& m2);

/// d(m, m_P; m, m_P) of a term of q.
long self_pairing(const QChar& q, const QCharTerm& term);

}  // namespace qchar
