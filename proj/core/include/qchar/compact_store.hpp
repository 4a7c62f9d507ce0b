#pragma once

#include "qchar/engine.hpp"
#include "qchar/monomial.hpp"
#include "qchar/qchar.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace qchar {

/// Term sink keeping each layer as one front-coded block of packed
/// v-vectors. Monomials are rebuilt from the anchor on decode, so nothing
/// but the packed units and coefficients stays resident.
class CompactStore : public TermSink {
 public:
  CompactStore(std::shared_ptr<const DynkinData> data, Monomial anchor);

  void accept_layer(long depth, std::vector<QCharTerm>&& terms, std::vector<std::vector<TPoly>>* colorings) override;

  std::size_t size() const noexcept { return count_; }
  std::size_t trivial_count() const noexcept { return trivial_; }
  /// Bytes held by the encoded blocks.
  std::size_t memory_bytes() const noexcept;
  std::size_t layer_count() const noexcept { return blocks_.size(); }

  /// Decodes every term in canonical order.
  void for_each(const std::function<void(const QCharTerm&)>& fn) const;
  QChar to_qchar() const;

 private:
  struct Block {
    long depth = 0;
    std::size_t count = 0;
    PackingWindow window;
    std::vector<std::uint8_t> bytes;
  };

  std::shared_ptr<const DynkinData> data_;
  Monomial anchor_;
  std::vector<Block> blocks_;
  std::size_t count_ = 0;
  std::size_t trivial_ = 0;
};

}  // namespace qchar
