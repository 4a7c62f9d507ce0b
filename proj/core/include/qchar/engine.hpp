#pragma once

#include "qchar/monomial.hpp"
#include "qchar/qchar.hpp"
#include "qchar/root_data.hpp"
#include "qchar/tpoly.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace qchar {

enum class EngineMode { strict, tolerant };

/// coeff * E_i(m) without the all-zero term, in canonical order. The v-vectors
/// of the results extend `v`. Throws InvalidArgument unless m is i-dominant.
std::vector<QCharTerm> expand_i(const DynkinData& data, const VVector& v, const Monomial& m, int node,
                                const TPoly& coeff);

/// Partial coloring sums of one monomial awaiting finalization. Directions
/// whose sum is exactly 1 live in the bitmask; the rest are sparse.
struct PendingRecord {
  VVector v;
  std::uint64_t ones = 0;
  std::vector<std::pair<int, TPoly>> sparse;

  TPoly coloring(int node) const;
  void add(int node, const TPoly& c);
  void merge(const PendingRecord& other);
  bool all_zero() const noexcept { return ones == 0 && sparse.empty(); }
};

/// Snapshot taken at a layer boundary: every layer below next_depth has been
/// emitted and the pending records carry all contributions to deeper layers.
struct EngineState {
  long next_depth = 0;
  std::vector<PendingRecord> pending;  // sorted by (depth, v)
};

struct LayerStats {
  long depth = 0;
  std::size_t finalized = 0;   // monomials closed at this depth (including zero coefficients)
  std::size_t emitted = 0;     // nonzero terms written at this depth
  std::size_t total_emitted = 0;
  std::size_t pending = 0;     // open records at deeper layers
  std::size_t trivial = 0;     // emitted terms with coefficient 1
  long rss_kb = 0;
  long peak_rss_kb = 0;
};

struct MemoryUsage {
  long rss_kb = 0;
  long peak_rss_kb = 0;
};
/// VmRSS / VmHWM of this process; zeros where /proc is unavailable.
MemoryUsage current_memory_usage();

/// Receives finalized layers in increasing depth, each sorted by v-vector.
class TermSink {
 public:
  virtual ~TermSink() = default;
  /// colorings is null unless keep_colorings was requested.
  virtual void accept_layer(long depth, std::vector<QCharTerm>&& terms,
                            std::vector<std::vector<TPoly>>* colorings) = 0;
};

/// Collects everything into an in-memory QChar.
class QCharBuilder : public TermSink {
 public:
  QCharBuilder(std::shared_ptr<const DynkinData> data, const Monomial& anchor) : q_(std::move(data), anchor) {}
  /// Continues a partial result, e.g. one loaded from a checkpoint.
  explicit QCharBuilder(QChar partial) : q_(std::move(partial)) {}
  void accept_layer(long depth, std::vector<QCharTerm>&& terms, std::vector<std::vector<TPoly>>* colorings) override;
  const QChar& result() const noexcept { return q_; }
  QChar take() { return std::move(q_); }

 private:
  QChar q_;
};

struct EngineOptions {
  EngineMode mode = EngineMode::strict;
  long max_depth = 100000;
  unsigned threads = 1;
  bool keep_colorings = false;
  std::function<void(const LayerStats&)> progress;
  /// Tolerant-mode notes about l-dominant monomials that were finalized anyway.
  std::vector<std::string>* warnings = nullptr;
  /// Called every checkpoint_every layers after the layer was emitted.
  long checkpoint_every = 0;
  std::function<void(const EngineState&)> on_checkpoint;
  /// Continue from a snapshot instead of the anchor; the sink must already hold the earlier layers.
  const EngineState* resume = nullptr;
};

/// Runs the layered recursion from `anchor`, streaming layers into `sink`.
void run_engine(const DynkinData& data, const Monomial& anchor, const EngineOptions& options, TermSink& sink);

QChar compute_from_anchor(std::shared_ptr<const DynkinData> data, const Monomial& anchor,
                          const EngineOptions& options = {});
QChar compute_l_fundamental(std::shared_ptr<const DynkinData> data, int node, const EngineOptions& options = {});
QChar compute_from_drinfeld(std::shared_ptr<const DynkinData> data, const DrinfeldData& q,
                            const EngineOptions& options = {});

}  // namespace qchar
