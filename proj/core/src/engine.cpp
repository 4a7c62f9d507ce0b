#include "qchar/engine.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace qchar {

// ---------------------------------------------------------------- PendingRecord

namespace {

std::uint64_t bit_of(int node) { return std::uint64_t{1} << (node - 1); }

}  // namespace

TPoly PendingRecord::coloring(int node) const {
  if (ones & bit_of(node)) return TPoly(1);
  auto it = std::lower_bound(sparse.begin(), sparse.end(), node,
                             [](const std::pair<int, TPoly>& e, int n) { return e.first < n; });
  if (it != sparse.end() && it->first == node) return it->second;
  return {};
}

void PendingRecord::add(int node, const TPoly& c) {
  if (c.is_zero()) return;
  std::uint64_t b = bit_of(node);
  auto it = std::lower_bound(sparse.begin(), sparse.end(), node,
                             [](const std::pair<int, TPoly>& e, int n) { return e.first < n; });
  bool in_sparse = it != sparse.end() && it->first == node;
  if (!in_sparse && !(ones & b) && c.is_one()) {
    ones |= b;
    return;
  }
  TPoly value = c;
  if (ones & b) {
    ones &= ~b;
    value += TPoly(1);
  }
  if (in_sparse) {
    it->second += value;
    if (it->second.is_zero()) sparse.erase(it);
    else if (it->second.is_one()) {
      sparse.erase(it);
      ones |= b;
    }
  } else if (!value.is_zero()) {
    if (value.is_one()) ones |= b;
    else sparse.insert(it, {node, std::move(value)});
  }
}

void PendingRecord::merge(const PendingRecord& other) {
  for (std::uint64_t m = other.ones; m != 0; m &= m - 1) add(__builtin_ctzll(m) + 1, TPoly(1));
  for (const auto& [node, c] : other.sparse) add(node, c);
}

// ---------------------------------------------------------------- expansion

namespace {

struct Site {
  int index;
  int u;
};

std::vector<Site> sites_of(const Monomial& m, int node) {
  std::vector<Site> sites;
  const auto& fs = m.factors();
  auto it = std::lower_bound(fs.begin(), fs.end(), node, [](const Factor& f, int n) { return f.node < n; });
  for (; it != fs.end() && it->node == node; ++it) sites.push_back({it->index, it->exp});
  return sites;
}

// Calls emit(v', m', coeff', r_total) for every nonzero r-vector of E_i(m).
template <class Emit>
void for_each_expansion(const DynkinData& data, const VVector& v, const Monomial& m, int node, const TPoly& coeff,
                        const std::vector<Site>& sites, Emit&& emit) {
  std::size_t s = sites.size();
  if (s == 0) return;
  std::vector<int> r(s, 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < s && r[pos] == sites[pos].u) r[pos++] = 0;
    if (pos == s) break;
    ++r[pos];
    Monomial mm = m;
    VVector vv = v;
    TPoly c = coeff;
    int total = 0;
    for (std::size_t j = 0; j < s; ++j) {
      if (r[j] == 0) continue;
      apply_a_inverse(data, mm, node, sites[j].index + 1, r[j]);
      vv.add(node, sites[j].index + 1, r[j]);
      if (r[j] < sites[j].u) c = c * expansion_weight(sites[j].u, r[j]);
      total += r[j];
    }
    emit(std::move(vv), std::move(mm), std::move(c), total);
  }
}

}  // namespace

std::vector<QCharTerm> expand_i(const DynkinData& data, const VVector& v, const Monomial& m, int node,
                                const TPoly& coeff) {
  if (node < 1 || node > data.rank()) throw InvalidArgument("expand_i: node out of range");
  if (!m.is_i_dominant(node))
    throw InvalidArgument("expand_i: " + m.to_string() + " is not " + std::to_string(node) + "-dominant");
  std::vector<QCharTerm> out;
  if (coeff.is_zero()) return out;
  for_each_expansion(data, v, m, node, coeff, sites_of(m, node), [&](VVector vv, Monomial mm, TPoly c, int) {
    out.push_back(QCharTerm{std::move(vv), std::move(mm), std::move(c)});
  });
  std::sort(out.begin(), out.end(),
            [](const QCharTerm& a, const QCharTerm& b) { return canonical_term_less(a.v, b.v); });
  return out;
}

// ---------------------------------------------------------------- diagnostics

MemoryUsage current_memory_usage() {
  MemoryUsage u;
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    auto read = [&](const char* key, long& dst) {
      std::size_t n = std::char_traits<char>::length(key);
      if (line.compare(0, n, key) == 0) {
        std::istringstream is(line.substr(n));
        is >> dst;
      }
    };
    read("VmRSS:", u.rss_kb);
    read("VmHWM:", u.peak_rss_kb);
  }
  return u;
}

void QCharBuilder::accept_layer(long, std::vector<QCharTerm>&& terms, std::vector<std::vector<TPoly>>* colorings) {
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (colorings) q_.append(std::move(terms[n]), std::move((*colorings)[n]));
    else q_.append(std::move(terms[n]));
  }
}

// ---------------------------------------------------------------- engine

namespace {

struct Slot {
  Monomial m;
  PendingRecord rec;
};

using Shard = std::unordered_map<VVector, Slot>;
using Frontier = std::map<long, std::vector<Shard>>;

struct Closed {
  VVector v;
  Monomial m;
  TPoly a;
  PendingRecord rec;
};

template <class Fn>
void parallel_chunks(unsigned threads, std::size_t n, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  unsigned used = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(used);
  for (unsigned t = 0; t < used; ++t) {
    std::size_t b = n * t / used, e = n * (t + 1) / used;
    pool.emplace_back([&, t, b, e] {
      try {
        fn(t, b, e);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

enum class Verdict { ok, failed, stopped };

class LayerEngine {
 public:
  LayerEngine(const DynkinData& data, const Monomial& anchor, const EngineOptions& opt, TermSink& sink)
      : data_(data), anchor_(anchor), opt_(opt), sink_(sink) {
    threads_ = std::max(1u, opt.threads);
    shards_ = threads_ == 1 ? 1 : threads_ * 8;
  }

  void run() {
    if (data_.rank() > 64) throw InvalidArgument("the engine supports rank <= 64");
    if (!anchor_.is_l_dominant()) throw InvalidArgument("anchor " + anchor_.to_string() + " is not l-dominant");
    for (const auto& f : anchor_.factors())
      if (f.node > data_.rank()) throw InvalidArgument("anchor node out of range");
    if (opt_.resume) {
      for (const auto& rec : opt_.resume->pending) {
        Slot slot{reconstruct(data_, anchor_, rec.v), rec};
        slot.rec.v = VVector();
        insert(frontier_, rec.v.depth(), rec.v, std::move(slot));
      }
      total_emitted_ = 0;
    } else {
      insert(frontier_, 0, VVector(), Slot{anchor_, {}});
    }
    long layers = 0;
    while (!frontier_.empty()) {
      long depth = frontier_.begin()->first;
      if (depth > opt_.max_depth) throw DepthGuardExceeded(depth);
      process_layer(depth);
      ++layers;
      if (opt_.checkpoint_every > 0 && opt_.on_checkpoint && layers % opt_.checkpoint_every == 0)
        opt_.on_checkpoint(snapshot(depth + 1));
    }
  }

 private:
  std::size_t shard_of(const VVector& v) const { return v.hash() % shards_; }

  void insert(Frontier& f, long depth, VVector v, Slot slot) {
    auto& shards = f[depth];
    if (shards.empty()) shards.resize(shards_);
    auto& shard = shards[shard_of(v)];
    auto [it, fresh] = shard.try_emplace(std::move(v));
    if (fresh) it->second = std::move(slot);
    else it->second.rec.merge(slot.rec);
  }

  EngineState snapshot(long next_depth) const {
    EngineState st;
    st.next_depth = next_depth;
    for (const auto& [depth, shards] : frontier_) {
      std::vector<PendingRecord> layer;
      for (const auto& shard : shards)
        for (const auto& [v, slot] : shard) {
          PendingRecord r = slot.rec;
          r.v = v;
          layer.push_back(std::move(r));
        }
      std::sort(layer.begin(), layer.end(), [](const PendingRecord& a, const PendingRecord& b) { return a.v < b.v; });
      for (auto& r : layer) st.pending.push_back(std::move(r));
    }
    return st;
  }

  Verdict finalize(Closed& c, bool is_anchor, std::string* note) const {
    if (is_anchor) {
      c.a = TPoly(1);
      return Verdict::ok;
    }
    std::optional<TPoly> common;
    bool any_negative = false;
    const auto& fs = c.m.factors();
    for (std::size_t n = 0; n < fs.size();) {
      int node = fs[n].node;
      bool negative = false;
      for (; n < fs.size() && fs[n].node == node; ++n) negative |= fs[n].exp < 0;
      if (!negative) continue;
      any_negative = true;
      TPoly col = c.rec.coloring(node);
      if (!common) common = std::move(col);
      else if (!(*common == col)) return Verdict::failed;
    }
    if (any_negative) {
      c.a = std::move(*common);
      return Verdict::ok;
    }
    if (opt_.mode == EngineMode::strict) return Verdict::stopped;
    for (int i = 1; i <= data_.rank(); ++i) {
      TPoly col = c.rec.coloring(i);
      if (!common) common = std::move(col);
      else if (!(*common == col)) return Verdict::failed;
    }
    c.a = std::move(*common);
    if (note) *note = "l-dominant monomial " + c.m.to_string() + " finalized with coefficient " + c.a.to_string();
    return Verdict::ok;
  }

  void process_layer(long depth) {
    // Gather the layer in canonical order.
    std::vector<Closed> layer;
    {
      auto node = frontier_.extract(frontier_.begin());
      for (auto& shard : node.mapped())
        for (auto& [v, slot] : shard) {
          if (depth > 0 && slot.rec.all_zero()) continue;
          layer.push_back(Closed{v, std::move(slot.m), {}, std::move(slot.rec)});
        }
    }
    std::sort(layer.begin(), layer.end(), [](const Closed& a, const Closed& b) { return a.v < b.v; });

    // Finalize; the smallest failing record decides the error.
    std::vector<std::size_t> first_bad(threads_, layer.size());
    std::vector<Verdict> bad_kind(threads_, Verdict::ok);
    std::vector<std::vector<std::pair<std::size_t, std::string>>> notes(threads_);
    bool is_root = depth == 0 && !opt_.resume;
    parallel_chunks(threads_, layer.size(), [&](unsigned t, std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) {
        std::string note;
        Verdict v = finalize(layer[n], is_root && layer[n].v.empty(), &note);
        if (v != Verdict::ok) {
          first_bad[t] = n;
          bad_kind[t] = v;
          return;
        }
        if (!note.empty()) notes[t].emplace_back(n, std::move(note));
      }
    });
    std::size_t worst = layer.size();
    Verdict kind = Verdict::ok;
    for (unsigned t = 0; t < threads_; ++t)
      if (first_bad[t] < worst) {
        worst = first_bad[t];
        kind = bad_kind[t];
      }
    if (kind == Verdict::failed) throw AlgorithmFailed(layer[worst].m.to_string());
    if (kind == Verdict::stopped) throw AlgorithmStopped(layer[worst].m.to_string());
    if (opt_.warnings)
      for (auto& per : notes)
        for (auto& [n, text] : per) opt_.warnings->push_back(std::move(text));

    expand_layer(layer);

    // Emit.
    std::vector<QCharTerm> terms;
    std::vector<std::vector<TPoly>> cols;
    std::size_t trivial = 0;
    for (auto& c : layer) {
      if (c.a.is_zero()) continue;
      if (c.a.is_one()) ++trivial;
      if (opt_.keep_colorings) {
        std::vector<TPoly> row(data_.rank());
        for (int i = 1; i <= data_.rank(); ++i) row[i - 1] = c.rec.coloring(i);
        cols.push_back(std::move(row));
      }
      terms.push_back(QCharTerm{std::move(c.v), std::move(c.m), std::move(c.a)});
    }
    std::size_t finalized = layer.size();
    layer.clear();
    layer.shrink_to_fit();
    std::size_t emitted = terms.size();
    total_emitted_ += emitted;
    sink_.accept_layer(depth, std::move(terms), opt_.keep_colorings ? &cols : nullptr);

    if (opt_.progress) {
      LayerStats st;
      st.depth = depth;
      st.finalized = finalized;
      st.emitted = emitted;
      st.total_emitted = total_emitted_;
      st.trivial = trivial;
      for (const auto& [d, shards] : frontier_)
        for (const auto& s : shards) st.pending += s.size();
      MemoryUsage mu = current_memory_usage();
      st.rss_kb = mu.rss_kb;
      st.peak_rss_kb = mu.peak_rss_kb;
      opt_.progress(st);
    }
  }

  void expand_layer(const std::vector<Closed>& layer) {
    std::vector<Frontier> local(threads_);
    parallel_chunks(threads_, layer.size(), [&](unsigned t, std::size_t b, std::size_t e) {
      Frontier& out = local[t];
      for (std::size_t n = b; n < e; ++n) {
        const Closed& c = layer[n];
        long base = c.v.depth();
        for (int i = 1; i <= data_.rank(); ++i) {
          if (!c.m.is_i_dominant(i)) continue;
          auto sites = sites_of(c.m, i);
          if (sites.empty()) continue;
          TPoly coeff = c.a - c.rec.coloring(i);
          if (coeff.is_zero()) continue;
          for_each_expansion(data_, c.v, c.m, i, coeff, sites, [&](VVector vv, Monomial mm, TPoly cc, int r) {
            Slot slot{std::move(mm), {}};
            slot.rec.add(i, cc);
            insert(out, base + r, std::move(vv), std::move(slot));
          });
        }
      }
    });
    if (threads_ == 1) {
      merge_frontier(std::move(local[0]));
      return;
    }
    // Sharded merge: shard s of every depth is owned by one worker.
    std::vector<long> depths;
    for (const auto& f : local)
      for (const auto& [d, _] : f) depths.push_back(d);
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
    for (long d : depths) {
      auto& target = frontier_[d];
      if (target.empty()) target.resize(shards_);
    }
    parallel_chunks(threads_, shards_, [&](unsigned, std::size_t b, std::size_t e) {
      for (long d : depths) {
        auto& target = frontier_.at(d);
        for (auto& f : local) {
          auto it = f.find(d);
          if (it == f.end()) continue;
          for (std::size_t s = b; s < e; ++s) {
            for (auto& [v, slot] : it->second[s]) {
              auto [pos, fresh] = target[s].try_emplace(v);
              if (fresh) pos->second = std::move(slot);
              else pos->second.rec.merge(slot.rec);
            }
            Shard().swap(it->second[s]);
          }
        }
      }
    });
  }

  void merge_frontier(Frontier&& f) {
    for (auto& [d, shards] : f) {
      auto& target = frontier_[d];
      if (target.empty()) {
        target = std::move(shards);
        continue;
      }
      for (std::size_t s = 0; s < shards.size(); ++s)
        for (auto& [v, slot] : shards[s]) {
          auto [pos, fresh] = target[s].try_emplace(v);
          if (fresh) pos->second = std::move(slot);
          else pos->second.rec.merge(slot.rec);
        }
    }
  }

  const DynkinData& data_;
  const Monomial& anchor_;
  const EngineOptions& opt_;
  TermSink& sink_;
  unsigned threads_ = 1;
  std::size_t shards_ = 1;
  Frontier frontier_;
  std::size_t total_emitted_ = 0;
};

}  // namespace

void run_engine(const DynkinData& data, const Monomial& anchor, const EngineOptions& options, TermSink& sink) {
  LayerEngine(data, anchor, options, sink).run();
}

QChar compute_from_anchor(std::shared_ptr<const DynkinData> data, const Monomial& anchor,
                          const EngineOptions& options) {
  QCharBuilder builder(data, anchor);
  run_engine(*data, anchor, options, builder);
  return builder.take();
}

QChar compute_l_fundamental(std::shared_ptr<const DynkinData> data, int node, const EngineOptions& options) {
  if (node < 1 || node > data->rank()) throw InvalidArgument("node out of range");
  return compute_from_anchor(data, Monomial::y(node, 0), options);
}

QChar compute_from_drinfeld(std::shared_ptr<const DynkinData> data, const DrinfeldData& q,
                            const EngineOptions& options) {
  if (q.rank() != data->rank()) throw InvalidArgument("Drinfeld data rank mismatch");
  if (q.empty()) throw InvalidArgument("Drinfeld data must be nonempty");
  return compute_from_anchor(data, q.to_monomial(), options);
}

}  // namespace qchar
