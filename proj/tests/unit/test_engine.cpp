#include "qchar/compact_store.hpp"
#include "qchar/crystal.hpp"
#include "qchar/engine.hpp"
#include "qchar/errors.hpp"
#include "qchar/io.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <set>

using namespace qchar;

namespace {

Monomial M(const char* s) { return Monomial::parse(s); }
TPoly P(const char* s) { return TPoly::parse(s); }

std::shared_ptr<const DynkinData> D(const char* t) { return std::make_shared<const DynkinData>(DynkinData::parse(t)); }

std::map<Monomial, TPoly> as_map(const QChar& q) {
  std::map<Monomial, TPoly> m;
  for (const auto& t : q.terms()) m.emplace(t.monomial, t.coeff);
  return m;
}

void expect_fundamental_invariants(const QChar& q) {
  std::set<Monomial> seen;
  for (const auto& t : q.terms()) {
    EXPECT_TRUE(t.coeff.only_even_nonnegative()) << t.monomial << " : " << t.coeff;
    EXPECT_TRUE(t.coeff.nonnegative_coefficients());
    EXPECT_EQ(reconstruct(q.data(), q.anchor(), t.v), t.monomial);
    EXPECT_TRUE(seen.insert(t.monomial).second);
  }
  EXPECT_EQ(q.l_dominant_count(), 1u);
  QChar chi = q.to_chi();
  for (const auto& t : chi.terms()) EXPECT_TRUE(t.coeff.is_bar_invariant()) << t.monomial;
  for (std::size_t n = 1; n < q.size(); ++n) EXPECT_TRUE(canonical_term_less(q.terms()[n - 1].v, q.terms()[n].v));
}

}  // namespace

TEST(ExpandI, Examples) {
  auto a2 = DynkinData::parse("A2");
  auto r = expand_i(a2, VVector(), M("Y[1,0]"), 1, TPoly(1));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].monomial, M("Y[1,2]^-1 Y[2,1]"));
  EXPECT_EQ(r[0].coeff, TPoly(1));
  EXPECT_EQ(r[0].v, VVector::parse("A[1,1]"));

  EXPECT_TRUE(expand_i(a2, VVector(), M("Y[2,0]"), 1, TPoly(1)).empty());

  auto a1 = DynkinData::parse("A1");
  auto two = expand_i(a1, VVector(), M("Y[1,0]^2"), 1, TPoly(1));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].monomial, M("Y[1,0] Y[1,2]^-1"));
  EXPECT_EQ(two[0].coeff, P("1+t^2"));
  EXPECT_EQ(two[1].monomial, M("Y[1,2]^-2"));
  EXPECT_EQ(two[1].coeff, TPoly(1));

  EXPECT_THROW(expand_i(a2, VVector(), M("Y[1,2]^-1 Y[2,1]"), 1, TPoly(1)), InvalidArgument);
}

TEST(Engine, HandRuns) {
  auto a1 = compute_l_fundamental(D("A1"), 1);
  EXPECT_EQ(as_map(a1), (std::map<Monomial, TPoly>{{M("Y[1,0]"), 1}, {M("Y[1,2]^-1"), 1}}));
  auto a21 = compute_l_fundamental(D("A2"), 1);
  EXPECT_EQ(as_map(a21),
            (std::map<Monomial, TPoly>{{M("Y[1,0]"), 1}, {M("Y[1,2]^-1 Y[2,1]"), 1}, {M("Y[2,3]^-1"), 1}}));
  auto a22 = compute_l_fundamental(D("A2"), 2);
  EXPECT_EQ(as_map(a22),
            (std::map<Monomial, TPoly>{{M("Y[2,0]"), 1}, {M("Y[2,2]^-1 Y[1,1]"), 1}, {M("Y[1,3]^-1"), 1}}));
}

TEST(Engine, E8Node1) {
  auto q = compute_l_fundamental(D("E8"), 1);
  EXPECT_EQ(q.size(), 248u);
  EXPECT_EQ(q.total_at_one(), 249);
  expect_fundamental_invariants(q);
}

TEST(Engine, SmallCensusMatchesCrystal) {
  for (const char* t : {"A1", "A2", "A3", "A4", "D4", "D5", "E6"}) {
    auto d = D(t);
    for (int i = 1; i <= d->rank(); ++i) {
      auto q = compute_l_fundamental(d, i);
      expect_fundamental_invariants(q);
      EXPECT_EQ(Integer(q.size()), weyl_dim(*d, Weight::fundamental(d->rank(), i))) << t << ' ' << i;
      auto cr = generate_crystal(*d, Monomial::y(i, 0), 1'000'000);
      std::set<Monomial> a(cr.nodes.begin(), cr.nodes.end()), b;
      for (const auto& term : q.terms()) b.insert(term.monomial);
      EXPECT_EQ(a, b) << t << ' ' << i;
    }
  }
}

TEST(Engine, DrinfeldAnchors) {
  auto e6 = D("E6");
  auto base = compute_l_fundamental(e6, 3);
  EXPECT_EQ(compute_from_drinfeld(e6, DrinfeldData::parse("3:0", 6)), base);
  EXPECT_EQ(compute_from_drinfeld(e6, DrinfeldData::parse("3:5", 6)), base.shifted(5));
  EXPECT_THROW(compute_from_drinfeld(e6, DrinfeldData(6)), InvalidArgument);
}

TEST(Engine, StrictStopsOnDominant) {
  auto a1 = D("A1");
  try {
    compute_from_drinfeld(a1, DrinfeldData::parse("1:0,1:2", 1));
    FAIL() << "expected AlgorithmStopped";
  } catch (const AlgorithmStopped& e) {
    EXPECT_EQ(e.monomial(), "1");
  }
  EngineOptions tol;
  tol.mode = EngineMode::tolerant;
  std::vector<std::string> warnings;
  tol.warnings = &warnings;
  auto q = compute_from_drinfeld(a1, DrinfeldData::parse("1:0,1:2", 1), tol);
  EXPECT_EQ(q.size(), 4u);
  EXPECT_FALSE(warnings.empty());
}

TEST(Engine, DepthGuard) {
  EngineOptions o;
  o.max_depth = 3;
  EXPECT_THROW(compute_l_fundamental(D("E8"), 1, o), DepthGuardExceeded);
  auto affine = std::make_shared<const DynkinData>(
      DynkinData::indefinite_from_edges(5, {{1, 3}, {2, 3}, {4, 3}, {5, 3}}));
  o.max_depth = 60;
  EXPECT_THROW(compute_l_fundamental(affine, 1, o), DepthGuardExceeded);
}

TEST(Engine, Normalization) {
  auto a1 = D("A1");
  auto q = compute_l_fundamental(a1, 1);
  for (const auto& t : q.terms()) EXPECT_EQ(self_pairing(q, t), 0);
  EXPECT_EQ(q.to_chi(), q.to_chi().to_qch().to_chi());
  EXPECT_EQ(d_pairing(VVector(), M("Y[1,0]"), VVector(), M("Y[1,0]")), 0);
  EXPECT_EQ(d_pairing(VVector(), M("Y[1,2]"), VVector::parse("A[1,1]"), M("Y[1,2]^-1")), 1);
  EXPECT_EQ(d_pairing(VVector::parse("A[1,1]"), M("Y[1,0] Y[1,2]"), VVector::parse("A[1,1]"), M("1")), 1);
}

TEST(Engine, ThreadDeterminism) {
  for (const char* t : {"D4", "E6"}) {
    auto d = D(t);
    int node = d->rank() == 4 ? 2 : 3;
    std::optional<std::vector<std::uint8_t>> ref;
    for (unsigned th : {1u, 4u, 16u}) {
      EngineOptions o;
      o.threads = th;
      auto bytes = serialize(compute_l_fundamental(d, node, o));
      if (!ref) ref = bytes;
      else EXPECT_EQ(bytes, *ref) << t << " threads " << th;
    }
  }
}

TEST(Engine, CheckpointResume) {
  auto d = D("E6");
  Monomial anchor = Monomial::y(3, 0);
  QChar full = compute_l_fundamental(d, 3);

  std::optional<std::pair<QChar, EngineState>> snap;
  QCharBuilder first(d, anchor);
  EngineOptions o;
  o.checkpoint_every = 7;
  o.on_checkpoint = [&](const EngineState& st) {
    if (!snap) snap.emplace(first.result(), st);
  };
  run_engine(*d, anchor, o, first);
  EXPECT_EQ(first.result(), full);
  ASSERT_TRUE(snap);
  EXPECT_LT(snap->first.size(), full.size());
  EXPECT_FALSE(snap->second.pending.empty());

  // through the file format, as the CLI does it
  auto bytes = serialize_checkpoint(snap->first, snap->second);
  auto [partial, state] = deserialize_checkpoint(bytes);
  EXPECT_EQ(partial, snap->first);
  QCharBuilder second(std::move(partial));
  EngineOptions r;
  r.resume = &state;
  r.threads = 4;
  run_engine(*d, anchor, r, second);
  EXPECT_EQ(second.result(), full);
}

TEST(Engine, CompactStoreMatches) {
  auto d = D("E8");
  Monomial anchor = Monomial::y(7, 0);
  CompactStore store(d, anchor);
  run_engine(*d, anchor, {}, store);
  QChar full = compute_l_fundamental(d, 7);
  EXPECT_EQ(store.size(), full.size());
  EXPECT_EQ(store.to_qchar(), full);
  std::size_t trivial = 0;
  for (const auto& t : full.terms()) trivial += t.coeff.is_one();
  EXPECT_EQ(store.trivial_count(), trivial);
  EXPECT_GT(store.layer_count(), 1u);
}

TEST(Engine, ProgressIsReported) {
  std::vector<LayerStats> layers;
  EngineOptions o;
  o.progress = [&](const LayerStats& s) { layers.push_back(s); };
  auto q = compute_l_fundamental(D("D4"), 2, o);
  ASSERT_FALSE(layers.empty());
  EXPECT_EQ(layers.back().total_emitted, q.size());
  for (std::size_t n = 1; n < layers.size(); ++n) {
    EXPECT_GT(layers[n].depth, layers[n - 1].depth);
    EXPECT_GE(layers[n].peak_rss_kb, layers[n - 1].peak_rss_kb);
  }
}
