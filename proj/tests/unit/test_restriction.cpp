#include "qchar/engine.hpp"
#include "qchar/errors.hpp"
#include "qchar/restriction.hpp"

#include <gtest/gtest.h>

using namespace qchar;

namespace {

std::shared_ptr<const DynkinData> D(const char* t) { return std::make_shared<const DynkinData>(DynkinData::parse(t)); }
Weight W(const char* s, int rank) { return Weight::parse(s, rank); }
TPoly P(const char* s) { return TPoly::parse(s); }

DecompositionTable table(std::initializer_list<std::pair<const char*, const char*>> rows, int rank) {
  DecompositionTable t;
  for (auto [w, p] : rows) t.rows.emplace_back(W(w, rank), P(p));
  return t;
}

}  // namespace

TEST(Restrict, A2Fundamental) {
  auto q = compute_l_fundamental(D("A2"), 1);
  auto ch = restrict_qchar(q);
  EXPECT_EQ(ch.size(), 3u);
  for (const char* w : {"w1", "-w1+w2", "-w2"}) EXPECT_EQ(ch.coefficient(W(w, 2)), TPoly(1));
  EXPECT_EQ(decompose(q.data(), ch), table({{"w1", "1"}}, 2));
}

TEST(Restrict, AnchorOnly) {
  auto d = D("A3");
  QChar q(d, Monomial::y(2, 0));
  q.append(QCharTerm{VVector(), Monomial::y(2, 0), TPoly(1)});
  auto ch = restrict_qchar(q);
  EXPECT_EQ(ch.size(), 1u);
  EXPECT_EQ(ch.coefficient(W("w2", 3)), TPoly(1));
}

TEST(Restrict, KirillovReshetikhinA1) {
  // three-monomial KR module, written in chi form
  auto d = D("A1");
  Monomial anchor = Monomial::parse("Y[1,0] Y[1,2]");
  QChar q(d, anchor, Normalization::chi);
  for (const char* m : {"Y[1,0] Y[1,2]", "Y[1,0] Y[1,4]^-1", "Y[1,2]^-1 Y[1,4]^-1"}) {
    Monomial mm = Monomial::parse(m);
    q.append(QCharTerm{*vvector_between(*d, mm, anchor), mm, TPoly(1)});
  }
  q.canonicalize();
  for (const auto& t : q.terms()) EXPECT_EQ(self_pairing(q, t), 0);
  auto ch = restrict_qchar(q);
  EXPECT_EQ(ch.size(), 3u);
  for (const char* w : {"2w1", "0", "-2w1"}) EXPECT_EQ(ch.coefficient(W(w, 1)), TPoly(1));
}

TEST(Restrict, WeylInvariance) {
  for (const char* t : {"A3", "D4", "E6"}) {
    auto d = D(t);
    for (int i = 1; i <= d->rank(); ++i) {
      auto ch = restrict_qchar(compute_l_fundamental(d, i));
      EXPECT_TRUE(is_weyl_invariant(*d, ch)) << t << ' ' << i;
    }
  }
  ClassicalChar bad;
  bad.add(W("w1", 2), 1);
  EXPECT_FALSE(is_weyl_invariant(*D("A2"), bad));
  EXPECT_THROW(decompose(*D("A2"), bad), NonInvariant);
}

TEST(Decompose, E8Node1) {
  auto d = D("E8");
  auto t = decompose(*d, restrict_qchar(compute_l_fundamental(d, 1)));
  EXPECT_EQ(t, table({{"w1", "1"}, {"0", "t^2"}}, 8));
}

TEST(Decompose, E8Node7) {
  auto d = D("E8");
  auto t = decompose(*d, restrict_qchar(compute_l_fundamental(d, 7)));
  EXPECT_EQ(t, table({{"w7", "1"}, {"w1", "t^2"}, {"0", "t^4"}}, 8));
}

TEST(Decompose, ClassicalRoundtrip) {
  auto d = D("D4");
  ClassicalChar ch;
  auto add = [&](const char* w, const TPoly& c) {
    auto v = freudenthal_char(*d, W(w, 4));
    for (const auto& [mu, m] : v.terms()) ch.add(mu, m * c);
  };
  add("w2", 1);
  add("w1+w3", P("t^2"));
  add("0", P("t^4+t^6"));
  auto t = decompose(*d, ch);
  EXPECT_EQ(t.multiplicity(W("w2", 4)), TPoly(1));
  EXPECT_EQ(t.multiplicity(W("w1+w3", 4)), P("t^2"));
  EXPECT_EQ(t.multiplicity(W("0", 4)), P("t^4+t^6"));
  EXPECT_EQ(t.rows.size(), 3u);
}

TEST(Orientation, Heights) {
  auto a2 = DynkinData::parse("A2");
  auto o = Orientation::canonical(a2);
  auto m = height_function(a2, o);
  EXPECT_EQ(m[0], 0);
  EXPECT_EQ(m[0] - m[1], 1);
  auto e8 = DynkinData::parse("E8");
  for (std::uint64_t mask : {0ull, 5ull, 127ull}) {
    auto of = Orientation::flipped(e8, mask);
    auto h = height_function(e8, of);
    for (auto [a, b] : of.arrows) EXPECT_EQ(h[a - 1] - h[b - 1], 1);
  }
}

TEST(QForWeight, Examples) {
  auto e8 = DynkinData::parse("E8");
  auto h = height_function(e8, Orientation::canonical(e8));
  auto q = q_for_weight(e8, W("w8", 8));
  EXPECT_EQ(q.degree(), 1u);
  EXPECT_EQ(q.roots(8), std::vector<int>{h[7]});
  auto q2 = q_for_weight(e8, W("2w1", 8));
  EXPECT_EQ(q2.roots(1), (std::vector<int>{h[0], h[0]}));
  auto a2 = DynkinData::parse("A2");
  auto q3 = q_for_weight(a2, W("w1+w2", 2));
  ASSERT_EQ(q3.roots(1).size(), 1u);
  ASSERT_EQ(q3.roots(2).size(), 1u);
  EXPECT_EQ(q3.roots(1)[0] - q3.roots(2)[0], 1);
  EXPECT_TRUE(q_for_weight(a2, W("0", 2)).empty());
}

TEST(GradedChar, ZeroAndMinuscule) {
  auto a2 = D("A2");
  auto z = graded_char(a2, W("0", 2));
  EXPECT_EQ(z.size(), 1u);
  EXPECT_EQ(z.coefficient(W("0", 2)), TPoly(1));
  auto c = graded_char(a2, W("w1", 2));
  EXPECT_EQ(c.size(), 3u);
  for (const auto& [w, p] : c.terms()) EXPECT_EQ(p, TPoly(1));
}

TEST(GradedChar, FreudenthalAtTZero) {
  auto check = [](const char* t, const char* w) {
    auto d = D(t);
    Weight l = W(w, d->rank());
    EXPECT_EQ(classical_char_t0(d, l), freudenthal_char(*d, l)) << t << ' ' << w;
  };
  check("A2", "w1+w2");
  check("A2", "2w1");
  check("D4", "w2");
  check("E6", "w1");
  auto d4 = D("D4");
  EXPECT_EQ(classical_char_t0(d4, W("w2", 4)).coefficient(W("0", 4)), TPoly(4));
}

TEST(IC, Trivial) {
  auto r = ic_matrix(D("E8"), {W("0", 8)});
  ASSERT_EQ(r.IC.size(), 1u);
  EXPECT_EQ(r.IC[0][0], TPoly(1));
  EXPECT_EQ(r.P[0][0], TPoly(1));
}

TEST(IC, FromChars) {
  // rows ch = V(l) + t^2 V(mu) + ... fed directly
  auto d = DynkinData::parse("A2");
  std::vector<Weight> ws{W("w1+w2", 2), W("0", 2)};
  ClassicalChar top;
  auto v = freudenthal_char(d, ws[0]);
  for (const auto& [mu, m] : v.terms()) top.add(mu, m);
  top.add(ws[1], P("t^2"));
  ClassicalChar bottom;
  bottom.add(ws[1], 1);
  auto r = ic_from_chars(d, ws, {top, bottom});
  EXPECT_EQ(r.IC[0][0], TPoly(1));
  EXPECT_EQ(r.IC[0][1], P("t^2"));
  EXPECT_EQ(r.IC[1][0], TPoly());
  EXPECT_EQ(r.IC[1][1], TPoly(1));
  EXPECT_TRUE(r.freudenthal_ok[0]);
}
