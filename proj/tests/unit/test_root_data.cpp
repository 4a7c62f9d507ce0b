#include "qchar/errors.hpp"
#include "qchar/root_data.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <set>

using namespace qchar;

namespace {

// Positive roots by closing the simple roots under simple reflections, in
// simple-root coordinates; independent of DynkinData::positive_roots.
std::set<std::vector<int>> roots_by_reflection(const DynkinData& d) {
  int n = d.rank();
  std::set<std::vector<int>> all;
  std::vector<std::vector<int>> todo;
  for (int i = 0; i < n; ++i) {
    std::vector<int> a(n, 0);
    a[i] = 1;
    todo.push_back(a);
    all.insert(a);
  }
  while (!todo.empty()) {
    auto r = todo.back();
    todo.pop_back();
    for (int i = 1; i <= n; ++i) {
      int pair = 0;
      for (int j = 1; j <= n; ++j) pair += d.cartan(i, j) * r[j - 1];
      auto s = r;
      s[i - 1] -= pair;
      if (std::all_of(s.begin(), s.end(), [](int x) { return x >= 0; }) && all.insert(s).second) todo.push_back(s);
    }
  }
  return all;
}

Weight w(const char* s, int rank) { return Weight::parse(s, rank); }

}  // namespace

TEST(DynkinData, Cartan) {
  auto a1 = DynkinData::parse("A1");
  EXPECT_EQ(a1.cartan(1, 1), 2);
  auto a2 = DynkinData::parse("A2");
  EXPECT_EQ(a2.cartan(1, 2), -1);
  EXPECT_EQ(a2.cartan(2, 1), -1);
  auto e8 = DynkinData::parse("E8");
  auto n5 = e8.neighbors(5);
  std::sort(n5.begin(), n5.end());
  EXPECT_EQ(n5, (std::vector<int>{4, 6, 8}));
  EXPECT_EQ(e8.neighbors(1), std::vector<int>{2});
  auto d4 = DynkinData::parse("D4");
  EXPECT_EQ(d4.neighbors(2).size(), 3u);
}

TEST(DynkinData, RejectsBadInput) {
  EXPECT_THROW(DynkinData::parse("E9"), InvalidArgument);
  EXPECT_THROW(DynkinData::parse("B3"), InvalidArgument);
  EXPECT_THROW(DynkinData::parse("A"), InvalidArgument);
  // cycle
  EXPECT_THROW(DynkinData::from_edges(3, {{1, 2}, {2, 3}, {3, 1}}), InvalidArgument);
  // affine D4
  EXPECT_THROW(DynkinData::from_edges(5, {{1, 3}, {2, 3}, {4, 3}, {5, 3}}), InvalidArgument);
  EXPECT_NO_THROW(DynkinData::indefinite_from_edges(5, {{1, 3}, {2, 3}, {4, 3}, {5, 3}}));
}

TEST(DynkinData, EdgeFile) {
  auto path = std::filesystem::temp_directory_path() / "qchar_edges_test.txt";
  {
    std::ofstream out(path);
    out << "# D4\n1 2\n2 3\n2 4\n";
  }
  auto d = DynkinData::from_edge_file(path);
  EXPECT_EQ(d.rank(), 4);
  EXPECT_EQ(d.name(), "custom");
  EXPECT_EQ(d.positive_roots().size(), 12u);
  std::filesystem::remove(path);
}

TEST(DynkinData, PositiveRootsMatchReflectionClosure) {
  for (const char* t : {"A1", "A3", "A5", "D4", "D6", "E6", "E7", "E8"}) {
    auto d = DynkinData::parse(t);
    auto oracle = roots_by_reflection(d);
    std::set<std::vector<int>> got(d.positive_roots().begin(), d.positive_roots().end());
    EXPECT_EQ(got, oracle) << t;
  }
  EXPECT_EQ(DynkinData::parse("E8").positive_roots().size(), 120u);
  EXPECT_EQ(DynkinData::parse("E7").positive_roots().size(), 63u);
  EXPECT_EQ(DynkinData::parse("E6").positive_roots().size(), 36u);
}

TEST(Weight, ParsePrint) {
  EXPECT_EQ(w("2w1+w3", 3).coeffs, (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(w("-w1+w2", 2).to_string(), "-w1+w2");
  EXPECT_EQ(w("0", 4).to_string(), "0");
  EXPECT_THROW(w("w5", 4), Error);
}

TEST(WeylDim, Values) {
  auto a2 = DynkinData::parse("A2");
  EXPECT_EQ(weyl_dim(a2, Weight::zero(2)), 1);
  EXPECT_EQ(weyl_dim(a2, w("w1+w2", 2)), 8);
  auto e8 = DynkinData::parse("E8");
  EXPECT_EQ(weyl_dim(e8, Weight::zero(8)), 1);
  EXPECT_EQ(weyl_dim(e8, w("w4", 8)), Integer(146325270));
  EXPECT_EQ(weyl_dim(e8, w("w5", 8)), Integer("6899079264"));
  EXPECT_EQ(weyl_dim(e8, w("w1", 8)), 248);
  EXPECT_EQ(weyl_dim(e8, w("w7", 8)), 3875);
  EXPECT_EQ(weyl_dim(e8, w("w8", 8)), 147250);
  EXPECT_EQ(weyl_dim(e8, w("w2", 8)), 30380);
  EXPECT_EQ(weyl_dim(e8, w("w3", 8)), 2450240);
  EXPECT_EQ(weyl_dim(e8, w("w6", 8)), 6696000);
}

TEST(Freudenthal, Examples) {
  auto a1 = DynkinData::parse("A1");
  auto ch = freudenthal_char(a1, w("2w1", 1));
  EXPECT_EQ(ch.size(), 3u);
  for (const char* s : {"2w1", "0", "-2w1"}) EXPECT_EQ(ch.coefficient(w(s, 1)), TPoly(1)) << s;
}

TEST(Freudenthal, AdjointZeroWeightIsRank) {
  // Adjoint weights are the roots (multiplicity one) and 0 with multiplicity rank.
  for (const char* t : {"A2", "A4", "D4", "D5", "E6", "E7"}) {
    auto d = DynkinData::parse(t);
    auto roots = roots_by_reflection(d);
    std::vector<int> top = *std::max_element(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
      int ha = 0, hb = 0;
      for (int x : a) ha += x;
      for (int x : b) hb += x;
      return ha < hb;
    });
    Weight theta = d.root_to_weight(top);
    auto ch = freudenthal_char(d, theta);
    EXPECT_EQ(ch.coefficient(Weight::zero(d.rank())), TPoly(d.rank())) << t;
    EXPECT_EQ(ch.size(), 2 * roots.size() + 1) << t;
    for (const auto& r : roots) EXPECT_EQ(ch.coefficient(d.root_to_weight(r)), TPoly(1)) << t;
    EXPECT_EQ(ch.total_at_one(), weyl_dim(d, theta)) << t;
  }
}

TEST(Freudenthal, DimensionSums) {
  for (const char* t : {"A3", "D4", "E6"}) {
    auto d = DynkinData::parse(t);
    for (int i = 1; i <= d.rank(); ++i) {
      Weight l = Weight::fundamental(d.rank(), i);
      EXPECT_EQ(freudenthal_char(d, l).total_at_one(), weyl_dim(d, l)) << t << ' ' << i;
      Integer sum = 0;
      for (const auto& [mu, m] : freudenthal_dominant(d, l)) sum += m * orbit_size(d, mu);
      EXPECT_EQ(sum, weyl_dim(d, l)) << t << ' ' << i;
    }
  }
}

TEST(Weyl, DominantRepresentative) {
  auto a1 = DynkinData::parse("A1");
  auto a2 = DynkinData::parse("A2");
  EXPECT_EQ(dominant_representative(a2, w("w1+w2", 2)), w("w1+w2", 2));
  EXPECT_EQ(dominant_representative(a1, w("-w1", 1)), w("w1", 1));
  EXPECT_EQ(dominant_representative(a2, w("-w2", 2)), w("w1", 2));
  auto orbit = weyl_orbit(a2, w("w1", 2));
  std::set<Weight> got(orbit.begin(), orbit.end());
  EXPECT_EQ(got, (std::set<Weight>{w("w1", 2), w("-w1+w2", 2), w("-w2", 2)}));
  EXPECT_EQ(orbit_size(DynkinData::parse("E8"), w("w1", 8)), 240);
}
