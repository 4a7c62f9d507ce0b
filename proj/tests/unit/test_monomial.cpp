#include "qchar/errors.hpp"
#include "qchar/monomial.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <random>

using namespace qchar;

namespace {

Monomial M(const char* s) { return Monomial::parse(s); }

std::map<std::string, std::string> read_fixture(const std::string& name) {
  std::ifstream in(std::string(QCHAR_FIXTURE_DIR) + "/" + name);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto c = line.find(" : ");
    kv[line.substr(0, c)] = line.substr(c + 3);
  }
  return kv;
}

VVector random_v(std::mt19937& g, int rank, int span) {
  std::uniform_int_distribution<int> node(1, rank), idx(0, span), mult(1, 3), len(0, 12);
  VVector v;
  for (int n = len(g); n > 0; --n) v.add(node(g), idx(g), mult(g));
  return v;
}

}  // namespace

TEST(Monomial, ParsePrint) {
  EXPECT_EQ(M("Y[1,2]^-1 Y[2,1]").to_string(), "Y[1,2]^-1 Y[2,1]");
  EXPECT_EQ(M("Y[2,1] Y[1,2]^-1"), M("Y[1,2]^-1 Y[2,1]"));
  EXPECT_EQ(M("1").to_string(), "1");
  EXPECT_EQ(M("Y[1,0] Y[1,0]"), M("Y[1,0]^2"));
  EXPECT_TRUE((M("Y[1,0]") * M("Y[1,0]^-1")).is_one());
  EXPECT_THROW(M("Y[1,]"), ParseError);
  EXPECT_THROW(M("X[1,2]"), ParseError);
}

TEST(Monomial, AMonomial) {
  auto a1 = DynkinData::parse("A1");
  auto a2 = DynkinData::parse("A2");
  auto e8 = DynkinData::parse("E8");
  EXPECT_EQ(a_monomial(a1, 1, 1), M("Y[1,0] Y[1,2]"));
  EXPECT_EQ(a_monomial(a2, 1, 1), M("Y[1,0] Y[1,2] Y[2,1]^-1"));
  EXPECT_EQ(a_monomial(e8, 5, 1), M("Y[5,0] Y[5,2] Y[4,1]^-1 Y[6,1]^-1 Y[8,1]^-1"));
  Monomial m = M("Y[1,0]");
  apply_a_inverse(a2, m, 1, 1);
  EXPECT_EQ(m, M("Y[1,2]^-1 Y[2,1]"));
  apply_a_inverse(a2, m, 1, 1, -1);
  EXPECT_EQ(m, M("Y[1,0]"));
}

TEST(Monomial, Dominance) {
  EXPECT_TRUE(M("Y[1,0]").is_l_dominant());
  EXPECT_TRUE(M("1").is_l_dominant());
  Monomial m = M("Y[1,2]^-1 Y[2,1]");
  EXPECT_TRUE(m.is_i_dominant(2));
  EXPECT_FALSE(m.is_i_dominant(1));
  EXPECT_FALSE(m.is_l_dominant());
}

TEST(Monomial, AnchoredDepth) {
  auto e8 = DynkinData::parse("E8");
  auto a2 = DynkinData::parse("A2");
  auto top = AnchoredMonomial::at_anchor(M("Y[5,0]"));
  EXPECT_EQ(top.depth(), 0);
  auto one = top.multiply_a_inverse(e8, 5, 1);
  EXPECT_EQ(one.depth(), 1);
  EXPECT_EQ(one.monomial(), M("Y[5,2]^-1 Y[4,1] Y[6,1] Y[8,1]"));
  auto b = AnchoredMonomial::at_anchor(M("Y[1,0]")).multiply_a_inverse(a2, 1, 1);
  EXPECT_EQ(b.monomial(), M("Y[1,2]^-1 Y[2,1]"));
  EXPECT_EQ(b.depth(), 1);
}

TEST(Monomial, WeightOf) {
  auto a2 = DynkinData::parse("A2");
  EXPECT_EQ(weight_of(a2, M("Y[1,0]")), Weight::fundamental(2, 1));
  EXPECT_EQ(weight_of(a2, M("Y[1,2]^-1 Y[2,1]")), Weight::parse("-w1+w2", 2));
}

TEST(Monomial, LowestFixture) {
  auto e8 = DynkinData::parse("E8");
  auto fx = read_fixture("e8_lowest_node5.txt");
  VVector v = VVector::parse(fx.at("v"));
  Monomial anchor = M(fx.at("anchor").c_str());
  EXPECT_EQ(v.entries().size(), 106u);
  EXPECT_EQ(std::to_string(v.entries().size()), fx.at("triples"));
  Monomial low = reconstruct(e8, anchor, v);
  EXPECT_EQ(low, M(fx.at("lowest").c_str()));
  EXPECT_EQ(low, Monomial::y(5, 30, -1));
  EXPECT_EQ(weight_of(e8, low), Weight::parse(fx.at("weight"), 8));
  EXPECT_EQ(v.depth(), 270);
  auto back = vvector_between(e8, low, anchor);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, v);
}

TEST(Monomial, ReconstructProperties) {
  std::mt19937 g(3);
  for (const char* t : {"A3", "D5", "E8"}) {
    auto d = DynkinData::parse(t);
    for (int n = 0; n < 300; ++n) {
      Monomial anchor = Monomial::y(1 + n % d.rank(), 0);
      VVector v = random_v(g, d.rank(), 20);
      Monomial m = reconstruct(d, anchor, v);
      // weight drops by the sum of the simple roots removed
      Weight expect = weight_of(d, anchor);
      for (const auto& f : v.entries())
        for (int r = 0; r < f.exp; ++r) expect -= d.simple_root(f.node);
      EXPECT_EQ(weight_of(d, m), expect);
      auto back = vvector_between(d, m, anchor);
      ASSERT_TRUE(back) << t;
      EXPECT_EQ(*back, v);
      EXPECT_EQ(VVector::parse(v.to_string()), v);
      EXPECT_EQ(Monomial::parse(m.to_string()), m);
    }
  }
}

TEST(Monomial, NotBelow) {
  auto a2 = DynkinData::parse("A2");
  EXPECT_FALSE(vvector_between(a2, M("Y[1,0]^2"), M("Y[1,0]")));
  EXPECT_FALSE(vvector_between(a2, M("Y[2,0]"), M("Y[1,0]")));
}

TEST(Drinfeld, Conversions) {
  EXPECT_EQ(DrinfeldData::parse("1:0", 3).to_monomial(), M("Y[1,0]"));
  EXPECT_EQ(DrinfeldData::parse("1:0,1:2", 1).to_monomial(), M("Y[1,0] Y[1,2]"));
  auto dd = DrinfeldData::from_monomial(M("Y[1,0]^2"), 1);
  EXPECT_EQ(dd.roots(1), (std::vector<int>{0, 0}));
  EXPECT_EQ(dd.to_string(), "1:0,1:0");
  EXPECT_THROW(DrinfeldData::from_monomial(M("Y[1,0]^-1"), 1), Error);
  EXPECT_THROW(DrinfeldData::parse("4:0", 3), Error);
}

TEST(Packing, Roundtrip) {
  std::mt19937 g(5);
  for (int n = 0; n < 500; ++n) {
    VVector v = random_v(g, 8, 60);
    std::vector<VVector> one{v};
    auto w = PackingWindow::covering(8, one);
    auto units = pack_vvector(v, w);
    EXPECT_EQ(unpack_vvector(units, w), v);
    EXPECT_EQ(packed_triple_count(units), v.entries().size());
  }
}

TEST(Packing, WideEscape) {
  VVector v;
  v.add(1, 0, 40);      // multiplicity beyond 4 bits
  v.add(2, 1000, 1);    // offset beyond 8 bits
  v.add(20, 3, 2);      // node beyond 4 bits
  std::vector<VVector> one{v};
  auto w = PackingWindow::covering(20, one);
  auto units = pack_vvector(v, w);
  EXPECT_GT(units.size(), 3u);
  EXPECT_EQ(packed_triple_count(units), 3u);
  EXPECT_EQ(unpack_vvector(units, w), v);
  units.pop_back();
  EXPECT_THROW(unpack_vvector(units, w), ParseError);
}

TEST(Packing, FixtureFitsShortUnits) {
  auto fx = read_fixture("e8_lowest_node5.txt");
  VVector v = VVector::parse(fx.at("v"));
  std::vector<VVector> one{v};
  auto w = PackingWindow::covering(8, one);
  auto units = pack_vvector(v, w);
  EXPECT_EQ(units.size(), 106u);
  EXPECT_EQ(unpack_vvector(units, w), v);
}
