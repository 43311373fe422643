#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "awc/root_datum.hpp"
#include "awc/weyl.hpp"

using namespace awc;

TEST_CASE("preset root data have the right shape") {
  struct Row {
    const char* name;
    int dim;
    int rank;
    int n_pos;
    int w0;
  };
  for (const Row& r : {Row{"GL2", 2, 1, 1, 2}, Row{"SL2", 2, 1, 1, 2}, Row{"GL3", 3, 2, 3, 6},
                       Row{"SL3", 3, 2, 3, 6}, Row{"PGL3", 3, 2, 3, 6}, Row{"SL4", 4, 3, 6, 24},
                       Row{"GL4", 4, 3, 6, 24}, Row{"Sp4", 2, 2, 4, 8}, Row{"SO5", 2, 2, 4, 8}}) {
    INFO(r.name);
    RootDatum rd = build_root_datum(r.name);
    CHECK(rd.dim == r.dim);
    CHECK((int)rd.simple_roots.size() == r.rank);
    CHECK(rd.n_pos == r.n_pos);
    W0Table w0(rd);
    CHECK(w0.size() == r.w0);
  }
}

TEST_CASE("two_rho pairs to 2 on simple coroots in the simply laced case") {
  for (const char* name : {"SL2", "SL3", "SL4", "GL3"}) {
    RootDatum rd = build_root_datum(name);
    for (const Vec& av : rd.simple_coroots) CHECK(dot(rd.two_rho, av) == 2);
  }
}

TEST_CASE("roots come in opposite pairs and reflections preserve the set") {
  RootDatum rd = build_root_datum("Sp4");
  std::set<Vec> all(rd.roots.begin(), rd.roots.end());
  CHECK((int)all.size() == 2 * rd.n_pos);
  for (int i = 0; i < rd.n_pos; ++i) {
    Vec neg = rd.roots[(size_t)i];
    for (Int& c : neg) c = -c;
    CHECK(all.count(neg) == 1);
  }
}

TEST_CASE("unknown preset raises a parse error") {
  CHECK_THROWS_AS(build_root_datum("E9"), ParseError);
}

TEST_CASE("custom Cartan matrix with both standard lattices") {
  ZMat a2{{2, -1}, {-1, 2}};
  RootDatum sc = build_root_datum_from_cartan(a2, LatticeSpec{LatticeSpec::Kind::SimplyConnected, {}}, "myA2sc");
  RootDatum ad = build_root_datum_from_cartan(a2, LatticeSpec{LatticeSpec::Kind::Adjoint, {}}, "myA2ad");
  CHECK(sc.n_pos == 3);
  CHECK(ad.n_pos == 3);
  CHECK(sc.name == "myA2sc");
  // the adjoint lattice strictly contains the coroot lattice: the fundamental
  // coweight is in X for ad but not for sc
  W0Table w0sc(sc), w0ad(ad);
  CHECK(w0sc.size() == 6);
  CHECK(w0ad.size() == 6);
}

TEST_CASE("normalization in a quotient lattice") {
  RootDatum pgl = build_root_datum("PGL3");
  CHECK(pgl.has_quotient);
  // (1,1,1) is central, hence zero in the adjoint lattice
  Vec z = pgl.normalize(Vec{1, 1, 1});
  CHECK(z == pgl.normalize(Vec{0, 0, 0}));
  RootDatum sl = build_root_datum("SL3");
  CHECK_FALSE(sl.has_quotient);
}

TEST_CASE("dominant representative is dominant and in the orbit") {
  RootDatum rd = build_root_datum("GL3");
  W0Table w0(rd);
  for (Vec v : {Vec{0, 2, -1}, Vec{-3, 1, 1}, Vec{5, 5, 5}, Vec{0, 0, 1}}) {
    auto [d, word] = dominant_representative(rd, to_q(v));
    CHECK(is_dominant(rd, d));
    bool hit = false;
    for (int u = 0; u < w0.size(); ++u)
      if (w0.act_q(u, to_q(v)) == d) hit = true;
    CHECK(hit);
    std::reverse(word.begin(), word.end());
    CHECK(w0.act_q(w0.from_word(word), to_q(v)) == d);
  }
}

TEST_CASE("dominance order on dominant coweights") {
  RootDatum rd = build_root_datum("GL3");
  QVec mu0 = to_q(Vec{1, 0, 0});
  QVec half{Rat(BigInt(1), BigInt(2)), Rat(BigInt(1), BigInt(2)), Rat(BigInt(0))};
  QVec third{Rat(BigInt(1), BigInt(3)), Rat(BigInt(1), BigInt(3)), Rat(BigInt(1), BigInt(3))};
  CHECK(dominance_leq(rd, third, half));
  CHECK(dominance_leq(rd, half, mu0));
  CHECK(dominance_leq(rd, third, mu0));
  CHECK_FALSE(dominance_leq(rd, mu0, half));
  CHECK(dominance_leq(rd, mu0, mu0));
  // different central sums never compare in GL3
  CHECK_FALSE(dominance_leq(rd, to_q(Vec{0, 0, 0}), mu0));
  // non-dominant input is a domain error
  CHECK_THROWS_AS(dominance_leq(rd, to_q(Vec{0, 1, 0}), mu0), DomainError);
}

TEST_CASE("dominance order respects the quotient lattice") {
  RootDatum rd = build_root_datum("PGL3");
  // in the adjoint lattice (1,0,0) has the same class as (0,0,-1) + center
  QVec a = to_q(rd.normalize(Vec{1, 0, 0}));
  CHECK(dominance_leq(rd, a, a));
}

int main(int argc, char** argv) { return Catch::Session().run(argc, argv); }
