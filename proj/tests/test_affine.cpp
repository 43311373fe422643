#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "awc/affine.hpp"
#include "awc/root_datum.hpp"

using namespace awc;

namespace {

// Graph distance in the Cayley graph of the affine generators, computed
// without consulting the stored lengths. Independent oracle for length_of.
std::vector<std::pair<AffineElt, Int>> bfs_ball(const AffineWeyl& aw, Int L) {
  std::vector<std::pair<AffineElt, Int>> out;
  std::map<EltKey, Int> dist;
  std::deque<AffineElt> q;
  AffineElt e = aw.identity();
  dist[elt_key(e)] = 0;
  out.push_back({e, 0});
  q.push_back(e);
  while (!q.empty()) {
    AffineElt cur = q.front();
    q.pop_front();
    Int d = dist[elt_key(cur)];
    if (d == L) continue;
    for (int g = 0; g < aw.gen_count(); ++g) {
      AffineElt nxt = aw.compose(cur, aw.gen_elt(g));
      auto [it, ins] = dist.emplace(elt_key(nxt), d + 1);
      if (ins) {
        out.push_back({nxt, d + 1});
        q.push_back(nxt);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("length formula matches Cayley graph distance") {
  struct Row {
    const char* group;
    Int bound;
  };
  for (Row row : {Row{"SL2", 8}, Row{"SL3", 6}, Row{"Sp4", 6}}) {
    AffineWeyl aw(build_root_datum(row.group));
    auto ball = bfs_ball(aw, row.bound);
    for (const auto& [w, d] : ball) CHECK(w.len == d);
    std::vector<AffineElt> enumd = aw.enumerate_by_length(row.bound);
    CHECK(enumd.size() == ball.size());
  }
}

TEST_CASE("reduced words round-trip and have the right length") {
  AffineWeyl aw(build_root_datum("GL3"));
  std::vector<Vec> fiber{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  for (const AffineElt& w : aw.enumerate_by_length(4, &fiber)) {
    auto [word, omega] = aw.reduced_word(w);
    CHECK(static_cast<Int>(word.size()) == w.len);
    CHECK(omega.len == 0);
    CHECK(aw.from_word(word, omega) == w);
  }
}

TEST_CASE("descent predicates agree with length drops") {
  AffineWeyl aw(build_root_datum("SL3"));
  for (const AffineElt& w : aw.enumerate_by_length(5)) {
    for (int g = 0; g < aw.gen_count(); ++g) {
      AffineElt sw = aw.compose(aw.gen_elt(g), w);
      AffineElt ws = aw.compose(w, aw.gen_elt(g));
      CHECK(aw.left_descent(g, w) == (sw.len < w.len));
      CHECK(aw.right_descent(w, g) == (ws.len < w.len));
    }
  }
}

TEST_CASE("unknown generator index is a parse error") {
  AffineWeyl aw(build_root_datum("SL2"));
  CHECK_THROWS_AS(aw.from_word({9}), ParseError);
}

TEST_CASE("parahoric subgroups: finiteness, sizes, longest elements") {
  AffineWeyl sl3(build_root_datum("SL3"));
  CHECK(sl3.finite_parahoric({}));
  CHECK(sl3.finite_parahoric({0}));
  CHECK(sl3.finite_parahoric({1, 2}));
  CHECK(sl3.finite_parahoric({0, 1}));
  CHECK_FALSE(sl3.finite_parahoric({0, 1, 2}));
  CHECK(sl3.parahoric_subgroup({}).size() == 1);
  CHECK(sl3.parahoric_subgroup({1}).size() == 2);
  CHECK(sl3.parahoric_subgroup({1, 2}).size() == 6);
  CHECK(sl3.parahoric_subgroup({0, 1}).size() == 6);
  CHECK(sl3.longest_in_parahoric({1, 2}).len == 3);
  CHECK_THROWS_AS(sl3.parahoric_subgroup({0, 1, 2}), DomainError);

  AffineWeyl sp4(build_root_datum("Sp4"));
  CHECK(sp4.parahoric_subgroup({1, 2}).size() == 8);
  CHECK(sp4.longest_in_parahoric({1, 2}).len == 4);

  AffineWeyl sl2(build_root_datum("SL2"));
  CHECK(sl2.parahoric_subgroup({0}).size() == 2);
  CHECK_FALSE(sl2.finite_parahoric({0, 1}));
}

TEST_CASE("length-zero normalizer representatives per group") {
  CHECK(AffineWeyl(build_root_datum("SL2")).omega_conjugators().size() == 1);
  CHECK(AffineWeyl(build_root_datum("SL3")).omega_conjugators().size() == 1);
  CHECK(AffineWeyl(build_root_datum("Sp4")).omega_conjugators().size() == 1);
  CHECK(AffineWeyl(build_root_datum("GL2")).omega_conjugators().size() == 2);
  CHECK(AffineWeyl(build_root_datum("GL3")).omega_conjugators().size() == 3);
  CHECK(AffineWeyl(build_root_datum("PGL3")).omega_conjugators().size() == 3);
}

TEST_CASE("length-zero representatives land in distinct classes") {
  for (const char* g : {"GL3", "PGL3"}) {
    AffineWeyl aw(build_root_datum(g));
    std::set<Vec> classes;
    for (const AffineElt& tau : aw.omega_conjugators()) {
      CHECK(tau.len == 0);
      classes.insert(aw.omega_class(tau.lam));
    }
    CHECK(classes.size() == aw.omega_conjugators().size());
  }
}

TEST_CASE("coset decomposition splits lengths and minimizes") {
  AffineWeyl aw(build_root_datum("SL3"));
  std::vector<int> K{0, 1};
  std::vector<AffineElt> sub = aw.parahoric_subgroup(K);
  std::set<AffineElt> sub_set(sub.begin(), sub.end());
  for (const AffineElt& w : aw.enumerate_by_length(5)) {
    auto [u, x] = aw.coset_decompose(w, K);
    CHECK(aw.compose(u, x) == w);
    CHECK(sub_set.count(u) == 1);
    CHECK(aw.is_min_coset_rep(x, K));
    CHECK(u.len + x.len == w.len);
    CHECK(aw.is_min_coset_rep(w, K) == (u == aw.identity()));
  }
}

TEST_CASE("translation length is the pairing with 2rho after dominating") {
  for (const char* g : {"GL3", "Sp4"}) {
    RootDatum rd = build_root_datum(g);
    AffineWeyl aw(rd);
    std::vector<Vec> sample;
    if (rd.dim == 3)
      sample = {{0, 0, 0}, {1, 0, 0}, {2, -1, 0}, {-1, -1, 3}, {4, 4, 4}};
    else
      sample = {{0, 0}, {1, 0}, {-2, 1}, {3, -3}};
    for (const Vec& lam : sample) {
      QVec dom = dominant_representative(rd, to_q(lam)).first;
      CHECK(aw.translation(lam).len == aw.pair_two_rho(dom));
    }
  }
}

TEST_CASE("Bruhat order basics") {
  AffineWeyl aw(build_root_datum("SL2"));
  std::vector<AffineElt> ball = aw.enumerate_by_length(5);
  for (const AffineElt& x : ball) {
    CHECK(aw.bruhat_leq(aw.identity(), x));
    CHECK(aw.bruhat_leq(x, x));
    for (const AffineElt& y : ball) {
      if (aw.bruhat_leq(x, y) && aw.bruhat_leq(y, x)) CHECK(x == y);
      if (aw.bruhat_leq(x, y)) CHECK(x.len <= y.len);
    }
  }
  AffineWeyl gl2(build_root_datum("GL2"));
  AffineElt t10 = gl2.translation({1, 0});
  CHECK_FALSE(gl2.same_omega_coset(t10, gl2.identity()));
  CHECK_FALSE(gl2.bruhat_leq(gl2.identity(), t10));
}

int main(int argc, char** argv) { return Catch::Session().run(argc, argv); }
