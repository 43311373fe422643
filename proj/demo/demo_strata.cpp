// Dimension bookkeeping for affine Deligne-Lusztig strata: class polynomial
// decompositions, the reduction tree of one SL4 element printed as DOT, the
// neutral acceptable classes of a GL3 coweight with their dimensions, and an
// admissible-set identity check at every level of GL2.

#include <iostream>

#include "awc/io.hpp"

using namespace awc;

int main() {
  {
    RootDatum rd = build_root_datum("SL4");
    AffineWeyl aw(rd);
    ConjCtx ctx(aw, twist_identity(aw));
    ClassPolyEngine eng(ctx);
    AffineElt w = aw.from_word({1, 2, 0, 1, 2, 3, 2, 1, 0, 1});
    StraightClass b = resolve_straight(ctx, aw.identity());
    DimReport rep = iwahori_stratum_dim(eng, w, b);
    std::cout << "== SL4 stratum of a length-10 element, basic class ==\n";
    std::cout << "poly = " << rep.polynomial.str() << "\n";
    std::cout << "dim = " << rep.dimension << ", top components = " << rep.irr_max_count << "\n";
    VirtualDim v = eta_virtual(ctx, w, b);
    std::cout << "virtual dim = " << rat_str(v.d_w) << (v.shrunken ? " (shrunken alcove)" : "")
              << "\n\n";
    std::cout << dot_reduction_tree(aw, eng.reduction_tree(w, b.inv)) << "\n";
  }
  {
    RootDatum rd = build_root_datum("GL3");
    AffineWeyl aw(rd);
    ConjCtx ctx(aw, twist_identity(aw));
    Vec mu{1, 0, 0};
    std::cout << "== GL3 classes below mu = (1,0,0) ==\n";
    for (const StraightClass& b : bg_mu(ctx, mu)) {
      SpecialParahoricReport sp = special_parahoric_dim(ctx, mu, b);
      std::cout << b.inv.str() << "  coset dim " << sp.dim_coset << ", adlv dim " << sp.dim_adlv
                << "\n";
    }
    std::cout << "\n";
  }
  {
    RootDatum rd = build_root_datum("GL2");
    AffineWeyl aw(rd);
    ConjCtx ctx(aw, twist_identity(aw));
    Vec mu{1, 0};
    std::cout << "== GL2 admissible sets for mu = (1,0) ==\n";
    std::cout << "|Adm| = " << admissible_set(ctx, mu).size() << "\n";
    for (const std::vector<int>& K : std::vector<std::vector<int>>{{}, {0}, {1}}) {
      AdmissibleSets sets = admissible_sets(ctx, mu, K);
      std::cout << "K of size " << K.size() << ": " << sets.level_reps.size()
                << " double cosets, " << sets.ekor.size() << " EKOR pieces, identity "
                << (ekor_identity_holds(ctx, mu, K) ? "holds" : "fails") << "\n";
    }
  }
  return 0;
}
