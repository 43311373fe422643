// Walks a few elements of extended affine Weyl groups down to minimal length
// in their twisted conjugacy class and prints the bookkeeping: Newton point,
// Kottwitz class, the conjugation trace, and the standard quadruple attached
// to the class.

#include <iostream>

#include "awc/conjugacy.hpp"
#include "awc/parse.hpp"

using namespace awc;

static void show(ConjCtx& ctx, const std::string& expr) {
  const AffineWeyl& aw = ctx.aw();
  AffineElt w = parse_element(aw, expr);
  ConjInvariant inv = ctx.newton_kottwitz(w);
  std::cout << "w = " << element_word_str(aw, w) << "  (length " << w.len << ")\n";
  std::cout << "  newton " << qvec_str(inv.newton) << ", kottwitz " << vec_str(inv.kappa)
            << (ctx.is_straight(w) ? ", straight" : "") << "\n";

  ReductionTrace trace;
  AffineElt m = ctx.reduce_to_minimal(w, &trace);
  std::cout << "  minimal conjugate " << element_word_str(aw, m) << " (length " << m.len
            << ") after " << trace.steps.size() << " steps\n";
  for (const auto& st : trace.steps)
    if (st.drop)
      std::cout << "    length drops to " << st.to.len << " conjugating by "
                << (st.gen_cli >= 0 ? "s" + std::to_string(st.gen_cli) : "a length-zero element")
                << "\n";

  StandardQuadruple q = ctx.standard_quadruple(w);
  std::cout << "  quadruple: |J| = " << q.J.size() << ", x = " << element_str(aw, q.x)
            << ", |K| = " << q.K.size() << ", |C| = " << q.C.size() << "\n\n";
}

int main() {
  {
    RootDatum rd = build_root_datum("GL3");
    AffineWeyl aw(rd);
    ConjCtx ctx(aw, twist_identity(aw));
    std::cout << "== GL3, ordinary conjugation ==\n";
    show(ctx, "t[2,0,0]*s1*s2");
    show(ctx, "t[1,1,-2]*s1");
    show(ctx, "s0*s1*s0");
  }
  {
    RootDatum rd = build_root_datum("SL3");
    AffineWeyl aw(rd);
    ConjCtx ctx(aw, make_twist(aw, flip_matrix(rd), aw.identity()));
    std::cout << "== SL3, twisted by the diagram flip ==\n";
    show(ctx, "s1");
    show(ctx, "t[1,0,-1]*s1*s2");
  }
  return 0;
}
