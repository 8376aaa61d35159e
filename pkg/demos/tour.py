"""A short walk through the package, one layer at a time.

Run with ``python3 demos/tour.py``. Everything printed is computed exactly;
nothing here is cached or precomputed.
"""

from swduality.arith import SpectralParam
from swduality.denominators import AlgebraTag, denom, format_factored, pole_order
from swduality.grothendieck import (
    canonicalize_class,
    decompose_two_segment_product,
    dim_class,
    hom_fusion_check,
)
from swduality.klr import composition_report, graded_dim, segment_module, yang_baxter_check
from swduality.klr.modules import convolution
from swduality.quiver import build_s0_window, check_pi2_isomorphism
from swduality.rseries import PsiDefinition, psi, run_suite
from swduality.segments import Segment


def heading(text):
    print()
    print(text)
    print("-" * len(text))


def denominators():
    heading("Denominators")
    for fam, N, k, l in [("A1", 4, 1, 1), ("A1", 6, 2, 3), ("A2", 5, 2, 2)]:
        tag = AlgebraTag(fam, N)
        print(f"d_{k},{l} for {fam} N={N}: {format_factored(tag, k, l)}  (degree {denom(tag, k, l).degree()})")
    tag = AlgebraTag("A2", 5)
    print("pole order of d_2,2 at z = q^2:", pole_order(tag, 2, 2, SpectralParam(1, 2)))


def quiver():
    heading("Quiver windows")
    w = build_s0_window(AlgebraTag("A1", 3), 0, 3)
    print(f"A1 N=3, p in [0,3]: {len(w.vertices)} vertices, {w.n_arrows()} arrows")
    for N in (3, 4, 5):
        rep = check_pi2_isomorphism(N, -6, 6)
        print(f"folding map onto the A2 window, N={N}: {'isomorphism' if rep.ok else 'FAILED'}"
              f" ({rep.n_vertices} vertices, {rep.n_arrows} arrows)")


def rseries():
    heading("Rational series")
    N = 3
    print("psi_0 (via g):     ", psi(0, N))
    print("psi_0 (as product):", psi(0, N, PsiDefinition.DISPLAYED_PRODUCT))
    for definition in (PsiDefinition.VIA_G, PsiDefinition.DISPLAYED_PRODUCT):
        res = run_suite(N, definition, a_range=range(-1, 2))
        print(f"identity suite, {definition.value}: {res['n_checks'] - res['n_failed']}/{res['n_checks']} checks pass")


def klr():
    heading("Quiver Hecke modules and R-matrices")
    L1, L2 = segment_module(1, 1), segment_module(2, 2)
    print("graded dim of L(1) o L(2):", graded_dim(convolution(L1, L2)))
    for s1, s2 in [(Segment(2, 3), Segment(1, 2)), (Segment(1, 1), Segment(0, 0))]:
        rep = composition_report(s1, s2)
        print(f"L{s1} o L{s2}: case {rep.case}, s={rep.s}, degree={rep.degree},"
              f" kernel {rep.kernel}, cokernel {rep.cokernel}: {'pass' if rep.ok else 'FAIL'}")
    yb = yang_baxter_check(Segment(1, 1), Segment(2, 2), Segment(3, 3))
    print(f"Yang-Baxter on L(1),L(2),L(3): {'holds' if yb.ok else 'FAILS'}")


def ktheory():
    heading("Grothendieck ring")
    N = 4
    print("canonical class:", canonicalize_class([Segment(0, 0), Segment(1, 2), Segment(5, 8)], N))
    for c, m in decompose_two_segment_product(Segment(1, 1), Segment(0, 0), N):
        print(f"  [L(1)][L(0)] contains {c} x{m}, dim {dim_class(1, c)}")
    x, y, z = SpectralParam(1, -1), SpectralParam(1, 1), SpectralParam(1, 0)
    print("fusion condition for (1,x),(1,y),(2,z):", hom_fusion_check(1, x, 1, y, 2, z, N).value)


if __name__ == "__main__":
    denominators()
    quiver()
    rseries()
    klr()
    ktheory()
