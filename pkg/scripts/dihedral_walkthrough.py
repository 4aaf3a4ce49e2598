"""End-to-end walkthrough of the trefoil under its dihedral representation.

Prints the twisted boundary matrices, the determinant data, the twisted
Alexander polynomial, the cyclic resultant, and the homology of the
associated covers, all computed exactly.

Run:  python3 scripts/dihedral_walkthrough.py
"""

from knotrep import (PermRep, Permutation, abelianization_map, branched_cover_presentation,
                     builtin_presentation, cover_homology, cyclic_resultant,
                     induced_cover_action, presentation_homology,
                     twisted_alexander_poly, twisted_jacobian)
from knotrep.covers import induced_quotient_homology
from knotrep.twisted import twisted_module_quotient


def show_matrix(label, m):
    print(f"{label} ({m.rows} x {m.cols}):")
    width = max((len(x.pretty()) for row in m.entries for x in row), default=1)
    for row in m.entries:
        print("   [" + "  ".join(x.pretty().rjust(width) for x in row) + "]")


def main():
    trefoil = builtin_presentation("trefoil")
    eps = abelianization_map(trefoil)
    print("presentation:")
    print("   " + trefoil.to_text().replace("\n", "\n   ").rstrip())
    print(f"abelianization: eps(x) = {eps.of_generator(0)}, "
          f"eps(a) = {eps.of_generator(1)}")
    print()

    rep = PermRep(trefoil, 3, (Permutation((1, 0, 2)), Permutation((1, 2, 0))))
    print("representation: x ->", rep.images[0].cycle_string(),
          " a ->", rep.images[1].cycle_string())
    print()

    d2, d1 = twisted_jacobian(rep)
    show_matrix("d2", d2)
    show_matrix("d1", d1)
    print()

    result = twisted_alexander_poly(rep)
    print("wada numerator:  ", result.wada_numerator.pretty())
    print("wada denominator:", result.wada_denominator.pretty())
    print("delta_0:         ", result.delta_0.pretty())
    print("delta_rho:       ", result.delta_rho.pretty())
    print("unit polynomial? ", result.is_unit)
    print()

    delta = result.delta_rho.poly
    print("Res(delta_rho, t^2 - 1) =", cyclic_resultant(delta, 2))
    action = induced_cover_action(rep, 2)
    print("induced level-2 cover: degree", action.degree,
          "H1 =", cover_homology(trefoil, action))
    print("level-2 module coinvariants:",
          induced_quotient_homology(rep, 2),
          "(rewriting) =", twisted_module_quotient(rep, 2), "(module)")
    branched = branched_cover_presentation(trefoil, eps, 2)
    print("branched double cover: H1 =", presentation_homology(branched))


if __name__ == "__main__":
    main()
