"""Run the non-unit certificate search over the built-in knots.

Run:  python3 scripts/certify_builtins.py [max_r] [max_degree]
"""

import sys
import time

from knotrep import (Certificate, SearchLimits, builtin_presentation,
                     certify_nontrivial, verify_certificate)
from knotrep.words import BUILTIN_PRESENTATIONS


def main():
    max_r = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    max_degree = int(sys.argv[2]) if len(sys.argv) > 2 else 6
    limits = SearchLimits(max_r=max_r, max_degree=max_degree)

    for name in sorted(BUILTIN_PRESENTATIONS):
        pres = builtin_presentation(name)
        start = time.monotonic()
        outcome = certify_nontrivial(pres, limits)
        elapsed = time.monotonic() - start
        if isinstance(outcome, Certificate):
            ok, _ = verify_certificate(outcome.to_json())
            print(f"{name}: non-unit certificate in {elapsed:.2f}s "
                  f"(branch order {outcome.branch_order}, degree "
                  f"{outcome.degree}, re-verified: {ok})")
            print(f"    delta_rho = {outcome.delta_rho.pretty()}")
        else:
            print(f"{name}: exhausted after {elapsed:.2f}s "
                  f"({len(outcome.frontier)} search cells, all unit)")


if __name__ == "__main__":
    main()
