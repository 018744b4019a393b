"""Print the factorised criterion for every proper Levi part of a type.

    python3 demos/factor_tour.py B2 5
"""

import itertools
import sys

from babyverma.gf import field
from babyverma.rcrit import r_factorization, r_product, steinberg_weight
from babyverma.rootsys import build_root_system, check_good_prime, parabolic_data
from babyverma.verify import proper_subsets


def main(name="B2", p=5):
    kind, rank = name[0], int(name[1:])
    check_good_prime(kind, rank, p)
    sys_ = build_root_system(kind, rank)
    fld = field(p)
    for I in proper_subsets(rank):
        pd = parabolic_data(sys_, I)
        fac = r_factorization(sys_, pd)
        print(f"{sys_.name}  I={pd.label()}  ({len(fac.factors)} factors)")
        for line in fac.describe(p):
            print("   ", line)
        simple = sum(r_product(sys_, pd, fld, x).simple
                     for x in itertools.product(range(p), repeat=rank))
        print(f"    simple for {simple} of {p ** rank} restricted weights")
    x = steinberg_weight(sys_, p)
    print(f"Steinberg weight {x}: simple = {r_product(sys_, parabolic_data(sys_, ()), fld, x).simple}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "B2", int(args[1]) if len(args) > 1 else 5)
