"""Build every induced module for one configuration and compare three verdicts.

The formula, the straightened scalar and the MeatAxe should agree on every
weight, and straightened / formula should be a single constant.

    python3 demos/oracle_sweep.py A2 3 1
"""

import sys

from babyverma.modrep import ParabolicContext, sweep_csv, verify_theorem37
from babyverma.rootsys import parse_type


def main(name="A2", p=3, I=()):
    kind, rank = parse_type(name)
    ctx = ParabolicContext.build(kind, rank, p, I=I)
    rep = verify_theorem37(ctx)
    print(sweep_csv(ctx, rep.rows), end="")
    print(f"# {ctx.describe()}: {len(rep.rows)} weights, {len(rep.mismatches)} mismatches, "
          f"ratio set {sorted(rep.ratios)}")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    args = sys.argv[1:]
    I = tuple(int(t) for t in args[2].split(",")) if len(args) > 2 and args[2] else ()
    sys.exit(main(args[0] if args else "A2", int(args[1]) if len(args) > 1 else 3, I))
