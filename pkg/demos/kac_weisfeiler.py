"""A non-restricted semisimple character over GF(9) where every module is simple.

    python3 demos/kac_weisfeiler.py
"""

from babyverma.envalg import Character
from babyverma.gf import field
from babyverma.modrep import ParabolicContext, verify_theorem37
from babyverma.rcrit import kw_sufficient


def main():
    fld = field(3, 2)
    c = fld.parse("1:1")
    for name, I, chi_h in [("A1", (), (c,)), ("A2", (), (c, c)), ("A2", (1,), (0, c))]:
        ctx = ParabolicContext.build(name[0], int(name[1:]), 3, 2, I, Character(fld, chi_h))
        assert kw_sufficient(ctx.system, ctx.pd, ctx.chi)
        rep = verify_theorem37(ctx)
        verdicts = {(r.formula_simple, r.oracle_simple) for r in rep.rows}
        print(f"{ctx.describe()}: {len(rep.rows)} compatible weights, "
              f"(formula, oracle) verdicts {sorted(verdicts)}, dim {rep.rows[0].dim}")


if __name__ == "__main__":
    main()
