"""Table of the real Enriques surface formulas over small lattice invariants.

Rows run over alpha, delta and r - a; the H(sigma) dimensions are fixed by
the config.  Inadmissible combinations are listed with the reason.
"""

from __future__ import annotations

import argparse
import itertools
from dataclasses import asdict, dataclass

from equivar.errors import HypothesisError
from equivar.surfaces import EnriquesLatticeInvariants, enriques_brauer_bounds, enriques_formulas


@dataclass
class TableConfig:
    max_diff: int = 6
    a: int = 0
    dim_H_minus: int = 1
    dim_Hperp_cap: int = 1
    liftings_real: bool = True


COLUMNS = ("alpha", "delta", "r-a", "b'", "beta", "b", "s", "s_or", "s_nor", "2Br", "bounds")


def rows(cfg: TableConfig):
    for alpha, delta, diff in itertools.product((0, 1), (0, 1), range(0, cfg.max_diff + 1, 2)):
        inv = EnriquesLatticeInvariants(cfg.a + diff, cfg.a, alpha, delta, delta, cfg.dim_H_minus, cfg.dim_Hperp_cap)
        try:
            res = enriques_formulas(inv, liftings_real=cfg.liftings_real)
        except HypothesisError as exc:
            yield (alpha, delta, diff, f"inadmissible: {exc}")
            continue
        bounds = "-"
        if res.b is not None and res.s is not None:
            bounds = "ok" if enriques_brauer_bounds(res.b, 1, res.s, True).ok else "violated"
        yield (alpha, delta, diff, res.b_prime, res.beta, res.b, res.s, res.s_or, res.s_nor, res.dim_2Br, bounds)


def render(cfg: TableConfig) -> str:
    table = [COLUMNS] + [tuple("-" if v is None else str(v) for v in row) for row in rows(cfg)]
    widths = [max(len(r[i]) for r in table if len(r) > i) for i in range(len(COLUMNS))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in table)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-diff", type=int, default=TableConfig.max_diff)
    parser.add_argument("--a", type=int, default=TableConfig.a)
    parser.add_argument("--dim-H-minus", type=int, default=TableConfig.dim_H_minus)
    parser.add_argument("--dim-Hperp-cap", type=int, default=TableConfig.dim_Hperp_cap)
    parser.add_argument("--liftings-real", action=argparse.BooleanOptionalAction, default=True)
    cfg = TableConfig(**{k: v for k, v in vars(parser.parse_args()).items()})
    print(render(cfg))
    print()
    print("config:", asdict(cfg))
