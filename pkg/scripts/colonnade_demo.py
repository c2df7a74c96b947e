"""Print colonnade rows floor(p*x), p = 1..count, for a few floor-exact reals.

Usage: python scripts/colonnade_demo.py [--count N]
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from eudoxus import core


@dataclass(frozen=True)
class DemoConfig:
    count: int = 12
    radicands: tuple = field(default=(2, 3, 5))
    rationals: tuple = field(default=(Fraction(3, 2), Fraction(22, 7)))


def rows(cfg: DemoConfig):
    reals = [core.sqrt_int(n) for n in cfg.radicands]
    reals += [core.from_rational(r) for r in cfg.rationals]
    reals.append(core.sup_finite(reals))
    return [(x.label, core.nu(x, cfg.count)) for x in reals]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=DemoConfig.count)
    cfg = DemoConfig(count=ap.parse_args().count)
    for label, values in rows(cfg):
        print(f"{label:>24}: {' '.join(map(str, values))}")


if __name__ == "__main__":
    main()
