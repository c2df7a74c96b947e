"""Record max |(x*y - y*x)(p)| over |p| <= R for x = sqrt(2), y = 3/7.

The value is derived from a direct scan of the two compositions and written
to tests/golden/commutator.json; the acceptance suite compares against it.
Usage: python scripts/derive_commutator_golden.py [--range R] [--out PATH]
"""

import argparse
import json
import pathlib
from dataclasses import asdict, dataclass
from fractions import Fraction

from eudoxus import core

DEFAULT_OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden" / "commutator.json"


@dataclass(frozen=True)
class CommutatorConfig:
    x: str = "sqrt(2)"
    y: str = "3/7"
    range: int = 10_000


def max_commutator(radius: int) -> int:
    x, y = core.sqrt_int(2), core.from_rational(Fraction(3, 7))
    # Direct compositions, independent of core.mul's bookkeeping.
    return max(abs(x.eval(y.eval(p)) - y.eval(x.eval(p))) for p in range(-radius, radius + 1))


def derive(cfg: CommutatorConfig) -> dict:
    record = asdict(cfg)
    record["max_abs_commutator"] = max_commutator(cfg.range)
    record["by_range"] = {str(10 ** k): max_commutator(10 ** k) for k in range(2, 6)}
    return record


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--range", type=int, default=CommutatorConfig.range)
    ap.add_argument("--out", type=pathlib.Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    record = derive(CommutatorConfig(range=args.range))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(record, indent=2) + "\n")
    print(json.dumps(record))


if __name__ == "__main__":
    main()
