"""Audit certificates of composite reals and report slack (cert vs observed).

Writes one json line per real: label, cert, max observed defect, seconds.
Usage: python scripts/audit_sweep.py [--samples S] [--range R] [--seed K]
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from eudoxus import core
from eudoxus.expr import evaluate_text
from eudoxus.lemmas import certificate_audit, street_family

EXPRESSIONS = (
    "sqrt(2)*sqrt(3)",
    "1/sqrt(5)",
    "(sqrt(2) + 1) / (sqrt(3) - 1)",
    "sqrt(3/7 + 1) * 9/4",
    "22/7 - sqrt(10)",
)


@dataclass(frozen=True)
class SweepConfig:
    samples: int = 20_000
    range: int = 1000
    seed: int = 0


def subjects():
    for text in EXPRESSIONS:
        yield text, evaluate_text(text)
    yield "canonicalize(sqrt(7))", core.canonicalize(core.sqrt_int(7))
    yield "sup(7/5, sqrt(2))", core.sup_finite([core.from_rational(Fraction(7, 5)), core.sqrt_int(2)])
    for m in (1, 4, 16):
        yield f"street({m})", street_family(m)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    for label, x in subjects():
        start = time.perf_counter()
        r = certificate_audit(x, cfg.range, cfg.samples, cfg.seed)
        print(json.dumps({"real": label, "cert": r.cert_claimed, "max_observed": r.max_defect_observed,
                          "violated": r.violated, "seconds": round(time.perf_counter() - start, 4)}))


if __name__ == "__main__":
    main()
