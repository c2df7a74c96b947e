"""Executable forms of the supporting growth and defect lemmas.

These are used both as library helpers (odd extension, growth scale) and as
audits: every certificate the library hands out is checked by sampling here.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (DEFAULT_BUDGET, AlmostHom, Budget, BudgetExceeded, Sign,
                   _linear_bound, defect, sign)


def odd_extend(h: Callable[[int], int], cert_n: int, label: str = "odd") -> AlmostHom:
    """Extend h: N -> Z to Z by f(p) = -h(-p) for p < 0.

    If |d_h| <= cert_n on N x N then the same bound holds on Z x Z: for
    mixed signs, say p < 0 <= q, put (a, b) = (q, -(p+q)) when p + q <= 0
    and (a, b) = (p+q, -p) otherwise; then |d_f(p, q)| = |d_h(a, b)|.
    """
    if h(0) != 0:
        raise ValueError("odd_extend needs h(0) == 0")

    def fn(p: int) -> int:
        return h(p) if p >= 0 else -h(-p)

    return AlmostHom(fn, cert_n, label)


def lower_bound_scale(x: AlmostHom, d: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Smallest M > 0 with x(M) > 2*(cert + d).

    By induction on m this gives x(m*M) > (m+1)*(cert + d) > (m+1)*d.
    """
    if d <= 0:
        raise ValueError("d must be positive")
    if sign(x, budget).verdict is not Sign.POSITIVE:
        raise ValueError(f"{x.label} is not certified positive within budget")
    threshold = 2 * (x.cert + d)
    m = 1
    while x.eval(m) <= threshold:
        m += 1
        if m > budget.max_q:
            raise BudgetExceeded(f"no growth scale for {x.label} below 2^{budget.max_arg_exponent}")
    return m


def upper_bound_coeffs(x: AlmostHom) -> tuple[int, int]:
    """(A, B) = (cert + |x(1)|, 3*cert), so that |x(p)| <= A|p| + B."""
    return _linear_bound(x)


def check_mult_lemma(x: AlmostHom, p: int, q: int) -> bool:
    """|p*x(q) - q*x(p)| <= (|p| + |q| + 2) * cert."""
    return abs(p * x.eval(q) - q * x.eval(p)) <= (abs(p) + abs(q) + 2) * x.cert


@dataclass(frozen=True)
class AuditReport:
    label: str
    cert_claimed: int
    max_defect_observed: int
    samples: int

    @property
    def violated(self) -> bool:
        return self.max_defect_observed > self.cert_claimed

    def to_line(self) -> str:
        verdict = "VIOLATED" if self.violated else "ok"
        label = self.label.replace(" ", "")
        return f"{label} {self.cert_claimed} {self.max_defect_observed} {self.samples} {verdict}"

    @classmethod
    def from_line(cls, line: str) -> "AuditReport":
        label, cert, observed, samples, verdict = line.split()
        report = cls(label, int(cert), int(observed), int(samples))
        if (verdict == "VIOLATED") != report.violated:
            raise ValueError(f"inconsistent verdict in {line!r}")
        return report


GRID_RADIUS = 8


def _max_defect(x: AlmostHom, pairs) -> int:
    return max((abs(defect(x, p, q)) for p, q in pairs), default=0)


def certificate_audit(x: AlmostHom, range_: int = 1000, samples: int = 10_000,
                      seed: int = 0, workers: int = 1) -> AuditReport:
    """Sample |d_x| on seeded random pairs in [-range_, range_]^2 plus a small grid.

    With ``workers > 1`` the random pairs are split into shards and the
    per-shard maxima merged; the result does not depend on ``workers``.
    """
    if range_ < 1:
        raise ValueError("range must be >= 1")
    rng = random.Random(seed)
    pairs = [(rng.randint(-range_, range_), rng.randint(-range_, range_))
             for _ in range(samples)]
    grid = [(p, q) for p in range(-GRID_RADIUS, GRID_RADIUS + 1)
            for q in range(-GRID_RADIUS, GRID_RADIUS + 1)]
    observed = _max_defect(x, grid)
    if workers > 1 and samples:
        shards = [pairs[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(workers) as pool:
            observed = max([observed, *pool.map(lambda s: _max_defect(x, s), shards)])
    else:
        observed = max(observed, _max_defect(x, pairs))
    return AuditReport(x.label, x.cert, observed, samples + len(grid))


def scan_defect(x: AlmostHom, radius: int) -> int:
    """max |d_x(p, q)| over the full square [-radius, radius]^2."""
    args = np.arange(-2 * radius, 2 * radius + 1)
    raw = [x.eval(int(a)) for a in args]
    small = max(map(abs, raw)) < 2 ** 60
    values = np.array(raw, dtype=np.int64 if small else object)
    idx = np.arange(-radius, radius + 1) + 2 * radius
    f = values[idx]
    fsum = values[idx[:, None] + idx[None, :] - 2 * radius]
    return int(np.max(np.abs(fsum - f[:, None] - f[None, :])))


def street_family(m: int) -> AlmostHom:
    """g_m(p) = 0 for |p| <= m and m*p otherwise; represents the integer m.

    Whether each of p, q, p+q is inside [-m, m] decides d(p, q), and every
    such pattern already occurs with |p|, |q| <= 2m+1, so a scan of that
    square yields the exact defect bound (2m^2).
    """
    if m < 1:
        raise ValueError("street_family needs m >= 1")

    def fn(p: int) -> int:
        return 0 if abs(p) <= m else m * p

    probe = AlmostHom(fn, 0, f"street({m})")
    cert = scan_defect(probe, 2 * m + 1)
    return AlmostHom(fn, cert, f"street({m})")
