"""Almost homomorphisms Z^n -> Z^m and the real matrices they represent.

Over Z^n a set is bounded iff it is finite, which is the same as being
bounded in the sup norm, so a certificate here bounds
max_i |d_f(u, v)_i| over all u, v.  Restricting f to the j-th input axis
and reading the i-th output gives a 1-D almost homomorphism with the same
certificate; its real value is entry (i, j) of the represented matrix.

Finite groups contribute nothing (every function on a finite group has
finite range), so only the free part Z^n is modelled.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import DEFAULT_BUDGET, AlmostHom, Budget, BudgetExceeded, refine
from .numeric import Interval, as_rat, format_rat, parse_rat

Vector = tuple


class MultiAH:
    """f: Z^n -> Z^m with |d_f(u, v)|_sup <= cert."""

    __slots__ = ("dim_in", "dim_out", "_fn", "_cache", "cert", "label")

    def __init__(self, dim_in: int, dim_out: int, fn: Callable[[Vector], Sequence[int]],
                 cert: int, label: str = "F"):
        if dim_in < 1 or dim_out < 1:
            raise ValueError("dimensions must be positive")
        self.dim_in = dim_in
        self.dim_out = dim_out
        self._fn = fn
        self._cache: dict = {}
        self.cert = int(cert)
        self.label = label

    def eval(self, v: Sequence[int]) -> tuple:
        v = tuple(v)
        if len(v) != self.dim_in:
            raise ValueError(f"expected a vector of length {self.dim_in}")
        try:
            return self._cache[v]
        except KeyError:
            pass
        out = tuple(int(c) for c in self._fn(v))
        if len(out) != self.dim_out:
            raise ValueError(f"{self.label} returned {len(out)} coordinates, expected {self.dim_out}")
        self._cache[v] = out
        return out

    __call__ = eval

    def __repr__(self) -> str:
        return f"MultiAH({self.label}, {self.dim_in}->{self.dim_out}, cert={self.cert})"


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def multi_defect(f: MultiAH, u, v) -> int:
    """Sup norm of f(u+v) - f(u) - f(v)."""
    fu, fv, fuv = f.eval(u), f.eval(v), f.eval(_vadd(u, v))
    return max(abs(c - a - b) for a, b, c in zip(fu, fv, fuv))


def add_multi(f: MultiAH, g: MultiAH) -> MultiAH:
    if (f.dim_in, f.dim_out) != (g.dim_in, g.dim_out):
        raise ValueError("shape mismatch")
    return MultiAH(f.dim_in, f.dim_out, lambda v: _vadd(f.eval(v), g.eval(v)),
                   f.cert + g.cert, f"({f.label} + {g.label})")


def from_int_matrix(rows: Sequence[Sequence[int]]) -> MultiAH:
    """The genuine homomorphism v -> A v."""
    a = [list(map(int, r)) for r in rows]
    m, n = len(a), len(a[0])
    return MultiAH(n, m, lambda v: tuple(sum(x * y for x, y in zip(r, v)) for r in a),
                   0, "int-matrix")


def compose_after_linear(rows: Sequence[Sequence[int]], f: MultiAH) -> MultiAH:
    """v -> A f(v) for an integer matrix A; cert scales by the max row sum of |A|."""
    a = [list(map(int, r)) for r in rows]
    if len(a[0]) != f.dim_out:
        raise ValueError("shape mismatch")
    norm = max(sum(abs(x) for x in r) for r in a)
    return MultiAH(f.dim_in, len(a),
                   lambda v: tuple(sum(x * y for x, y in zip(r, f.eval(v))) for r in a),
                   norm * f.cert, f"A*{f.label}")


def compose_before_linear(f: MultiAH, rows: Sequence[Sequence[int]]) -> MultiAH:
    """v -> f(A v) for an integer matrix A; the certificate is unchanged."""
    a = [list(map(int, r)) for r in rows]
    if len(a) != f.dim_in:
        raise ValueError("shape mismatch")
    return MultiAH(len(a[0]), f.dim_out,
                   lambda v: f.eval(tuple(sum(x * y for x, y in zip(r, v)) for r in a)),
                   f.cert, f"{f.label}*A")


def coordinate_section(f: MultiAH, j: int, i: int) -> AlmostHom:
    """p -> f(p * e_j)_i."""
    if not 0 <= j < f.dim_in:
        raise IndexError(f"input index {j} out of range for dim {f.dim_in}")
    if not 0 <= i < f.dim_out:
        raise IndexError(f"output index {i} out of range for dim {f.dim_out}")

    def fn(p: int) -> int:
        v = [0] * f.dim_in
        v[j] = p
        return f.eval(v)[i]

    return AlmostHom(fn, f.cert, f"{f.label}[{i},{j}]")


@dataclass(frozen=True)
class IntervalMatrix:
    rows: tuple   # tuple of tuples of Interval (None where refinement failed)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def complete(self) -> bool:
        return all(e is not None for r in self.rows for e in r)

    def contains(self, matrix) -> list[list[bool]]:
        return [[e is not None and e.contains(as_rat(v)) for e, v in zip(r, mr)]
                for r, mr in zip(self.rows, matrix)]

    def hconcat(self, other: "IntervalMatrix") -> "IntervalMatrix":
        return IntervalMatrix(tuple(a + b for a, b in zip(self.rows, other.rows)))


class PartialRecovery(BudgetExceeded):
    def __init__(self, message: str, partial: IntervalMatrix):
        super().__init__(message)
        self.partial = partial


def recover_matrix(f: MultiAH, eps, budget: Budget = DEFAULT_BUDGET) -> IntervalMatrix:
    """Enclose each entry of the matrix represented by f to width <= eps."""
    eps = as_rat(eps)
    rows, failed = [], []
    for i in range(f.dim_out):
        row = []
        for j in range(f.dim_in):
            try:
                row.append(refine(coordinate_section(f, j, i), eps, budget))
            except BudgetExceeded as exc:
                row.append(exc.best)
                failed.append((i, j))
        rows.append(tuple(row))
    result = IntervalMatrix(tuple(rows))
    if failed:
        raise PartialRecovery(f"entries {failed} exceeded the budget", result)
    return result


def _noise(seed: int, v: Vector, i: int, k: int) -> int:
    if k == 0:
        return 0
    key = repr((seed, v, i)).encode()
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "big") % (2 * k + 1) - k


def from_matrix_noisy(matrix: Sequence[Sequence], k: int = 0, seed: int = 0) -> MultiAH:
    """Lift a rational matrix: round(Mv)_i plus deterministic noise in [-k, k].

    Each coordinate is within 1/2 + k of the linear value, so by the triangle
    inequality over the three terms of d_f the defect is at most
    3*(1/2 + k) <= 3*(1 + 2k).
    """
    if k < 0:
        raise ValueError("noise amplitude must be >= 0")
    mat = [[as_rat(x) for x in r] for r in matrix]
    m, n = len(mat), len(mat[0])
    if any(len(r) != n for r in mat):
        raise ValueError("ragged matrix")

    def fn(v: Vector) -> tuple:
        return tuple(round(sum((a * b for a, b in zip(r, v)), Fraction(0))) + _noise(seed, v, i, k)
                     for i, r in enumerate(mat))

    return MultiAH(n, m, fn, 3 * (1 + 2 * k), f"lift(k={k})")


def split_direct_sum(f: MultiAH, n1: int, samples: int = 2000, range_: int = 1000,
                     seed: int = 0) -> tuple[MultiAH, MultiAH, int]:
    """f1(x) = f(x, 0), f2(y) = f(0, y) and the sampled max of |f(x, y) - f1(x) - f2(y)|.

    That residual is d_f((x, 0), (0, y)), so it never exceeds f.cert.
    """
    if not 1 <= n1 < f.dim_in:
        raise ValueError(f"invalid split point {n1} for dim {f.dim_in}")
    n2 = f.dim_in - n1
    f1 = MultiAH(n1, f.dim_out, lambda x: f.eval(tuple(x) + (0,) * n2), f.cert, f"{f.label}|1")
    f2 = MultiAH(n2, f.dim_out, lambda y: f.eval((0,) * n1 + tuple(y)), f.cert, f"{f.label}|2")
    rng = random.Random(seed)
    worst = 0
    for _ in range(samples):
        x = tuple(rng.randint(-range_, range_) for _ in range(n1))
        y = tuple(rng.randint(-range_, range_) for _ in range(n2))
        whole = f.eval(x + y)
        parts = _vadd(f1.eval(x), f2.eval(y))
        worst = max(worst, max(abs(a - b) for a, b in zip(whole, parts)))
    return f1, f2, worst


# ---------------------------------------------------------------- text format

def parse_matrix(text: str) -> list[list[Fraction]]:
    """Grid format: first line ``m n``, then m lines of n rationals."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("header must be 'm n'")
    m, n = int(header[0]), int(header[1])
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        cells = ln.split()
        if len(cells) != n:
            raise ValueError(f"expected {n} entries in row {ln!r}")
        rows.append([parse_rat(c) for c in cells])
    return rows


def format_matrix(matrix) -> str:
    rows = [[as_rat(x) for x in r] for r in matrix]
    out = [f"{len(rows)} {len(rows[0])}"]
    out += [" ".join(format_rat(x) for x in r) for r in rows]
    return "\n".join(out) + "\n"


def format_interval_matrix(im: IntervalMatrix) -> str:
    m, n = im.shape
    out = [f"{m} {n}"]
    out += [" ".join(str(e) if e is not None else "[?,?]" for e in r) for r in im.rows]
    return "\n".join(out) + "\n"


def parse_interval_matrix(text: str) -> IntervalMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m, n = map(int, lines[0].split())
    rows = []
    for ln in lines[1:m + 1]:
        cells = ln.split()
        if len(cells) != n:
            raise ValueError(f"expected {n} entries in row {ln!r}")
        row = []
        for c in cells:
            if not (c.startswith("[") and c.endswith("]")):
                raise ValueError(f"bad interval {c!r}")
            lo, hi = c[1:-1].split(",")
            row.append(Interval(parse_rat(lo), parse_rat(hi)))
        rows.append(tuple(row))
    return IntervalMatrix(tuple(rows))
