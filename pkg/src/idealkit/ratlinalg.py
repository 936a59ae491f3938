"""Exact linear algebra over the rationals, plus a modular rank certificate.

Dense routines work on lists of Fraction rows and are fully deterministic
(leftmost pivot, rows in input order).  The sparse online echelon handles
the larger stacked systems that arise from commutant computations.  The
modular path certifies a rank lower bound: a nonzero r x r minor modulo p
is nonzero over the rationals, so rank_p <= rank_Q always holds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

F0 = Fraction(0)
F1 = Fraction(1)

__all__ = [
    "AugmentedSpan",
    "SpanBasis",
    "SparseEchelon",
    "frac_mod_p",
    "mat_vec",
    "modp_echelon",
    "nullspace",
    "rank",
    "rref",
    "MODP_PRIMES",
]

# Fixed large primes below 2**31 so that int64 products stay below 2**62.
MODP_PRIMES = (2147483647, 2147483629, 2147483587)


def rref(rows: Iterable[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        if inv != 1:
            m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Iterable[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Canonical kernel basis: one vector per free column, unit at that column."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [F0] * ncols
        v[f] = F1
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def mat_vec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, v) if a and b), F0) for row in rows]


class SpanBasis:
    """Incremental echelon basis of a growing span (not reduced upward)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict = {}  # pivot column -> normalized row

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: Sequence[Fraction]) -> List[Fraction]:
        v = list(vec)
        for p in sorted(self._rows):
            if v[p] != 0:
                f = v[p]
                row = self._rows[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def insert(self, vec: Sequence[Fraction]) -> Optional[List[Fraction]]:
        """Add a vector; returns the reduced new row, or None if dependent."""
        v = self._reduce(vec)
        for p, val in enumerate(v):
            if val != 0:
                row = [x / val for x in v]
                self._rows[p] = row
                return row
        return None

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self._reduce(vec))

    def canonical(self) -> List[List[Fraction]]:
        """Deterministic reduced echelon basis of the current span."""
        return rref([self._rows[p] for p in sorted(self._rows)])[0]


class AugmentedSpan:
    """Echelon basis that tracks coordinates in the inserted generators.

    reduce(x) returns (residual, coeffs) with x = residual + sum coeffs[i] *
    generator_i; the residual is the remainder after eliminating the span
    components, so x lies in the span exactly when it is zero.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.count = 0
        self._rows: dict = {}  # pivot -> (row, coeffs)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec, coeffs):
        v = list(vec)
        c = list(coeffs)
        for p in sorted(self._rows):
            if v[p] != 0:
                f = v[p]
                row, rc = self._rows[p]
                v = [a - f * b for a, b in zip(v, row)]
                c = [a - f * b for a, b in zip(c, rc)]
        return v, c

    def insert(self, vec: Sequence[Fraction]) -> bool:
        """Register a generator; returns False when dependent on earlier ones."""
        tag = [F0] * self.count + [F1]
        for _, rc in self._rows.values():
            rc.append(F0)
        self.count += 1
        v, c = self._reduce(vec, tag)
        for p, val in enumerate(v):
            if val != 0:
                self._rows[p] = ([x / val for x in v], [x / val for x in c])
                return True
        return False

    def reduce(self, vec: Sequence[Fraction]):
        """(residual, coeffs): residual zero means vec = sum coeffs * generators."""
        v, c = self._reduce(vec, [F0] * self.count)
        if any(x != 0 for x in v):
            return v, None
        return v, [-x for x in c]


class SparseEchelon:
    """Online echelon over sparse rational rows (dict column -> value)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict = {}  # pivot column -> sparse row with pivot value 1

    @property
    def rank(self) -> int:
        return len(self._rows)

    def insert(self, row: dict) -> bool:
        work = {c: v for c, v in row.items() if v != 0}
        while work:
            p = min(work)
            existing = self._rows.get(p)
            if existing is None:
                pv = work[p]
                self._rows[p] = {c: v / pv for c, v in work.items()}
                return True
            f = work[p]
            for c, v in existing.items():
                nv = work.get(c, F0) - f * v
                if nv:
                    work[c] = nv
                else:
                    work.pop(c, None)
        return False

    def dense_rows(self) -> List[List[Fraction]]:
        out = []
        for p in sorted(self._rows):
            row = [F0] * self.ncols
            for c, v in self._rows[p].items():
                row[c] = v
            out.append(row)
        return out

    def kernel(self) -> List[List[Fraction]]:
        return nullspace(self.dense_rows(), self.ncols)


def frac_mod_p(f: Fraction, p: int) -> Optional[int]:
    """Image of a rational in GF(p), or None when the denominator vanishes."""
    den = f.denominator % p
    if den == 0:
        return None
    return (f.numerator % p) * pow(den, p - 2, p) % p


def modp_echelon(mat: np.ndarray, p: int) -> Tuple[int, np.ndarray]:
    """Row echelon of an int64 matrix over GF(p); returns (rank, nonzero rows)."""
    m = np.mod(mat, p).astype(np.int64)
    nrows, ncols = m.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = m[r + 1 :, c]
        mask = below != 0
        if mask.any():
            factors = below[mask].reshape(-1, 1)
            m[r + 1 :][mask] = (m[r + 1 :][mask] - factors * m[r]) % p
        r += 1
    return r, m[:r]
