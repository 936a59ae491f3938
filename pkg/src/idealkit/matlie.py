"""Exact-rational finite-dimensional matrix Lie algebra engine.

Everything here is proved, not approximated: matrices carry Fraction
entries, spans are echelon bases over the rationals, and the simplicity
decision is a ladder of exact steps (derived algebra, center, Killing
radical, adjoint commutant).  The only modular arithmetic is a rank
certificate for the commutant: a full-rank minor modulo a prime is nonzero
over the rationals, so it can prove that the commutant is exactly the
scalars without ever being able to prove the converse.

The commutant-dimension criterion counts the simple summands of a split
semisimple algebra; for a simple algebra whose centroid is a proper field
extension of the rationals the criterion can exceed one, in which case
witness extraction degrades to an explicitly flagged certificate rather
than a wrong eigenspace.
"""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import ratlinalg
from .ratlinalg import (
    F0,
    F1,
    AugmentedSpan,
    MODP_PRIMES,
    SpanBasis,
    SparseEchelon,
    frac_mod_p,
    mat_vec,
    modp_echelon,
    nullspace,
    rref,
)
from .seqspace import SequenceExpr, as_fraction, ensure_valid, eval_at, has_exact_eval

__all__ = [
    "ClosureReport",
    "CommutantReport",
    "IdealCheck",
    "KillingReport",
    "LieAlgebraPresentation",
    "NotClosedError",
    "RationalMatrix",
    "SimplicityReport",
    "Subspace",
    "adjoint_commutant",
    "adjoint_commutant_dim",
    "algebra_from_json",
    "algebra_to_json",
    "bracket",
    "closure_check",
    "derived_algebra",
    "diagonal_algebra",
    "direct_sum",
    "is_lie_ideal",
    "is_simple",
    "killing_form",
    "lie_ideal_generated",
    "load_algebra",
    "make_algebra",
    "random_ideal_search",
    "save_algebra",
    "shift_truncation",
    "sl",
    "sp_skew_variant",
    "sp_standard",
    "span_reduce",
    "strictly_upper",
    "subspace_from_coords",
    "subspace_from_matrices",
    "upper_triangular_sl",
]


class NotClosedError(ValueError):
    """The presented basis is not closed under the commutator bracket."""


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class RationalMatrix:
    """Immutable matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return cls([[F0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[F1 if i == j else F0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "RationalMatrix":
        m = [[F0] * n for _ in range(n)]
        m[i][j] = F1
        return cls(m)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in row] for row in self.entries])

    def scaled(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        return RationalMatrix([[c * a for a in row] for row in self.entries])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.rows}")
        cols = list(zip(*other.entries))
        return RationalMatrix(
            [
                [sum((a * b for a, b in zip(row, col) if a and b), F0) for col in cols]
                for row in self.entries
            ]
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.entries)))

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace needs a square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), F0)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def flat(self) -> tuple:
        return tuple(v for row in self.entries for v in row)

    def _same_shape(self, other: "RationalMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(v) for v in row] for row in self.entries]})"


def bracket(x: RationalMatrix, y: RationalMatrix) -> RationalMatrix:
    """Commutator xy - yx; exact, and trace-free by symmetry of the trace."""
    if x.rows != x.cols or y.rows != y.cols or x.rows != y.rows:
        raise ValueError("bracket needs square matrices of equal size")
    return (x @ y) - (y @ x)


def _from_flat(flat: Sequence[Fraction], rows: int, cols: int) -> RationalMatrix:
    return RationalMatrix([flat[r * cols : (r + 1) * cols] for r in range(rows)])


# ---------------------------------------------------------------------------
# Presentations and subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LieAlgebraPresentation:
    """Linearly independent matrix basis of a subspace of ambient x ambient
    matrices, intended to be bracket-closed."""

    ambient: int
    basis: tuple
    name: str

    @property
    def dim(self) -> int:
        return len(self.basis)


def _presentation(ambient: int, mats: Sequence[RationalMatrix], name: str) -> LieAlgebraPresentation:
    for m in mats:
        if m.rows != ambient or m.cols != ambient:
            raise ValueError(f"{name}: basis matrix of wrong shape")
    return LieAlgebraPresentation(ambient, tuple(mats), name)


@dataclass(frozen=True)
class Subspace:
    """Subspace of a presentation, as canonical reduced-echelon coordinate rows."""

    parent: LieAlgebraPresentation
    vectors: tuple  # tuple of coordinate tuples, RREF canonical

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrices(self) -> List[RationalMatrix]:
        out = []
        for vec in self.vectors:
            acc = RationalMatrix.zeros(self.parent.ambient)
            for c, b in zip(vec, self.parent.basis):
                if c:
                    acc = acc + b.scaled(c)
            out.append(acc)
        return out

    def contains_coords(self, vec: Sequence[Fraction]) -> bool:
        span = SpanBasis(len(vec))
        for row in self.vectors:
            span.insert(row)
        return span.contains(vec)

    def ambient_rref(self) -> tuple:
        """Canonical form in the ambient matrix space; comparable across parents."""
        red, _ = rref([m.flat() for m in self.matrices()])
        return tuple(tuple(r) for r in red)


def subspace_from_coords(parent: LieAlgebraPresentation, rows: Sequence[Sequence]) -> Subspace:
    red, _ = rref([[as_fraction(v) for v in row] for row in rows])
    return Subspace(parent, tuple(tuple(r) for r in red))


def subspace_from_matrices(parent: LieAlgebraPresentation, mats: Sequence[RationalMatrix]) -> Subspace:
    st = _structure(parent)
    coords = []
    for m in mats:
        _, c = st.span.reduce(list(m.flat()))
        if c is None:
            raise ValueError("matrix outside the span of the presentation basis")
        coords.append(c)
    return subspace_from_coords(parent, coords)


def span_reduce(mats: Sequence[RationalMatrix]) -> List[RationalMatrix]:
    """Canonical reduced-echelon basis of the span of the given matrices."""
    mats = list(mats)
    if not mats:
        return []
    rows, cols = mats[0].rows, mats[0].cols
    for m in mats:
        if (m.rows, m.cols) != (rows, cols):
            raise ValueError("span_reduce needs matrices of equal shape")
    red, _ = rref([m.flat() for m in mats])
    return [_from_flat(r, rows, cols) for r in red]


# ---------------------------------------------------------------------------
# Structure constants
# ---------------------------------------------------------------------------


class _Structure:
    __slots__ = ("span", "constants", "ads")

    def __init__(self, span, constants, ads):
        self.span = span
        self.constants = constants  # constants[i][j] = coords of [b_i, b_j]
        self.ads = ads  # ads[i][k][j] = constants[i][j][k], dense Fraction rows


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    pair: Optional[tuple]  # (i, j) of the first failing bracket
    residual: Optional[RationalMatrix]  # remainder after eliminating span components


@lru_cache(maxsize=128)
def _closure_scan(L: LieAlgebraPresentation):
    span = AugmentedSpan(L.ambient * L.ambient)
    for idx, b in enumerate(L.basis):
        if not span.insert(list(b.flat())):
            raise ValueError(f"{L.name}: basis matrix {idx} depends on earlier ones")
    d = L.dim
    constants = [[None] * d for _ in range(d)]
    zero = [F0] * d
    for i in range(d):
        constants[i][i] = zero
    for i in range(d):
        for j in range(i + 1, d):
            br = bracket(L.basis[i], L.basis[j])
            residual, coeffs = span.reduce(list(br.flat()))
            if coeffs is None:
                return None, (i, j, _from_flat(residual, L.ambient, L.ambient))
            constants[i][j] = coeffs
            constants[j][i] = [-c for c in coeffs]
    ads = [
        [[constants[i][j][k] for j in range(d)] for k in range(d)]
        for i in range(d)
    ]
    return _Structure(span, constants, ads), None


def closure_check(L: LieAlgebraPresentation) -> ClosureReport:
    """Scan basis pairs in lexicographic order for a bracket outside the span."""
    st, bad = _closure_scan(L)
    if st is not None:
        return ClosureReport(True, None, None)
    i, j, residual = bad
    return ClosureReport(False, (i, j), residual)


def _structure(L: LieAlgebraPresentation) -> _Structure:
    st, bad = _closure_scan(L)
    if st is None:
        i, j, _ = bad
        raise NotClosedError(
            f"{L.name}: bracket of basis elements {i} and {j} lies outside the span"
        )
    return st


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _require_positive(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"size must be an integer >= 1, got {n}")


def sp_standard(n: int) -> LieAlgebraPresentation:
    """Symplectic algebra in 2n x 2n block form: top-right and bottom-left
    blocks symmetric, bottom-right the negative transpose of the top-left.
    Basis order: top-left block entries row-major, then the symmetric
    generators of the top-right block (i <= j row-major), then bottom-left.
    """
    _require_positive(n)
    a = 2 * n
    basis = []
    for i in range(n):
        for j in range(n):
            basis.append(RationalMatrix.unit(a, i, j) - RationalMatrix.unit(a, n + j, n + i))
    for i in range(n):
        for j in range(i, n):
            m = RationalMatrix.unit(a, i, n + j)
            if i != j:
                m = m + RationalMatrix.unit(a, j, n + i)
            basis.append(m)
    for i in range(n):
        for j in range(i, n):
            m = RationalMatrix.unit(a, n + i, j)
            if i != j:
                m = m + RationalMatrix.unit(a, n + j, i)
            basis.append(m)
    return _presentation(a, basis, f"sp_standard_{n}")


def sp_skew_variant(n: int) -> LieAlgebraPresentation:
    """Block form with a symmetric top-right and an antisymmetric bottom-left
    block.  Retained for auditing: for n >= 2 this constraint set is not
    closed under the bracket (closure_check exhibits the failing pair)."""
    _require_positive(n)
    a = 2 * n
    basis = []
    for i in range(n):
        for j in range(n):
            basis.append(RationalMatrix.unit(a, i, j) - RationalMatrix.unit(a, n + j, n + i))
    for i in range(n):
        for j in range(i, n):
            m = RationalMatrix.unit(a, i, n + j)
            if i != j:
                m = m + RationalMatrix.unit(a, j, n + i)
            basis.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            basis.append(RationalMatrix.unit(a, n + i, j) - RationalMatrix.unit(a, n + j, i))
    return _presentation(a, basis, f"sp_skew_variant_{n}")


def upper_triangular_sl(n: int) -> LieAlgebraPresentation:
    """Trace-zero upper triangular matrices: diagonal differences, then the
    strictly upper units row-major."""
    _require_positive(n)
    basis = [
        RationalMatrix.unit(n, i, i) - RationalMatrix.unit(n, i + 1, i + 1)
        for i in range(n - 1)
    ]
    for i in range(n):
        for j in range(i + 1, n):
            basis.append(RationalMatrix.unit(n, i, j))
    if not basis:
        raise ValueError("upper_triangular_sl(1) is zero-dimensional")
    return _presentation(n, basis, f"upper_triangular_sl_{n}")


def strictly_upper(n: int) -> LieAlgebraPresentation:
    _require_positive(n)
    if n < 2:
        raise ValueError("strictly_upper needs n >= 2")
    basis = [
        RationalMatrix.unit(n, i, j) for i in range(n) for j in range(i + 1, n)
    ]
    return _presentation(n, basis, f"strictly_upper_{n}")


def sl(n: int) -> LieAlgebraPresentation:
    """Trace-zero matrices: off-diagonal units row-major, then diagonal differences."""
    _require_positive(n)
    if n < 2:
        raise ValueError("sl needs n >= 2")
    basis = [
        RationalMatrix.unit(n, i, j) for i in range(n) for j in range(n) if i != j
    ]
    basis.extend(
        RationalMatrix.unit(n, i, i) - RationalMatrix.unit(n, i + 1, i + 1)
        for i in range(n - 1)
    )
    return _presentation(n, basis, f"sl_{n}")


def diagonal_algebra(n: int) -> LieAlgebraPresentation:
    """Abelian algebra of diagonal matrices."""
    _require_positive(n)
    basis = [RationalMatrix.unit(n, i, i) for i in range(n)]
    return _presentation(n, basis, f"diagonal_{n}")


def shift_truncation(weights: SequenceExpr, n: int) -> LieAlgebraPresentation:
    """Single-matrix presentation: the n x n truncation of a weighted shift,
    weight i on the superdiagonal.  Weights must evaluate exactly."""
    _require_positive(n)
    if n < 2:
        raise ValueError("shift_truncation needs n >= 2")
    ensure_valid(weights)
    if not has_exact_eval(weights):
        raise ValueError("shift truncation needs exactly evaluable weights")
    m = [[F0] * n for _ in range(n)]
    for i in range(1, n):
        m[i - 1][i] = eval_at(weights, i)
    return _presentation(n, [RationalMatrix(m)], f"shift_truncation_{n}")


def direct_sum(a: LieAlgebraPresentation, b: LieAlgebraPresentation) -> LieAlgebraPresentation:
    """Block-diagonal direct sum of two presentations."""
    amb = a.ambient + b.ambient
    basis = []
    for m in a.basis:
        big = [[F0] * amb for _ in range(amb)]
        for i in range(a.ambient):
            for j in range(a.ambient):
                big[i][j] = m.entries[i][j]
        basis.append(RationalMatrix(big))
    for m in b.basis:
        big = [[F0] * amb for _ in range(amb)]
        for i in range(b.ambient):
            for j in range(b.ambient):
                big[a.ambient + i][a.ambient + j] = m.entries[i][j]
        basis.append(RationalMatrix(big))
    return _presentation(amb, basis, f"{a.name}+{b.name}")


_KINDS = {
    "sp": sp_standard,
    "sp-skew": sp_skew_variant,
    "ut-sl": upper_triangular_sl,
    "strictly-upper": strictly_upper,
    "sl": sl,
}


def make_algebra(kind: str, n: int, weights: Optional[SequenceExpr] = None) -> LieAlgebraPresentation:
    if kind == "shift":
        if weights is None:
            raise ValueError("shift truncation needs a weight sequence")
        return shift_truncation(weights, n)
    ctor = _KINDS.get(kind)
    if ctor is None:
        raise ValueError(f"unknown algebra kind {kind!r}; expected one of "
                         f"{sorted(_KINDS)} or 'shift'")
    return ctor(n)


# ---------------------------------------------------------------------------
# Ideals, derived algebra, Killing form
# ---------------------------------------------------------------------------


def derived_algebra(L: LieAlgebraPresentation) -> Subspace:
    """Span of all pairwise basis brackets, as a subspace of L."""
    st = _structure(L)
    d = L.dim
    rows = [st.constants[i][j] for i in range(d) for j in range(i + 1, d)]
    return subspace_from_coords(L, rows)


@dataclass(frozen=True)
class IdealCheck:
    is_ideal: bool
    violation: Optional[tuple]  # (basis index of L, row index of J)


def is_lie_ideal(L: LieAlgebraPresentation, J: Subspace) -> IdealCheck:
    """Check [L, J] <= J on basis elements."""
    if J.parent != L:
        raise ValueError("subspace does not live in the given presentation")
    st = _structure(L)
    span = SpanBasis(L.dim)
    for row in J.vectors:
        span.insert(row)
    for i, ad in enumerate(st.ads):
        for j, vec in enumerate(J.vectors):
            if not span.contains(mat_vec(ad, vec)):
                return IdealCheck(False, (i, j))
    return IdealCheck(True, None)


def _center_coords(L: LieAlgebraPresentation) -> List[List[Fraction]]:
    st = _structure(L)
    stacked = [row for ad in st.ads for row in ad]
    return nullspace(stacked, L.dim)


@dataclass(frozen=True)
class KillingReport:
    matrix: RationalMatrix
    rank: int


def killing_form(L: LieAlgebraPresentation) -> KillingReport:
    """Trace form of the adjoint representation, with its exact rank."""
    st = _structure(L)
    d = L.dim
    ads = st.ads
    k = [[F0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            acc = F0
            adi, adj = ads[i], ads[j]
            for r in range(d):
                row = adi[r]
                acc += sum((row[c] * adj[c][r] for c in range(d) if row[c]), F0)
            k[i][j] = acc
            k[j][i] = acc
    mat = RationalMatrix(k)
    return KillingReport(mat, ratlinalg.rank([list(row) for row in k]))


# ---------------------------------------------------------------------------
# Integer fast path for ideal generation
# ---------------------------------------------------------------------------


def _int_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    scale = 1
    for row in rows:
        for v in row:
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return [[int(v * scale) for v in row] for row in rows]


def _int_vector(vec: Sequence[Fraction]) -> List[int]:
    scale = 1
    for v in vec:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    out = [int(v * scale) for v in vec]
    g = 0
    for v in out:
        g = math.gcd(g, v)
    return [v // g for v in out] if g > 1 else out


class _IntSpan:
    """Echelon of primitive integer rows; division-free insertions."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def insert(self, vec: List[int]) -> Optional[List[int]]:
        v = list(vec)
        for p in sorted(self.rows):
            if v[p]:
                r = self.rows[p]
                a, b = r[p], v[p]
                v = [a * x - b * y for x, y in zip(v, r)]
        for p, val in enumerate(v):
            if val:
                g = 0
                for x in v:
                    g = math.gcd(g, x)
                if g > 1:
                    v = [x // g for x in v]
                if v[p] < 0:
                    v = [-x for x in v]
                self.rows[p] = v
                return v
        return None


def _ideal_fixpoint(L: LieAlgebraPresentation, seed_coords: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    st = _structure(L)
    d = L.dim
    int_ads = [_int_rows(ad) for ad in st.ads]
    span = _IntSpan(d)
    queue: deque = deque()
    for coords in seed_coords:
        if all(v == 0 for v in coords):
            continue
        row = span.insert(_int_vector(coords))
        if row is not None:
            queue.append(row)
    while queue and span.dim < d:
        v = queue.popleft()
        for ad in int_ads:
            w = [sum(a * x for a, x in zip(row, v) if a) for row in ad]
            if any(w):
                row = span.insert(w)
                if row is not None:
                    queue.append(row)
                    if span.dim == d:
                        break
    return [[Fraction(x) for x in row] for row in span.rows.values()]


def lie_ideal_generated(L: LieAlgebraPresentation, seeds: Sequence[RationalMatrix]) -> Subspace:
    """Least Lie ideal of L containing the seeds, by bracket fixpoint."""
    st = _structure(L)
    seed_coords = []
    for s in seeds:
        _, coords = st.span.reduce(list(s.flat()))
        if coords is None:
            raise ValueError("seed lies outside the span of the presentation")
        seed_coords.append(coords)
    return subspace_from_coords(L, _ideal_fixpoint(L, seed_coords))


def random_ideal_search(
    L: LieAlgebraPresentation,
    samples: int = 200,
    seed: int = 0,
    coord_bound: int = 9,
) -> Optional[Subspace]:
    """Generate the ideal of random rational elements; first proper nonzero
    ideal found, or None.  Used as a soundness cross-check for Simple verdicts."""
    _structure(L)
    rng = random.Random(seed)
    d = L.dim
    for _ in range(samples):
        coords = [Fraction(rng.randint(-coord_bound, coord_bound)) for _ in range(d)]
        if all(v == 0 for v in coords):
            coords[rng.randrange(d)] = F1
        rows = _ideal_fixpoint(L, [coords])
        if 0 < len(rows) < d:
            return subspace_from_coords(L, rows)
    return None


# ---------------------------------------------------------------------------
# Adjoint commutant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommutantReport:
    dim: int
    basis: tuple  # RationalMatrix values acting on the coordinate space of L
    method: str


def _commutant_exact(ads: Sequence[Sequence[Sequence[Fraction]]], d: int) -> List[RationalMatrix]:
    ech = SparseEchelon(d * d)
    for ad in ads:
        for i in range(d):
            for j in range(d):
                row: dict = {}
                for l in range(d):
                    a = ad[l][j]
                    if a:
                        col = i * d + l
                        row[col] = row.get(col, F0) + a
                    b = ad[i][l]
                    if b:
                        col = l * d + j
                        row[col] = row.get(col, F0) - b
                ech.insert(row)
    return [_from_flat(vec, d, d) for vec in ech.kernel()]


def adjoint_commutant(L: LieAlgebraPresentation) -> CommutantReport:
    """Dimension and basis of the linear maps commuting with every adjoint map.

    Tries a modular full-rank certificate first (proving dimension exactly
    one, since the identity always commutes); otherwise falls back to exact
    elimination on the stacked constraint system.
    """
    st = _structure(L)
    d = L.dim
    target = d * d - 1
    eye = np.eye(d, dtype=np.int64)
    for p in MODP_PRIMES:
        mods = []
        ok = True
        for ad in st.ads:
            m = np.zeros((d, d), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    v = frac_mod_p(ad[i][j], p)
                    if v is None:
                        ok = False
                        break
                    m[i, j] = v
                if not ok:
                    break
            if not ok:
                break
            mods.append(m)
        if not ok:
            continue
        echelon = None
        for m in mods:
            block = (np.kron(eye, m.T) - np.kron(m, eye)) % p
            stacked = block if echelon is None else np.vstack([echelon, block])
            r, echelon = modp_echelon(stacked, p)
            if r == target:
                return CommutantReport(
                    1, (RationalMatrix.identity(d),), "modular-rank-certificate"
                )
    basis = _commutant_exact(st.ads, d)
    return CommutantReport(len(basis), tuple(basis), "exact-elimination")


def adjoint_commutant_dim(L: LieAlgebraPresentation) -> int:
    return adjoint_commutant(L).dim


# ---------------------------------------------------------------------------
# Minimal polynomials and witness extraction
# ---------------------------------------------------------------------------


def _poly_trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_deriv(p: Sequence[Fraction]) -> List[Fraction]:
    return _poly_trim([i * c for i, c in enumerate(p)][1:])


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [F0] * max(0, len(a) - len(b) + 1)
    inv = b[-1]
    while len(a) >= len(b) and any(v != 0 for v in a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        coef = a[-1] / inv
        q[shift] = coef
        for i, v in enumerate(b):
            a[shift + i] -= coef * v
        a.pop()
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [v / lead for v in a]
    return a


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = F0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _min_poly(C: RationalMatrix) -> List[Fraction]:
    """Monic minimal polynomial via dependence of the Krylov matrix powers."""
    d = C.rows
    span = AugmentedSpan(d * d)
    power = RationalMatrix.identity(d)
    while True:
        vec = list(power.flat())
        _, coeffs = span.reduce(vec)
        if coeffs is not None:
            return _poly_trim([-c for c in coeffs] + [F1])
        span.insert(vec)
        power = power @ C


def _divisors(n: int, limit: int = 10 ** 6) -> Optional[List[int]]:
    """All positive divisors via trial division; None when factoring stalls."""
    n = abs(n)
    if n == 0:
        return None
    factors = {}
    m = n
    f = 2
    while f * f <= m and f <= limit:
        while m % f == 0:
            factors[f] = factors.get(f, 0) + 1
            m //= f
        f += 1
    if m > 1:
        if m > 10 ** 12:
            return None
        factors[m] = factors.get(m, 0) + 1
    divs = [1]
    for prime, mult in factors.items():
        divs = [d * prime ** e for d in divs for e in range(mult + 1)]
    return sorted(set(divs))


def _rational_roots(poly: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Rational roots of a nonzero polynomial, or None if the coefficient
    factorizations are out of reach."""
    p = _poly_trim(list(poly))
    roots = []
    if not p:
        return None
    shift = 0
    while p[0] == 0:
        shift += 1
        p = p[1:]
    if shift:
        roots.append(F0)
    if len(p) <= 1:
        return sorted(set(roots))
    scale = 1
    for c in p:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in p]
    d0 = _divisors(ints[0])
    dl = _divisors(ints[-1])
    if d0 is None or dl is None:
        return None
    for num in d0:
        for den in dl:
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if _poly_eval(p, cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# Simplicity decision
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityReport:
    verdict: str  # "Simple" | "NotSimple" | "Abelian"
    witness: Optional[Subspace]
    detail: str
    commutant_dim: Optional[int]
    flags: tuple
    certificate: Optional[tuple]  # commutant basis when extraction is incomplete

    @property
    def simple(self) -> bool:
        return self.verdict == "Simple"


def _checked_witness(L: LieAlgebraPresentation, J: Subspace) -> Subspace:
    if not (0 < J.dim < L.dim):
        raise RuntimeError("witness subspace has trivial dimension")
    chk = is_lie_ideal(L, J)
    if not chk.is_ideal:
        raise RuntimeError(f"witness subspace is not a Lie ideal: {chk.violation}")
    return J


def is_simple(L: LieAlgebraPresentation) -> SimplicityReport:
    """Exact simplicity decision.

    Ladder: zero derived algebra reports Abelian; a proper nonzero derived
    algebra, a nonzero center or a nonzero Killing radical each give a
    verified witness ideal; otherwise the Killing form is nondegenerate and
    the adjoint commutant decides, with eigenspace extraction from a
    non-scalar commutant element when the dimension exceeds one.
    """
    if L.dim < 1:
        raise ValueError("need a nonzero algebra")
    _structure(L)  # raises NotClosedError on a non-closed presentation
    d = L.dim
    derived = derived_algebra(L)
    if derived.dim == 0:
        witness = None
        if d >= 2:
            witness = _checked_witness(
                L, subspace_from_coords(L, [[F1] + [F0] * (d - 1)])
            )
        return SimplicityReport("Abelian", witness, "derived algebra is zero", None, (), None)
    if derived.dim < d:
        return SimplicityReport(
            "NotSimple",
            _checked_witness(L, derived),
            "derived algebra is a proper nonzero Lie ideal",
            None,
            (),
            None,
        )
    center = _center_coords(L)
    if center:
        return SimplicityReport(
            "NotSimple",
            _checked_witness(L, subspace_from_coords(L, center)),
            "center is a proper nonzero Lie ideal",
            None,
            (),
            None,
        )
    killing = killing_form(L)
    if killing.rank < d:
        rad = nullspace([list(r) for r in killing.matrix.entries], d)
        return SimplicityReport(
            "NotSimple",
            _checked_witness(L, subspace_from_coords(L, rad)),
            "Killing radical is a proper nonzero Lie ideal",
            None,
            (),
            None,
        )
    com = adjoint_commutant(L)
    if com.dim == 1:
        return SimplicityReport(
            "Simple",
            None,
            "Killing form nondegenerate and adjoint commutant has dimension 1",
            1,
            (),
            None,
        )
    witness = _extract_commutant_witness(L, com)
    if witness is not None:
        return SimplicityReport(
            "NotSimple",
            witness,
            "eigenspace of a non-scalar commutant element is a proper nonzero Lie ideal",
            com.dim,
            (),
            None,
        )
    return SimplicityReport(
        "NotSimple",
        None,
        "adjoint commutant dimension exceeds 1",
        com.dim,
        ("witness extraction incomplete",),
        com.basis,
    )


def _extract_commutant_witness(L: LieAlgebraPresentation, com: CommutantReport) -> Optional[Subspace]:
    d = L.dim
    for C in com.basis:
        diff = C - RationalMatrix.identity(d).scaled(C.entries[0][0])
        if diff.is_zero():
            continue
        poly = _min_poly(C)
        deriv = _poly_deriv(poly)
        if deriv:
            g = _poly_gcd(poly, deriv)
            sq_free, _ = _poly_divmod(poly, g)
        else:
            sq_free = poly
        roots = _rational_roots(sq_free)
        if not roots:
            continue
        for lam in roots:
            shifted = [
                [C.entries[i][j] - (lam if i == j else F0) for j in range(d)]
                for i in range(d)
            ]
            eig = nullspace(shifted, d)
            if not eig:
                continue
            J = subspace_from_coords(L, eig)
            if 0 < J.dim < d and is_lie_ideal(L, J).is_ideal:
                return J
    return None


# ---------------------------------------------------------------------------
# Algebra files
# ---------------------------------------------------------------------------


def _encode_rational(f: Fraction):
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _decode_rational(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ValueError(f"rationals must be integers or 'p/q' strings, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise ValueError(f"rationals must be integers or 'p/q' strings, got {v!r}")


def algebra_to_json(L: LieAlgebraPresentation) -> dict:
    return {
        "name": L.name,
        "ambient_dim": L.ambient,
        "basis": [[_encode_rational(v) for v in m.flat()] for m in L.basis],
    }


def algebra_from_json(obj: dict) -> LieAlgebraPresentation:
    try:
        name = obj["name"]
        ambient = obj["ambient_dim"]
        basis = obj["basis"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"algebra file missing field: {exc}") from None
    if not isinstance(ambient, int) or ambient < 1:
        raise ValueError(f"bad ambient_dim: {ambient!r}")
    mats = []
    for flat in basis:
        if len(flat) != ambient * ambient:
            raise ValueError(
                f"basis matrix has {len(flat)} entries, expected {ambient * ambient}"
            )
        vals = [_decode_rational(v) for v in flat]
        mats.append(_from_flat(vals, ambient, ambient))
    L = _presentation(ambient, mats, str(name))
    _closure_scan(L)  # raises on a dependent basis
    return L


def save_algebra(L: LieAlgebraPresentation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_json(L), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_algebra(path: str) -> LieAlgebraPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh))
