"""Symbolic nonincreasing null sequences with exact asymptotic comparison.

A sequence here plays the role of a singular-number sequence of a compact
operator: nonnegative, nonincreasing, tending to zero.  The expression
catalog (powers, exponentials, power-log factors, finite prefixes and
supports, scaling, ampliation, subsampling and pointwise products) is
closed under every operation exposed by this module, which is what makes
big-O / little-o questions between catalog members exactly decidable: each
expression carries an asymptotic signature (decay rate as an exact rational
root, power, log power) and the signatures form a totally ordered algebra.

Sequences whose comparison falls outside the symbolic rules can still be
probed numerically through ``numeric_probe``; such verdicts are always
labelled as numerically indicated, never as proven.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "Ampliation",
    "AsymSig",
    "Exp",
    "Explicit",
    "FiniteSupport",
    "InvalidSequenceError",
    "Mode",
    "Method",
    "Pow",
    "PowLog",
    "Product",
    "RootRational",
    "Scale",
    "SequenceExpr",
    "Status",
    "Subsample",
    "Verdict",
    "ampliate",
    "as_fraction",
    "compare",
    "decays_faster",
    "delta2_check",
    "eval_at",
    "eval_log",
    "explicit",
    "has_exact_eval",
    "numeric_probe",
    "root_rational",
    "signature_of",
    "subsample",
    "support",
    "validate",
    "ensure_valid",
    "DEFAULT_NMAX",
    "DEFAULT_EPS",
]

DEFAULT_NMAX = 2 ** 20
DEFAULT_EPS = 1e-3

# Numeric-probe policy constants: geometric grid of ratio 2, trend judged on
# the last half of the grid, divergence called at a 10x sup increase.
GRID_RATIO = 2
DIVERGENCE_FACTOR = 10.0
FLAT_FACTOR = 0.9
_EXP_OVERFLOW = 700.0  # exp() overflows around e^709


class InvalidSequenceError(ValueError):
    """The expression violates a catalog constraint (not in c0*)."""


def as_fraction(x: Union[int, str, Fraction]) -> Fraction:
    """Coerce to an exact rational; floats are rejected to avoid silent rounding."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected int, str or Fraction, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


class Status(Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


class Method(Enum):
    SYMBOLIC = "SymbolicProven"
    NUMERIC = "NumericIndicated"


class Mode(Enum):
    BIG_O = "O"
    LITTLE_O = "o"


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (Status, Method, Mode)):
        return value.value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision: exact (symbolic) or sampled (numeric) evidence."""

    status: Status
    method: Method
    evidence: dict

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def proven(self) -> bool:
        return self.method is Method.SYMBOLIC

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "method": self.method.value,
            "evidence": _jsonable(self.evidence),
        }


def proven(status: Status, **evidence) -> Verdict:
    return Verdict(status, Method.SYMBOLIC, evidence)


def indicated(status: Status, **evidence) -> Verdict:
    return Verdict(status, Method.NUMERIC, evidence)


# ---------------------------------------------------------------------------
# Expression catalog
# ---------------------------------------------------------------------------


class SequenceExpr:
    """Base class of the closed expression catalog."""

    __slots__ = ()


@dataclass(frozen=True)
class Pow(SequenceExpr):
    """n ** -p for a positive rational exponent p."""

    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", as_fraction(self.p))


@dataclass(frozen=True)
class Exp(SequenceExpr):
    """r ** n for a rational ratio r in (0, 1)."""

    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))


@dataclass(frozen=True)
class PowLog(SequenceExpr):
    """Running minimum of n**-p * ln(n+1)**-q.

    The raw values can rise before they fall (when q < 0); because the raw
    shape is unimodal for every valid parameter choice, the running minimum
    up to n equals min(raw(1), raw(n)) exactly, which keeps evaluation O(1)
    while restoring monotonicity.  The asymptotic signature is unaffected.
    """

    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", as_fraction(self.p))
        object.__setattr__(self, "q", as_fraction(self.q))


@dataclass(frozen=True)
class FiniteSupport(SequenceExpr):
    """Finitely many nonincreasing nonnegative values, then zero forever."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_fraction(v) for v in self.values))


@dataclass(frozen=True)
class Explicit(SequenceExpr):
    """A finite positive prefix followed by a shifted tail.

    Tail values are clamped from above by the last prefix value so the whole
    sequence stays nonincreasing.
    """

    prefix: tuple
    tail: SequenceExpr

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(as_fraction(v) for v in self.prefix))


@dataclass(frozen=True)
class Scale(SequenceExpr):
    """c * inner for a positive rational constant c."""

    c: Fraction
    inner: SequenceExpr

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))


@dataclass(frozen=True)
class Ampliation(SequenceExpr):
    """Each entry of the inner sequence repeated m times: entry(n) = inner(ceil(n/m))."""

    m: int
    inner: SequenceExpr


@dataclass(frozen=True)
class Subsample(SequenceExpr):
    """Every k-th entry of the inner sequence: entry(n) = inner(n*k)."""

    k: int
    inner: SequenceExpr


@dataclass(frozen=True)
class Product(SequenceExpr):
    """Pointwise product of two sequences."""

    left: SequenceExpr
    right: SequenceExpr


def explicit(prefix, tail: SequenceExpr) -> SequenceExpr:
    """Build an Explicit value, normalizing degenerate prefixes.

    An empty prefix is the tail itself; a prefix ending in zero forces the
    whole tail to zero and collapses to a FiniteSupport value.
    """
    prefix = tuple(as_fraction(v) for v in prefix)
    if not prefix:
        return tail
    if prefix[-1] == 0:
        return FiniteSupport(prefix)
    return Explicit(prefix, tail)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _violation(expr: SequenceExpr, path: str) -> Optional[tuple]:
    """First violated constraint as (location, message), or None."""
    if isinstance(expr, Pow):
        if expr.p <= 0:
            return (path, f"Pow exponent must be positive, got {expr.p}")
        return None
    if isinstance(expr, Exp):
        if not (0 < expr.r < 1):
            return (path, f"Exp ratio must lie in (0, 1), got {expr.r}")
        return None
    if isinstance(expr, PowLog):
        if expr.p < 0:
            return (path, f"PowLog power must be nonnegative, got {expr.p}")
        if expr.p == 0 and expr.q <= 0:
            return (path, "PowLog with p = 0 needs q > 0 to tend to zero")
        return None
    if isinstance(expr, FiniteSupport):
        vals = expr.values
        for i, v in enumerate(vals):
            if v < 0:
                return (f"{path}.values[{i}]", f"negative value {v}")
            if i and v > vals[i - 1]:
                return (f"{path}.values[{i}]", "values must be nonincreasing")
        return None
    if isinstance(expr, Explicit):
        pre = expr.prefix
        if not pre:
            return (f"{path}.prefix", "empty prefix; use the tail directly")
        for i, v in enumerate(pre):
            if v < 0:
                return (f"{path}.prefix[{i}]", f"negative value {v}")
            if i and v > pre[i - 1]:
                return (f"{path}.prefix[{i}]", "prefix must be nonincreasing")
        if pre[-1] == 0:
            return (f"{path}.prefix", "prefix ends at zero; use FiniteSupport")
        return _violation(expr.tail, f"{path}.tail")
    if isinstance(expr, Scale):
        if expr.c <= 0:
            return (path, f"scale factor must be positive, got {expr.c}")
        return _violation(expr.inner, f"{path}.inner")
    if isinstance(expr, Ampliation):
        if not isinstance(expr.m, int) or expr.m < 1:
            return (path, f"ampliation index must be an integer >= 1, got {expr.m}")
        return _violation(expr.inner, f"{path}.inner")
    if isinstance(expr, Subsample):
        if not isinstance(expr.k, int) or expr.k < 1:
            return (path, f"subsample step must be an integer >= 1, got {expr.k}")
        return _violation(expr.inner, f"{path}.inner")
    if isinstance(expr, Product):
        bad = _violation(expr.left, f"{path}.left")
        if bad is not None:
            return bad
        return _violation(expr.right, f"{path}.right")
    return (path, f"not a SequenceExpr: {type(expr).__name__}")


def validate(expr: SequenceExpr) -> Verdict:
    """Check membership of the expression (and all subexpressions) in c0*."""
    bad = _violation(expr, "seq")
    if bad is None:
        return proven(Status.HOLDS, constraints="all constructor constraints satisfied")
    return proven(Status.FAILS, location=bad[0], violation=bad[1])


def ensure_valid(expr: SequenceExpr) -> None:
    bad = _violation(expr, "seq")
    if bad is not None:
        raise InvalidSequenceError(f"{bad[0]}: {bad[1]}")


# ---------------------------------------------------------------------------
# Support and evaluation
# ---------------------------------------------------------------------------


def support(expr: SequenceExpr) -> Optional[int]:
    """Number of nonzero entries, or None when the support is infinite."""
    if isinstance(expr, (Pow, Exp, PowLog)):
        return None
    if isinstance(expr, FiniteSupport):
        n = len(expr.values)
        while n and expr.values[n - 1] == 0:
            n -= 1
        return n
    if isinstance(expr, Explicit):
        s = support(expr.tail)
        return None if s is None else len(expr.prefix) + s
    if isinstance(expr, Scale):
        return support(expr.inner)
    if isinstance(expr, Ampliation):
        s = support(expr.inner)
        return None if s is None else expr.m * s
    if isinstance(expr, Subsample):
        s = support(expr.inner)
        return None if s is None else s // expr.k
    if isinstance(expr, Product):
        sl, sr = support(expr.left), support(expr.right)
        if sl is None:
            return sr
        if sr is None:
            return sl
        return min(sl, sr)
    raise TypeError(type(expr).__name__)


def _powlog_raw(p: float, q: float, n: int) -> float:
    return n ** (-p) * math.log(n + 1) ** (-q)


def eval_at(expr: SequenceExpr, n: int):
    """Entry n (1-based) as an exact Fraction where possible, else a float."""
    if n < 1:
        raise ValueError(f"sequence index must be >= 1, got {n}")
    if isinstance(expr, Pow):
        if expr.p.denominator == 1:
            return Fraction(1, n ** expr.p.numerator)
        return float(n) ** (-float(expr.p))
    if isinstance(expr, Exp):
        return expr.r ** n
    if isinstance(expr, PowLog):
        p, q = float(expr.p), float(expr.q)
        return min(_powlog_raw(p, q, 1), _powlog_raw(p, q, n))
    if isinstance(expr, FiniteSupport):
        return expr.values[n - 1] if n <= len(expr.values) else Fraction(0)
    if isinstance(expr, Explicit):
        k = len(expr.prefix)
        if n <= k:
            return expr.prefix[n - 1]
        v = eval_at(expr.tail, n - k)
        last = expr.prefix[-1]
        return v if v <= last else last
    if isinstance(expr, Scale):
        v = eval_at(expr.inner, n)
        return expr.c * v if isinstance(v, Fraction) else float(expr.c) * v
    if isinstance(expr, Ampliation):
        return eval_at(expr.inner, (n + expr.m - 1) // expr.m)
    if isinstance(expr, Subsample):
        return eval_at(expr.inner, n * expr.k)
    if isinstance(expr, Product):
        a = eval_at(expr.left, n)
        b = eval_at(expr.right, n)
        if isinstance(a, Fraction) != isinstance(b, Fraction):
            return float(a) * float(b)
        return a * b
    raise TypeError(type(expr).__name__)


def _log_fraction(f: Fraction) -> float:
    if f == 0:
        return -math.inf
    return math.log(f.numerator) - math.log(f.denominator)


def eval_log(expr: SequenceExpr, n: int) -> float:
    """Natural log of entry n (-inf for zero); safe at indices where the
    exact value would overflow or underflow a float."""
    if n < 1:
        raise ValueError(f"sequence index must be >= 1, got {n}")
    if isinstance(expr, Pow):
        return -float(expr.p) * math.log(n)
    if isinstance(expr, Exp):
        return n * _log_fraction(expr.r)
    if isinstance(expr, PowLog):
        p, q = float(expr.p), float(expr.q)

        def raw_log(k: int) -> float:
            return -p * math.log(k) - q * math.log(math.log(k + 1))

        return min(raw_log(1), raw_log(n))
    if isinstance(expr, FiniteSupport):
        if n > len(expr.values):
            return -math.inf
        return _log_fraction(expr.values[n - 1])
    if isinstance(expr, Explicit):
        k = len(expr.prefix)
        if n <= k:
            return _log_fraction(expr.prefix[n - 1])
        return min(_log_fraction(expr.prefix[-1]), eval_log(expr.tail, n - k))
    if isinstance(expr, Scale):
        return _log_fraction(expr.c) + eval_log(expr.inner, n)
    if isinstance(expr, Ampliation):
        return eval_log(expr.inner, (n + expr.m - 1) // expr.m)
    if isinstance(expr, Subsample):
        return eval_log(expr.inner, n * expr.k)
    if isinstance(expr, Product):
        a = eval_log(expr.left, n)
        b = eval_log(expr.right, n)
        if -math.inf in (a, b):
            return -math.inf
        return a + b
    raise TypeError(type(expr).__name__)


def has_exact_eval(expr: SequenceExpr) -> bool:
    """True when eval_at returns exact rationals at every index."""
    if isinstance(expr, Pow):
        return expr.p.denominator == 1
    if isinstance(expr, PowLog):
        return False
    if isinstance(expr, (Exp, FiniteSupport)):
        return True
    if isinstance(expr, Explicit):
        return has_exact_eval(expr.tail)
    if isinstance(expr, (Scale, Ampliation, Subsample)):
        return has_exact_eval(expr.inner)
    if isinstance(expr, Product):
        return has_exact_eval(expr.left) and has_exact_eval(expr.right)
    raise TypeError(type(expr).__name__)


# ---------------------------------------------------------------------------
# Asymptotic signatures
# ---------------------------------------------------------------------------


def _int_root(n: int, k: int) -> Optional[int]:
    """Exact k-th root of n >= 1, or None."""
    if n == 1:
        return 1
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


@dataclass(frozen=True, eq=False)
class RootRational:
    """base ** (1/index) for a rational base in (0, 1] and integer index >= 1.

    The pair is kept as constructed (ampliation by m multiplies the index by
    m); equality, ordering and hashing go through cross-powering or a fully
    root-extracted normal form, so (1/8, 3) and (1/2, 1) denote the same rate.
    """

    base: Fraction
    index: int

    def _reduced(self) -> tuple:
        b, k = self.base, self.index
        if b == 1:
            return (Fraction(1), 1)
        j = 2
        while j <= k:
            while k % j == 0:
                rn = _int_root(b.numerator, j)
                rd = _int_root(b.denominator, j)
                if rn is None or rd is None:
                    break
                b = Fraction(rn, rd)
                k //= j
            j += 1
        return (b, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootRational):
            return NotImplemented
        return self.base ** other.index == other.base ** self.index

    def __hash__(self) -> int:
        return hash(self._reduced())

    def __lt__(self, other: "RootRational") -> bool:
        return self.base ** other.index < other.base ** self.index

    def describe(self) -> str:
        if self.index == 1:
            return str(self.base)
        return f"({self.base})^(1/{self.index})"


def root_rational(base, index: int = 1) -> RootRational:
    base = as_fraction(base)
    if base <= 0:
        raise ValueError(f"rate base must be positive, got {base}")
    if base == 1 or index < 1:
        return RootRational(Fraction(1), 1)
    return RootRational(base, index)


RATE_ONE = root_rational(1)


def _rate_mul(a: RootRational, b: RootRational) -> RootRational:
    return root_rational(a.base ** b.index * b.base ** a.index, a.index * b.index)


def _rate_pow(a: RootRational, k: int) -> RootRational:
    return root_rational(a.base ** k, a.index)


def _rate_root(a: RootRational, m: int) -> RootRational:
    return root_rational(a.base, a.index * m)


@dataclass(frozen=True, eq=False)
class AsymSig:
    """Asymptotic signature: decay rate, power and log power of the tail.

    rate None encodes a zero tail (finite support).  The strict order
    ``decays_faster`` is total: smaller rate wins, then larger power, then
    larger log power; a zero tail decays faster than everything else.
    """

    rate: Optional[RootRational]
    pow: Fraction = Fraction(0)
    logpow: Fraction = Fraction(0)

    @property
    def is_zero_tail(self) -> bool:
        return self.rate is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, AsymSig):
            return NotImplemented
        if self.is_zero_tail or other.is_zero_tail:
            return self.is_zero_tail and other.is_zero_tail
        return (
            self.rate == other.rate
            and self.pow == other.pow
            and self.logpow == other.logpow
        )

    def __hash__(self) -> int:
        if self.is_zero_tail:
            return hash("zero-tail")
        return hash((self.rate, self.pow, self.logpow))

    def describe(self) -> str:
        if self.is_zero_tail:
            return "zero-tail"
        return f"rate={self.rate.describe()}, pow={self.pow}, logpow={self.logpow}"


ZERO_TAIL = AsymSig(None)


def decays_faster(s: AsymSig, t: AsymSig) -> bool:
    """Strict total order: s decays strictly faster than t."""
    if s.is_zero_tail:
        return not t.is_zero_tail
    if t.is_zero_tail:
        return False
    if s.rate != t.rate:
        return s.rate < t.rate
    if s.pow != t.pow:
        return s.pow > t.pow
    return s.logpow > t.logpow


def _sig(expr: SequenceExpr) -> AsymSig:
    if isinstance(expr, Pow):
        return AsymSig(RATE_ONE, expr.p, Fraction(0))
    if isinstance(expr, Exp):
        return AsymSig(root_rational(expr.r), Fraction(0), Fraction(0))
    if isinstance(expr, PowLog):
        return AsymSig(RATE_ONE, expr.p, expr.q)
    if isinstance(expr, FiniteSupport):
        return ZERO_TAIL
    if isinstance(expr, Explicit):
        return _sig(expr.tail)
    if isinstance(expr, Scale):
        return _sig(expr.inner)
    if isinstance(expr, Ampliation):
        s = _sig(expr.inner)
        if s.is_zero_tail:
            return s
        return AsymSig(_rate_root(s.rate, expr.m), s.pow, s.logpow)
    if isinstance(expr, Subsample):
        s = _sig(expr.inner)
        if s.is_zero_tail:
            return s
        return AsymSig(_rate_pow(s.rate, expr.k), s.pow, s.logpow)
    if isinstance(expr, Product):
        a, b = _sig(expr.left), _sig(expr.right)
        if a.is_zero_tail or b.is_zero_tail:
            return ZERO_TAIL
        return AsymSig(_rate_mul(a.rate, b.rate), a.pow + b.pow, a.logpow + b.logpow)
    raise TypeError(type(expr).__name__)


def signature_of(expr: SequenceExpr) -> AsymSig:
    """Canonical asymptotic signature of a validated expression."""
    ensure_valid(expr)
    return _sig(expr)


def _asymptotic_scale(expr: SequenceExpr):
    """Limit of entry(n) / (n**-p * ln(n)**-q) for rate-one expressions.

    Exact Fraction when all exponents are integral, float otherwise; only
    meaningful when the signature rate is one (power-log decay class).
    """
    if isinstance(expr, (Pow, PowLog)):
        return Fraction(1)
    if isinstance(expr, Explicit):
        return _asymptotic_scale(expr.tail)
    if isinstance(expr, Scale):
        inner = _asymptotic_scale(expr.inner)
        return expr.c * inner if isinstance(inner, Fraction) else float(expr.c) * inner
    if isinstance(expr, Ampliation):
        s = _sig(expr.inner)
        inner = _asymptotic_scale(expr.inner)
        if s.pow.denominator == 1 and isinstance(inner, Fraction):
            return inner * Fraction(expr.m) ** s.pow.numerator
        return float(inner) * float(expr.m) ** float(s.pow)
    if isinstance(expr, Subsample):
        s = _sig(expr.inner)
        inner = _asymptotic_scale(expr.inner)
        if s.pow.denominator == 1 and isinstance(inner, Fraction):
            return inner / Fraction(expr.k) ** s.pow.numerator
        return float(inner) * float(expr.k) ** (-float(s.pow))
    if isinstance(expr, Product):
        a = _asymptotic_scale(expr.left)
        b = _asymptotic_scale(expr.right)
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a * b
        return float(a) * float(b)
    raise ValueError("asymptotic scale is defined only for rate-one expressions")


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------


def ampliate(m: int, expr: SequenceExpr) -> SequenceExpr:
    """Repeat each entry m times; identity at m = 1, nested ampliations fuse."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"ampliation index must be an integer >= 1, got {m}")
    if m == 1:
        return expr
    if isinstance(expr, Ampliation):
        return Ampliation(m * expr.m, expr.inner)
    return Ampliation(m, expr)


def subsample(k: int, expr: SequenceExpr) -> SequenceExpr:
    """Take every k-th entry; exponentials and finite supports rewrite in place."""
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"subsample step must be an integer >= 2, got {k}")
    if isinstance(expr, Exp):
        return Exp(expr.r ** k)
    if isinstance(expr, FiniteSupport):
        return FiniteSupport(expr.values[k - 1 :: k])
    if isinstance(expr, Scale):
        return Scale(expr.c, subsample(k, expr.inner))
    if isinstance(expr, Subsample):
        return Subsample(k * expr.k, expr.inner)
    return Subsample(k, expr)


# ---------------------------------------------------------------------------
# Symbolic comparison
# ---------------------------------------------------------------------------


def _limit_ratio_evidence(xi: SequenceExpr, eta: SequenceExpr, evidence: dict) -> None:
    """Attach the exact limiting ratio for same-signature rate-one pairs."""
    try:
        a = _asymptotic_scale(xi)
        b = _asymptotic_scale(eta)
    except ValueError:
        return
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        evidence["limiting_ratio"] = a / b
    else:
        evidence["limiting_ratio"] = float(a) / float(b)


def compare(xi: SequenceExpr, eta: SequenceExpr, mode: Mode) -> Verdict:
    """Decide xi = O(eta) or xi = o(eta) exactly via signatures.

    Same-signature pairs have eventually bounded ratio within the catalog,
    so big-O holds on signature equality; little-o needs strict dominance.
    Finite supports are compared by support length: the quantifier reading
    of both relations is satisfied exactly when xi's support is contained
    in eta's.
    """
    ensure_valid(xi)
    ensure_valid(eta)
    s, t = _sig(xi), _sig(eta)
    ev = {"xi_signature": s.describe(), "eta_signature": t.describe(), "mode": mode}
    if t.is_zero_tail:
        sx, sy = support(xi), support(eta)
        ev["xi_support"] = "infinite" if sx is None else sx
        ev["eta_support"] = sy
        if sx is not None and sx <= sy:
            return proven(Status.HOLDS, rule="support containment", **ev)
        reason = (
            "division by zero tail"
            if mode is Mode.BIG_O
            else "eta vanishes beyond its support while xi does not"
        )
        return proven(Status.FAILS, reason=reason, **ev)
    if mode is Mode.BIG_O:
        if s == t:
            ev["rule"] = "equal signatures; catalog ratio eventually bounded"
            _limit_ratio_evidence(xi, eta, ev)
            return proven(Status.HOLDS, **ev)
        if decays_faster(s, t):
            return proven(Status.HOLDS, rule="strict signature dominance", **ev)
        return proven(Status.FAILS, reason="xi decays strictly slower", **ev)
    # little-o
    if decays_faster(s, t):
        return proven(Status.HOLDS, rule="strict signature dominance", **ev)
    if s == t:
        ev["reason"] = "equal signatures; ratio does not tend to zero"
        if not s.is_zero_tail and s.rate == RATE_ONE:
            _limit_ratio_evidence(xi, eta, ev)
        return proven(Status.FAILS, **ev)
    return proven(Status.FAILS, reason="xi decays strictly slower", **ev)


def delta2_check(xi: SequenceExpr) -> Verdict:
    """Decide sup_n entry(n)/entry(2n) < inf.

    Power-log decay satisfies the condition with limiting ratio 2**p (the
    log correction tends to one); exponential-type decay violates it with
    unbounded ratio.
    """
    ensure_valid(xi)
    if support(xi) is not None:
        raise InvalidSequenceError(
            "delta2 condition is undefined for finite rank (finite support)"
        )
    s = _sig(xi)
    if s.rate == RATE_ONE:
        p = s.pow
        ratio = Fraction(2) ** p.numerator if p.denominator == 1 else 2.0 ** float(p)
        return proven(
            Status.HOLDS,
            limiting_ratio=ratio,
            rule="power-log class: dyadic ratio converges to 2**pow",
            signature=s.describe(),
        )
    return proven(
        Status.FAILS,
        rule="exponential class: dyadic ratio grows without bound",
        rate=s.rate.describe(),
        signature=s.describe(),
    )


# ---------------------------------------------------------------------------
# Numeric probe
# ---------------------------------------------------------------------------


def _probe_grid(n_max: int) -> list:
    ns = [1]
    while ns[-1] * GRID_RATIO <= n_max:
        ns.append(ns[-1] * GRID_RATIO)
    if ns[-1] != n_max:
        ns.append(n_max)
    return ns


def numeric_probe(
    xi: SequenceExpr,
    eta: SequenceExpr,
    mode: Mode,
    n_max: int = DEFAULT_NMAX,
    eps: float = DEFAULT_EPS,
) -> Verdict:
    """Sample the ratio xi/eta on a geometric grid; corroboration only.

    Little-o holds (indicated) when the ratio is monotone nonincreasing over
    the last half of the grid and the final ratio is below eps; it fails when
    the final ratio stays above eps without meaningful decrease.  Big-O holds
    when the running sup stabilizes (relative growth below eps over the last
    half); a tenfold sup increase is reported as failure.  Anything else is
    Unknown.  Ratios are computed in log space; residual overflow shrinks the
    grid and is noted in the evidence.
    """
    ensure_valid(xi)
    ensure_valid(eta)
    if n_max < 2 ** 10:
        raise ValueError(f"n_max must be at least 2**10, got {n_max}")
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")

    notes = []
    shrunk = False
    zero_tail_division = False
    while True:
        ns = _probe_grid(n_max)
        ratios = []
        overflow = False
        for n in ns:
            lx, ly = eval_log(xi, n), eval_log(eta, n)
            if ly == -math.inf:
                if lx == -math.inf:
                    ratios.append(0.0)
                else:
                    zero_tail_division = True
                    ratios.append(math.inf)
                continue
            diff = lx - ly
            if diff > _EXP_OVERFLOW:
                overflow = True
                ratios.append(math.inf)
            else:
                ratios.append(math.exp(diff))
        if zero_tail_division or not overflow or n_max // 2 < 2 ** 10:
            if overflow and not zero_tail_division:
                notes.append("ratio overflow persists at the minimum grid")
            break
        n_max //= 2
        shrunk = True
    if shrunk:
        notes.append(f"grid shrunk to n_max={n_max} to avoid overflow")

    window = ratios[len(ratios) // 2 :]
    final = ratios[-1]
    sup = max(ratios)
    ev = {
        "n_max": n_max,
        "grid_points": len(ratios),
        "final_ratio": final,
        "sup_ratio": sup,
        "window_start_ratio": window[0],
        "eps": eps,
        "mode": mode,
        "notes": notes,
    }

    if zero_tail_division:
        ev["reason"] = "division by zero tail"
        return indicated(Status.FAILS, **ev)

    if mode is Mode.LITTLE_O:
        monotone = all(b <= a * (1 + 1e-12) for a, b in zip(window, window[1:]))
        ev["monotone_window"] = monotone
        if monotone and final < eps:
            return indicated(Status.HOLDS, **ev)
        if final >= eps and final >= FLAT_FACTOR * window[0]:
            ev["reason"] = "ratio does not tend to zero"
            return indicated(Status.FAILS, **ev)
        return indicated(Status.UNKNOWN, **ev)

    sup_at_window = max(ratios[: len(ratios) // 2 + 1])
    ev["sup_at_window_start"] = sup_at_window
    if sup == 0.0:
        return indicated(Status.HOLDS, **ev)
    if math.isinf(sup):
        ev["reason"] = "ratio overflow"
        return indicated(Status.FAILS, **ev)
    growth = (sup - sup_at_window) / sup_at_window if sup_at_window else math.inf
    ev["sup_relative_growth"] = growth
    if growth < eps:
        return indicated(Status.HOLDS, **ev)
    if sup >= DIVERGENCE_FACTOR * sup_at_window:
        ev["reason"] = "running sup diverges"
        return indicated(Status.FAILS, **ev)
    return indicated(Status.UNKNOWN, **ev)
