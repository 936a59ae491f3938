"""Calculus of proper two-sided operator ideals via characteristic sets.

An ideal is presented as the finite-rank ideal, the compact ideal, a
principal ideal with a symbolic generator sequence, or a product of such.
Membership of a sequence in a principal ideal means being big-O of some
ampliation of the generator; the product with the compact ideal (the soft
edge) tightens big-O to little-o.  All decisions reduce to exact signature
comparisons in :mod:`idealkit.seqspace`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .seqspace import (
    Mode,
    Product,
    RATE_ONE,
    SequenceExpr,
    Status,
    Verdict,
    ZERO_TAIL,
    ampliate,
    compare,
    delta2_check,
    ensure_valid,
    proven,
    signature_of,
    subsample,
    support,
)

__all__ = [
    "Compact",
    "FiniteRank",
    "IdealExpr",
    "InternalInconsistencyError",
    "Principal",
    "ProductIdeal",
    "ZeroIdealError",
    "COMPACT",
    "FINITE_RANK",
    "ImplicationReport",
    "implication_report",
    "is_idempotent",
    "is_soft",
    "make_ideal",
    "member",
    "necessary_soft_condition",
]


class ZeroIdealError(ValueError):
    """An identically zero generator gives the zero ideal, which is not modeled."""


class InternalInconsistencyError(RuntimeError):
    """A proven implication between verdicts was violated; signals a bug."""


class IdealExpr:
    """Base class for ideal presentations."""

    __slots__ = ()


@dataclass(frozen=True)
class FiniteRank(IdealExpr):
    """The ideal of finite rank operators; characteristic set = finite supports."""


@dataclass(frozen=True)
class Compact(IdealExpr):
    """The ideal of compact operators; characteristic set = all of c0*."""


@dataclass(frozen=True)
class Principal(IdealExpr):
    """The smallest two-sided ideal whose characteristic set contains gen."""

    gen: SequenceExpr


@dataclass(frozen=True)
class ProductIdeal(IdealExpr):
    """Product of two ideals: sequences dominated by a product of members."""

    left: IdealExpr
    right: IdealExpr


FINITE_RANK = FiniteRank()
COMPACT = Compact()


def _collect_factors(ideal: IdealExpr, gens: list, flags: dict) -> None:
    if isinstance(ideal, ProductIdeal):
        _collect_factors(ideal.left, gens, flags)
        _collect_factors(ideal.right, gens, flags)
        return
    normalized = make_ideal(ideal)
    if isinstance(normalized, FiniteRank):
        flags["finite"] = True
    elif isinstance(normalized, Compact):
        flags["compact"] = True
    elif isinstance(normalized, Principal):
        gens.append(normalized.gen)
    else:  # normalized ProductIdeal: principal-or-compact core times special factor
        _collect_factors(normalized.left, gens, flags)
        if isinstance(normalized.right, FiniteRank):
            flags["finite"] = True
        else:
            flags["compact"] = True


def make_ideal(ideal: IdealExpr) -> IdealExpr:
    """Normalize an ideal presentation.

    Products of principal ideals reduce to the principal ideal of the
    pointwise product of generators (ampliation distributes over pointwise
    products, and a larger ampliation index dominates a smaller one, so the
    two characteristic sets coincide).  Products with the compact or
    finite-rank ideal are kept symbolic with a single special factor on the
    right; a finite-rank generator collapses to the finite-rank ideal.
    """
    if isinstance(ideal, (FiniteRank, Compact)):
        return ideal
    if isinstance(ideal, Principal):
        ensure_valid(ideal.gen)
        s = support(ideal.gen)
        if s == 0:
            raise ZeroIdealError(
                "the zero sequence generates the zero ideal; not a proper ideal model"
            )
        if s is not None:
            return FINITE_RANK
        return ideal
    if isinstance(ideal, ProductIdeal):
        gens: list = []
        flags = {"finite": False, "compact": False}
        _collect_factors(ideal.left, gens, flags)
        _collect_factors(ideal.right, gens, flags)
        core = None
        if gens:
            folded = gens[0]
            for g in gens[1:]:
                folded = Product(folded, g)
            core = Principal(folded)
        if flags["finite"]:
            if core is None and not flags["compact"]:
                return FINITE_RANK
            return ProductIdeal(core if core is not None else COMPACT, FINITE_RANK)
        if flags["compact"]:
            if core is None:
                return COMPACT
            return ProductIdeal(core, COMPACT)
        assert core is not None
        return core
    raise TypeError(f"not an IdealExpr: {type(ideal).__name__}")


def _min_ampliation(xi_sig, gen_sig, gen: SequenceExpr, xi: SequenceExpr, mode: Mode):
    """Smallest m such that xi relates to the m-fold ampliation of gen.

    Only called with an exponential-type generator and xi of exponential
    type or finite support, where a certifying m always exists: the
    ampliated rate base**(1/(index*m)) increases toward one with m.
    """
    bx, ix = gen_sig.rate.base, gen_sig.rate.index
    if xi_sig.is_zero_tail:
        estimate = 1
    else:
        bh, ih = xi_sig.rate.base, xi_sig.rate.index
        # rate(gen)^(1/m) >= rate(xi)  <=>  m >= ih*ln(bx) / (ix*ln(bh))
        estimate = max(
            1,
            math.ceil(
                (ih * math.log(float(bx))) / (ix * math.log(float(bh)))
            ),
        )
    # The certifying set is an upward-closed range starting at the analytic
    # bound (give or take the signature-equality boundary), so probing a
    # small window around the float estimate plus the small indices finds
    # the least certifying m; every candidate is verified exactly.
    candidates = sorted(
        set(range(1, min(estimate, 8) + 1))
        | {m for m in range(estimate - 2, estimate + 5) if m >= 1}
    )
    for m in candidates:
        if compare(xi, ampliate(m, gen), mode).holds:
            return m
    raise InternalInconsistencyError(
        "no certifying ampliation index found near the analytic bound"
    )


def _member_principal(xi: SequenceExpr, gen: SequenceExpr, mode: Mode) -> Verdict:
    gen_sig = signature_of(gen)
    if gen_sig.is_zero_tail:
        return _member_finite(xi)
    if gen_sig.rate == RATE_ONE:
        # Ampliation leaves a rate-one signature fixed: testing m = 1 decides.
        v = compare(xi, gen, mode)
        ev = dict(v.evidence)
        ev["m"] = 1
        ev["ampliation_rule"] = "rate-one generator: ampliation preserves the signature"
        return Verdict(v.status, v.method, ev)
    xi_sig = signature_of(xi)
    ev = {
        "xi_signature": xi_sig.describe(),
        "generator_signature": gen_sig.describe(),
        "mode": mode,
    }
    if xi_sig.is_zero_tail:
        return proven(Status.HOLDS, m=1, rule="finite support", **ev)
    if xi_sig.rate == RATE_ONE:
        return proven(
            Status.FAILS,
            reason="power-log decay is never dominated by an ampliated exponential",
            **ev,
        )
    m = _min_ampliation(xi_sig, gen_sig, gen, xi, mode)
    return proven(Status.HOLDS, m=m, rule="ampliated-rate dominance", **ev)


def _member_finite(xi: SequenceExpr) -> Verdict:
    s = support(xi)
    if s is not None:
        return proven(Status.HOLDS, rule="finite support", support=s)
    return proven(Status.FAILS, reason="infinite support", support="infinite")


def member(xi: SequenceExpr, ideal: IdealExpr) -> Verdict:
    """Decide membership of the sequence in the (normalized) ideal."""
    ensure_valid(xi)
    ideal = make_ideal(ideal)
    if isinstance(ideal, Compact):
        return proven(Status.HOLDS, rule="the compact ideal contains every null sequence")
    if isinstance(ideal, FiniteRank):
        return _member_finite(xi)
    if isinstance(ideal, Principal):
        return _member_principal(xi, ideal.gen, Mode.BIG_O)
    if isinstance(ideal, ProductIdeal):
        if isinstance(ideal.right, FiniteRank):
            v = _member_finite(xi)
            ev = dict(v.evidence)
            ev["rule"] = "finite-rank factor absorbs the product"
            return Verdict(v.status, v.method, ev)
        core = ideal.left
        if isinstance(core, Compact):
            return proven(Status.HOLDS, rule="compact times compact is compact")
        return _member_principal(xi, core.gen, Mode.LITTLE_O)
    raise TypeError(type(ideal).__name__)


def is_soft(ideal: IdealExpr) -> Verdict:
    """Decide softness: the ideal equals its product with the compact ideal.

    For a principal ideal with infinite-rank generator this is the
    subsampling criterion: some k-fold subsample of the generator must be
    little-o of the generator; within the catalog testing k = 2 decides.
    Idempotent ideals (finite-rank, compact) are soft, and products with the
    compact ideal are soft by construction.
    """
    ideal = make_ideal(ideal)
    if isinstance(ideal, (FiniteRank, Compact)):
        return proven(Status.HOLDS, rule="idempotent ideal, hence soft")
    if isinstance(ideal, ProductIdeal):
        if isinstance(ideal.right, Compact):
            return proven(Status.HOLDS, rule="soft by construction: compact factor")
        return proven(Status.HOLDS, rule="finite-rank factor: the product is finite-rank, hence soft")
    gen = ideal.gen
    k = 2
    v = compare(subsample(k, gen), gen, Mode.LITTLE_O)
    ev = dict(v.evidence)
    ev["k"] = k
    ev["criterion"] = "subsampled generator little-o of generator"
    return Verdict(v.status, v.method, ev)


def is_idempotent(ideal: IdealExpr) -> Verdict:
    """Decide whether the ideal equals its own square."""
    ideal = make_ideal(ideal)
    if isinstance(ideal, (FiniteRank, Compact)):
        return proven(Status.HOLDS, rule="classically idempotent ideal")
    if isinstance(ideal, ProductIdeal):
        if isinstance(ideal.right, FiniteRank):
            return proven(Status.HOLDS, rule="reduces to the finite-rank ideal")
        gen_sig = signature_of(ideal.left.gen)
        if gen_sig.rate != RATE_ONE:
            return proven(Status.HOLDS, rule="exponential-type soft edge is idempotent")
        return proven(
            Status.FAILS,
            reason="rate-one soft edge: the squared generator class is strictly smaller",
        )
    gen = ideal.gen
    v = member(gen, Principal(Product(gen, gen)))
    ev = dict(v.evidence)
    ev["criterion"] = "generator big-O of an ampliated squared generator"
    return Verdict(v.status, v.method, ev)


def necessary_soft_condition(xi: SequenceExpr) -> Verdict:
    """Necessary condition for softness of the principal ideal of xi:
    xi is little-o of one of its own proper ampliations."""
    ensure_valid(xi)
    if support(xi) is not None:
        raise ValueError("necessary softness condition needs infinite support")
    sig = signature_of(xi)
    if sig.rate != RATE_ONE:
        m = 2
        v = compare(xi, ampliate(m, xi), Mode.LITTLE_O)
        ev = dict(v.evidence)
        ev["m"] = m
        return Verdict(v.status, v.method, ev)
    v = compare(xi, ampliate(2, xi), Mode.LITTLE_O)
    ev = dict(v.evidence)
    ev["m"] = 2
    ev["reason"] = "ampliation preserves a rate-one signature; the ratio has a positive limit"
    return Verdict(v.status, v.method, ev)


@dataclass(frozen=True)
class ImplicationReport:
    """Joint verdicts for the principal ideal of one generator, with the
    implication chain between them re-checked."""

    generator: SequenceExpr
    delta2: Verdict
    soft: Verdict
    idempotent: Verdict
    necessary: Verdict
    flags: tuple

    def to_json(self) -> dict:
        return {
            "delta2": self.delta2.to_json(),
            "soft": self.soft.to_json(),
            "idempotent": self.idempotent.to_json(),
            "necessary_condition": self.necessary.to_json(),
            "implication_flags": [
                {"implication": name, "consistent": ok} for name, ok in self.flags
            ],
        }


def implication_report(xi: SequenceExpr) -> ImplicationReport:
    """Run the four principal-ideal diagnostics and verify their implications.

    delta2 forces non-softness; idempotency forces softness; softness forces
    the necessary ampliation condition.  A violated implication is an
    internal inconsistency, never a valid output.
    """
    ensure_valid(xi)
    if support(xi) is not None:
        raise ValueError("implication report needs an infinite-support generator")
    ideal = Principal(xi)
    d2 = delta2_check(xi)
    soft = is_soft(ideal)
    idem = is_idempotent(ideal)
    nec = necessary_soft_condition(xi)
    flags = (
        ("delta2 holds => not soft", not (d2.holds and soft.holds)),
        ("idempotent => soft", not (idem.holds and not soft.holds)),
        ("soft => necessary condition", not (soft.holds and not nec.holds)),
    )
    for name, ok in flags:
        if not ok:
            raise InternalInconsistencyError(f"violated implication: {name}")
    return ImplicationReport(xi, d2, soft, idem, nec, flags)
