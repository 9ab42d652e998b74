"""The reduced-ring partial order and its order-theoretic machinery.

On a reduced ring, ``a <= b`` holds when a*a == a*b.  Zero is the unique
minimal element and non-zero-divisors are maximal.  This module provides
the predicate, exhaustive lower-bound enumeration, infima (an enumerating
oracle plus the idempotent-annihilator fast path available on weakly Baer
rings), ring classification, the largest idempotent of an annihilator,
the lower-bound chain step used by the lifting algorithms, and the
quadratic closure construction.

Everything here works uniformly over any object exposing the FiniteRing
interface; the predicate itself only needs ``mul`` and value equality, so
it also serves the infinite rings in the bivariate and sequence modules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import FiniteRing, ensure_enumerable, format_element


class NotWeaklyBaerError(Exception):
    """An annihilator has no single idempotent generator."""


class NoInfimumError(Exception):
    """A pair of elements has no greatest lower bound."""


def le_rr(R, a, b) -> bool:
    """The reduced-ring order predicate: a*a == a*b."""
    return R.mul(a, a) == R.mul(a, b)


@dataclass(frozen=True)
class OrderWitness:
    """A verdict for a <= b together with the defining equation's value."""

    a: object
    b: object
    verdict: bool
    certificate: object  # a*a - a*b, zero exactly when the verdict is true


def order_witness(R, a, b) -> OrderWitness:
    cert = R.sub(R.mul(a, a), R.mul(a, b))
    return OrderWitness(a=a, b=b, verdict=cert == R.zero, certificate=cert)


def lower_set_table(R: FiniteRing, cap: int | None = None) -> dict:
    """For each b, the frozenset of all a with a <= b.  Cached per ring."""
    table = R._cache.get("lower_sets")
    if table is None:
        ensure_enumerable(R, cap)
        table = {
            b: frozenset(a for a in R.elements if le_rr(R, a, b))
            for b in R.elements
        }
        R._cache["lower_sets"] = table
    return table


def lower_bounds(R: FiniteRing, a, b, cap: int | None = None) -> frozenset:
    """All c with c <= a and c <= b; always contains zero."""
    table = lower_set_table(R, cap)
    return table[a] & table[b]


def inf_rr(R: FiniteRing, a, b, cap: int | None = None):
    """Greatest lower bound of a and b, or None when no bound dominates.

    This is the enumerating oracle: it scans the full lower-bound set and
    returns the unique element dominating every other bound.
    """
    bounds = lower_bounds(R, a, b, cap)
    for c in bounds:
        if all(le_rr(R, k, c) for k in bounds):
            return c
    return None


def maximal_lower_bounds(R: FiniteRing, a, b, cap: int | None = None) -> tuple:
    """The antichain of maximal lower bounds (a singleton iff the inf exists)."""
    bounds = lower_bounds(R, a, b, cap)
    out = [
        c
        for c in bounds
        if not any(k != c and le_rr(R, c, k) for k in bounds)
    ]
    return tuple(sorted(out, key=R.index))


def rr_orthogonal(R: FiniteRing, a, b) -> bool:
    """True when the infimum of a and b exists and is zero."""
    return inf_rr(R, a, b) == R.zero


def idempotents(R: FiniteRing, cap: int | None = None) -> tuple:
    """All e with e*e == e, in enumeration order.  Cached per ring."""
    idems = R._cache.get("idempotents")
    if idems is None:
        ensure_enumerable(R, cap)
        idems = tuple(e for e in R.elements if R.mul(e, e) == e)
        R._cache["idempotents"] = idems
    return idems


def annihilator(R: FiniteRing, a) -> tuple:
    """All x with x*a == 0, in enumeration order."""
    return tuple(x for x in R.elements if R.mul(x, a) == R.zero)


def idempotent_join(R, e, f):
    """Join in the idempotent lattice: e + f - e*f."""
    return R.sub(R.add(e, f), R.mul(e, f))


def ann_idempotent_generator(R: FiniteRing, a):
    """The idempotent e with ann(a) = e*R, or None if there is none.

    The only candidate is the join of all idempotents inside the
    annihilator; the annihilator is idempotent-generated exactly when
    that join absorbs every annihilator element.
    """
    ann = annihilator(R, a)
    ann_set = set(ann)
    m = R.zero
    for e in idempotents(R):
        if e in ann_set:
            m = idempotent_join(R, m, e)
    if all(R.mul(m, x) == x for x in ann):
        return m
    return None


def inf_rr_wb(R: FiniteRing, a, b):
    """Infimum via the weakly Baer fast path: e*a where e*R = ann(a - b)."""
    e = ann_idempotent_generator(R, R.sub(a, b))
    if e is None:
        raise NotWeaklyBaerError(
            f"ann({format_element(R.sub(a, b))}) in {R.name} has no "
            "idempotent generator"
        )
    return R.mul(e, a)


@dataclass
class ClassificationReport:
    """Per-ring verdicts with witnesses for any failures."""

    ring_name: str
    rr_good: bool
    rr_good_failure: tuple | None  # (a, b, maximal antichain) when False
    wb: bool
    wb_failure: object | None  # element whose annihilator is not e*R
    awb: bool
    awb_failure: object | None
    indecomposable: bool
    idempotent_count: int

    def as_dict(self) -> dict:
        fmt = format_element
        return {
            "ring": self.ring_name,
            "rr_good": self.rr_good,
            "rr_good_failure": (
                None
                if self.rr_good_failure is None
                else [fmt(self.rr_good_failure[0]), fmt(self.rr_good_failure[1])]
            ),
            "wB": self.wb,
            "wB_failure": (
                None if self.wb_failure is None else fmt(self.wb_failure)
            ),
            "awB": self.awb,
            "awB_failure": (
                None if self.awb_failure is None else fmt(self.awb_failure)
            ),
            "indecomposable": self.indecomposable,
            "idempotent_count": self.idempotent_count,
        }


def classify(R: FiniteRing, cap: int | None = None) -> ClassificationReport:
    """Exhaustive classification: rr-good, wB, awB, indecomposability.

    awB asks whether each annihilator equals the ideal generated by its
    own idempotent members; with finitely many idempotents that ideal is
    generated by their join, so the check reuses the wB candidate.
    """
    cached = R._cache.get("classification")
    if cached is not None:
        return cached
    ensure_enumerable(R, cap)

    rr_good, rr_fail = True, None
    for a in R.elements:
        for b in R.elements:
            if inf_rr(R, a, b, cap) is None:
                rr_good = False
                rr_fail = (a, b, maximal_lower_bounds(R, a, b, cap))
                break
        if not rr_good:
            break

    wb, wb_fail = True, None
    awb, awb_fail = True, None
    for a in R.elements:
        e = ann_idempotent_generator(R, a)
        if e is None:
            if wb:
                wb, wb_fail = False, a
            # the join of the annihilator's idempotents failed to absorb
            # it, so the annihilator is not generated by idempotents at all
            if awb:
                awb, awb_fail = False, a
    idem_count = len(idempotents(R, cap))
    indecomposable = idem_count == (1 if R.is_trivial else 2)

    report = ClassificationReport(
        ring_name=R.name,
        rr_good=rr_good,
        rr_good_failure=rr_fail,
        wb=wb,
        wb_failure=wb_fail,
        awb=awb,
        awb_failure=awb_fail,
        indecomposable=indecomposable,
        idempotent_count=idem_count,
    )
    # structural sanity: wB implies awB, and on finite rings wB implies rr-good
    if report.wb and not report.awb:
        raise AssertionError("classification violated wB => awB")
    if report.wb and not report.rr_good:
        raise AssertionError("classification violated wB => rr-good")
    R._cache["classification"] = report
    return report


def largest_idempotent_in_ann(R: FiniteRing, a):
    """The maximum idempotent of ann(a), computed as inf(1, 1 - a).

    Raises NoInfimumError when that infimum is missing (which cannot
    happen on a ring where every pair has an infimum).
    """
    e = inf_rr(R, R.one, R.sub(R.one, a))
    if e is None:
        raise NoInfimumError(
            f"{R.name} has no infimum for (1, 1 - {format_element(a)}); "
            "the ring is not rr-good"
        )
    if R.mul(e, e) != e or R.mul(e, a) != R.zero:
        raise AssertionError("inf(1, 1-a) must be an idempotent killing a")
    return e


@dataclass(frozen=True)
class ChainStep:
    """Outcome of one lower-bound chain step.

    Either ``orthogonal`` is True (r and s + k1 have no nonzero common
    lower bound, so their infimum is 0), or ``k2`` is a nonzero common
    lower bound of r and s + k1 with k1*k2 == 0 and k1 < k1 + k2 <= r, s.
    """

    orthogonal: bool
    k2: object | None


@dataclass
class ChainState:
    """Accumulated state while iterating chain steps."""

    r: object
    s: object
    bound: object  # k1 + k2 + ... so far
    steps: int


def _first_nonzero_lower_bound(R, a, b):
    """First nonzero common lower bound in canonical order, or None.

    Sequence rings provide their own search; finite rings scan the
    cached lower-bound sets.
    """
    if isinstance(R, FiniteRing):
        bounds = lower_bounds(R, a, b)
        nonzero = [c for c in bounds if c != R.zero]
        if not nonzero:
            return None
        return min(nonzero, key=R.index)
    return R.nonzero_lower_bound(a, b)


def chain_extend(R, r, s, k1) -> ChainStep:
    """One step of the lower-bound chain construction.

    Requires 0 != k1 <= r, s.  Returns the orthogonality certificate when
    r and s + k1 have no nonzero common lower bound; otherwise returns
    the first such bound k2 (deterministic by enumeration order) after
    checking k1*k2 == 0, k1 + k2 <= r, s and k1 <= k1 + k2.
    """
    if k1 == R.zero:
        raise ValueError("chain step needs a nonzero starting bound")
    if not (le_rr(R, k1, r) and le_rr(R, k1, s)):
        raise ValueError("chain step needs k1 <= r and k1 <= s")
    k2 = _first_nonzero_lower_bound(R, r, R.add(s, k1))
    if k2 is None:
        return ChainStep(orthogonal=True, k2=None)
    k12 = R.add(k1, k2)
    ok = (
        R.mul(k1, k2) == R.zero
        and le_rr(R, k12, r)
        and le_rr(R, k12, s)
        and le_rr(R, k1, k12)
    )
    if not ok:
        raise AssertionError("chain step produced an invalid bound")
    return ChainStep(orthogonal=False, k2=k2)


def quadratic_closure(S: FiniteRing, start, cap: int | None = None) -> "SubRing":
    """Iteratively adjoin all roots in S of x*x - r*x for r already collected.

    ``start`` may be a subring or an element set; iteration continues to a
    fixpoint.  The resulting subring inherits every pairwise infimum that
    exists in S, so it is again a lower semi-lattice whenever S is.
    """
    from .rings import SubRing, subring_closure

    ensure_enumerable(S, cap)
    if isinstance(start, FiniteRing):
        base = set(start.elements)
    else:
        base = set(start)
    current = subring_closure(S, base)
    while True:
        have = set(current.elements)
        roots = {
            x
            for x in S.elements
            if any(S.mul(x, x) == S.mul(x, r) for r in have)
        }
        if roots <= have:
            return current
        current = subring_closure(S, have | roots)
