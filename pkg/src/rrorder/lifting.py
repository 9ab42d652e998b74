"""Lifting orthogonal pairs and families across ring surjections.

Given a surjection phi: R -> S and elements s, s' of S with infimum
zero, both algorithms here produce r' with phi(r') = s' whose infimum
with a prescribed lift r of s is zero.  The direct algorithm needs every
pair in R to have an infimum: pick any preimage t of s', set k to the
infimum of r and t (a kernel element), and return t + k.  The chain
algorithm instead grows a strictly ascending chain of common lower
bounds of r and t one orthogonal increment at a time; on a finite ring
the chain must stop, and it stops precisely at a maximal bound, after
which t plus the accumulated bound is orthogonal to r.

Families are lifted one element at a time: each new target is lifted
against every previously lifted element, and the results are folded with
infima.  That fold maps back onto the target only when phi preserves
pairwise infima, which holds for every quotient by an ideal generated by
idempotents; ``verify_preservation`` checks that exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import order
from .rings import FiniteRing, Surjection, format_element, quotient


class LiftError(Exception):
    """A lift violated its contract (wrong image or nonzero infimum)."""


class ChainBudgetExceededError(Exception):
    """The lower-bound chain failed to terminate within the step budget."""

    def __init__(self, steps, chain):
        super().__init__(
            f"chain still ascending after {steps} steps; "
            "the ring has no maximal bound on this pair"
        )
        self.steps = steps
        self.chain = tuple(chain)


@dataclass
class LiftProblem:
    """A pair-lifting instance: phi, targets s and s', and a lift r of s.

    ``assume_targets_orthogonal`` skips the infimum check on (s, s') in
    the target; callers set it when the target ring is not enumerable
    and orthogonality was established by other means.
    """

    phi: Surjection
    s: object
    s_prime: object
    r: object
    assume_targets_orthogonal: bool = False

    def validate(self):
        R, S = self.phi.source, self.phi.target
        if self.phi(self.r) != self.s:
            raise ValueError("r is not a preimage of s")
        if not self.assume_targets_orthogonal:
            if order.inf_rr(S, self.s, self.s_prime) != S.zero:
                raise ValueError(
                    f"targets {format_element(self.s)}, "
                    f"{format_element(self.s_prime)} are not orthogonal"
                )
        return R, S


@dataclass(frozen=True)
class PairLift:
    """Result of the direct algorithm: r' = t + k with its transcript."""

    r_prime: object
    t: object  # the chosen preimage of s'
    k: object  # inf(r, t), a kernel element


@dataclass(frozen=True)
class ChainLift:
    """Result of the chain algorithm with the accumulated bound chain."""

    r_prime: object
    t: object
    chain: tuple  # strictly ascending accumulated bounds
    steps: int


def lift_pair_rrgood(problem: LiftProblem) -> PairLift:
    """Direct lift: t + inf(r, t) for the first preimage t of s'."""
    R, S = problem.validate()
    if not isinstance(R, FiniteRing):
        raise TypeError("the direct algorithm enumerates infima; use a finite source")
    t = problem.phi.section(problem.s_prime)
    k = order.inf_rr(R, problem.r, t)
    if k is None:
        raise order.NoInfimumError(
            f"{R.name} has no infimum for the lift of "
            f"{format_element(problem.s_prime)}; the source is not rr-good"
        )
    r_prime = R.add(t, k)
    _check_pair(problem, r_prime)
    return PairLift(r_prime=r_prime, t=t, k=k)


def lift_pair_chain(problem: LiftProblem, max_steps: int = 1000) -> ChainLift:
    """Chain lift: grow bounds of (r, t) until the orthogonality certificate.

    Each step adds a nonzero common lower bound of r and t plus the
    accumulated bound; the accumulated bounds ascend strictly, so on a
    finite ring the certificate fires within the ring's height.  A step
    budget converts non-termination elsewhere into a reported error.
    """
    R, S = problem.validate()
    t = problem.phi.section(problem.s_prime)
    acc = order._first_nonzero_lower_bound(R, problem.r, t)
    chain = []
    steps = 0
    if acc is not None:
        chain.append(acc)
        while True:
            steps += 1
            if steps > max_steps:
                raise ChainBudgetExceededError(steps, chain)
            step = order.chain_extend(R, problem.r, t, acc)
            if step.orthogonal:
                break
            acc = R.add(acc, step.k2)
            chain.append(acc)
    r_prime = R.add(t, acc) if acc is not None else t
    _check_pair(problem, r_prime)
    return ChainLift(r_prime=r_prime, t=t, chain=tuple(chain), steps=steps)


def _check_pair(problem: LiftProblem, r_prime) -> None:
    R = problem.phi.source
    if problem.phi(r_prime) != problem.s_prime:
        raise LiftError("lift has the wrong image")
    if isinstance(R, FiniteRing):
        if order.inf_rr(R, problem.r, r_prime) != R.zero:
            raise LiftError("lifted pair is not orthogonal")
    elif hasattr(R, "infimum_or_none"):
        got = R.infimum_or_none(problem.r, r_prime)
        if got != R.zero:
            raise LiftError("lifted pair is not orthogonal")


def surjection_preserves_infima(phi: Surjection) -> bool:
    """Exhaustively check phi(inf(a, b)) == inf(phi(a), phi(b)).

    Pairs without an infimum in the source are skipped.  The verdict is
    cached on the surjection.
    """
    cached = getattr(phi, "_preserves_infima", None)
    if cached is not None:
        return cached
    R, S = phi.source, phi.target
    ok = True
    for a in R.elements:
        for b in R.elements:
            c = order.inf_rr(R, a, b)
            if c is None:
                continue
            if phi(c) != order.inf_rr(S, phi(a), phi(b)):
                ok = False
                break
        if not ok:
            break
    phi._preserves_infima = ok
    return ok


def lift_family(phi: Surjection, targets, check_preservation: bool = True) -> list:
    """Lift pairwise-orthogonal targets to a pairwise-orthogonal family.

    Each new target is lifted against every existing element of the
    family via the direct algorithm, and the lifts are folded with
    infima.  Preservation of infima by phi (checked exhaustively unless
    disabled) guarantees the fold still maps onto the target.
    """
    R, S = phi.source, phi.target
    targets = list(targets)
    for i, s in enumerate(targets):
        for s2 in targets[i + 1:]:
            if order.inf_rr(S, s, s2) != S.zero:
                raise ValueError(
                    f"targets {format_element(s)} and {format_element(s2)} "
                    "are not orthogonal"
                )
    if check_preservation and not surjection_preserves_infima(phi):
        raise LiftError(
            f"{phi!r} does not preserve pairwise infima; family lifting "
            "is not available over it"
        )
    lifted: list = []
    for s_next in targets:
        if not lifted:
            lifted.append(phi.section(s_next))
            continue
        lifts_against = [
            lift_pair_rrgood(
                LiftProblem(phi=phi, s=phi(r_i), s_prime=s_next, r=r_i)
            ).r_prime
            for r_i in lifted
        ]
        folded = lifts_against[0]
        for t in lifts_against[1:]:
            folded = order.inf_rr(R, folded, t)
            if folded is None:
                raise order.NoInfimumError("fold hit a pair with no infimum")
        if phi(folded) != s_next:
            raise LiftError("fold lost the target image")
        for r_i in lifted:
            if order.inf_rr(R, folded, r_i) != R.zero:
                raise LiftError("fold is not orthogonal to the family")
        lifted.append(folded)
    return lifted


@dataclass
class PreservationReport:
    """Exhaustive infimum-preservation audit of an idempotent quotient."""

    ring_name: str
    quotient_name: str
    pairs_checked: int
    failures: tuple
    source_rr_good: bool
    quotient_rr_good: bool
    quotient: object = field(repr=False, default=None)
    surjection: object = field(repr=False, default=None)

    @property
    def preserved(self) -> bool:
        return not self.failures

    @property
    def rr_good_inherited(self) -> bool:
        return (not self.source_rr_good) or self.quotient_rr_good

    def as_dict(self) -> dict:
        return {
            "ring": self.ring_name,
            "quotient": self.quotient_name,
            "pairs_checked": self.pairs_checked,
            "failures": [
                [format_element(a), format_element(b)] for a, b in self.failures
            ],
            "source_rr_good": self.source_rr_good,
            "quotient_rr_good": self.quotient_rr_good,
        }


def verify_preservation(R: FiniteRing, idempotent_gens) -> PreservationReport:
    """Build R/(gens) for idempotent gens and audit infimum preservation.

    Also records whether the quotient is rr-good whenever the source is.
    """
    for e in idempotent_gens:
        if R.mul(e, e) != e:
            raise ValueError(f"{format_element(e)} is not idempotent")
    S, phi = quotient(R, idempotent_gens)
    failures = []
    pairs = 0
    for a in R.elements:
        for b in R.elements:
            c = order.inf_rr(R, a, b)
            if c is None:
                continue
            pairs += 1
            if phi(c) != order.inf_rr(S, phi(a), phi(b)):
                failures.append((a, b))
    return PreservationReport(
        ring_name=R.name,
        quotient_name=S.name,
        pairs_checked=pairs,
        failures=tuple(failures),
        source_rr_good=order.classify(R).rr_good,
        quotient_rr_good=order.classify(S).rr_good,
        quotient=S,
        surjection=phi,
    )
