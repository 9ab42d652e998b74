"""Rings of sequences over A that are eventually a constant from B.

An element is a finite prefix of values from the coefficient ring A
followed by a constant tail drawn from a designated subring B of A.
Arithmetic is pointwise, the spectrum is the one-point compactification
of the naturals (coordinates plus a point at infinity), the stalk at a
finite point is A and the stalk at infinity is B, and every support is
clopen by construction (finite without infinity, or cofinite with it).

Infimum existence is decidable: the pointwise infima of two elements are
eventually the constant d, the infimum of the two tails computed in A,
and the pair has an infimum exactly when d lies in B.  When it does not,
no single element can match the pointwise infima cofinally, and the
module returns a strictly ascending chain of lower bounds as a witness
that greatest lower bounds are genuinely missing, even though supports
are clopen and all stalks are lower semi-lattices.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import order
from .bivariate import BivarRing, GeneratedSubalgebra
from .rings import FiniteRing, Surjection

INF = float("inf")  # the compactification point


@dataclass(frozen=True)
class SeqElem:
    """A finite prefix over A and a constant tail from B.

    Canonical form trims prefix entries equal to the tail, so structural
    equality is semantic equality.
    """

    prefix: tuple
    tail: object

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)


@dataclass(frozen=True)
class SeqSupport:
    """A subset of N u {inf}: either a finite set of coordinates, or a
    cofinite set containing infinity (points holds the complement)."""

    cofinite: bool
    points: frozenset

    def contains(self, n) -> bool:
        if n == INF:
            return self.cofinite
        return (n in self.points) != self.cofinite

    @property
    def is_clopen(self) -> bool:
        # finite-and-missing-infinity or cofinite-and-containing-infinity
        # is exactly the clopen criterion in the one-point compactification
        return True

    def complement(self) -> "SeqSupport":
        return SeqSupport(cofinite=not self.cofinite, points=self.points)

    def describe(self) -> str:
        pts = ",".join(str(int(p)) for p in sorted(self.points))
        if self.cofinite:
            return f"all n except {{{pts}}}, with inf" if pts else "everything"
        return f"{{{pts}}}" if pts else "empty"


@dataclass
class InfDecision:
    """Outcome of the infimum decision procedure for one pair."""

    exists: bool
    infimum: SeqElem | None
    pointwise_tail: object  # d, the infimum of the tails computed in A
    d_in_tails: bool
    tail_bound: object | None  # the tail used by the witness chain
    tail_bound_antichain: tuple = ()
    chain: tuple = ()  # strictly ascending lower bounds when no infimum


@dataclass
class SpectrumDescription:
    finite_points: str
    limit_point: object

    def __repr__(self):
        return f"<spectrum {self.finite_points} + {self.limit_point}>"


class SeqRing:
    """Sequences from A eventually constant in B, with decidable order."""

    kind = "seqring"
    is_sequence_ring = True

    def __init__(self, coeff_ring, tails, name: str | None = None):
        if not hasattr(tails, "contains"):
            raise TypeError("tails must provide a membership oracle")
        self.A = coeff_ring
        self.B = tails
        tail_name = getattr(tails, "name", "B")
        self.name = name or f"Seq({coeff_ring.name}; {tail_name})"
        self.zero = SeqElem((), coeff_ring.zero)
        self.one = SeqElem((), coeff_ring.one)
        self._spot_check_tails()

    def _spot_check_tails(self) -> None:
        B, A = self.B, self.A
        if not (B.contains(A.zero) and B.contains(A.one)):
            raise ValueError("tail subring must contain 0 and 1")
        samples = []
        if getattr(B, "elements", None) is not None:
            samples = list(B.elements)[:12]
        elif isinstance(B, GeneratedSubalgebra):
            g1, g2 = B.generators
            samples = [A.one, g1, g2, A.mul(g1, g2), A.add(g1, g2)]
        for a in samples:
            for b in samples:
                if not (
                    B.contains(A.add(a, b))
                    and B.contains(A.mul(a, b))
                    and B.contains(A.neg(a))
                ):
                    raise ValueError("tail oracle is not arithmetically closed")

    # -- construction ------------------------------------------------------
    def element(self, prefix, tail) -> SeqElem:
        prefix = tuple(prefix)
        for a in prefix:
            if not self.A.contains(a):
                raise ValueError(f"prefix entry {a!r} is not in {self.A.name}")
        if not self.B.contains(tail):
            raise ValueError(
                f"tail {self.A.format_element(tail)} is outside the tail subring"
            )
        trimmed = list(prefix)
        while trimmed and trimmed[-1] == tail:
            trimmed.pop()
        return SeqElem(tuple(trimmed), tail)

    def const(self, b) -> SeqElem:
        return self.element((), b)

    def delta(self, n: int, a) -> SeqElem:
        """The element with value a at coordinate n and zero elsewhere."""
        if n < 1:
            raise ValueError("coordinates are 1-based")
        return self.element((self.A.zero,) * (n - 1) + (a,), self.A.zero)

    def coordinate(self, r: SeqElem, n) -> object:
        """Value at coordinate n (1-based); n = INF reads the tail."""
        if n == INF:
            return r.tail
        if n < 1:
            raise ValueError("coordinates are 1-based")
        if n <= len(r.prefix):
            return r.prefix[n - 1]
        return r.tail

    def contains(self, r) -> bool:
        return isinstance(r, SeqElem)

    # -- arithmetic ----------------------------------------------------------
    def _pointwise(self, op, r, s) -> SeqElem:
        span = max(len(r.prefix), len(s.prefix))
        prefix = [
            op(self.coordinate(r, n), self.coordinate(s, n))
            for n in range(1, span + 1)
        ]
        return self.element(prefix, op(r.tail, s.tail))

    def add(self, r, s) -> SeqElem:
        return self._pointwise(self.A.add, r, s)

    def mul(self, r, s) -> SeqElem:
        return self._pointwise(self.A.mul, r, s)

    def sub(self, r, s) -> SeqElem:
        return self._pointwise(self.A.sub, r, s)

    def neg(self, r) -> SeqElem:
        return self.element(
            tuple(self.A.neg(a) for a in r.prefix), self.A.neg(r.tail)
        )

    def _coord_inverse(self, a):
        A = self.A
        if isinstance(A, FiniteRing):
            for b in A.elements:
                if A.mul(a, b) == A.one:
                    return b
            return None
        if isinstance(A, BivarRing):
            return A.inverse(a) if A.is_unit(a) else None
        raise TypeError("unsupported coefficient ring")

    def inverse(self, r) -> SeqElem | None:
        """Pointwise inverse when every coordinate is a unit and the
        inverted tail stays inside the tail subring."""
        inv_prefix = []
        for a in r.prefix:
            ia = self._coord_inverse(a)
            if ia is None:
                return None
            inv_prefix.append(ia)
        it = self._coord_inverse(r.tail)
        if it is None or not self.B.contains(it):
            return None
        return self.element(inv_prefix, it)

    def is_unit(self, r) -> bool:
        return self.inverse(r) is not None

    # -- order structure ------------------------------------------------------
    def _a_infimum(self, a, b):
        if isinstance(self.A, BivarRing):
            return self.A.infimum(a, b)
        got = order.inf_rr(self.A, a, b)
        if got is None:
            raise AssertionError("finite reduced coefficient rings are rr-good")
        return got

    def _a_common_bounds(self, a, b) -> tuple:
        if isinstance(self.A, BivarRing):
            return self.A.common_lower_bounds(a, b)
        bounds = order.lower_bounds(self.A, a, b)
        return tuple(sorted(bounds, key=self.A.index))

    def _b_common_bounds(self, a, b) -> tuple:
        B = self.B
        if getattr(B, "elements", None) is not None:
            return tuple(
                t
                for t in B.elements
                if order.le_rr(self.A, t, a) and order.le_rr(self.A, t, b)
            )
        return B.common_lower_bounds(a, b)

    def nonzero_lower_bound(self, r, s) -> SeqElem | None:
        """A deterministic nonzero common lower bound, or None.

        Tail-supported bounds are tried first; failing that, the first
        coordinate admitting a nonzero bound (scanning one position past
        the prefixes, where both sequences have become constant).
        """
        zero_a = self.A.zero
        for t in self._b_common_bounds(r.tail, s.tail):
            if t != zero_a:
                span = max(len(r.prefix), len(s.prefix))
                return self.element((zero_a,) * span, t)
        span = max(len(r.prefix), len(s.prefix)) + 1
        for n in range(1, span + 1):
            for v in self._a_common_bounds(
                self.coordinate(r, n), self.coordinate(s, n)
            ):
                if v != zero_a:
                    return self.delta(n, v)
        return None

    def inf_decision(self, r, s, chain_length: int = 16) -> InfDecision:
        """Decide whether r and s have a greatest lower bound.

        The pointwise infima stabilise to d, the infimum of the tails in
        A.  If d lies in the tail subring the pointwise infimum element
        is the infimum; otherwise no infimum exists, and a strictly
        ascending chain of lower bounds (pointwise infima on ever longer
        prefixes over the best available tail) witnesses the failure.
        """
        span = max(len(r.prefix), len(s.prefix))
        w = [
            self._a_infimum(self.coordinate(r, n), self.coordinate(s, n))
            for n in range(1, span + 1)
        ]
        d = self._a_infimum(r.tail, s.tail)
        if self.B.contains(d):
            u = self.element(w, d)
            if not (order.le_rr(self, u, r) and order.le_rr(self, u, s)):
                raise AssertionError("pointwise infimum must be a lower bound")
            return InfDecision(
                exists=True,
                infimum=u,
                pointwise_tail=d,
                d_in_tails=True,
                tail_bound=None,
            )
        # no infimum: build the witness chain over the best tail in B
        tail_bounds = [t for t in self._b_common_bounds(r.tail, s.tail)]
        maximal = [
            t
            for t in tail_bounds
            if not any(
                k != t and order.le_rr(self.A, t, k) for k in tail_bounds
            )
        ]
        if len(maximal) == 1:
            t_star = maximal[0]
            antichain = ()
        else:
            t_star = self.A.zero
            antichain = tuple(maximal)
        chain = tuple(
            self.element(tuple(w) + (d,) * j, t_star)
            for j in range(1, chain_length + 1)
        )
        return InfDecision(
            exists=False,
            infimum=None,
            pointwise_tail=d,
            d_in_tails=False,
            tail_bound=t_star,
            tail_bound_antichain=antichain,
            chain=chain,
        )

    def infimum_or_none(self, r, s):
        decision = self.inf_decision(r, s, chain_length=1)
        return decision.infimum if decision.exists else None

    # -- spectrum, stalks, supports -----------------------------------------
    def spectrum(self) -> SpectrumDescription:
        return SpectrumDescription(finite_points="1, 2, 3, ...", limit_point=INF)

    def support(self, r) -> SeqSupport:
        zero_a = self.A.zero
        if r.tail == zero_a:
            pts = frozenset(
                n for n, a in enumerate(r.prefix, start=1) if a != zero_a
            )
            return SeqSupport(cofinite=False, points=pts)
        pts = frozenset(
            n for n, a in enumerate(r.prefix, start=1) if a == zero_a
        )
        return SeqSupport(cofinite=True, points=pts)

    def project_at(self, n: int) -> Surjection:
        """Projection onto coordinate n, a quotient whose kernel is
        generated by the idempotent vanishing only at n."""
        if n < 1:
            raise ValueError("coordinates are 1-based")
        phi = Surjection(
            source=self,
            target=self.A,
            mapping=lambda r: self.coordinate(r, n),
            kernel=(),
            label=f"{self.name}->coordinate {n}",
            section_fn=lambda a: self.delta(n, a),
        )
        phi.kernel_generator = self.sub(self.one, self.delta(n, self.A.one))
        return phi

    def tail_map(self) -> Surjection:
        """The tail quotient onto B; kernel is the finitely supported
        elements, generated by the coordinate indicator idempotents."""
        phi = Surjection(
            source=self,
            target=self.B,
            mapping=lambda r: r.tail,
            kernel=(),
            label=f"{self.name}->tails",
            section_fn=lambda b: self.const(b),
        )
        phi.kernel_generator = None  # infinitely many indicator idempotents
        return phi

    def stalk(self, x):
        if x == INF:
            return self.B, self.tail_map()
        return self.A, self.project_at(int(x))

    # -- Pierce-style checks ---------------------------------------------------
    def region_indicator(self, region: SeqSupport, span: int) -> SeqElem:
        """The idempotent supported exactly on a clopen region."""
        zero_a, one_a = self.A.zero, self.A.one
        return self.element(
            tuple(
                one_a if region.contains(n) else zero_a
                for n in range(1, span + 1)
            ),
            one_a if region.contains(INF) else zero_a,
        )

    def unit_wedge(self, u, b):
        """Infimum of a unit u with b; the agreement region z(u - b) is
        always clopen here, so the infimum always exists.

        When the coordinate ring is indecomposable, the infimum is the
        region indicator times u (a unit meets an element at zero or at
        equality stalk by stalk); over a decomposable coordinate ring the
        pointwise infimum can be strictly larger, so the decision
        procedure's answer is returned either way.
        """
        from .pierce import WedgeResult

        if not self.is_unit(u):
            raise ValueError("u is not a unit of the sequence ring")
        diff = self.sub(u, b)
        region = self.support(diff).complement()
        decision = self.inf_decision(u, b)
        if not decision.exists:
            raise AssertionError("a unit always meets an element here")
        if isinstance(self.A, BivarRing):
            e = self.region_indicator(region, len(diff.prefix))
            if self.mul(e, u) != decision.infimum:
                raise AssertionError(
                    "indicator formula disagrees with the infimum over an "
                    "indecomposable coordinate ring"
                )
        return WedgeResult(
            exists=True, infimum=decision.infimum, region=region
        )

    def _stalk_good_evidence(self, ring, samples=()) -> bool:
        if isinstance(ring, FiniteRing):
            return order.classify(ring).rr_good
        pairs = [(a, b) for a in samples for b in samples]
        for a, b in pairs:
            if isinstance(ring, GeneratedSubalgebra):
                if ring.infimum_or_none(a, b) is None:
                    return False
            else:
                ring.infimum(a, b)  # raises if the chain structure breaks
        return True

    def necessary_conditions(self):
        """Clopen supports plus stalkwise semi-lattice evidence.

        Supports are clopen by the representation; the check verifies it
        on structured samples.  Finite stalks are classified
        exhaustively; polynomial stalks are checked on bounded samples.
        """
        from .pierce import NecessaryConditionsReport

        probes = [self.zero, self.one]
        if isinstance(self.A, BivarRing):
            coeff_samples = [
                self.A.zero,
                self.A.one,
                self.A.x,
                self.A.y,
                self.A.add(self.A.x, self.A.y_power(3)),
                self.A.x_power(2),
            ]
        else:
            coeff_samples = list(self.A.elements)[:6]
        for a in coeff_samples:
            probes.append(self.const(a) if self.B.contains(a) else self.delta(2, a))
        supports_ok = all(self.support(p).is_clopen for p in probes)

        if isinstance(self.B, GeneratedSubalgebra):
            import random

            rng = random.Random(20240601)
            b_samples = [self.B.sample(rng) for _ in range(8)]
        elif getattr(self.B, "elements", None) is not None:
            b_samples = list(self.B.elements)[:8]
        else:
            b_samples = [self.A.zero, self.A.one]
        a_good = self._stalk_good_evidence(self.A, coeff_samples)
        b_good = self._stalk_good_evidence(self.B, b_samples)
        notes = ()
        if not isinstance(self.A, FiniteRing):
            notes = ("polynomial stalks checked on bounded samples",)
        return NecessaryConditionsReport(
            ring_name=self.name,
            supports_clopen=supports_ok,
            stalks_good=a_good and b_good,
            stalk_details=(
                ("coordinate", getattr(self.A, "name", "A"), a_good),
                ("limit", getattr(self.B, "name", "B"), b_good),
            ),
            notes=notes,
        )

    def check_local_inf(self, a, b, c, horizon: int | None = None):
        """Pointwise and local agreement of candidate c with the stalkwise
        infima of (a, b); at infinity, local agreement means the tail of
        c matches the coordinatewise infimum of the tails cofinally."""
        from .pierce import LocalInfReport

        span = max(len(a.prefix), len(b.prefix), len(c.prefix))
        horizon = horizon or span + 2
        rows = []
        for n in range(1, horizon + 1):
            inf_n = self._a_infimum(self.coordinate(a, n), self.coordinate(b, n))
            matches = self.coordinate(c, n) == inf_n
            rows.append((str(n), matches, matches))
        b_bounds = self._b_common_bounds(a.tail, b.tail)
        inf_b = None
        for t in b_bounds:
            if all(order.le_rr(self.A, k, t) for k in b_bounds):
                inf_b = t
                break
        matches_inf = c.tail == inf_b
        d = self._a_infimum(a.tail, b.tail)
        locally = matches_inf and c.tail == d
        rows.append(("inf", matches_inf, locally))
        return LocalInfReport(ring_name=self.name, points=tuple(rows))

    # -- lifting over the tail map ---------------------------------------------
    def family_lift_demo(self, targets, verify_horizon: int = 4) -> list:
        """Lift pairwise-orthogonal tails to pairwise-orthogonal sequences.

        Mirrors the general family-lifting algorithm over the tail map:
        new targets are lifted against each existing element via the
        direct pair algorithm and folded with infima, which the tail map
        preserves.  Requires an enumerable coefficient ring.
        """
        if not isinstance(self.A, FiniteRing):
            raise TypeError("family lifting needs a finite coefficient ring")
        targets = list(targets)
        for i, s in enumerate(targets):
            for s2 in targets[i + 1:]:
                bounds = self._b_common_bounds(s, s2)
                nonzero = [t for t in bounds if t != self.A.zero]
                if nonzero:
                    raise ValueError("targets are not pairwise orthogonal")
        lifted: list = []
        for s_next in targets:
            if not lifted:
                lifted.append(self.const(s_next))
                continue
            partial = []
            for r_i in lifted:
                t = self.const(s_next)
                k = self.inf_decision(r_i, t).infimum
                partial.append(self.add(t, k))
            folded = partial[0]
            for t in partial[1:]:
                folded = self.inf_decision(folded, t).infimum
            if folded.tail != s_next:
                raise AssertionError("fold lost the target tail")
            for r_i in lifted:
                if self.infimum_or_none(folded, r_i) != self.zero:
                    raise AssertionError("fold is not orthogonal to the family")
            lifted.append(folded)
        return lifted

    # -- io ------------------------------------------------------------------
    def format_element(self, r) -> str:
        inner = ", ".join(self.A.format_element(a) for a in r.prefix)
        return f"[{inner}; {self.A.format_element(r.tail)}]"

    def parse_element(self, text: str) -> SeqElem:
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"sequence literal must be [a1, ...; tail]: {text!r}")
        body = s[1:-1]
        if ";" not in body:
            raise ValueError(f"sequence literal needs a ; tail part: {text!r}")
        head, tail_text = body.rsplit(";", 1)
        parse = self.A.parse_element
        prefix = [
            parse(tok.strip()) for tok in _split_top_level(head) if tok.strip()
        ]
        return self.element(prefix, parse(tail_text.strip()))

    def __repr__(self):
        return f"<SeqRing {self.name}>"


def _split_top_level(text: str) -> list[str]:
    """Split on commas not nested inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out
