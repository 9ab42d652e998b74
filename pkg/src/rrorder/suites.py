"""Verification suites: exhaustive and sampled checks over the bundled rings.

Each suite runs a family of order-theoretic checks at desk scale and
returns a Report whose JSON form is stable under a fixed seed.  The
suites are the package's main consumers: they exercise the order axioms,
the annihilator-idempotent maximum, the lower-bound chain step, pair and
family lifting, infimum preservation under idempotent quotients,
quadratic closures, the stalk decomposition, the sequence-ring witness,
the unit-infimum collapse in indecomposable rings, the power-series
annihilator contract, and the small-ring classification regressions.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import lifting, order, pierce, psring
from .bivariate import BivarRing, verify_bvide
from .rings import (
    FiniteRing,
    build_zmod,
    prime_factorization,
    quotient,
    subring_closure,
)
from .seqring import INF, SeqRing
from .specfile import SeriesContext, SpecTable, load_bundled


@dataclass
class Check:
    check_id: str
    anchor: str
    verdict: str  # "pass" | "fail"
    witness: object
    ms: float

    def as_dict(self) -> dict:
        return {
            "id": self.check_id,
            "anchor": self.anchor,
            "verdict": self.verdict,
            "witness": self.witness,
            "ms": round(self.ms, 3),
        }


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "fail")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def as_dict(self, stable: bool = False) -> dict:
        return {
            "suite": self.suite,
            "checks": [
                {**c.as_dict(), "ms": 0.0 if stable else c.as_dict()["ms"]}
                for c in self.checks
            ],
            "summary": {"pass": self.passed, "fail": self.failed},
        }


def _run(report: Report, check_id: str, anchor: str, fn) -> None:
    t0 = time.perf_counter()
    try:
        witness = fn()
        verdict = "pass"
    except Exception as exc:  # a failed check carries its witness
        witness = f"{type(exc).__name__}: {exc}"
        verdict = "fail"
    ms = (time.perf_counter() - t0) * 1000.0
    report.checks.append(Check(check_id, anchor, verdict, witness, ms))


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


# ---------------------------------------------------------------------------
# suite 1: partial-order axioms


def _check_order_axioms(R: FiniteRing):
    table = order.lower_set_table(R)
    for a in R.elements:
        _require(order.le_rr(R, a, a), f"reflexivity fails at {a}")
        _require(a in table[a], "lower sets disagree with the predicate")
    for b in R.elements:
        for a in table[b]:
            if a != b and b in table[a]:
                raise AssertionError(f"antisymmetry fails at ({a}, {b})")
    for c in R.elements:
        for b in table[c]:
            if not table[b] <= table[c]:
                raise AssertionError(f"transitivity fails below {c}")
    for b in R.elements:
        _require(R.zero in table[b], f"zero is not below {b}")
    units = [u for u in R.elements if R.is_unit(u)]
    for u in units:
        for b in R.elements:
            if u in table[b] and b != u:
                raise AssertionError(f"unit {u} sits strictly below {b}")
    return f"{R.card} elements, {len(units)} units"


def suite_order_axioms(table: SpecTable) -> Report:
    report = Report(suite="order-axioms")
    for name, R in table.finite_rings():
        if R.card > 256:
            continue
        _run(
            report,
            f"order.partial-order:{name}",
            "order.partial-order",
            lambda R=R: _check_order_axioms(R),
        )
    return report


# ---------------------------------------------------------------------------
# suite 2: the largest idempotent of an annihilator


def _check_largest_idempotent(R: FiniteRing):
    _require(order.classify(R).rr_good, f"{R.name} is not rr-good")
    idems = order.idempotents(R)
    for a in R.elements:
        e = order.largest_idempotent_in_ann(R, a)
        for f in idems:
            if R.mul(f, a) == R.zero:
                if not (order.le_rr(R, f, e) and R.mul(f, e) == f):
                    raise AssertionError(
                        f"idempotent {f} in ann({a}) not dominated by {e}"
                    )
    return f"{R.card} elements x {len(idems)} idempotents"


def suite_largest_idempotent(table: SpecTable) -> Report:
    report = Report(suite="annihilator-idempotent")
    for name, R in table.finite_rings():
        if R.card > 64:
            continue
        _run(
            report,
            f"annihilator.maximum-idempotent:{name}",
            "annihilator.maximum-idempotent",
            lambda R=R: _check_largest_idempotent(R),
        )
    return report


# ---------------------------------------------------------------------------
# suite 3: chain step and the orthogonality certificate


def _check_chain_step(R: FiniteRing):
    lower = order.lower_set_table(R)
    triples = 0
    for r in R.elements:
        for s in R.elements:
            bounds = [k for k in lower[r] & lower[s] if k != R.zero]
            for k1 in bounds:
                triples += 1
                step = order.chain_extend(R, r, s, k1)
                maximal = not any(
                    k != k1 and order.le_rr(R, k1, k) for k in bounds
                )
                if step.orthogonal != maximal:
                    raise AssertionError(
                        f"certificate mismatch at r={r}, s={s}, k1={k1}: "
                        f"orthogonal={step.orthogonal}, maximal={maximal}"
                    )
    return f"{triples} triples"


def suite_chain(table: SpecTable) -> Report:
    report = Report(suite="chain-step")
    for name, R in table.finite_rings():
        if R.card > 64:
            continue
        _run(
            report,
            f"chain.step:{name}",
            "chain.step",
            lambda R=R: _check_chain_step(R),
        )
    return report


# ---------------------------------------------------------------------------
# suite 4: lifting orthogonal pairs over surjections


def _surjections_of(R: FiniteRing):
    out = []
    for e in order.idempotents(R):
        out.append(quotient(R, [e])[1])
    return out


def _check_pair_lifting(phi):
    R, S = phi.source, phi.target
    lifts = 0
    for s in S.elements:
        for s_prime in S.elements:
            if order.inf_rr(S, s, s_prime) != S.zero:
                continue
            for r in phi.preimages(s):
                problem = lifting.LiftProblem(phi=phi, s=s, s_prime=s_prime, r=r)
                direct = lifting.lift_pair_rrgood(problem)
                chained = lifting.lift_pair_chain(problem)
                # both results were verified internally; they may differ
                lifts += 2
                _ = (direct.r_prime, chained.r_prime)
    return f"{lifts} verified lifts"


def suite_lift_pairs(table: SpecTable) -> Report:
    report = Report(suite="lift-pairs")
    bases = [("F2x3", table["F2x3"]), ("F2x4", table["F2x4"]), ("Z30", table["Z30"])]
    for name, R in bases:
        for phi in _surjections_of(R):
            _run(
                report,
                f"lifting.pair:{name}->{phi.target.name}",
                "lifting.pair",
                lambda phi=phi: _check_pair_lifting(phi),
            )
    # same ideal reached through a non-idempotent generating set
    _run(
        report,
        "lifting.pair:Z30->(2)",
        "lifting.pair",
        lambda: _check_pair_lifting(quotient(table["Z30"], [2])[1]),
    )
    return report


# ---------------------------------------------------------------------------
# suite 5: idempotent quotients preserve infima; families lift


def _orthogonal_families(S: FiniteRing, max_size: int):
    elems = S.elements
    orth = {
        (a, b)
        for a in elems
        for b in elems
        if order.inf_rr(S, a, b) == S.zero
    }
    families: list = []

    def extend(prefix, start):
        if prefix:
            families.append(tuple(prefix))
        if len(prefix) == max_size:
            return
        for i in range(start, len(elems)):
            cand = elems[i]
            if all((cand, p) in orth for p in prefix):
                prefix.append(cand)
                extend(prefix, i + 1)
                prefix.pop()

    extend([], 0)
    return families


def _check_quotient_preservation(R: FiniteRing, e):
    rep = lifting.verify_preservation(R, [e])
    _require(rep.preserved, f"infima not preserved: {rep.failures[:1]}")
    _require(rep.rr_good_inherited, "quotient lost the semi-lattice property")
    S, phi = rep.quotient, rep.surjection
    families = _orthogonal_families(S, max_size=4)
    for family in families:
        lifted = lifting.lift_family(phi, family)
        _require(len(lifted) == len(family), "family size changed")
    return f"{rep.pairs_checked} pairs, {len(families)} families"


def suite_quotient_preservation(table: SpecTable) -> Report:
    report = Report(suite="quotient-preservation")
    for name, R in table.finite_rings():
        if R.card > 64:
            continue
        for e in order.idempotents(R):
            _run(
                report,
                f"lifting.quotient-preservation:{name}/({R.format_element(e)})",
                "lifting.quotient-preservation",
                lambda R=R, e=e: _check_quotient_preservation(R, e),
            )
    return report


# ---------------------------------------------------------------------------
# suite 6: quadratic closures are lower semi-lattices


def all_subrings_f2x4(table: SpecTable):
    """Every subring of the 16-element boolean product, by closing all
    generator sets of size <= 3 (a subring here has at most 4 diagonal
    blocks, so 3 generators beyond 1 always suffice)."""
    R = table["F2x4"]
    seen = {}
    for size in range(4):
        for gens in itertools.combinations(R.elements, size):
            sub = subring_closure(R, gens)
            seen.setdefault(frozenset(sub.elements), sub)
    return list(seen.values())


def _check_quadratic_closure_boolean(table: SpecTable):
    R = table["F2x4"]
    subs = all_subrings_f2x4(table)
    _require(len(subs) == 15, f"expected 15 subrings, found {len(subs)}")
    for sub in subs:
        closed = order.quadratic_closure(R, sub)
        _require(
            set(sub.elements) <= set(closed.elements),
            "closure lost its starting subring",
        )
        _require(
            order.classify(closed).rr_good,
            f"closure of {sub.name} is not rr-good",
        )
    return f"{len(subs)} subrings closed"


def _squarefree_upto(limit: int):
    out = []
    for n in range(2, limit + 1):
        if all(m == 1 for _, m in prime_factorization(n)):
            out.append(n)
    return out


def _check_quadratic_closure_zmod(limit: int = 210):
    count = 0
    for n in _squarefree_upto(limit):
        R = build_zmod(n)
        closed = order.quadratic_closure(R, R)
        _require(closed.card == n, "closure inside the full ring must be everything")
        _require(order.classify(closed).rr_good, f"Z{n} closure is not rr-good")
        count += 1
    return f"{count} moduli"


def suite_quadratic_closure(table: SpecTable) -> Report:
    report = Report(suite="quadratic-closure")
    _run(
        report,
        "closure.quadratic:F2x4-subrings",
        "closure.quadratic",
        lambda: _check_quadratic_closure_boolean(table),
    )
    _run(
        report,
        "closure.quadratic:squarefree-moduli",
        "closure.quadratic",
        _check_quadratic_closure_zmod,
    )
    return report


# ---------------------------------------------------------------------------
# suite 7: stalk decomposition, support monotonicity, necessary conditions


def _check_monotone_supports(R: FiniteRing):
    table = order.lower_set_table(R)
    supports = {r: pierce.support(R, r) for r in R.elements}
    for b in R.elements:
        for a in table[b]:
            if not supports[a] <= supports[b]:
                raise AssertionError(f"support of {a} not inside support of {b}")
            if not pierce.zariski_v(R, b) <= pierce.zariski_v(R, a):
                raise AssertionError(f"V({b}) not inside V({a})")
    return f"{sum(len(v) for v in table.values())} comparable pairs"


def suite_pierce(table: SpecTable) -> Report:
    report = Report(suite="pierce")
    for name, R in table.finite_rings():
        _run(
            report,
            f"pierce.reconstruction:{name}",
            "pierce.reconstruction",
            lambda R=R: (
                _require(
                    pierce.reconstructs_from_stalks(R),
                    "product of stalks differs from the ring",
                )
                or f"{len(pierce.boolean_algebra(R).atoms)} stalks"
            ),
        )
        if R.card <= 256:
            _run(
                report,
                f"pierce.support-monotone:{name}",
                "pierce.support-monotone",
                lambda R=R: _check_monotone_supports(R),
            )
        _run(
            report,
            f"pierce.necessary-conditions:{name}",
            "pierce.necessary-conditions",
            lambda R=R: (
                _require(pierce.check_necessary(R).holds, "conditions fail")
                or "clopen supports + semi-lattice stalks"
            ),
        )
    for name in ("SEQD", "SEQW"):
        _run(
            report,
            f"pierce.necessary-conditions:{name}",
            "pierce.necessary-conditions",
            lambda name=name: (
                _require(pierce.check_necessary(table[name]).holds, "conditions fail")
                or "clopen supports + semi-lattice stalks"
            ),
        )
    return report


# ---------------------------------------------------------------------------
# suite 8: the sequence-ring witness: conditions hold, infimum missing


def _check_sequence_witness(table: SpecTable, chain_length: int = 16):
    R: SeqRing = table["SEQW"]
    A: BivarRing = R.A
    b1 = A.parse_element("x + y^3")
    b2 = A.parse_element("x + y^3 + x^2")
    r, s = R.const(b1), R.const(b2)
    decision = R.inf_decision(r, s, chain_length=chain_length)
    _require(not decision.exists, "the witness pair must have no infimum")
    _require(
        decision.pointwise_tail == A.parse_element("y^3"),
        "pointwise infima should stabilise to y^3",
    )
    _require(not R.B.contains(decision.pointwise_tail), "y^3 must fall outside the tails")
    chain = decision.chain
    _require(len(chain) >= chain_length, "witness chain too short")
    for u in chain:
        _require(
            order.le_rr(R, u, r) and order.le_rr(R, u, s),
            "chain element is not a common lower bound",
        )
    for u, v in zip(chain, chain[1:]):
        _require(order.le_rr(R, u, v) and u != v, "chain must ascend strictly")
    _require(pierce.check_necessary(R).holds, "necessary conditions must still hold")
    # the local-agreement characterization fails exactly at infinity
    local = R.check_local_inf(r, s, chain[0])
    inf_row = [row for row in local.points if row[0] == "inf"][0]
    _require(inf_row[1], "candidate matches the limit stalk infimum")
    _require(not inf_row[2], "no neighbourhood of infinity can agree")
    return f"chain of {len(chain)} strictly ascending bounds, tail gap y^3"


def suite_sequence_witness(table: SpecTable) -> Report:
    report = Report(suite="sequence-witness")
    _run(
        report,
        "sequence.no-infimum-witness",
        "sequence.no-infimum-witness",
        lambda: _check_sequence_witness(table),
    )
    return report


# ---------------------------------------------------------------------------
# suite 9: unit infima: collapse in indecomposable rings, clopen regions


def _check_bvide_samples(A: BivarRing, seed: int, instances: int):
    rng = random.Random(seed)
    for i in range(instances):
        u = A.const(A.field.sample(rng))
        while not A.is_unit(u):
            u = A.const(A.field.sample(rng))
        b = A.sample(rng) if i % 3 else u
        rep = verify_bvide(A, u, b, rng=rng)
        _require(rep.holds, f"collapse fails for u={A.format_element(u)}")
    return f"{instances} instances"


def _check_unit_wedge_finite(R: FiniteRing):
    count = 0
    for u in R.elements:
        if not R.is_unit(u):
            continue
        for b in R.elements:
            res = pierce.unit_wedge_exists(R, u, b)
            _require(res.exists, "unit infimum must exist on a finite ring")
            _require(
                res.infimum == order.inf_rr(R, u, b),
                f"wedge disagrees with the oracle at u={u}, b={b}",
            )
            count += 1
    return f"{count} pairs"


def _check_unit_wedge_seq(table: SpecTable, seed: int):
    rng = random.Random(seed)
    SD: SeqRing = table["SEQD"]
    one = SD.A.one
    for prefix_len in range(3):
        for values in itertools.product(SD.A.elements, repeat=prefix_len):
            for tail in SD.B.elements:
                b = SD.element(values, tail)
                res = SD.unit_wedge(SD.one, b)
                _require(res.exists and res.region.is_clopen, "region not clopen")
    SW: SeqRing = table["SEQW"]
    A = SW.A
    for _ in range(50):
        u = SW.const(A.const(A.field.sample(rng)))
        if not SW.is_unit(u):
            continue
        b = SW.element([A.sample(rng)], SW.B.sample(rng))
        res = SW.unit_wedge(u, b)
        _require(res.exists and res.region.is_clopen, "region not clopen")
    return "unit infima exist with clopen agreement regions"


def suite_indecomposable_wedge(table: SpecTable, seed: int = 0) -> Report:
    report = Report(suite="indecomposable-wedge")
    _run(
        report,
        "wedge.unit-collapse:rationals",
        "wedge.unit-collapse",
        lambda: _check_bvide_samples(table["BIVQ"], seed, 520),
    )
    _run(
        report,
        "wedge.unit-collapse:F3",
        "wedge.unit-collapse",
        lambda: _check_bvide_samples(table["BIV3"], seed + 1, 520),
    )
    for name in ("Z30", "Z42", "F2x4", "MIX6", "QF23"):
        _run(
            report,
            f"wedge.unit-region:{name}",
            "wedge.unit-region",
            lambda name=name: _check_unit_wedge_finite(table[name]),
        )
    _run(
        report,
        "wedge.unit-region:sequences",
        "wedge.unit-region",
        lambda: _check_unit_wedge_seq(table, seed),
    )
    return report


# ---------------------------------------------------------------------------
# suite 10: power series: leading terms, constancy, annihilator idempotent


def _stalk_projections(R: FiniteRing):
    atoms = pierce.boolean_algebra(R).atoms
    return [pierce.stalk(R, a) for a in atoms]


def _check_series_leading(ctx: SeriesContext, seed: int, samples: int):
    R, M = ctx.ring, ctx.monoid
    rng = random.Random(seed)
    stalks = _stalk_projections(R)
    for _ in range(samples):
        f = psring.random_series(R, M, rng)
        g = psring.random_series(R, M, rng)
        if not f.is_zero:
            _require(not psring.series_mul(f, f).is_zero, "square vanished")
        for S, proj in stalks:
            fi, gi = psring.coeff_quotient(f, proj), psring.coeff_quotient(g, proj)
            if fi.is_zero or gi.is_zero:
                continue
            prod = psring.series_mul(fi, gi)
            _require(not prod.is_zero, "product vanished over a field stalk")
            _require(
                psring.mu(prod) == M.op(psring.mu(fi), psring.mu(gi)),
                "least support word is not multiplicative",
            )
            _require(
                psring.leading_coeff(prod)
                == S.mul(psring.leading_coeff(fi), psring.leading_coeff(gi)),
                "leading coefficient is not multiplicative",
            )
    return f"{samples} sample pairs"


def _check_series_constancy(ctx: SeriesContext, seed: int, samples: int):
    R, M = ctx.ring, ctx.monoid
    rng = random.Random(seed)
    for e in order.idempotents(R):
        _require(
            psring.idempotent_constancy_check(psring.series_const(R, M, e)).is_idempotent,
            "constant idempotents must stay idempotent",
        )
    for _ in range(samples):
        f = psring.random_series(R, M, rng)
        rep = psring.idempotent_constancy_check(f)
        _require(rep.consistent, f"non-constant idempotent series {f!r}")
        if not rep.is_constant:
            _require(not rep.is_idempotent, "non-constant series squared to itself")
    return f"{samples} samples"


def _check_series_annihilator_exhaustive(ctx: SeriesContext):
    R, M = ctx.ring, ctx.monoid
    words = [(0,), (1,), (2,)]
    family = psring.enumerate_series(R, M, words, max_terms=2)
    for f in family:
        eps = psring.annihilator_idempotent(f)
        _require(f.scale(eps).is_zero, "eps fails to kill the series")
        for g in family:
            if psring.series_mul(g, f).is_zero:
                _require(g.scale(eps) == g, "annihilating series escapes eps")
    return f"family of {len(family)} series"


def suite_series(table: SpecTable, seed: int = 0) -> Report:
    report = Report(suite="series")
    configs = [("PSZ3", 1000), ("PSZ6N2", 1000), ("PSZ6F", 1000)]
    for name, samples in configs:
        _run(
            report,
            f"series.leading-term:{name}",
            "series.leading-term",
            lambda name=name, samples=samples: _check_series_leading(
                table[name], seed, samples
            ),
        )
        _run(
            report,
            f"series.idempotent-constancy:{name}",
            "series.idempotent-constancy",
            lambda name=name: _check_series_constancy(table[name], seed, 350),
        )
    _run(
        report,
        "series.annihilator-idempotent:exhaustive",
        "series.annihilator-idempotent",
        lambda: _check_series_annihilator_exhaustive(table["PSZ6"]),
    )
    for name in ("PSZ6", "PSZ6N2", "PSZ6F", "PSZ3"):
        _run(
            report,
            f"series.annihilator-idempotent:{name}",
            "series.annihilator-idempotent",
            lambda name=name: (
                _require(
                    psring.verify_wb(
                        table[name].ring, table[name].monoid, sample_size=200, seed=seed
                    ).holds,
                    "sampled annihilator contract failed",
                )
                or "200 samples"
            ),
        )
    return report


# ---------------------------------------------------------------------------
# suite 11: classification regressions


def suite_regressions(table: SpecTable) -> Report:
    report = Report(suite="regressions")
    for name, R in table.finite_rings():
        if R.card > 256:
            continue
        atoms = len(pierce.boolean_algebra(R).atoms)
        if atoms <= 3:
            _run(
                report,
                f"classify.few-primes-good:{name}",
                "classify.few-primes-good",
                lambda R=R, atoms=atoms: (
                    _require(order.classify(R).rr_good, "few-prime ring not rr-good")
                    or f"{atoms} minimal primes"
                ),
            )
        _run(
            report,
            f"classify.finite-weakly-baer:{name}",
            "classify.finite-weakly-baer",
            lambda R=R: (
                _require(order.classify(R).wb, "finite reduced ring not weakly Baer")
                or "annihilators idempotent-generated"
            ),
        )
    return report


# ---------------------------------------------------------------------------

SUITES = {
    "order-axioms": suite_order_axioms,
    "annihilator-idempotent": suite_largest_idempotent,
    "chain-step": suite_chain,
    "lift-pairs": suite_lift_pairs,
    "quotient-preservation": suite_quotient_preservation,
    "quadratic-closure": suite_quadratic_closure,
    "pierce": suite_pierce,
    "sequence-witness": suite_sequence_witness,
    "indecomposable-wedge": suite_indecomposable_wedge,
    "series": suite_series,
    "regressions": suite_regressions,
}

_SEEDED = {"indecomposable-wedge", "series"}


def run_suite(name: str, table: SpecTable | None = None, seed: int = 0) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    table = table if table is not None else load_bundled()
    fn = SUITES[name]
    if name in _SEEDED:
        return fn(table, seed=seed)
    return fn(table)


def run_all(table: SpecTable | None = None, seed: int = 0) -> list[Report]:
    table = table if table is not None else load_bundled()
    return [run_suite(name, table, seed) for name in SUITES]
