"""Boolean algebras of idempotents, spectra, stalks and supports.

A finite reduced commutative ring decomposes over the atoms of its
idempotent lattice: the spectrum points are the atoms, the stalk at an
atom e is the ring e*R with projection r -> e*r, and the ring is
recovered elementwise as the product of its stalks.  Supports and zero
sets live on the atom set; since the spectrum is finite and discrete,
every support is clopen.

Sequence rings carry their own spectrum (the naturals plus a point at
infinity); the entry points here dispatch to their methods so callers
can stay family-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import order
from .rings import FiniteRing, Surjection, corner_ring, ensure_enumerable, format_element


@dataclass(frozen=True)
class BooleanAlgebra:
    """The idempotents of a ring, with lattice structure and atoms."""

    ring: object
    elements: tuple
    atoms: tuple

    def meet(self, e, f):
        return self.ring.mul(e, f)

    def join(self, e, f):
        return order.idempotent_join(self.ring, e, f)

    def complement(self, e):
        return self.ring.sub(self.ring.one, e)

    def leq(self, e, f) -> bool:
        return self.ring.mul(e, f) == e

    def atoms_below(self, e) -> tuple:
        return tuple(a for a in self.atoms if self.leq(a, e))

    def join_all(self, es):
        out = self.ring.zero
        for e in es:
            out = self.join(out, e)
        return out


def boolean_algebra(R: FiniteRing, cap: int | None = None) -> BooleanAlgebra:
    """All idempotents of R with their atoms (minimal nonzero ones)."""
    cached = R._cache.get("boolean_algebra")
    if cached is not None:
        return cached
    idems = order.idempotents(R, cap)
    atoms = []
    for e in idems:
        if e == R.zero:
            continue
        if not any(
            f != R.zero and f != e and R.mul(f, e) == f for f in idems
        ):
            atoms.append(e)
    algebra = BooleanAlgebra(ring=R, elements=idems, atoms=tuple(atoms))
    R._cache["boolean_algebra"] = algebra
    return algebra


def spectrum(R) -> tuple:
    """Spectrum points: atoms for finite rings, ring-specific otherwise."""
    if isinstance(R, FiniteRing):
        return boolean_algebra(R).atoms
    return R.spectrum()


def stalk(R: FiniteRing, x) -> tuple[FiniteRing, Surjection]:
    """The stalk at a spectrum point x (an atom): e*R with r -> e*r."""
    if not isinstance(R, FiniteRing):
        return R.stalk(x)
    if x not in boolean_algebra(R).atoms:
        raise ValueError(f"{format_element(x)} is not an atom of {R.name}")
    return corner_ring(R, x)


def support(R, r) -> frozenset:
    """Points where the stalk image of r is nonzero."""
    if not isinstance(R, FiniteRing):
        return R.support(r)
    return frozenset(
        a for a in boolean_algebra(R).atoms if R.mul(a, r) != R.zero
    )


def zero_set(R, r) -> frozenset:
    if not isinstance(R, FiniteRing):
        return R.support(r).complement()
    return frozenset(boolean_algebra(R).atoms) - support(R, r)


def zariski_v(R: FiniteRing, r) -> frozenset:
    """V(r) over the minimal primes.

    For a finite reduced ring, minimal primes correspond to atoms (the
    prime at atom e is the kernel of the stalk projection), so r lies in
    that prime exactly when e*r == 0.
    """
    return zero_set(R, r)


def zariski_d(R: FiniteRing, r) -> frozenset:
    """D(r), the complement of V(r)."""
    return support(R, r)


@dataclass(frozen=True)
class WedgeResult:
    """Outcome of the unit-against-element infimum computation."""

    exists: bool
    infimum: object | None
    region: object  # the agreement set z(u - b)


def unit_wedge_exists(R, u, b) -> WedgeResult:
    """Infimum of a central unit u with b, via the agreement region.

    The region U is the zero set of u - b.  The infimum exists exactly
    when U is clopen, in which case it equals e*u for the idempotent e
    supported on U.  On a finite ring every subset of the spectrum is
    clopen, so the result always exists there.
    """
    if not isinstance(R, FiniteRing):
        return R.unit_wedge(u, b)
    if not R.is_unit(u):
        raise ValueError(f"{format_element(u)} is not a unit of {R.name}")
    alg = boolean_algebra(R)
    region = zero_set(R, R.sub(u, b))
    e = alg.join_all(region)
    return WedgeResult(exists=True, infimum=R.mul(e, u), region=region)


@dataclass
class NecessaryConditionsReport:
    """The two conditions every lower semi-lattice ring must satisfy:
    clopen supports and stalks that are lower semi-lattices themselves.

    Satisfying both does not force the ring itself to be one; the
    sequence-ring witness in this package passes both and still has a
    pair with no infimum.
    """

    ring_name: str
    supports_clopen: bool
    stalks_good: bool
    stalk_details: tuple
    notes: tuple = ()

    @property
    def holds(self) -> bool:
        return self.supports_clopen and self.stalks_good

    def as_dict(self) -> dict:
        return {
            "ring": self.ring_name,
            "supports_clopen": self.supports_clopen,
            "stalks_good": self.stalks_good,
            "stalks": list(self.stalk_details),
            "notes": list(self.notes),
        }


def check_necessary(R) -> NecessaryConditionsReport:
    """Verify clopen supports and stalkwise semi-lattice structure."""
    if not isinstance(R, FiniteRing):
        return R.necessary_conditions()
    ensure_enumerable(R)
    # finite spectrum is discrete: every support is clopen by inspection
    supports_ok = all(
        support(R, r) <= frozenset(boolean_algebra(R).atoms)
        for r in R.elements
    )
    details = []
    stalks_ok = True
    for a in boolean_algebra(R).atoms:
        S, _ = stalk(R, a)
        good = order.classify(S).rr_good
        stalks_ok = stalks_ok and good
        details.append((format_element(a), S.card, good))
    return NecessaryConditionsReport(
        ring_name=R.name,
        supports_clopen=supports_ok,
        stalks_good=stalks_ok,
        stalk_details=tuple(details),
    )


@dataclass
class LocalInfReport:
    """Pointwise and local agreement of a candidate infimum section.

    For each spectrum point, records whether the candidate c matches the
    stalkwise infimum of a and b there and, when it does, whether a
    whole neighbourhood of the point agrees.  On a finite (discrete)
    spectrum the singleton is a neighbourhood, so the two coincide.
    """

    ring_name: str
    points: tuple  # (point label, matches_at_point, locally_agrees)

    @property
    def all_match(self) -> bool:
        return all(m for _, m, _ in self.points)

    @property
    def all_local(self) -> bool:
        return all(l for _, m, l in self.points if m)

    def as_dict(self) -> dict:
        return {
            "ring": self.ring_name,
            "points": [
                {"point": p, "matches": m, "locally_agrees": l}
                for p, m, l in self.points
            ],
        }


def check_local_inf(R, a, b, c) -> LocalInfReport:
    """Check c against the stalkwise infima of (a, b) at every point."""
    if not isinstance(R, FiniteRing):
        return R.check_local_inf(a, b, c)
    rows = []
    for atom in boolean_algebra(R).atoms:
        S, proj = stalk(R, atom)
        inf_x = order.inf_rr(S, proj(a), proj(b))
        matches = proj(c) == inf_x
        rows.append((format_element(atom), matches, matches))
    return LocalInfReport(ring_name=R.name, points=tuple(rows))


def reconstructs_from_stalks(R: FiniteRing) -> bool:
    """Elementwise check that R embeds onto the product of its stalks.

    The map r -> (e*r per atom e) must be injective, surjective onto the
    product of the corners, and a ring homomorphism.
    """
    atoms = boolean_algebra(R).atoms
    stalks = [stalk(R, a) for a in atoms]
    if R.is_trivial:
        return not atoms

    def project(r):
        return tuple(proj(r) for _, proj in stalks)

    images = {project(r) for r in R.elements}
    if len(images) != R.card:
        return False
    expected = 1
    for S, _ in stalks:
        expected *= S.card
    if expected != R.card:
        return False
    for x in R.elements:
        for y in R.elements:
            if project(R.add(x, y)) != tuple(
                S.add(px, py)
                for (S, _), px, py in zip(stalks, project(x), project(y))
            ):
                return False
            if project(R.mul(x, y)) != tuple(
                S.mul(px, py)
                for (S, _), px, py in zip(stalks, project(x), project(y))
            ):
                return False
    return True
