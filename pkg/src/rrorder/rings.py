"""Finite reduced commutative rings with exact, enumerable arithmetic.

Four constructions are supported: integers mod a squarefree n, finite
products of prime fields, subrings generated by a set of elements, and
quotients by finitely generated ideals.  Every ring exposes the same
interface (an ordered ``elements`` tuple plus ``add``/``mul``/``neg``),
so order-theoretic code can run exhaustively over any of them.

Elements are plain hashable values: residues for modular rings,
coordinate tuples for products, and least coset representatives for
quotients.  Rings are immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

# Exhaustive operations refuse rings with more elements than this.
SIZE_CAP = 2 ** 16


class RingError(Exception):
    """Base class for ring construction and size errors."""


class NonSquarefreeModulusError(RingError):
    """The modulus has a repeated prime factor, so Z/n has nilpotents."""


class NonPrimeError(RingError):
    """A product factor is not prime."""


class QuotientNotReducedError(RingError):
    """A quotient has a nonzero coset squaring to zero."""


class SizeCapError(RingError):
    """An enumerating operation was asked to handle too large a ring."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factorization(n: int) -> list[tuple[int, int]]:
    """Return [(p, multiplicity), ...] for n >= 1, in increasing p."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            m = 0
            while n % d == 0:
                n //= d
                m += 1
            out.append((d, m))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def ensure_enumerable(ring: "FiniteRing", cap: int | None = None) -> None:
    limit = SIZE_CAP if cap is None else cap
    if ring.card > limit:
        raise SizeCapError(
            f"{ring!r} has {ring.card} elements, over the cap of {limit}"
        )


class FiniteRing:
    """Common interface for all finite ring implementations.

    Subclasses must populate ``elements`` (zero first), ``zero`` and
    ``one``, and implement ``add``, ``mul`` and ``neg``.
    """

    kind = "abstract"

    def __init__(self, name: str):
        self.name = name
        self.elements: tuple = ()
        self.zero = None
        self.one = None
        self._index: dict = {}
        self._cache: dict = {}  # lazily filled by order-theoretic helpers

    def _freeze(self, elements) -> None:
        self.elements = tuple(elements)
        self._index = {a: i for i, a in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise RingError("duplicate elements in ring construction")

    # -- arithmetic ----------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    # -- element bookkeeping -------------------------------------------
    @property
    def card(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.card == 1

    def index(self, a) -> int:
        return self._index[a]

    def contains(self, a) -> bool:
        return a in self._index

    def is_unit(self, a) -> bool:
        return any(self.mul(a, b) == self.one for b in self.elements)

    def format_element(self, a) -> str:
        return format_element(a)

    def parse_element(self, text: str):
        a = parse_element_literal(text)
        if not self.contains(a):
            raise ValueError(f"{text!r} is not an element of {self.name}")
        return a

    def describe(self) -> dict:
        return {"kind": self.kind, "name": self.name}

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} ({self.card} elements)>"

    def __iter__(self):
        return iter(self.elements)


def format_element(a) -> str:
    if isinstance(a, tuple):
        return "(" + ",".join(str(x) for x in a) + ")"
    return str(a)


def parse_element_literal(text: str):
    """Parse an integer or a comma tuple like (1,0,2)."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        body = s[1:-1].strip()
        if not body:
            return ()
        return tuple(int(tok.strip()) for tok in body.split(","))
    return int(s)


class ZmodRing(FiniteRing):
    """Integers mod n.  Reduced exactly when n is squarefree."""

    kind = "zmod"

    def __init__(self, n: int, check: bool = True):
        if n < 1:
            raise RingError("modulus must be >= 1")
        super().__init__(f"Z{n}")
        factors = prime_factorization(n)
        if check and any(m > 1 for _, m in factors):
            raise NonSquarefreeModulusError(
                f"{n} is not squarefree; Z/{n} has nonzero nilpotents"
            )
        self.n = n
        self.prime_factors = tuple(p for p, _ in factors)
        self._freeze(range(n))
        self.zero = 0
        self.one = 1 % n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def crt_coords(self, a) -> tuple:
        """Residue of a at each prime factor, in increasing-prime order."""
        return tuple(a % p for p in self.prime_factors)

    def parse_element(self, text: str):
        return int(text.strip()) % self.n

    def describe(self) -> dict:
        return {"kind": self.kind, "name": self.name, "n": self.n}


class ProductRing(FiniteRing):
    """Componentwise arithmetic on a finite product of prime fields."""

    kind = "product"

    def __init__(self, primes):
        primes = tuple(primes)
        for p in primes:
            if not is_prime(p):
                raise NonPrimeError(f"{p} is not prime")
        card = 1
        for p in primes:
            card *= p
        if card > SIZE_CAP:
            raise SizeCapError(f"product of {primes} has {card} elements")
        name = "x".join(f"F{p}" for p in primes) if primes else "0"
        super().__init__(name)
        self.primes = primes
        self._freeze(itertools.product(*(range(p) for p in primes)))
        self.zero = (0,) * len(primes)
        self.one = (1,) * len(primes) if primes else ()

    def add(self, a, b):
        return tuple((x + y) % p for x, y, p in zip(a, b, self.primes))

    def mul(self, a, b):
        return tuple((x * y) % p for x, y, p in zip(a, b, self.primes))

    def neg(self, a):
        return tuple((-x) % p for x, p in zip(a, self.primes))

    def describe(self) -> dict:
        return {"kind": self.kind, "name": self.name, "primes": list(self.primes)}


class SubRing(FiniteRing):
    """A subset of a parent ring closed under +, -, * and containing 1.

    Elements are the parent's own values, so the inclusion map is the
    identity on values.
    """

    kind = "subring"

    def __init__(self, parent: FiniteRing, elements, generators=()):
        super().__init__(f"{parent.name}.sub{len(elements)}")
        self.parent = parent
        self.generators = tuple(generators)
        self._freeze(sorted(elements, key=parent.index))
        self.zero = parent.zero
        self.one = parent.one

    def add(self, a, b):
        return self.parent.add(a, b)

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def include(self, a):
        """Inclusion into the parent (identity on values)."""
        return a

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "name": self.name,
            "parent": self.parent.describe(),
            "generators": [format_element(g) for g in self.generators],
        }


class CornerRing(FiniteRing):
    """The ring e*R for an idempotent e, with identity e."""

    kind = "corner"

    def __init__(self, parent: FiniteRing, e):
        if parent.mul(e, e) != e:
            raise RingError(f"{e} is not idempotent in {parent.name}")
        super().__init__(f"{parent.name}.corner({format_element(e)})")
        self.parent = parent
        self.idempotent = e
        elems = {parent.mul(e, r) for r in parent.elements}
        self._freeze(sorted(elems, key=parent.index))
        self.zero = parent.zero
        self.one = e

    def add(self, a, b):
        return self.parent.add(a, b)

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "name": self.name,
            "parent": self.parent.describe(),
            "idempotent": format_element(self.idempotent),
        }


class QuotientRing(FiniteRing):
    """Cosets of a finitely generated ideal, keyed by least representative."""

    kind = "quotient"

    def __init__(self, parent: FiniteRing, ideal, rep_map, generators=()):
        super().__init__(f"{parent.name}/({len(ideal)})")
        self.parent = parent
        self.ideal = frozenset(ideal)
        self.generators = tuple(generators)
        self._rep = dict(rep_map)
        reps = sorted(set(self._rep.values()), key=parent.index)
        self._freeze(reps)
        self.zero = self._rep[parent.zero]
        self.one = self._rep[parent.one]

    def add(self, a, b):
        return self._rep[self.parent.add(a, b)]

    def mul(self, a, b):
        return self._rep[self.parent.mul(a, b)]

    def neg(self, a):
        return self._rep[self.parent.neg(a)]

    def project(self, a):
        """Send a parent element to its coset representative."""
        return self._rep[a]

    def parse_element(self, text: str):
        # accept any parent literal and reduce it to its representative
        return self._rep[self.parent.parse_element(text)]

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "name": self.name,
            "parent": self.parent.describe(),
            "generators": [format_element(g) for g in self.generators],
        }


@dataclass
class Surjection:
    """A surjective ring homomorphism with an explicit kernel.

    ``mapping`` is a dict for finite sources or a callable otherwise.
    ``section(s)`` returns the first preimage of s in the source's
    canonical enumeration order (or applies ``section_fn`` for
    non-enumerable sources), which keeps lifting deterministic.
    """

    source: object
    target: object
    mapping: object
    kernel: tuple = ()
    label: str = ""
    section_fn: object = None
    _preimages: dict = field(default_factory=dict, repr=False)

    def __call__(self, a):
        if callable(self.mapping):
            return self.mapping(a)
        return self.mapping[a]

    def preimages(self, s) -> tuple:
        if s not in self._preimages:
            if not isinstance(self.source, FiniteRing):
                raise RingError("preimage enumeration needs a finite source")
            self._preimages[s] = tuple(
                a for a in self.source.elements if self(a) == s
            )
        return self._preimages[s]

    def section(self, s):
        if self.section_fn is not None:
            return self.section_fn(s)
        pre = self.preimages(s)
        if not pre:
            raise RingError(f"no preimage of {format_element(s)}")
        return pre[0]

    def validate(self) -> None:
        """Exhaustively check homomorphism, surjectivity and the kernel."""
        R, S = self.source, self.target
        if not (isinstance(R, FiniteRing) and isinstance(S, FiniteRing)):
            return
        if self(R.one) != S.one or self(R.zero) != S.zero:
            raise RingError("surjection does not preserve 0/1")
        image = {self(a) for a in R.elements}
        if image != set(S.elements):
            raise RingError("mapping is not onto the target")
        for a in R.elements:
            for b in R.elements:
                if self(R.add(a, b)) != S.add(self(a), self(b)):
                    raise RingError(f"additivity fails at ({a}, {b})")
                if self(R.mul(a, b)) != S.mul(self(a), self(b)):
                    raise RingError(f"multiplicativity fails at ({a}, {b})")
        ker = {a for a in R.elements if self(a) == S.zero}
        if ker != set(self.kernel):
            raise RingError("declared kernel is not the preimage of zero")

    def __repr__(self):
        lbl = self.label or "phi"
        return f"<Surjection {lbl}: {self.source!r} -> {self.target!r}>"


def build_zmod(n: int) -> ZmodRing:
    """The ring Z/n.  Rejects non-squarefree n (it would not be reduced)."""
    return ZmodRing(n, check=True)


def build_product(primes) -> ProductRing:
    """Componentwise product of prime fields; empty input gives the trivial ring."""
    return ProductRing(primes)


def subring_closure(R: FiniteRing, gens) -> SubRing:
    """Smallest subset of R containing gens and 1, closed under +, - and *."""
    gens = tuple(gens)
    for g in gens:
        if not R.contains(g):
            raise RingError(f"generator {format_element(g)} is not in {R.name}")
    current = {R.zero, R.one} | set(gens)
    while True:
        snapshot = list(current)
        new = set()
        for a in snapshot:
            na = R.neg(a)
            if na not in current:
                new.add(na)
        for a, b in itertools.product(snapshot, repeat=2):
            s = R.add(a, b)
            if s not in current:
                new.add(s)
            p = R.mul(a, b)
            if p not in current:
                new.add(p)
        if not new:
            break
        current |= new
    return SubRing(R, current, generators=gens)


def ideal_closure(R: FiniteRing, gens) -> frozenset:
    """The ideal generated by gens: additive closure of gens * R."""
    base = {R.mul(g, r) for g in gens for r in R.elements}
    base.add(R.zero)
    ideal: set = set()
    stack = [R.zero]
    while stack:
        x = stack.pop()
        if x in ideal:
            continue
        ideal.add(x)
        for b in base:
            y = R.add(x, b)
            if y not in ideal:
                stack.append(y)
    return frozenset(ideal)


def quotient(R: FiniteRing, gens) -> tuple[QuotientRing, Surjection]:
    """Quotient of R by the ideal generated by gens, with its projection.

    Raises QuotientNotReducedError if any nonzero coset squares to zero,
    so every ring this returns is again reduced.
    """
    gens = tuple(gens)
    for g in gens:
        if not R.contains(g):
            raise RingError(f"generator {format_element(g)} is not in {R.name}")
    ideal = ideal_closure(R, gens)
    rep_map: dict = {}
    for a in R.elements:  # enumeration order makes representatives minimal
        if a in rep_map:
            continue
        for i in ideal:
            rep_map[R.add(a, i)] = a
    Q = QuotientRing(R, ideal, rep_map, generators=gens)
    for a in Q.elements:
        if a != Q.zero and Q.mul(a, a) == Q.zero:
            raise QuotientNotReducedError(
                f"coset of {format_element(a)} is a nonzero nilpotent"
            )
    phi = Surjection(
        source=R,
        target=Q,
        mapping=dict(rep_map),
        kernel=tuple(sorted(ideal, key=R.index)),
        label=f"{R.name}->{Q.name}",
    )
    phi.validate()
    return Q, phi


def corner_ring(R: FiniteRing, e) -> tuple[CornerRing, Surjection]:
    """The ring e*R together with the projection r -> e*r."""
    C = CornerRing(R, e)
    one_minus_e = R.sub(R.one, e)
    kernel = tuple(
        sorted({R.mul(one_minus_e, r) for r in R.elements}, key=R.index)
    )
    phi = Surjection(
        source=R,
        target=C,
        mapping={a: R.mul(e, a) for a in R.elements},
        kernel=kernel,
        label=f"{R.name}->e*{R.name}",
    )
    phi.validate()
    return C, phi


def is_reduced(R: FiniteRing, cap: int | None = None) -> bool:
    """True iff no nonzero element squares to zero (exhaustive)."""
    ensure_enumerable(R, cap)
    return all(R.mul(a, a) != R.zero for a in R.elements if a != R.zero)


def is_field(R: FiniteRing) -> bool:
    """True iff R is a field (every nonzero element invertible, 0 != 1)."""
    if R.is_trivial or R.zero == R.one:
        return False
    return all(R.is_unit(a) for a in R.elements if a != R.zero)


def find_isomorphism(R: FiniteRing, S: FiniteRing) -> Callable | None:
    """Brute-force search for a ring isomorphism between small rings.

    Works by extending the forced map on sums of 1; only suitable for
    rings of a few dozen elements.  Returns the mapping dict or None.
    """
    if R.card != S.card:
        return None
    mapping = {R.zero: S.zero, R.one: S.one}
    # additive span of 1 is forced
    a, b = R.one, S.one
    while True:
        a, b = R.add(a, R.one), S.add(b, S.one)
        if a in mapping:
            if mapping[a] != b:
                return None
            break
        mapping[a] = b
    remaining = [a for a in R.elements if a not in mapping]
    codomain = [s for s in S.elements if s not in mapping.values()]

    def consistent(m):
        for x in m:
            for y in m:
                sx = R.add(x, y)
                if sx in m and m[sx] != S.add(m[x], m[y]):
                    return False
                px = R.mul(x, y)
                if px in m and m[px] != S.mul(m[x], m[y]):
                    return False
        return True

    def extend(m, rest, free):
        if not consistent(m):
            return None
        if not rest:
            return m
        x, tail = rest[0], rest[1:]
        for s in free:
            m2 = dict(m)
            m2[x] = s
            got = extend(m2, tail, [t for t in free if t != s])
            if got is not None:
                return got
        return None

    return extend(mapping, remaining, codomain)
