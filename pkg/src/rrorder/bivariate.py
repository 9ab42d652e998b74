"""Exact arithmetic in K[x,y]/(x*y), K rational or a prime field.

Every element has a unique normal form c + p(x) + q(y) where p and q
have no constant term: mixed monomials vanish, so multiplication keeps
the two variable branches separate.  The ring is an infinite reduced
indecomposable ring with exactly two minimal primes, and its lower-bound
structure in the reduced-ring order is completely decidable: the lower
bounds of f are 0, f itself, and (when f has no constant term) the pure
x-part and pure y-part of f.  Infima therefore always exist, which makes
this ring the canonical coefficient ring for the sequence-ring
constructions elsewhere in the package.

The module also provides the membership oracle for the subalgebra
generated by x + y^d and x^2 (default d = 3): a normal form lies in it
exactly when its y-support uses only exponents divisible by d and the
coefficients of x and y^d agree.  That subalgebra leaves out y^d itself
even though y^d arises as an infimum of two of its members, which is
precisely the mismatch the sequence-ring witness needs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import order


class Rationals:
    """Exact rational coefficients."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        return Fraction(v)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return 1 / Fraction(a)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return Fraction(text)

    def sample(self, rng, pool=(-2, -1, 1, 2, 3)):
        return Fraction(rng.choice(pool))


class PrimeFieldCoeffs:
    """Coefficients mod a prime p."""

    def __init__(self, p: int):
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, v):
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, -1, self.p)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return self.coerce(int(Fraction(text)))

    def sample(self, rng, pool=None):
        return rng.randrange(self.p)


@dataclass(frozen=True)
class BivarElem:
    """Normal form c + p(x) + q(y); parts indexed from exponent 1."""

    const: object
    x_coeffs: tuple  # (coeff of x^1, x^2, ...), no trailing zeros
    y_coeffs: tuple

    @property
    def is_zero(self) -> bool:
        return not self.x_coeffs and not self.y_coeffs and self.const == 0

    @property
    def pure_x(self) -> bool:
        return self.const == 0 and not self.y_coeffs and bool(self.x_coeffs)

    @property
    def pure_y(self) -> bool:
        return self.const == 0 and not self.x_coeffs and bool(self.y_coeffs)

    def x_coeff(self, k: int):
        return self.x_coeffs[k - 1] if 1 <= k <= len(self.x_coeffs) else 0

    def y_coeff(self, k: int):
        return self.y_coeffs[k - 1] if 1 <= k <= len(self.y_coeffs) else 0

    @property
    def degree(self) -> int:
        d = 0
        if self.const != 0:
            d = 0
        if self.x_coeffs:
            d = max(d, len(self.x_coeffs))
        if self.y_coeffs:
            d = max(d, len(self.y_coeffs))
        return d


class AnnType(Enum):
    WHOLE_RING = "whole_ring"  # ann(0) is everything
    X_IDEAL = "x_ideal"  # the ideal (x)
    Y_IDEAL = "y_ideal"  # the ideal (y)
    ZERO = "zero"


def _strip(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class BivarRing:
    """Arithmetic, order structure and parsing for K[x,y]/(x*y)."""

    is_sequence_ring = False

    def __init__(self, field):
        self.field = field
        self.name = f"{field.name}[x,y]/(xy)"
        self.zero = BivarElem(field.zero, (), ())
        self.one = BivarElem(field.one, (), ())
        self.x = BivarElem(field.zero, (field.one,), ())
        self.y = BivarElem(field.zero, (), (field.one,))

    # -- construction ----------------------------------------------------
    def element(self, const=0, x_coeffs=(), y_coeffs=()) -> BivarElem:
        K = self.field
        return BivarElem(
            K.coerce(const),
            _strip(K.coerce(c) for c in x_coeffs),
            _strip(K.coerce(c) for c in y_coeffs),
        )

    def const(self, v) -> BivarElem:
        return self.element(const=v)

    def x_power(self, k: int, coeff=1) -> BivarElem:
        return self.element(x_coeffs=(0,) * (k - 1) + (coeff,))

    def y_power(self, k: int, coeff=1) -> BivarElem:
        return self.element(y_coeffs=(0,) * (k - 1) + (coeff,))

    def contains(self, f) -> bool:
        return isinstance(f, BivarElem)

    # -- arithmetic ------------------------------------------------------
    def _part_add(self, u, v) -> tuple:
        K = self.field
        out = [K.zero] * max(len(u), len(v))
        for i, c in enumerate(u):
            out[i] = K.add(out[i], c)
        for i, c in enumerate(v):
            out[i] = K.add(out[i], c)
        return _strip(out)

    def _part_scale(self, c, u) -> tuple:
        K = self.field
        return _strip(K.mul(c, a) for a in u)

    def _part_mul(self, u, v) -> tuple:
        # both parts start at exponent 1, so the product starts at 2
        K = self.field
        if not u or not v:
            return ()
        out = [K.zero] * (len(u) + len(v))
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                out[i + j + 1] = K.add(out[i + j + 1], K.mul(a, b))
        return _strip(out)

    def add(self, f, g) -> BivarElem:
        K = self.field
        return BivarElem(
            K.add(f.const, g.const),
            self._part_add(f.x_coeffs, g.x_coeffs),
            self._part_add(f.y_coeffs, g.y_coeffs),
        )

    def neg(self, f) -> BivarElem:
        K = self.field
        return BivarElem(
            K.neg(f.const),
            tuple(K.neg(c) for c in f.x_coeffs),
            tuple(K.neg(c) for c in f.y_coeffs),
        )

    def sub(self, f, g) -> BivarElem:
        return self.add(f, self.neg(g))

    def mul(self, f, g) -> BivarElem:
        # mixed monomials die: branches only interact through constants
        K = self.field
        xs = self._part_add(
            self._part_add(
                self._part_scale(f.const, g.x_coeffs),
                self._part_scale(g.const, f.x_coeffs),
            ),
            self._part_mul(f.x_coeffs, g.x_coeffs),
        )
        ys = self._part_add(
            self._part_add(
                self._part_scale(f.const, g.y_coeffs),
                self._part_scale(g.const, f.y_coeffs),
            ),
            self._part_mul(f.y_coeffs, g.y_coeffs),
        )
        return BivarElem(K.mul(f.const, g.const), xs, ys)

    def is_unit(self, f) -> bool:
        # inverting forces both polynomial branches to vanish
        return f.const != 0 and not f.x_coeffs and not f.y_coeffs

    def inverse(self, f) -> BivarElem:
        if not self.is_unit(f):
            raise ZeroDivisionError(f"{self.format_element(f)} is not a unit")
        return self.const(self.field.inv(f.const))

    # -- order structure ---------------------------------------------------
    def x_part(self, f) -> BivarElem:
        return BivarElem(self.field.zero, f.x_coeffs, ())

    def y_part(self, f) -> BivarElem:
        return BivarElem(self.field.zero, (), f.y_coeffs)

    def lower_set(self, f) -> tuple:
        """The complete set of lower bounds of f: 0, f, and the pure
        parts when f has no constant term."""
        out = [self.zero, f]
        if f.const == 0:
            out.extend([self.x_part(f), self.y_part(f)])
        seen, uniq = set(), []
        for v in out:
            if v not in seen:
                seen.add(v)
                uniq.append(v)
        return tuple(uniq)

    def common_lower_bounds(self, f, g) -> tuple:
        lg = set(self.lower_set(g))
        return tuple(v for v in self.lower_set(f) if v in lg)

    def infimum(self, f, g) -> BivarElem:
        """Greatest lower bound; always exists (two minimal primes)."""
        bounds = self.common_lower_bounds(f, g)
        for c in bounds:
            if all(order.le_rr(self, k, c) for k in bounds):
                return c
        raise AssertionError("bivariate lower bounds must form a chain")

    def infimum_or_none(self, f, g):
        return self.infimum(f, g)

    def nonzero_lower_bound(self, f, g):
        for c in self.common_lower_bounds(f, g):
            if not c.is_zero:
                return c
        return None

    # -- sampling / io -----------------------------------------------------
    def sample(self, rng, max_deg: int = 6, allow_const: bool = True) -> BivarElem:
        K = self.field
        const = K.sample(rng) if (allow_const and rng.random() < 0.5) else K.zero
        xs = [K.sample(rng) if rng.random() < 0.4 else K.zero for _ in range(max_deg)]
        ys = [K.sample(rng) if rng.random() < 0.4 else K.zero for _ in range(max_deg)]
        return BivarElem(const, _strip(xs), _strip(ys))

    def format_element(self, f) -> str:
        K = self.field
        terms = []  # (sign, body) pairs
        if f.const != 0 or (not f.x_coeffs and not f.y_coeffs):
            c = f.const
            if isinstance(c, Fraction) and c < 0:
                terms.append(("-", K.format(-c)))
            else:
                terms.append(("+", K.format(c)))
        for var, coeffs in (("x", f.x_coeffs), ("y", f.y_coeffs)):
            for i, c in enumerate(coeffs):
                if c == 0:
                    continue
                sign = "+"
                if isinstance(c, Fraction) and c < 0:
                    sign, c = "-", -c
                power = var if i == 0 else f"{var}^{i + 1}"
                body = power if c == K.one else f"{K.format(c)}*{power}"
                terms.append((sign, body))
        out = ""
        for sign, body in terms:
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    _TERM = re.compile(
        r"^(?:(?P<coef>[0-9]+(?:/[0-9]+)?)\s*\*?\s*)?"
        r"(?:(?P<var>[xy])(?:\^(?P<pow>[0-9]+))?)?$"
    )

    def parse_element(self, text: str) -> BivarElem:
        """Parse 'c + a*x^i + b*y^j' style strings (exact rationals as n/d)."""
        K = self.field
        s = text.replace("-", "+-").replace(" ", "")
        if s.startswith("+"):
            s = s[1:]
        const = K.zero
        xs: dict = {}
        ys: dict = {}
        for raw in filter(None, s.split("+")):
            sign = K.one
            if raw.startswith("-"):
                sign = K.neg(K.one)
                raw = raw[1:]
            m = self._TERM.match(raw)
            if not m or (m.group("coef") is None and m.group("var") is None):
                raise ValueError(f"bad term {raw!r} in {text!r}")
            coef = K.parse(m.group("coef")) if m.group("coef") else K.one
            coef = K.mul(sign, coef)
            var = m.group("var")
            if var is None:
                const = K.add(const, coef)
                continue
            power = int(m.group("pow") or 1)
            target = xs if var == "x" else ys
            target[power] = K.add(target.get(power, K.zero), coef)
        def dense(d):
            if not d:
                return ()
            out = [K.zero] * max(d)
            for k, c in d.items():
                out[k - 1] = c
            return _strip(out)
        return BivarElem(const, dense(xs), dense(ys))

    def __repr__(self):
        return f"<BivarRing {self.name}>"


def bivar_ring(field="Q") -> BivarRing:
    """Build K[x,y]/(xy) over the rationals or F_p (pass 'Q' or a prime)."""
    if field in ("Q", "q", None):
        return BivarRing(Rationals())
    from .rings import is_prime

    p = int(field)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return BivarRing(PrimeFieldCoeffs(p))


def annihilator_type(A: BivarRing, f) -> AnnType:
    """Which ideal annihilates f: everything, (x), (y) or just zero."""
    if f.is_zero:
        return AnnType.WHOLE_RING
    if f.pure_x:
        return AnnType.Y_IDEAL
    if f.pure_y:
        return AnnType.X_IDEAL
    return AnnType.ZERO


def inf_rr_bivar(A: BivarRing, f, g) -> BivarElem:
    """Greatest lower bound of f and g in K[x,y]/(xy); total."""
    return A.infimum(f, g)


@dataclass
class IndecomposableWedgeReport:
    """Audit of the unit-versus-element bound collapse.

    In an indecomposable reduced ring, any common lower bound of a
    central unit u and any b is either 0 or forces c = u = b, and the
    infimum of u and b always exists.
    """

    ring_name: str
    instances: int
    candidates_checked: int
    violations: tuple

    @property
    def holds(self) -> bool:
        return not self.violations


def verify_bvide(A: BivarRing, u, b, rng=None, extra_candidates=()) -> IndecomposableWedgeReport:
    """Check the collapse property for one (u, b) pair.

    Candidates are the structured lower-bound suspects plus anything the
    caller supplies; every candidate that turns out to be a common lower
    bound must be 0 or equal to both u and b.  Also checks that the
    infimum exists and is 0 or u.
    """
    if not A.is_unit(u):
        raise ValueError(f"{A.format_element(u)} is not a unit")
    candidates = [
        A.zero,
        u,
        b,
        A.sub(u, b),
        A.sub(b, u),
        A.x_part(b),
        A.y_part(b),
        A.mul(u, b),
    ]
    candidates.extend(extra_candidates)
    if rng is not None:
        candidates.extend(A.sample(rng) for _ in range(8))
    violations = []
    checked = 0
    for c in candidates:
        checked += 1
        if order.le_rr(A, c, u) and order.le_rr(A, c, b):
            if not (c.is_zero or (c == u and u == b)):
                violations.append(c)
    w = inf_rr_bivar(A, u, b)
    expected = u if u == b else A.zero
    if w != expected:
        violations.append(("infimum", w))
    return IndecomposableWedgeReport(
        ring_name=A.name,
        instances=1,
        candidates_checked=checked,
        violations=tuple(violations),
    )


class GeneratedSubalgebra:
    """Membership oracle for the subalgebra generated by x + y^d and x^2.

    Decidable normal-form criterion: the y-part may only use exponents
    divisible by d, and the coefficient of y^d must equal the
    coefficient of x (both come only from the first generator).  Higher
    x-powers are unconstrained because x^2 generates them outright.
    """

    def __init__(self, ring: BivarRing, gens):
        gens = tuple(gens)
        if len(gens) != 2:
            raise ValueError("expected exactly two generators")
        d = None
        seen_x2 = False
        for g in gens:
            if g == ring.x_power(2):
                seen_x2 = True
            elif (
                g.const == 0
                and g.x_coeffs == (ring.field.one,)
                and g.y_coeffs
                and _strip(g.y_coeffs[:-1]) == ()
                and g.y_coeffs[-1] == ring.field.one
            ):
                d = len(g.y_coeffs)
        if not seen_x2 or d is None:
            raise ValueError(
                "membership is only decidable for generators of the form "
                "{x + y^d, x^2}"
            )
        self.ring = ring
        self.d = d
        self.generators = gens
        self.name = f"<x+y^{d}, x^2> in {ring.name}"
        self.elements = None  # not enumerable

    # ring-like delegation so the oracle can serve as a tail ring
    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    def add(self, a, b):
        return self.ring.add(a, b)

    def mul(self, a, b):
        return self.ring.mul(a, b)

    def neg(self, a):
        return self.ring.neg(a)

    def sub(self, a, b):
        return self.ring.sub(a, b)

    def format_element(self, a):
        return self.ring.format_element(a)

    def contains(self, f) -> bool:
        if not isinstance(f, BivarElem):
            return False
        for i, c in enumerate(f.y_coeffs):
            if c != 0 and (i + 1) % self.d != 0:
                return False
        return f.y_coeff(self.d) == f.x_coeff(1)

    def common_lower_bounds(self, f, g) -> tuple:
        """Lower bounds of (f, g) that lie inside the subalgebra."""
        return tuple(
            c for c in self.ring.common_lower_bounds(f, g) if self.contains(c)
        )

    def infimum_or_none(self, f, g):
        bounds = self.common_lower_bounds(f, g)
        for c in bounds:
            if all(order.le_rr(self.ring, k, c) for k in bounds):
                return c
        return None

    def sample(self, rng, max_terms: int = 4) -> BivarElem:
        K = self.ring.field
        f = self.ring.const(K.sample(rng))
        for _ in range(rng.randrange(max_terms + 1)):
            pick = rng.random()
            if pick < 0.4:
                lam = K.sample(rng)
                a = rng.randrange(1, 3)
                linked = self.ring.add(
                    self.ring.x_power(a, lam), self.ring.y_power(self.d * a, lam)
                )
                f = self.ring.add(f, linked)
            else:
                f = self.ring.add(
                    f, self.ring.x_power(rng.randrange(2, 6), K.sample(rng))
                )
        assert self.contains(f)
        return f

    def __repr__(self):
        return f"<GeneratedSubalgebra {self.name}>"


def generated_subalgebra(ring: BivarRing, gens) -> GeneratedSubalgebra:
    return GeneratedSubalgebra(ring, gens)


def enumerate_elements(A: BivarRing, coeff_pool, max_deg: int, max_terms: int):
    """All normal forms with coefficients from a pool, bounded degree and
    bounded monomial count.  A brute-force element family for oracles."""
    K = A.field
    monomials = [("c", 0)]
    monomials += [("x", k) for k in range(1, max_deg + 1)]
    monomials += [("y", k) for k in range(1, max_deg + 1)]
    pool = [K.coerce(c) for c in coeff_pool if K.coerce(c) != K.zero]
    out = [A.zero]
    for count in range(1, max_terms + 1):
        for monos in itertools.combinations(monomials, count):
            for coeffs in itertools.product(pool, repeat=count):
                const = K.zero
                xs: list = [K.zero] * max_deg
                ys: list = [K.zero] * max_deg
                for (var, k), c in zip(monos, coeffs):
                    if var == "c":
                        const = c
                    elif var == "x":
                        xs[k - 1] = c
                    else:
                        ys[k - 1] = c
                out.append(BivarElem(const, _strip(xs), _strip(ys)))
    return out
