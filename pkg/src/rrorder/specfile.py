"""Declarative ring construction from a nested key-value text format.

A spec file is a sequence of blocks.  Each block starts with an
unindented ``ring NAME`` line and continues with indented ``key value``
lines.  Blank lines and ``#`` comments are ignored.  Blocks may refer to
other blocks (``parent``, ``coeff``) in any order; resolution is
iterative, so only genuine cycles or unknown names fail.

Supported kinds and their keys:

    kind zmod        n <int>
    kind product     primes <p1> <p2> ...
    kind subring     parent <name>   generators <el> ; <el> ; ...
    kind quotient    parent <name>   generators <el> ; ...
    kind bivariate   field Q | <p>
    kind seqring     coeff <name>    tails unit | all | gens <el> ; <el>
    kind psring      coeff <name>    monoid nat <k> [lex|grlex] | free <letters> | rationals

Element literals use the owning ring's syntax: integers for modular
rings, comma tuples like (1,0,1) for products, polynomial strings for
the bivariate ring, and [a1, a2; tail] for sequence rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bivariate import BivarRing, bivar_ring, generated_subalgebra
from .psring import OrderedMonoid, monoid_make
from .rings import FiniteRing, build_product, build_zmod, quotient, subring_closure
from .seqring import SeqRing


class SpecError(Exception):
    """A spec file failed to parse or resolve."""


@dataclass(frozen=True)
class RingSpec:
    """One parsed block: a ring name, kind, and canonical parameters."""

    name: str
    kind: str
    params: tuple  # sorted (key, value) pairs, values canonicalized


@dataclass
class SeriesContext:
    """A power-series context: coefficient ring plus ordered monoid."""

    name: str
    ring: FiniteRing
    monoid: OrderedMonoid

    def __repr__(self):
        return f"<SeriesContext {self.name}: {self.ring.name} over {self.monoid.name}>"


@dataclass
class SpecTable:
    """Parsed specs plus the resolved ring objects, in dependency order."""

    specs: tuple
    rings: dict = field(default_factory=dict)

    def __getitem__(self, name: str):
        return self.rings[name]

    def __contains__(self, name: str) -> bool:
        return name in self.rings

    def names(self) -> tuple:
        return tuple(s.name for s in self.specs)

    def finite_rings(self) -> list:
        return [
            (s.name, self.rings[s.name])
            for s in self.specs
            if isinstance(self.rings[s.name], FiniteRing)
        ]


_KNOWN_KINDS = {
    "zmod", "product", "subring", "quotient", "bivariate", "seqring", "psring",
}
_KIND_KEYS = {
    "zmod": {"n"},
    "product": {"primes"},
    "subring": {"parent", "generators"},
    "quotient": {"parent", "generators"},
    "bivariate": {"field"},
    "seqring": {"coeff", "tails"},
    "psring": {"coeff", "monoid"},
}


def _blocks(text: str):
    current_name = None
    current: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indented = line[0] in " \t"
        stripped = line.strip()
        if not indented:
            if not stripped.startswith("ring "):
                raise SpecError(f"line {lineno}: expected 'ring NAME'")
            if current_name is not None:
                yield current_name, current
            current_name = stripped[5:].strip()
            if not current_name or " " in current_name:
                raise SpecError(f"line {lineno}: bad ring name {current_name!r}")
            current = {}
        else:
            if current_name is None:
                raise SpecError(f"line {lineno}: key-value before any ring block")
            parts = stripped.split(None, 1)
            if len(parts) != 2:
                raise SpecError(f"line {lineno}: expected 'key value'")
            key, value = parts
            if key in current:
                raise SpecError(f"line {lineno}: duplicate key {key!r}")
            current[key] = value.strip()
    if current_name is not None:
        yield current_name, current


def _canonical_params(kind: str, raw: dict) -> tuple:
    out = []
    for key in sorted(raw):
        value = raw[key]
        if key in ("generators", "tails") and value.startswith("gens"):
            head, _, rest = value.partition(" ")
            items = [tok.strip() for tok in rest.split(";")]
            value = "gens " + " ; ".join(items)
        elif key == "generators":
            value = " ; ".join(tok.strip() for tok in value.split(";"))
        elif key in ("primes", "monoid"):
            value = " ".join(value.split())
        out.append((key, value))
    return tuple(out)


def parse_spec(text: str) -> SpecTable:
    """Parse and resolve a spec file into constructed ring objects."""
    specs = []
    seen = set()
    for name, raw in _blocks(text):
        if name in seen:
            raise SpecError(f"duplicate ring name {name!r}")
        seen.add(name)
        kind = raw.pop("kind", None)
        if kind is None:
            raise SpecError(f"ring {name}: missing kind")
        if kind not in _KNOWN_KINDS:
            raise SpecError(f"ring {name}: unknown kind {kind!r}")
        missing = _KIND_KEYS[kind] - raw.keys()
        extra = raw.keys() - _KIND_KEYS[kind]
        if missing:
            raise SpecError(f"ring {name}: missing keys {sorted(missing)}")
        if extra:
            raise SpecError(f"ring {name}: unexpected keys {sorted(extra)}")
        specs.append(RingSpec(name=name, kind=kind, params=_canonical_params(kind, raw)))

    table = SpecTable(specs=tuple(specs))
    pending = list(specs)
    ordered = []
    while pending:
        progressed = False
        still = []
        for spec in pending:
            try:
                table.rings[spec.name] = _build(spec, table)
            except _Unresolved:
                still.append(spec)
                continue
            ordered.append(spec)
            progressed = True
        if not progressed:
            names = ", ".join(s.name for s in still)
            raise SpecError(f"unresolved references (cycle or unknown): {names}")
        pending = still
    table.specs = tuple(ordered)  # dependency order
    return table


class _Unresolved(Exception):
    pass


def _get(table: SpecTable, name: str):
    if name not in table.rings:
        raise _Unresolved(name)
    return table.rings[name]


def _build(spec: RingSpec, table: SpecTable):
    params = dict(spec.params)
    kind = spec.kind
    try:
        if kind == "zmod":
            return build_zmod(int(params["n"]))
        if kind == "product":
            return build_product([int(p) for p in params["primes"].split()])
        if kind in ("subring", "quotient"):
            parent = _get(table, params["parent"])
            gens = [
                parent.parse_element(tok.strip())
                for tok in params["generators"].split(";")
                if tok.strip()
            ]
            if kind == "subring":
                return subring_closure(parent, gens)
            return quotient(parent, gens)[0]
        if kind == "bivariate":
            return bivar_ring(params["field"])
        if kind == "seqring":
            coeff = _get(table, params["coeff"])
            return SeqRing(coeff, _build_tails(coeff, params["tails"]))
        if kind == "psring":
            coeff = _get(table, params["coeff"])
            if not isinstance(coeff, FiniteRing):
                raise SpecError(
                    f"ring {spec.name}: series coefficients must be finite"
                )
            return SeriesContext(
                name=spec.name, ring=coeff, monoid=_parse_monoid(params["monoid"])
            )
    except _Unresolved:
        raise
    except SpecError:
        raise
    except Exception as exc:
        raise SpecError(f"ring {spec.name}: {exc}") from exc
    raise SpecError(f"ring {spec.name}: unknown kind {kind!r}")


def _build_tails(coeff, tails: str):
    if tails == "all":
        return coeff
    if tails == "unit":
        if not isinstance(coeff, FiniteRing):
            raise SpecError("tails 'unit' needs a finite coefficient ring")
        return subring_closure(coeff, [])
    if tails.startswith("gens"):
        gen_texts = [tok.strip() for tok in tails[4:].split(";") if tok.strip()]
        gens = [coeff.parse_element(t) for t in gen_texts]
        if isinstance(coeff, BivarRing):
            return generated_subalgebra(coeff, gens)
        return subring_closure(coeff, gens)
    raise SpecError(f"bad tails spec {tails!r}")


def _parse_monoid(text: str) -> OrderedMonoid:
    parts = text.split()
    if parts[0] == "nat":
        k = int(parts[1]) if len(parts) > 1 else 1
        order_kind = parts[2] if len(parts) > 2 else "lex"
        return monoid_make("nat", k=k, order_kind=order_kind)
    if parts[0] == "free":
        if len(parts) != 2:
            raise SpecError("free monoid needs an alphabet, e.g. 'free ab'")
        return monoid_make("free", alphabet=parts[1])
    if parts[0] == "rationals":
        return monoid_make("rationals")
    raise SpecError(f"bad monoid spec {text!r}")


def print_spec(table: SpecTable) -> str:
    """Canonical text for a table; parse(print(t)) reproduces t.specs."""
    lines = []
    for spec in table.specs:
        lines.append(f"ring {spec.name}")
        lines.append(f"  kind {spec.kind}")
        for key, value in spec.params:
            lines.append(f"  {key} {value}")
        lines.append("")
    return "\n".join(lines)


# The standard ring table used by the verification suites and as the
# CLI default.  Names group by family; sizes stay at desk scale.
BUNDLED_SPEC = """\
ring Z1
  kind zmod
  n 1

ring Z2
  kind zmod
  n 2

ring Z3
  kind zmod
  n 3

ring Z5
  kind zmod
  n 5

ring Z6
  kind zmod
  n 6

ring Z7
  kind zmod
  n 7

ring Z30
  kind zmod
  n 30

ring Z42
  kind zmod
  n 42

ring Z210
  kind zmod
  n 210

ring F2x2
  kind product
  primes 2 2

ring F2x3
  kind product
  primes 2 2 2

ring F2x4
  kind product
  primes 2 2 2 2

ring F2x8
  kind product
  primes 2 2 2 2 2 2 2 2

ring F235
  kind product
  primes 2 3 5

ring P2233
  kind product
  primes 2 2 3 3

ring DIAG3
  kind subring
  parent F2x3
  generators (1,1,0)

ring MIX6
  kind subring
  parent P2233
  generators (1,1,0,0) ; (0,0,1,1)

ring QF23
  kind quotient
  parent F2x3
  generators (1,0,0)

ring QZ30
  kind quotient
  parent Z30
  generators 15

ring BIVQ
  kind bivariate
  field Q

ring BIV3
  kind bivariate
  field 3

ring SEQD
  kind seqring
  coeff F2x2
  tails unit

ring SEQW
  kind seqring
  coeff BIVQ
  tails gens x + y^3 ; x^2

ring PSZ6
  kind psring
  coeff Z6
  monoid nat 1

ring PSZ6N2
  kind psring
  coeff Z6
  monoid nat 2 lex

ring PSZ6F
  kind psring
  coeff Z6
  monoid free ab

ring PSZ3
  kind psring
  coeff Z3
  monoid nat 1
"""


def load_bundled() -> SpecTable:
    return parse_spec(BUNDLED_SPEC)
