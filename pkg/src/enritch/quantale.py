"""Integral involutive quantales with exact arithmetic.

Two realizations are provided:

* ``LawvereQuantale`` -- the extended non-negative rationals under addition,
  ordered by the *reverse* of the numeric order (so ``leq(a, b)`` means
  ``a >= b`` numerically, the unit 0 is the top element, and joins are
  numeric infima).
* ``FiniteQuantale`` -- a table-defined quantale.  Joins and meets are
  derived from the order table at load time; nothing else is trusted until
  ``check_quantale_laws`` has verified every law exhaustively.

Values are wrapped in ``QuantaleValue`` so that mixing two instances raises
``QuantaleMismatchError`` instead of silently producing nonsense.  All
objects here are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import QuantaleMismatchError, SchemaError, UnsupportedQuantaleError
from .rationals import INF, ZERO, ExtRat

__all__ = [
    "Quantale",
    "LawvereQuantale",
    "FiniteQuantale",
    "QuantaleValue",
    "LawReport",
    "LAWVERE",
    "leq",
    "tensor",
    "join",
    "meet",
    "residual",
    "involve",
    "check_quantale_laws",
    "boolean_quantale",
    "lukasiewicz_chain",
    "nilpotent_minimum_chain",
    "diamond_frame",
]


@dataclass(frozen=True)
class QuantaleValue:
    """A value tagged with the quantale instance it belongs to."""

    quantale: "Quantale"
    payload: Any

    def __repr__(self) -> str:
        return f"<{self.quantale.name}:{self.quantale.format_value(self.payload)}>"


class Quantale:
    """Payload-level operations; public ops live at module level."""

    name = "quantale"
    is_finite = False

    # -- payload level ------------------------------------------------

    def _leq(self, a, b) -> bool:
        raise NotImplementedError

    def _tensor(self, a, b):
        raise NotImplementedError

    def _join(self, values: Iterable):
        raise NotImplementedError

    def _meet(self, values: Iterable):
        raise NotImplementedError

    def _residual_left(self, w, u):
        """w / u = join {v : v (x) u <= w}."""
        raise NotImplementedError

    def _residual_right(self, v, w):
        """v \\ w = join {u : v (x) u <= w}."""
        raise NotImplementedError

    def _involve(self, a):
        raise NotImplementedError

    @property
    def unit(self):
        raise NotImplementedError

    @property
    def bottom(self):
        raise NotImplementedError

    @property
    def is_commutative(self) -> bool:
        raise NotImplementedError

    @property
    def is_divisible(self) -> bool:
        raise NotImplementedError

    def payloads(self) -> Sequence:
        raise UnsupportedQuantaleError(f"{self.name} has infinitely many elements")

    def format_value(self, payload) -> str:
        raise NotImplementedError

    def parse_value(self, text) -> Any:
        raise NotImplementedError

    # -- wrapper level ------------------------------------------------

    def value(self, payload) -> QuantaleValue:
        return QuantaleValue(self, self._normalize(payload))

    def _normalize(self, payload):
        return payload

    def require_same(self, *values: QuantaleValue) -> None:
        for v in values:
            if not isinstance(v, QuantaleValue):
                raise QuantaleMismatchError(f"expected a QuantaleValue, got {v!r}")
            if v.quantale is not self:
                raise QuantaleMismatchError(
                    f"value from {v.quantale.name} used with {self.name}"
                )


class LawvereQuantale(Quantale):
    """[0, inf] with addition, unit 0, reverse numeric order, trivial involution."""

    name = "lawvere"
    is_finite = False

    def _normalize(self, payload):
        if isinstance(payload, ExtRat):
            return payload
        if isinstance(payload, (int, Fraction)):
            return ExtRat(payload)
        if isinstance(payload, str):
            return ExtRat.parse(payload)
        raise SchemaError(f"cannot interpret {payload!r} as an extended rational")

    def _leq(self, a: ExtRat, b: ExtRat) -> bool:
        return a >= b

    def _tensor(self, a: ExtRat, b: ExtRat) -> ExtRat:
        return a + b

    def _join(self, values) -> ExtRat:
        result = INF
        for v in values:
            if v < result:
                result = v
        return result

    def _meet(self, values) -> ExtRat:
        result = ZERO
        for v in values:
            if v > result:
                result = v
        return result

    def _residual_left(self, w: ExtRat, u: ExtRat) -> ExtRat:
        return w.monus(u)

    def _residual_right(self, v: ExtRat, w: ExtRat) -> ExtRat:
        return w.monus(v)

    def _involve(self, a: ExtRat) -> ExtRat:
        return a

    @property
    def unit(self) -> ExtRat:
        return ZERO

    @property
    def bottom(self) -> ExtRat:
        return INF

    @property
    def is_commutative(self) -> bool:
        return True

    @property
    def is_divisible(self) -> bool:
        return True

    def format_value(self, payload: ExtRat) -> str:
        return str(payload)

    def parse_value(self, text) -> ExtRat:
        return self._normalize(text)


LAWVERE = LawvereQuantale()


class FiniteQuantale(Quantale):
    """Table-defined quantale; payloads are element indices.

    The constructor checks shapes only.  Join and meet tables are derived
    from the order table on first use; a non-lattice order surfaces there
    (and in ``check_quantale_laws``) rather than at load.
    """

    is_finite = True

    def __init__(
        self,
        elements: Sequence[str],
        leq_table: Sequence[Sequence[bool]],
        tensor_table: Sequence[Sequence[str]],
        unit: str,
        involution_table: Sequence[str],
        name: str = "finite",
    ):
        n = len(elements)
        if n == 0:
            raise SchemaError("a quantale needs at least one element")
        if len(set(elements)) != n:
            raise SchemaError("element names must be unique")
        self.name = name
        self.elements = tuple(str(e) for e in elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if unit not in self._index:
            raise SchemaError(f"unit {unit!r} is not an element")
        self._unit = self._index[unit]

        def _check_square(table, label):
            if len(table) != n or any(len(row) != n for row in table):
                raise SchemaError(f"{label} table must be {n}x{n}")

        _check_square(leq_table, "leq")
        _check_square(tensor_table, "tensor")
        if len(involution_table) != n:
            raise SchemaError(f"involution table must have {n} entries")
        for row in leq_table:
            for cell in row:
                if not isinstance(cell, bool):
                    raise SchemaError(f"leq entries must be booleans, got {cell!r}")
        self.leq_table = tuple(tuple(row) for row in leq_table)
        self.tensor_table = tuple(
            tuple(self._lookup(cell, "tensor") for cell in row) for row in tensor_table
        )
        self.involution_table = tuple(
            self._lookup(cell, "involution") for cell in involution_table
        )
        self._join_table: tuple | None = None
        self._meet_table: tuple | None = None
        self._res_left: tuple | None = None
        self._res_right: tuple | None = None
        self._top: int | None = None
        self._bottom: int | None = None
        self._commutative: bool | None = None
        self._divisible: bool | None = None

    def _lookup(self, element: str, label: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise SchemaError(f"{label} table mentions unknown element {element!r}") from None

    # -- derived tables -------------------------------------------------

    def _bounds(self, a: int, b: int, upper: bool) -> list[int]:
        table = self.leq_table
        if upper:
            return [c for c in range(len(self.elements)) if table[a][c] and table[b][c]]
        return [c for c in range(len(self.elements)) if table[c][a] and table[c][b]]

    def _derive_lattice(self) -> None:
        if self._join_table is not None:
            return
        n = len(self.elements)
        join_t = [[0] * n for _ in range(n)]
        meet_t = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                ubs = self._bounds(a, b, upper=True)
                least = [u for u in ubs if all(self.leq_table[u][v] for v in ubs)]
                if len(least) != 1:
                    raise SchemaError(
                        f"no unique join of {self.elements[a]!r} and {self.elements[b]!r};"
                        " the order is not a lattice"
                    )
                join_t[a][b] = least[0]
                lbs = self._bounds(a, b, upper=False)
                greatest = [u for u in lbs if all(self.leq_table[v][u] for v in lbs)]
                if len(greatest) != 1:
                    raise SchemaError(
                        f"no unique meet of {self.elements[a]!r} and {self.elements[b]!r};"
                        " the order is not a lattice"
                    )
                meet_t[a][b] = greatest[0]
        self._join_table = tuple(tuple(row) for row in join_t)
        self._meet_table = tuple(tuple(row) for row in meet_t)

    @property
    def join_table(self):
        self._derive_lattice()
        return self._join_table

    @property
    def meet_table(self):
        self._derive_lattice()
        return self._meet_table

    def _derive_residuals(self) -> None:
        if self._res_left is not None:
            return
        n = len(self.elements)
        left = [[0] * n for _ in range(n)]
        right = [[0] * n for _ in range(n)]
        for w in range(n):
            for u in range(n):
                left[w][u] = self._join(
                    v for v in range(n) if self.leq_table[self.tensor_table[v][u]][w]
                )
            for v in range(n):
                right[v][w] = self._join(
                    u for u in range(n) if self.leq_table[self.tensor_table[v][u]][w]
                )
        self._res_left = tuple(tuple(row) for row in left)
        self._res_right = tuple(tuple(row) for row in right)

    # -- payload ops ----------------------------------------------------

    def _normalize(self, payload):
        if isinstance(payload, str):
            return self._lookup(payload, "value")
        if isinstance(payload, int) and 0 <= payload < len(self.elements):
            return payload
        raise SchemaError(f"cannot interpret {payload!r} as an element of {self.name}")

    def _leq(self, a: int, b: int) -> bool:
        return self.leq_table[a][b]

    def _tensor(self, a: int, b: int) -> int:
        return self.tensor_table[a][b]

    def _join(self, values) -> int:
        result = self.bottom
        table = self.join_table
        for v in values:
            result = table[result][v]
        return result

    def _meet(self, values) -> int:
        result = self.top
        table = self.meet_table
        for v in values:
            result = table[result][v]
        return result

    def _residual_left(self, w: int, u: int) -> int:
        self._derive_residuals()
        return self._res_left[w][u]

    def _residual_right(self, v: int, w: int) -> int:
        self._derive_residuals()
        return self._res_right[v][w]

    def _involve(self, a: int) -> int:
        return self.involution_table[a]

    @property
    def unit(self) -> int:
        return self._unit

    @property
    def top(self) -> int:
        if self._top is None:
            n = len(self.elements)
            for c in range(n):
                if all(self.leq_table[a][c] for a in range(n)):
                    self._top = c
                    break
            else:
                raise SchemaError("the order has no top element")
        return self._top

    @property
    def bottom(self) -> int:
        if self._bottom is None:
            n = len(self.elements)
            for c in range(n):
                if all(self.leq_table[c][a] for a in range(n)):
                    self._bottom = c
                    break
            else:
                raise SchemaError("the order has no bottom element")
        return self._bottom

    def payloads(self) -> range:
        return range(len(self.elements))

    def format_value(self, payload: int) -> str:
        return self.elements[payload]

    def parse_value(self, text) -> int:
        return self._normalize(text)

    @property
    def is_commutative(self) -> bool:
        if self._commutative is None:
            n = len(self.elements)
            self._commutative = all(
                self.tensor_table[a][b] == self.tensor_table[b][a]
                for a in range(n)
                for b in range(n)
            )
        return self._commutative

    @property
    def is_divisible(self) -> bool:
        """u <= q implies (u/q) (x) q = u = q (x) (q\\u), tested exhaustively."""
        if self._divisible is None:
            self._divisible = True
            for q in self.payloads():
                for u in self.payloads():
                    if not self.leq_table[u][q]:
                        continue
                    if (
                        self._tensor(self._residual_left(u, q), q) != u
                        or self._tensor(q, self._residual_right(q, u)) != u
                    ):
                        self._divisible = False
                        break
                if not self._divisible:
                    break
        return self._divisible

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "leq": [list(row) for row in self.leq_table],
            "tensor": [[self.elements[c] for c in row] for row in self.tensor_table],
            "unit": self.elements[self._unit],
            "involution": [self.elements[c] for c in self.involution_table],
        }

    @classmethod
    def from_dict(cls, data: dict, name: str = "finite") -> "FiniteQuantale":
        if not isinstance(data, dict):
            raise SchemaError("quantale document must be a JSON object")
        missing = {"elements", "leq", "tensor", "unit", "involution"} - set(data)
        if missing:
            raise SchemaError(f"quantale document is missing keys: {sorted(missing)}")
        return cls(
            data["elements"], data["leq"], data["tensor"], data["unit"],
            data["involution"], name=name,
        )


# -- public operations on wrapped values --------------------------------


def leq(a: QuantaleValue, b: QuantaleValue) -> bool:
    a.quantale.require_same(a, b)
    return a.quantale._leq(a.payload, b.payload)


def tensor(a: QuantaleValue, b: QuantaleValue) -> QuantaleValue:
    a.quantale.require_same(a, b)
    return QuantaleValue(a.quantale, a.quantale._tensor(a.payload, b.payload))


def join(values: Iterable[QuantaleValue], quantale: Quantale | None = None) -> QuantaleValue:
    values = list(values)
    if quantale is None:
        if not values:
            raise QuantaleMismatchError("empty join needs an explicit quantale")
        quantale = values[0].quantale
    quantale.require_same(*values)
    return QuantaleValue(quantale, quantale._join(v.payload for v in values))


def meet(values: Iterable[QuantaleValue], quantale: Quantale | None = None) -> QuantaleValue:
    values = list(values)
    if quantale is None:
        if not values:
            raise QuantaleMismatchError("empty meet needs an explicit quantale")
        quantale = values[0].quantale
    quantale.require_same(*values)
    return QuantaleValue(quantale, quantale._meet(v.payload for v in values))


def residual(side: str, x: QuantaleValue, y: QuantaleValue) -> QuantaleValue:
    """left: x/y = join {p : p (x) y <= x};  right: x\\y = join {q : x (x) q <= y}."""
    x.quantale.require_same(x, y)
    q = x.quantale
    if side == "left":
        return QuantaleValue(q, q._residual_left(x.payload, y.payload))
    if side == "right":
        return QuantaleValue(q, q._residual_right(x.payload, y.payload))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def involve(a: QuantaleValue) -> QuantaleValue:
    return QuantaleValue(a.quantale, a.quantale._involve(a.payload))


# -- law verification ----------------------------------------------------


@dataclass(frozen=True)
class LawReport:
    """Outcome of the exhaustive law suite for a finite quantale."""

    results: tuple[tuple[str, bool, str | None], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def failures(self) -> list[tuple[str, str | None]]:
        return [(law, witness) for law, ok, witness in self.results if not ok]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "laws": [
                {"law": law, "ok": ok, "witness": witness}
                for law, ok, witness in self.results
            ],
        }


def check_quantale_laws(q: FiniteQuantale) -> LawReport:
    """Exhaustively verify every defining law; witnesses name offending elements."""
    results: list[tuple[str, bool, str | None]] = []
    names = q.elements
    rng = range(len(names))

    def record(law: str, witness: str | None):
        results.append((law, witness is None, witness))

    def partial_order_witness() -> str | None:
        for a in rng:
            if not q.leq_table[a][a]:
                return f"not reflexive at {names[a]}"
        for a in rng:
            for b in rng:
                if a != b and q.leq_table[a][b] and q.leq_table[b][a]:
                    return f"not antisymmetric at ({names[a]}, {names[b]})"
        for a in rng:
            for b in rng:
                for c in rng:
                    if q.leq_table[a][b] and q.leq_table[b][c] and not q.leq_table[a][c]:
                        return f"not transitive at ({names[a]}, {names[b]}, {names[c]})"
        return None

    witness = partial_order_witness()
    record("partial_order", witness)
    if witness is not None:
        return LawReport(tuple(results))

    try:
        q._derive_lattice()
        record("complete_lattice", None)
    except SchemaError as exc:
        record("complete_lattice", str(exc))
        return LawReport(tuple(results))

    def associativity_witness() -> str | None:
        for a in rng:
            for b in rng:
                for c in rng:
                    if q._tensor(q._tensor(a, b), c) != q._tensor(a, q._tensor(b, c)):
                        return f"({names[a]}, {names[b]}, {names[c]})"
        return None

    record("tensor_associative", associativity_witness())

    def unit_witness() -> str | None:
        for a in rng:
            if q._tensor(q.unit, a) != a or q._tensor(a, q.unit) != a:
                return names[a]
        return None

    record("unit_identity", unit_witness())
    record(
        "unit_is_top",
        None if q.unit == q.top else f"unit {names[q.unit]} is not the top element",
    )

    def join_preservation_witness() -> str | None:
        # Binary and empty joins suffice for arbitrary joins in a finite lattice.
        for a in rng:
            if q._tensor(a, q.bottom) != q.bottom or q._tensor(q.bottom, a) != q.bottom:
                return f"bottom not absorbed at {names[a]}"
            for b in rng:
                for c in rng:
                    jbc = q.join_table[b][c]
                    if q._tensor(a, jbc) != q.join_table[q._tensor(a, b)][q._tensor(a, c)]:
                        return f"left arg at ({names[a]}, {names[b]}, {names[c]})"
                    if q._tensor(jbc, a) != q.join_table[q._tensor(b, a)][q._tensor(c, a)]:
                        return f"right arg at ({names[a]}, {names[b]}, {names[c]})"
        return None

    record("tensor_join_preserving", join_preservation_witness())

    def involution_witnesses() -> tuple[str | None, str | None, str | None]:
        invol = None
        for a in rng:
            if q._involve(q._involve(a)) != a:
                invol = names[a]
                break
        anti = None
        for a in rng:
            for b in rng:
                if q._involve(q._tensor(a, b)) != q._tensor(q._involve(b), q._involve(a)):
                    anti = f"({names[a]}, {names[b]})"
                    break
            if anti:
                break
        joins = None
        if q._involve(q.bottom) != q.bottom:
            joins = "bottom not preserved"
        else:
            for a in rng:
                for b in rng:
                    if q._involve(q.join_table[a][b]) != q.join_table[q._involve(a)][q._involve(b)]:
                        joins = f"({names[a]}, {names[b]})"
                        break
                if joins:
                    break
        return invol, anti, joins

    invol, anti, joins = involution_witnesses()
    record("involution_involutive", invol)
    record("involution_antihomomorphism", anti)
    record("involution_join_preserving", joins)

    def adjunction_witness() -> str | None:
        for a in rng:
            for b in rng:
                for c in rng:
                    lhs = q.leq_table[q._tensor(a, b)][c]
                    mid = q.leq_table[a][q._residual_left(c, b)]
                    rhs = q.leq_table[b][q._residual_right(a, c)]
                    if not (lhs == mid == rhs):
                        return f"({names[a]}, {names[b]}, {names[c]})"
        return None

    record("residuation_adjunction", adjunction_witness())

    return LawReport(tuple(results))


# -- built-in instances ---------------------------------------------------


def _chain_cells(values: list[Fraction], op) -> list[list[str]]:
    return [[str(op(a, b)) for b in values] for a in values]


def boolean_quantale() -> FiniteQuantale:
    """The two-element chain with meet as tensor."""
    return FiniteQuantale(
        elements=["0", "1"],
        leq_table=[[True, True], [False, True]],
        tensor_table=[["0", "0"], ["0", "1"]],
        unit="1",
        involution_table=["0", "1"],
        name="boolean",
    )


def lukasiewicz_chain(n: int) -> FiniteQuantale:
    """The n-element chain 0, 1/(n-1), ..., 1 with a*b = max(0, a+b-1)."""
    if n < 2:
        raise ValueError("a Lukasiewicz chain needs at least 2 elements")
    values = [Fraction(k, n - 1) for k in range(n)]
    names = [str(v) for v in values]
    return FiniteQuantale(
        elements=names,
        leq_table=[[a <= b for b in values] for a in values],
        tensor_table=_chain_cells(values, lambda a, b: max(Fraction(0), a + b - 1)),
        unit="1",
        involution_table=names,
        name=f"lukasiewicz{n}",
    )


def nilpotent_minimum_chain(n: int) -> FiniteQuantale:
    """The n-element chain with a*b = 0 if a+b <= 1 else min(a, b)."""
    if n < 2:
        raise ValueError("a nilpotent-minimum chain needs at least 2 elements")
    values = [Fraction(k, n - 1) for k in range(n)]
    names = [str(v) for v in values]

    def nilmin(a: Fraction, b: Fraction) -> Fraction:
        return Fraction(0) if a + b <= 1 else min(a, b)

    return FiniteQuantale(
        elements=names,
        leq_table=[[a <= b for b in values] for a in values],
        tensor_table=_chain_cells(values, nilmin),
        unit="1",
        involution_table=names,
        name=f"nilmin{n}",
    )


def diamond_frame() -> FiniteQuantale:
    """The four-element frame {bot, a, b, top} with a, b incomparable."""
    elements = ["bot", "a", "b", "top"]
    order = {
        ("bot", "bot"), ("bot", "a"), ("bot", "b"), ("bot", "top"),
        ("a", "a"), ("a", "top"), ("b", "b"), ("b", "top"), ("top", "top"),
    }
    leq_table = [[(x, y) in order for y in elements] for x in elements]

    def frame_meet(x: str, y: str) -> str:
        if (x, y) in order:
            return x
        if (y, x) in order:
            return y
        return "bot"

    return FiniteQuantale(
        elements=elements,
        leq_table=leq_table,
        tensor_table=[[frame_meet(x, y) for y in elements] for x in elements],
        unit="top",
        involution_table=elements,
        name="diamond",
    )
