"""The quantaloid of diagonals of an integral involutive quantale.

A diagonal from p to q is an element u with (u/p) (x) p = u = q (x) (q\\u).
Diagonals compose by v . u = (v/q) (x) u, with q : q -> q as identities.
Restricting objects to the self-involutive elements (q with q deg = q)
yields the involutive sub-quantaloid on which all typed structures in this
library live.

``DiagonalQuantaloid`` is the payload-level kernel used by the relation and
category layers; the module-level functions (``is_diagonal``, ``d_compose``,
``d_residual``, ``hom_enumerate``) form the public wrapped API.

Closed forms for the extended-rational quantale (writing values numerically,
``-`` for the truncated difference and ``max`` in the standard order):

    hom(p, q)            = { u : u >= max(p, q) }
    compose(u: p->q, v: q->r) = (v - q) + u
    w <swarrow> u        = max(q, r, (w + q) - u)    for u: p->q, w: p->r
    v <searrow> w        = max(p, q, (w + q) - v)    for v: q->r, w: p->r

For finite quantales every hom is enumerated and residuals are exhaustive
joins; construction verifies that homs are closed under joins, contain the
bottom, and that the three composition expressions agree on every triple, so
the kernels may use any one of them afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import PreconditionError, ShapeMismatchError, UnsupportedQuantaleError
from .quantale import FiniteQuantale, LawvereQuantale, Quantale, QuantaleValue
from .rationals import INF

__all__ = [
    "DiagonalHom",
    "DiagonalQuantaloid",
    "diagonal_quantaloid",
    "diagonal",
    "is_diagonal",
    "d_compose",
    "d_residual",
    "hom_enumerate",
    "identity_diagonal",
    "symmetric_objects",
]


class DiagonalQuantaloid:
    """Payload-level diagonal calculus over a quantale instance."""

    def __init__(self, quantale: Quantale):
        self.quantale = quantale
        self._homs: dict[tuple, tuple] | None = None
        if isinstance(quantale, FiniteQuantale):
            self._build_finite_tables()
            self._verify_kernels()

    # -- construction-time verification (finite only) -------------------

    def _build_finite_tables(self) -> None:
        q = self.quantale
        homs = {}
        for p in q.payloads():
            for t in q.payloads():
                homs[(p, t)] = tuple(
                    u for u in q.payloads() if self._diagonal_equation(p, t, u)
                )
        self._homs = homs

    def _verify_kernels(self) -> None:
        q = self.quantale
        for (p, t), hom in self._homs.items():
            if q.bottom not in hom:
                raise PreconditionError(
                    f"hom({q.format_value(p)}, {q.format_value(t)}) misses the bottom;"
                    " the quantale is not join-preserving enough for diagonals"
                )
            for u in hom:
                for v in hom:
                    if q._join((u, v)) not in hom:
                        raise PreconditionError(
                            f"hom({q.format_value(p)}, {q.format_value(t)})"
                            " is not closed under joins"
                        )
        for p in q.payloads():
            if self.identity(p) not in self._homs[(p, p)]:
                raise PreconditionError(
                    f"identity {q.format_value(p)} is not a diagonal on itself"
                )
        for p in q.payloads():
            for m in q.payloads():
                for r in q.payloads():
                    for u in self._homs[(p, m)]:
                        for v in self._homs[(m, r)]:
                            a = q._tensor(q._residual_left(v, m), u)
                            b = q._tensor(v, q._residual_right(m, u))
                            c = q._tensor(
                                q._tensor(q._residual_left(v, m), m),
                                q._residual_right(m, u),
                            )
                            if not (a == b == c):
                                raise PreconditionError(
                                    "the three composition expressions disagree at "
                                    f"({q.format_value(u)}: {q.format_value(p)}->"
                                    f"{q.format_value(m)}, {q.format_value(v)}: "
                                    f"{q.format_value(m)}->{q.format_value(r)})"
                                )

    # -- objects ---------------------------------------------------------

    def is_object(self, t) -> bool:
        """Objects of the involutive part: elements fixed by the involution."""
        return self.quantale._involve(t) == t

    def objects(self) -> tuple:
        return tuple(t for t in self.quantale.payloads() if self.is_object(t))

    # -- homs --------------------------------------------------------------

    def _diagonal_equation(self, p, t, u) -> bool:
        q = self.quantale
        left = q._tensor(q._residual_left(u, p), p)
        right = q._tensor(t, q._residual_right(t, u))
        return left == u and right == u

    def is_hom(self, p, t, u) -> bool:
        if self._homs is not None:
            return u in self._homs[(p, t)]
        return self._diagonal_equation(p, t, u)

    def hom(self, p, t) -> tuple:
        if self._homs is None:
            raise UnsupportedQuantaleError(
                "hom sets of the extended-rational quantaloid are infinite"
            )
        return self._homs[(p, t)]

    def identity(self, t):
        return t

    def hom_bottom(self, p, t):
        return self.quantale.bottom

    def hom_top(self, p, t):
        if self._homs is None:
            return max(p, t)
        return self.quantale._join(self._homs[(p, t)])

    # -- composition and residuation ---------------------------------------

    def compose(self, u, mid, v):
        """v . u for u: p -> mid and v: mid -> r."""
        q = self.quantale
        if isinstance(q, LawvereQuantale):
            return v.monus(mid) + u
        return q._tensor(q._residual_left(v, mid), u)

    def limpl(self, mid, r, u, w):
        """w <swarrow> u: the largest v: mid -> r with v . u <= w."""
        q = self.quantale
        if isinstance(q, LawvereQuantale):
            return max(mid, r, (w + mid).monus(u))
        return q._join(
            v for v in self._homs[(mid, r)] if q._leq(self.compose(u, mid, v), w)
        )

    def rimpl(self, p, mid, v, w):
        """v <searrow> w: the largest u: p -> mid with v . u <= w."""
        q = self.quantale
        if isinstance(q, LawvereQuantale):
            return max(p, mid, (w + mid).monus(v))
        return q._join(
            u for u in self._homs[(p, mid)] if q._leq(self.compose(u, mid, v), w)
        )

    def hom_join(self, p, t, values: Iterable):
        q = self.quantale
        if isinstance(q, LawvereQuantale):
            result = INF
            for v in values:
                if v < result:
                    result = v
            return result
        return q._join(values)

    def hom_meet(self, p, t, values: Iterable):
        """Meet inside the hom lattice: the join of the common lower bounds."""
        q = self.quantale
        if isinstance(q, LawvereQuantale):
            result = max(p, t)
            for v in values:
                if v > result:
                    result = v
            return result
        values = list(values)
        return q._join(
            v
            for v in self._homs[(p, t)]
            if all(q._leq(v, s) for s in values)
        )

    def leq(self, a, b) -> bool:
        return self.quantale._leq(a, b)

    def involve(self, a):
        return self.quantale._involve(a)

    def format(self, payload) -> str:
        return self.quantale.format_value(payload)


_CACHE: dict[int, DiagonalQuantaloid] = {}


def diagonal_quantaloid(quantale: Quantale) -> DiagonalQuantaloid:
    key = id(quantale)
    if key not in _CACHE:
        _CACHE[key] = DiagonalQuantaloid(quantale)
    return _CACHE[key]


# -- wrapped public API ----------------------------------------------------


@dataclass(frozen=True)
class DiagonalHom:
    """A diagonal u: p -> q, serialized as {"p": ..., "q": ..., "u": ...}."""

    source: QuantaleValue
    target: QuantaleValue
    value: QuantaleValue

    def to_dict(self) -> dict:
        fmt = self.source.quantale.format_value
        return {
            "p": fmt(self.source.payload),
            "q": fmt(self.target.payload),
            "u": fmt(self.value.payload),
        }


def _common_quantaloid(*values: QuantaleValue) -> DiagonalQuantaloid:
    q = values[0].quantale
    q.require_same(*values)
    return diagonal_quantaloid(q)


def is_diagonal(p: QuantaleValue, q: QuantaleValue, u: QuantaleValue) -> bool:
    """Check the defining equation; for divisible quantales this coincides
    with u <= p meet q, and the coincidence is asserted."""
    dq = _common_quantaloid(p, q, u)
    base = dq.quantale
    holds = dq._diagonal_equation(p.payload, q.payload, u.payload)
    if base.is_divisible:
        below = base._leq(u.payload, base._meet((p.payload, q.payload)))
        assert holds == below, (
            f"divisible quantale but diagonal test disagrees with u <= p meet q at "
            f"({p!r}, {q!r}, {u!r})"
        )
    return holds


def diagonal(p: QuantaleValue, q: QuantaleValue, u: QuantaleValue) -> DiagonalHom:
    if not is_diagonal(p, q, u):
        raise PreconditionError(f"{u!r} is not a diagonal {p!r} -> {q!r}")
    return DiagonalHom(p, q, u)


def identity_diagonal(q: QuantaleValue) -> DiagonalHom:
    return DiagonalHom(q, q, q)


def d_compose(v: DiagonalHom, u: DiagonalHom) -> DiagonalHom:
    """The composite v . u : p -> r of u: p -> q and v: q -> r.

    All three composition expressions are evaluated and must agree.
    """
    dq = _common_quantaloid(u.source, u.target, u.value, v.source, v.target, v.value)
    if u.target != v.source:
        raise ShapeMismatchError(f"cannot compose {u!r} then {v!r}: objects differ")
    base = dq.quantale
    mid = u.target.payload
    uu, vv = u.value.payload, v.value.payload
    if isinstance(base, LawvereQuantale):
        first = vv.monus(mid) + uu
        second = vv + uu.monus(mid)
        third = (vv.monus(mid) + mid) + uu.monus(mid)
    else:
        first = base._tensor(base._residual_left(vv, mid), uu)
        second = base._tensor(vv, base._residual_right(mid, uu))
        third = base._tensor(
            base._tensor(base._residual_left(vv, mid), mid),
            base._residual_right(mid, uu),
        )
    assert first == second == third, (
        f"composition expressions disagree for {u!r} then {v!r}"
    )
    return DiagonalHom(u.source, v.target, QuantaleValue(base, first))


def d_residual(side: str, w: DiagonalHom, other: DiagonalHom) -> DiagonalHom:
    """left: w <swarrow> u (shared source); right: v <searrow> w (shared target)."""
    dq = _common_quantaloid(
        w.source, w.target, w.value, other.source, other.target, other.value
    )
    base = dq.quantale
    if side == "left":
        u = other
        if u.source != w.source:
            raise ShapeMismatchError(f"{w!r} and {u!r} must share their source")
        value = dq.limpl(u.target.payload, w.target.payload, u.value.payload, w.value.payload)
        return DiagonalHom(u.target, w.target, QuantaleValue(base, value))
    if side == "right":
        v = other
        if v.target != w.target:
            raise ShapeMismatchError(f"{w!r} and {v!r} must share their target")
        value = dq.rimpl(w.source.payload, v.source.payload, v.value.payload, w.value.payload)
        return DiagonalHom(w.source, v.source, QuantaleValue(base, value))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def hom_enumerate(p: QuantaleValue, q: QuantaleValue) -> list[DiagonalHom]:
    """All diagonals p -> q in element load order (finite quantales only)."""
    dq = _common_quantaloid(p, q)
    base = dq.quantale
    return [
        DiagonalHom(p, q, QuantaleValue(base, u)) for u in dq.hom(p.payload, q.payload)
    ]


def symmetric_objects(quantale: Quantale) -> list[QuantaleValue]:
    dq = diagonal_quantaloid(quantale)
    return [QuantaleValue(quantale, t) for t in dq.objects()]
