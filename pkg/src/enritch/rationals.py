"""Exact extended non-negative rational arithmetic.

ExtRat models the interval [0, inf]: either a non-negative rational in
canonical reduced form or the distinguished value infinity.  Addition is
commutative and associative with infinity absorbing.  Subtraction is only
available as a truncated difference (``monus``) whose conventions are chosen
so that ``b.monus(a)`` equals the residual join ``{r : r + a >= b}`` computed
in the reversed (quantale) order:

    b monus inf = 0        (including inf monus inf)
    inf monus a = inf      (a finite)
    b monus a   = max(0, b - a)   otherwise

All comparisons use the standard numeric order with infinity on top.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError

__all__ = ["ExtRat", "INF", "ZERO"]


class ExtRat:
    """A non-negative rational or infinity, immutable and hashable."""

    __slots__ = ("_frac",)

    def __init__(self, value: int | Fraction | None = 0):
        if value is not None:
            value = Fraction(value)
            if value < 0:
                raise ValueError(f"ExtRat must be non-negative, got {value}")
        object.__setattr__(self, "_frac", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtRat is immutable")

    @classmethod
    def infinity(cls) -> "ExtRat":
        return cls(None)

    @classmethod
    def ratio(cls, numerator: int, denominator: int = 1) -> "ExtRat":
        return cls(Fraction(numerator, denominator))

    @classmethod
    def parse(cls, text: str) -> "ExtRat":
        """Parse "p/q", "n" or "inf" (the serialization used in all files)."""
        if not isinstance(text, str):
            raise SchemaError(f"expected a string rational, got {text!r}")
        text = text.strip()
        if text == "inf":
            return cls(None)
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {text!r}: {exc}") from exc
        if frac < 0:
            raise SchemaError(f"negative rational {text!r} not allowed")
        return cls(frac)

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def fraction(self) -> Fraction:
        if self._frac is None:
            raise ValueError("infinity has no finite fraction")
        return self._frac

    def __add__(self, other: "ExtRat") -> "ExtRat":
        if not isinstance(other, ExtRat):
            return NotImplemented
        if self._frac is None or other._frac is None:
            return INF
        return ExtRat(self._frac + other._frac)

    def monus(self, other: "ExtRat") -> "ExtRat":
        """Truncated difference; see the module docstring for conventions."""
        if not isinstance(other, ExtRat):
            raise TypeError(f"monus needs an ExtRat, got {other!r}")
        if other._frac is None:
            return ZERO
        if self._frac is None:
            return INF
        diff = self._frac - other._frac
        return ExtRat(diff) if diff > 0 else ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtRat) and self._frac == other._frac

    def __hash__(self) -> int:
        return hash(self._frac)

    def __le__(self, other: "ExtRat") -> bool:
        if not isinstance(other, ExtRat):
            return NotImplemented
        if other._frac is None:
            return True
        if self._frac is None:
            return False
        return self._frac <= other._frac

    def __lt__(self, other: "ExtRat") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "ExtRat") -> bool:
        if not isinstance(other, ExtRat):
            return NotImplemented
        return other <= self

    def __gt__(self, other: "ExtRat") -> bool:
        return other < self

    def __str__(self) -> str:
        return "inf" if self._frac is None else str(self._frac)

    def __repr__(self) -> str:
        return f"ExtRat({str(self)!r})"


INF = ExtRat(None)
ZERO = ExtRat(0)
