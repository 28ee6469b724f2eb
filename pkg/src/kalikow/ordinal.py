"""Cantor-normal-form ordinals below w^N.

An :class:`Ordinal` is a finite, strictly exponent-decreasing tuple of
``(exponent, coefficient)`` pairs.  Naturals are the ordinals whose only
exponent is 0; the empty tuple is 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Tuple, Union

DEFAULT_DEGREE = 4

LESS, EQUAL, GREATER = "less", "equal", "greater"


class OrdinalError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)
        prev = None
        for e, c in terms:
            if e < 0 or c < 1:
                raise OrdinalError(f"bad CNF pair {(e, c)}")
            if prev is not None and e >= prev:
                raise OrdinalError("CNF exponents must strictly decrease")
            prev = e
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, value: Union["Ordinal", int, str]) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not an ordinal")
        if isinstance(value, int):
            if value < 0:
                raise OrdinalError("negative ordinal")
            return cls(((0, value),)) if value else cls()
        if isinstance(value, str):
            return parse_ordinal(value)
        raise TypeError(f"cannot make an ordinal from {value!r}")

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "Ordinal":
        """Build from ``coeffs[e]`` = coefficient of w^e (zeros allowed)."""
        coeffs = list(coeffs)
        return cls(tuple((e, c) for e, c in reversed(list(enumerate(coeffs))) if c))

    def coefficients(self, degree: int) -> list:
        out = [0] * degree
        for e, c in self.terms:
            if e >= degree:
                raise OrdinalError(f"{self} is not below w^{degree}")
            out[e] = c
        return out

    @property
    def is_finite(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __int__(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_compare(self, other) == LESS

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_finite and (int(self) == other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self.is_finite:
            return hash(int(self))
        return hash(self.terms)

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"


def ord_compare(a: Ordinal, b: Ordinal) -> str:
    a, b = Ordinal.of(a), Ordinal.of(b)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return GREATER if ea > eb else LESS
        if ca != cb:
            return GREATER if ca > cb else LESS
    if len(a.terms) == len(b.terms):
        return EQUAL
    return GREATER if len(a.terms) > len(b.terms) else LESS


def ord_level(a) -> int:
    a = Ordinal.of(a)
    if a.is_zero:
        raise OrdinalError("0 has no level")
    return a.terms[0][0]


def omega_power(m: int) -> Ordinal:
    return Ordinal(((m, 1),))


# -- coding -----------------------------------------------------------------

def pair(x: int, y: int) -> int:
    """Cantor pairing N x N -> N."""
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int):
    from math import isqrt

    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def tuple_code(values) -> int:
    """Bijection N^k -> N for fixed k >= 1 (right-nested pairing)."""
    values = list(values)
    code = values[-1]
    for v in reversed(values[:-1]):
        code = pair(v, code)
    return code


def tuple_decode(code: int, k: int) -> list:
    out = []
    for _ in range(k - 1):
        x, code = unpair(code)
        out.append(x)
    out.append(code)
    return out


def ord_code(a, degree: int = DEFAULT_DEGREE, finite_identity: bool = False) -> int:
    """Bijective natural-number code of an ordinal below w^degree.

    The coefficient vector ``(c_0, ..., c_{degree-1})`` is folded with Cantor
    pairing, so for ``degree == 1`` the code of ``k`` is ``k`` itself.
    """
    if finite_identity and degree != 1:
        raise OrdinalError("finite_identity requires degree 1")
    a = Ordinal.of(a)
    if degree < 1:
        raise OrdinalError("degree must be >= 1")
    return tuple_code(a.coefficients(degree))


def ord_decode(code: int, degree: int = DEFAULT_DEGREE) -> Ordinal:
    if code < 0:
        raise OrdinalError("codes are naturals")
    return Ordinal.from_coefficients(tuple_decode(code, degree))


# -- text syntax --------------------------------------------------------------

_TERM = re.compile(r"^(?:(?:w|ω)(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^2*3 + w*1 + 5`` style CNF text (``ω`` accepted for ``w``)."""
    text = text.strip()
    if not text:
        raise OrdinalError("empty ordinal text")
    acc = {}
    for part in text.split("+"):
        part = part.replace(" ", "")
        m = _TERM.match(part)
        if not m:
            raise OrdinalError(f"cannot parse ordinal term {part!r}")
        exp, coeff, nat = m.groups()
        if nat is not None:
            e, c = 0, int(nat)
        else:
            e = int(exp) if exp is not None else 1
            c = int(coeff) if coeff is not None else 1
        if c == 0:
            continue
        if e in acc:
            raise OrdinalError(f"repeated exponent {e} in {text!r}")
        if acc and e > min(acc):
            raise OrdinalError(f"exponents must decrease in {text!r}")
        acc[e] = c
    return Ordinal(tuple(sorted(acc.items(), reverse=True)))


def format_ordinal(a) -> str:
    a = Ordinal.of(a)
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append(f"w*{c}")
        else:
            parts.append(f"w^{e}*{c}")
    return " + ".join(parts)
