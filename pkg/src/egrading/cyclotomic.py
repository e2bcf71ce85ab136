"""Exact arithmetic in the cyclotomic field Q(zeta), zeta a primitive 24th root of unity.

Elements are stored in the power basis 1, zeta, ..., zeta^7 and kept reduced
modulo the 24th cyclotomic polynomial x^8 - x^4 + 1, so equality is
coefficient-wise.  Every root of unity whose order divides 24 lives here,
which covers the primitive 8th, 4th and 3rd roots needed elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

CONDUCTOR = 24
DEGREE = 8

_ZERO = Fraction(0)
_ONE = Fraction(1)

Scalar = Union[int, Fraction, "CycNum"]


class UnsupportedOrderError(ValueError):
    """Requested root of unity does not live in the conductor-24 field."""


def _reduce(coeffs: list) -> tuple:
    # x^8 = x^4 - 1, applied from the top degree down
    for k in range(len(coeffs) - 1, DEGREE - 1, -1):
        a = coeffs[k]
        if a:
            coeffs[k - 4] += a
            coeffs[k - 8] -= a
    return tuple(Fraction(c) for c in coeffs[:DEGREE])


class CycNum:
    """Immutable element of Q(zeta_24)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = (0,)):
        cs = list(coeffs)
        if len(cs) > DEGREE:
            object.__setattr__(self, "c", _reduce(cs))
        else:
            cs = [Fraction(x) for x in cs]
            cs.extend([_ZERO] * (DEGREE - len(cs)))
            object.__setattr__(self, "c", tuple(cs))

    @classmethod
    def _raw(cls, c: tuple) -> "CycNum":
        obj = object.__new__(cls)
        object.__setattr__(obj, "c", c)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # ------------------------------------------------------------------ queries
    def is_rational(self) -> bool:
        c = self.c
        return not (c[1] or c[2] or c[3] or c[4] or c[5] or c[6] or c[7])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self.c == other.c
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    # -------------------------------------------------------------- arithmetic
    @staticmethod
    def _coerce(x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Rational)):
            return CycNum._raw((Fraction(x),) + (_ZERO,) * 7)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            c = list(self.c)
            c[0] += other
            return CycNum._raw(tuple(c))
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self.c, other.c
        return CycNum._raw(tuple(a[i] + b[i] for i in range(DEGREE)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(tuple(-x for x in self.c))

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            c = list(self.c)
            c[0] -= other
            return CycNum._raw(tuple(c))
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self.c, other.c
        return CycNum._raw(tuple(a[i] - b[i] for i in range(DEGREE)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return CycNum._raw(tuple(x * other for x in self.c))
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self.c, other.c
        if other.is_rational():
            s = b[0]
            return CycNum._raw(tuple(x * s for x in a))
        if self.is_rational():
            s = a[0]
            return CycNum._raw(tuple(x * s for x in b))
        prod = [_ZERO] * (2 * DEGREE - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycNum._raw(_reduce(prod))

    __rmul__ = __mul__

    def _mult_matrix(self) -> list:
        # column k holds the coordinates of self * zeta^k
        cols = []
        cur = self
        z = zeta()
        for _ in range(DEGREE):
            cols.append(cur.c)
            cur = cur * z
        return [[cols[k][i] for k in range(DEGREE)] for i in range(DEGREE)]

    def inverse(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNum._raw((1 / self.c[0],) + (_ZERO,) * 7)
        m = self._mult_matrix()
        # Solve m x = e_0 by Gauss-Jordan over Q.
        n = DEGREE
        aug = [row[:] + [_ONE if i == 0 else _ZERO] for i, row in enumerate(m)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return CycNum._raw(tuple(aug[i][n] for i in range(n)))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return CycNum._raw(tuple(x / other for x in self.c))
        if not isinstance(other, CycNum):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def conjugate(self) -> "CycNum":
        """Complex conjugation zeta -> zeta^-1 = zeta^23."""
        out = ZERO
        for k, a in enumerate(self.c):
            if a:
                out = out + root_of_unity(CONDUCTOR, -k) * a
        return out

    # --------------------------------------------------------------- display
    def to_strings(self) -> list[str]:
        return [f"{x.numerator}/{x.denominator}" for x in self.c]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "CycNum":
        if len(items) != DEGREE:
            raise ValueError(f"expected {DEGREE} coefficients, got {len(items)}")
        return cls(Fraction(s) for s in items)

    def __repr__(self) -> str:
        terms = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            if k == 0:
                terms.append(str(a))
            elif a == 1:
                terms.append(f"z^{k}")
            else:
                terms.append(f"{a}*z^{k}")
        return "CycNum(" + (" + ".join(terms) if terms else "0") + ")"


ZERO = CycNum._raw((_ZERO,) * DEGREE)
ONE = CycNum._raw((_ONE,) + (_ZERO,) * 7)


def zeta() -> CycNum:
    return CycNum._raw((_ZERO, _ONE) + (_ZERO,) * 6)


_POWERS: list[CycNum] = []


def _powers() -> list[CycNum]:
    if not _POWERS:
        cur = ONE
        z = zeta()
        for _ in range(CONDUCTOR):
            _POWERS.append(cur)
            cur = cur * z
    return _POWERS


def root_of_unity(n: int, k: int = 1) -> CycNum:
    """Return zeta^(24k/n), a primitive n-th root of unity raised to the k-th power."""
    if n <= 0 or CONDUCTOR % n:
        raise UnsupportedOrderError(f"order {n} does not divide {CONDUCTOR}")
    return _powers()[(CONDUCTOR // n * k) % CONDUCTOR]


def field_arith(a: Scalar, b: Scalar, op: str) -> CycNum:
    a, b = CycNum._coerce(a), CycNum._coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def as_cyc(x: Scalar) -> CycNum:
    return CycNum._coerce(x)


def simplify(x: Scalar) -> Union[Fraction, CycNum]:
    """Collapse rational CycNum values to Fraction (faster downstream)."""
    if isinstance(x, CycNum):
        return x.c[0] if x.is_rational() else x
    return Fraction(x)


def to_json(x: Scalar) -> list[str]:
    return CycNum._coerce(x).to_strings()
