"""Dense integer polynomials in q with exact (Python int) coefficients."""

from __future__ import annotations

from typing import Iterable


class QPolynomial:
    """Immutable polynomial ``c0 + c1 q + c2 q^2 + ...``.

    Coefficients are kept with trailing zeros trimmed, so equal polynomials
    have equal coefficient tuples and the zero polynomial is ``()``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def const(cls, value: int) -> "QPolynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "QPolynomial":
        if power < 0:
            raise ValueError("negative power")
        return cls((0,) * power + (coeff,))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    def __len__(self):
        return len(self._c)

    def __getitem__(self, k: int) -> int:
        return self._c[k] if 0 <= k < len(self._c) else 0

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPolynomial.const(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def _coerce(self, other):
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, int):
            return QPolynomial.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-x for x in self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def truncate(self, degree: int) -> "QPolynomial":
        """Drop every term above ``degree``."""
        return QPolynomial(self._c[: degree + 1])

    def to_list(self) -> list[int]:
        return list(self._c)

    def __repr__(self):
        return f"QPolynomial({list(self._c)})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, c in enumerate(self._c):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ZERO = QPolynomial()
ONE = QPolynomial((1,))
Q = QPolynomial((0, 1))


def minus_q_power(k: int) -> QPolynomial:
    """``(-q)^k``."""
    return QPolynomial.monomial(k, -1 if k % 2 else 1)


def inverse_power_series(r: int, degree: int) -> QPolynomial:
    """Truncation of ``1 / (1 - q)^r`` through ``q^degree``: coefficients C(k + r - 1, r - 1)."""
    from math import comb

    if r == 0:
        return ONE
    return QPolynomial(comb(k + r - 1, r - 1) for k in range(degree + 1))
