"""Exact scalars: the prime field Z/pZ, the cyclotomic field Q(rho) and the
Eisenstein integers Z[rho].

``CycloNum`` stores ``c_0 + c_1 rho + ... + c_{p-2} rho^{p-2}`` with rational
coefficients, i.e. the power basis of Q(rho) = Q[t]/(Phi_p).  All values are
immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union


class UsageError(ValueError):
    """Operands that do not belong together (mismatched modulus, shapes...)."""


class ValidationError(ValueError):
    """Mathematically invalid input (non-skew matrix, zero generator power...)."""


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValidationError(f"modulus must be prime, got {p!r}")
    return p


# ---------------------------------------------------------------------------
# Z/pZ


class FpScalar:
    """A residue modulo a prime."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int) -> None:
        check_prime(p)
        self.p = p
        self.value = value % p

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise UsageError(f"mismatched moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> FpScalar:
        return FpScalar(-self.value, self.p)

    def inverse(self) -> FpScalar:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return FpScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FpScalar(o, self.p).inverse()

    def __pow__(self, k: int) -> FpScalar:
        if k < 0:
            return self.inverse() ** (-k)
        return FpScalar(pow(self.value, k, self.p), self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FpScalar({self.value}, {self.p})"


# ---------------------------------------------------------------------------
# Q(rho)

Scalar = Union[int, Fraction]


def _reduce(p: int, full: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a polynomial in rho (any length) modulo Phi_p to length p-1."""
    acc = [Fraction(0)] * p
    for k, c in enumerate(full):
        if c:
            acc[k % p] += c
    top = acc[p - 1]
    if top:
        return tuple(c - top for c in acc[: p - 1])
    return tuple(acc[: p - 1])


class CycloNum:
    """Element of Q(rho) with rho a primitive p-th root of unity."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p: int, coeffs: Iterable[Scalar]) -> None:
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != p - 1:
            cs = list(_reduce(p, cs))
        self.p = p
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, p: int, coeffs: tuple[Fraction, ...]) -> CycloNum:
        obj = object.__new__(cls)
        obj.p = p
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def from_rational(cls, p: int, q: Scalar) -> CycloNum:
        return cls._raw(p, (Fraction(q),) + (Fraction(0),) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CycloNum:
        return cls.from_rational(p, 0)

    @classmethod
    def one(cls, p: int) -> CycloNum:
        return cls.from_rational(p, 1)

    @classmethod
    def rho(cls, p: int) -> CycloNum:
        return cyclo_root_power(p, 1)

    # predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> CycloNum:
        if isinstance(other, CycloNum):
            if other.p != self.p:
                raise UsageError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Rational)):
            return CycloNum.from_rational(self.p, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNum._raw(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum._raw(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNum._raw(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloNum._raw(self.p, tuple(a * q for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        full = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    full[(i + j) % p] += a * b
        top = full[p - 1]
        if top:
            return CycloNum._raw(p, tuple(c - top for c in full[: p - 1]))
        return CycloNum._raw(p, tuple(full[: p - 1]))

    __rmul__ = __mul__

    def shift(self, k: int) -> CycloNum:
        """Multiply by rho**k (a cyclic shift in the length-p representation)."""
        p = self.p
        k %= p
        if k == 0:
            return self
        full = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            full[(i + k) % p] = a
        top = full[p - 1]
        return CycloNum._raw(p, tuple(c - top for c in full[: p - 1]))

    def conjugate(self, k: int) -> CycloNum:
        """Galois automorphism rho -> rho**k (k prime to p)."""
        if k % self.p == 0:
            raise UsageError("Galois exponent must be prime to p")
        full = [Fraction(0)] * self.p
        for i, a in enumerate(self.coeffs):
            full[(i * k) % self.p] += a
        return CycloNum(self.p, full)

    def norm(self) -> Fraction:
        """Field norm Q(rho) -> Q."""
        prod = self
        for k in range(2, self.p):
            prod = prod * self.conjugate(k)
        assert prod.is_rational()
        return prod.coeffs[0]

    def inverse(self) -> CycloNum:
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(rho)")
        others = CycloNum.one(self.p)
        for k in range(2, self.p):
            others = others * self.conjugate(k)
        n = (self * others).coeffs[0]
        return others * (1 / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> CycloNum:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / display ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"CycloNum({self.p}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, p: int, data) -> CycloNum:
        if not isinstance(data, list) or len(data) != p - 1:
            raise ValueError(f"expected a list of {p - 1} rationals, got {data!r}")
        coeffs = []
        for item in data:
            if isinstance(item, bool) or not isinstance(item, (str, int)):
                raise ValueError(f"bad rational {item!r}")
            coeffs.append(Fraction(item))
        return cls(p, coeffs)


def cyclo_mul(x: CycloNum, y: CycloNum) -> CycloNum:
    if x.p != y.p:
        raise UsageError(f"mismatched primes {x.p} and {y.p}")
    return x * y


@lru_cache(maxsize=None)
def _root_power(p: int, k: int) -> CycloNum:
    full = [0] * p
    full[k] = 1
    return CycloNum(p, _reduce(p, [Fraction(c) for c in full]))


def cyclo_root_power(p: int, k: int) -> CycloNum:
    """rho**(k mod p) as an element of Q(rho)."""
    return _root_power(p, k % p)


# ---------------------------------------------------------------------------
# Z[rho], rho a primitive cube root of unity


class EisensteinInt:
    """``a + b*rho`` with ``rho**2 = -1 - rho``."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        self.a = int(a)
        self.b = int(b)

    @staticmethod
    def _new(a: int, b: int) -> EisensteinInt:
        obj = object.__new__(EisensteinInt)
        obj.a = a
        obj.b = b
        return obj

    @classmethod
    def rho(cls) -> EisensteinInt:
        return cls._new(0, 1)

    def _coerce(self, other):
        if isinstance(other, EisensteinInt):
            return other
        if isinstance(other, int):
            return EisensteinInt._new(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return EisensteinInt._new(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt._new(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return EisensteinInt._new(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return EisensteinInt._new(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        if isinstance(other, int):
            return EisensteinInt._new(self.a * other, self.b * other)
        if not isinstance(other, EisensteinInt):
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return EisensteinInt._new(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> EisensteinInt:
        if k < 0:
            raise ValueError("negative powers are not defined in Z[rho]")
        result = EisensteinInt._new(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> EisensteinInt:
        # rho -> rho^2 = -1 - rho
        return EisensteinInt._new(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, EisensteinInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}*r"

    def to_cyclo(self) -> CycloNum:
        return CycloNum._raw(3, (Fraction(self.a), Fraction(self.b)))

    def to_json(self) -> dict[str, str]:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, data) -> EisensteinInt:
        if not isinstance(data, dict) or set(data) != {"a", "b"}:
            raise ValueError(f"expected {{'a': ..., 'b': ...}}, got {data!r}")
        vals = []
        for key in ("a", "b"):
            v = data[key]
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise ValueError(f"bad integer {v!r}")
            vals.append(int(v))
        return cls(*vals)

    @classmethod
    def parse(cls, text: str) -> EisensteinInt:
        """Parse a literal such as ``"2-1*r"``, ``"r"``, ``"-3"`` or ``"4 + 2r"``."""
        s = "".join(text.split())
        terms = re.findall(r"[+-]?[^+-]+", s)
        if not s or "".join(terms) != s:
            raise ValueError(f"not an Eisenstein literal: {text!r}")
        a = b = 0
        for term in terms:
            m = re.fullmatch(r"([+-]?)(\d*)(\*?r)?", term)
            if m is None or (not m.group(2) and not m.group(3)) or (m.group(3) == "*r" and not m.group(2)):
                raise ValueError(f"not an Eisenstein literal: {text!r}")
            k = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                k = -k
            if m.group(3):
                b += k
            else:
                a += k
        return cls(a, b)


def eis_mul(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    return x * y


def eis_norm(x: EisensteinInt) -> int:
    return x.norm()


RHO = EisensteinInt.rho()
ONE_MINUS_RHO = EisensteinInt(1, -1)
