"""The Clifford algebra of a p-central set, as a concrete p^n-dimensional algebra.

Generators obey ``x_k^p = alpha_k`` and ``x_i x_j = rho^{C[i][j]} x_j x_i``.
Elements are stored in normal order ``x_1^{e_1} ... x_n^{e_n}`` with
exponents in ``[0, p-1]``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .arith import CycloNum, UsageError, ValidationError, check_prime
from .fplinalg import FpMatrix, check_alternating, is_invertible, mat_mul, reduce_alternating

Exponents = tuple[int, ...]


class UnsupportedError(ValueError):
    """Operation not defined for the given prime or size."""


@dataclass(frozen=True)
class PCentralPresentation:
    p: int
    n: int
    c: FpMatrix
    alpha: tuple[CycloNum, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.n < 1:
            raise ValidationError("a presentation needs at least one generator")
        if self.c.p != self.p or self.c.shape != (self.n, self.n):
            raise ValidationError(f"commutation matrix must be {self.n}x{self.n} over F_{self.p}")
        check_alternating(self.c)
        alpha = tuple(self.alpha)
        if len(alpha) != self.n:
            raise ValidationError(f"expected {self.n} generator powers, got {len(alpha)}")
        for k, a in enumerate(alpha):
            if a.p != self.p:
                raise ValidationError(f"alpha[{k}] lives in Q(rho_{a.p}), expected p={self.p}")
            if a.is_zero():
                raise ValidationError(f"alpha[{k}] is zero; generators must be invertible")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def build(cls, p: int, c: Sequence[Sequence[int]] | FpMatrix, alpha: Iterable) -> PCentralPresentation:
        """Convenience constructor accepting nested lists and int/Fraction powers."""
        cm = c if isinstance(c, FpMatrix) else FpMatrix(p, c)
        al = tuple(a if isinstance(a, CycloNum) else CycloNum.from_rational(p, a) for a in alpha)
        return cls(p, cm.rows, cm, al)

    # element constructors --------------------------------------------------

    def zero(self) -> CliffordElement:
        return CliffordElement(self, {})

    def scalar(self, s) -> CliffordElement:
        return self.monomial((0,) * self.n, s)

    def one(self) -> CliffordElement:
        return self.scalar(1)

    def monomial(self, exps: Sequence[int], coeff=1) -> CliffordElement:
        if len(exps) != self.n:
            raise UsageError(f"exponent vector must have length {self.n}")
        c = coeff if isinstance(coeff, CycloNum) else CycloNum.from_rational(self.p, coeff)
        return CliffordElement(self, {tuple(e % self.p for e in exps): c})

    def gen(self, k: int) -> CliffordElement:
        """The generator x_k (0-based)."""
        e = [0] * self.n
        e[k] = 1
        return self.monomial(e)

    def gens(self) -> list[CliffordElement]:
        return [self.gen(k) for k in range(self.n)]

    def basis(self) -> list[Exponents]:
        return list(itertools.product(range(self.p), repeat=self.n))

    # monomial product ------------------------------------------------------

    def _alpha_product(self, carry: Exponents) -> CycloNum:
        key = ("alpha", carry)
        hit = self._cache.get(key)
        if hit is None:
            hit = CycloNum.one(self.p)
            for k, t in enumerate(carry):
                if t:
                    hit = hit * self.alpha[k] ** t
            self._cache[key] = hit
        return hit

    def mono_mul(self, e: Exponents, f: Exponents) -> tuple[Exponents, int, Exponents]:
        """Normal-order ``x^e x^f``: returns (exponents, rho-phase, alpha carries)."""
        key = (e, f)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        p, C = self.p, self.c.entries
        # moving x_j^{f_j} left past x_i^{e_i} (i > j) picks up rho^{C[i][j] e_i f_j}
        phase = 0
        for i in range(1, self.n):
            if e[i]:
                row = C[i]
                for j in range(i):
                    if f[j]:
                        phase += row[j] * e[i] * f[j]
        out = []
        carry = []
        for a, b in zip(e, f):
            s = a + b
            out.append(s % p)
            carry.append(s // p)
        hit = (tuple(out), phase % p, tuple(carry))
        self._cache[key] = hit
        return hit

    # serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "c": [list(r) for r in self.c.entries],
            "alpha": [a.to_json() for a in self.alpha],
        }

    @classmethod
    def from_json(cls, data) -> PCentralPresentation:
        """Parse the presentation document; malformed structure raises ValueError,
        mathematically invalid content raises ValidationError."""
        if not isinstance(data, dict):
            raise ValueError("presentation must be a JSON object")
        for key in ("p", "n", "c", "alpha"):
            if key not in data:
                raise ValueError(f"presentation missing key {key!r}")
        p, n, c, alpha = data["p"], data["n"], data["c"], data["alpha"]
        if type(p) is not int or type(n) is not int:
            raise ValueError("'p' and 'n' must be integers")
        if not isinstance(c, list) or len(c) != n or not all(
            isinstance(r, list) and len(r) == n and all(type(x) is int for x in r) for r in c
        ):
            raise ValueError(f"'c' must be an {n}x{n} integer matrix")
        if not isinstance(alpha, list) or len(alpha) != n:
            raise ValueError(f"'alpha' must list {n} values")
        check_prime(p)
        al = tuple(CycloNum.from_json(p, a) for a in alpha)
        return cls(p, n, FpMatrix(p, c), al)


def _coerce_scalar(p: int, s) -> CycloNum:
    if isinstance(s, CycloNum):
        if s.p != p:
            raise UsageError(f"scalar lives in Q(rho_{s.p}), expected p={p}")
        return s
    return CycloNum.from_rational(p, Fraction(s))


class CliffordElement:
    """Finite sum of normal-ordered monomials with Q(rho) coefficients."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: PCentralPresentation, terms: Mapping[Exponents, CycloNum]) -> None:
        self.pres = pres
        self.terms: dict[Exponents, CycloNum] = {e: c for e, c in terms.items() if not c.is_zero()}

    def _check(self, other: CliffordElement) -> None:
        if other.pres is not self.pres and other.pres != self.pres:
            raise UsageError("elements belong to different presentations")

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_value(self) -> CycloNum | None:
        """The scalar this element equals, or None if it is not central-scalar."""
        zero = (0,) * self.pres.n
        if not self.terms:
            return CycloNum.zero(self.pres.p)
        if set(self.terms) == {zero}:
            return self.terms[zero]
        return None

    def is_scalar(self) -> bool:
        return self.scalar_value() is not None

    def coeff(self, exps: Sequence[int]) -> CycloNum:
        return self.terms.get(tuple(exps), CycloNum.zero(self.pres.p))

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = self.pres.scalar(_coerce_scalar(self.pres.p, other))
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return CliffordElement(self.pres, out)

    __radd__ = __add__

    def __neg__(self) -> CliffordElement:
        return CliffordElement(self.pres, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return mul(self, other)
        s = _coerce_scalar(self.pres.p, other)
        return CliffordElement(self.pres, {e: c * s for e, c in self.terms.items()})

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def __truediv__(self, other):
        if isinstance(other, CliffordElement):
            return self * inverse(other)
        return self * _coerce_scalar(self.pres.p, other).inverse()

    def __pow__(self, k: int) -> CliffordElement:
        if k < 0:
            return inverse(self) ** (-k)
        result = self.pres.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CliffordElement):
            return (other.pres is self.pres or other.pres == self.pres) and self.terms == other.terms
        if isinstance(other, (int, Fraction, CycloNum)):
            return self == self.pres.scalar(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(f"x{k + 1}" + (f"^{t}" if t > 1 else "") for k, t in enumerate(e) if t)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# operations


def mul(u: CliffordElement, v: CliffordElement) -> CliffordElement:
    u._check(v)
    pres = u.pres
    out: dict[Exponents, CycloNum] = {}
    for e, cu in u.terms.items():
        for f, cv in v.terms.items():
            g, phase, carry = pres.mono_mul(e, f)
            c = (cu * cv).shift(phase)
            if any(carry):
                c = c * pres._alpha_product(carry)
            out[g] = out[g] + c if g in out else c
    return CliffordElement(pres, out)


def pth_power(u: CliffordElement) -> CliffordElement:
    result = u
    for _ in range(u.pres.p - 1):
        result = mul(result, u)
    return result


def is_p_central(u: CliffordElement) -> bool:
    return pth_power(u).is_scalar()


def commutes(u: CliffordElement, v: CliffordElement) -> bool:
    return mul(u, v) == mul(v, u)


def star2(u: CliffordElement, v: CliffordElement) -> CliffordElement:
    """``uuv + uvu + vuu``: the coefficient of lambda^2 mu in (lambda u + mu v)^3."""
    uu = mul(u, u)
    return mul(uu, v) + mul(mul(u, v), u) + mul(v, uu)


def star3(u: CliffordElement, v: CliffordElement, w: CliffordElement) -> CliffordElement:
    """Sum of the six ordered products of u, v, w."""
    total = u.pres.zero()
    for a, b, c in itertools.permutations((u, v, w)):
        total = total + mul(mul(a, b), c)
    return total


class TripleCase(enum.Enum):
    CASE1 = "Case1"  # star product vanishes
    CASE2 = "Case2"  # star product is a nonzero scalar
    NOT_COHERENT = "NotCoherent"


def _require_p3(pres: PCentralPresentation) -> None:
    if pres.p != 3:
        raise UnsupportedError(f"coherence testing is only defined for p = 3, got p = {pres.p}")


def classify_triple(u: CliffordElement, v: CliffordElement, w: CliffordElement) -> TripleCase:
    _require_p3(u.pres)
    elems = (u, v, w)
    for k, x in enumerate(elems):
        if not is_p_central(x):
            raise ValidationError(f"element {k} is not 3-central")
    for i, j in itertools.combinations(range(3), 2):
        if commutes(elems[i], elems[j]):
            raise ValidationError(f"elements {i} and {j} commute; a coherent set has no commuting pair")
    for x, y in itertools.permutations(elems, 2):
        if not star2(x, y).is_zero():
            return TripleCase.NOT_COHERENT
    s = star3(u, v, w).scalar_value()
    if s is None:
        return TripleCase.NOT_COHERENT
    return TripleCase.CASE1 if s.is_zero() else TripleCase.CASE2


def spans_p_central_space(elements: Sequence[CliffordElement]) -> bool:
    """Whether the span of the given elements is a 3-central space.

    Every element must cube to a scalar, every pairwise mixed cube term must
    vanish, and every triple's star product must be a scalar.
    """
    if not elements:
        return True
    _require_p3(elements[0].pres)
    for x in elements:
        if not is_p_central(x):
            return False
    for x, y in itertools.permutations(elements, 2):
        if not star2(x, y).is_zero():
            return False
    for x, y, z in itertools.combinations(elements, 3):
        if not star3(x, y, z).is_scalar():
            return False
    return True


# ---------------------------------------------------------------------------
# inversion


def _solve(matrix: list[list[CycloNum]], rhs: list[CycloNum]) -> list[CycloNum]:
    """Gauss-Jordan over Q(rho); raises ZeroDivisionError when singular."""
    n = len(rhs)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise ZeroDivisionError("element is not invertible")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def inverse(u: CliffordElement) -> CliffordElement:
    """Two-sided inverse.

    p-central elements use ``u^{-1} = u^{p-1} / u^p``; anything else solves
    ``u w = 1`` through the left-regular representation on the monomial basis.
    """
    pres = u.pres
    if u.is_zero():
        raise ZeroDivisionError("zero is not invertible")
    power = u ** (pres.p - 1)
    s = mul(power, u).scalar_value()
    if s is not None:
        if s.is_zero():
            raise ZeroDivisionError("nilpotent p-th power; element is not invertible")
        return power * s.inverse()
    basis = pres.basis()
    index = {e: k for k, e in enumerate(basis)}
    zero = CycloNum.zero(pres.p)
    # column k holds the coordinates of u * x^{basis[k]}
    cols = [mul(u, pres.monomial(e)) for e in basis]
    matrix = [[zero] * len(basis) for _ in basis]
    for k, col in enumerate(cols):
        for e, c in col.terms.items():
            matrix[index[e]][k] = c
    rhs = [zero] * len(basis)
    rhs[index[(0,) * pres.n]] = CycloNum.one(pres.p)
    sol = _solve(matrix, rhs)
    return CliffordElement(pres, dict(zip(basis, sol)))


# ---------------------------------------------------------------------------
# change of generators and the tensor decomposition


@dataclass(frozen=True)
class GeneratorCertificate:
    """Engine-checked facts about a generator change ``y_i = x^{D[i]}``."""

    monomials: tuple[Exponents, ...]
    relations_checked: int
    powers_phase_free: bool


def monomial_pth_power(pres: PCentralPresentation, exps: Sequence[int]) -> CycloNum:
    """Engine-computed p-th power of the normal-ordered monomial ``x^exps``."""
    val = pth_power(pres.monomial(exps)).scalar_value()
    if val is None:
        raise AssertionError("p-th power of a monomial is not scalar")
    return val


def change_generators(
    pres: PCentralPresentation, D: FpMatrix
) -> tuple[PCentralPresentation, GeneratorCertificate]:
    """Replace each x_i by ``y_i = x_1^{D[i][0]} ... x_n^{D[i][n-1]}``."""
    if D.p != pres.p or D.shape != (pres.n, pres.n):
        raise UsageError(f"D must be {pres.n}x{pres.n} over F_{pres.p}")
    if not is_invertible(D):
        raise ValidationError("generator change matrix is singular mod p")
    p, n = pres.p, pres.n
    rows = D.entries
    c_new = mat_mul(mat_mul(D, pres.c), D.transpose())
    ys = [pres.monomial(r) for r in rows]

    alpha_new = []
    phase_free = True
    for r in rows:
        val = monomial_pth_power(pres, r)
        closed = reduce(lambda acc, k: acc * pres.alpha[k] ** r[k], range(n), CycloNum.one(p))
        if val != closed:
            phase_free = False
            if p != 2:
                raise AssertionError(f"residual root-of-unity phase in p-th power of {r}")
        alpha_new.append(val)

    checked = 0
    for i in range(n):
        for j in range(n):
            lhs = mul(ys[i], ys[j])
            rhs = mul(ys[j], ys[i]) * CycloNum.rho(p) ** c_new[i, j]
            if lhs != rhs:
                raise AssertionError(f"relation y{i} y{j} = rho^{c_new[i, j]} y{j} y{i} fails")
            checked += 1

    new = PCentralPresentation(p, n, c_new, tuple(alpha_new))
    return new, GeneratorCertificate(tuple(rows), checked, phase_free)


@dataclass(frozen=True)
class Decomposition:
    """``C(B) = (a_1, b_1) x ... x (a_m, b_m) x F[y_{2m+1}, ..., y_n]``."""

    D: FpMatrix
    m: int
    symbols: tuple[tuple[CycloNum, CycloNum], ...]
    commutative_generators: tuple[tuple[Exponents, CycloNum], ...]
    degree: int
    certificate: GeneratorCertificate

    def to_json(self) -> dict:
        return {
            "D": self.D.to_json(),
            "m": self.m,
            "symbols": [[a.to_json(), b.to_json()] for a, b in self.symbols],
            "commutative": [
                {"exponents": list(e), "pth_power": v.to_json()} for e, v in self.commutative_generators
            ],
            "degree": self.degree,
            "certificate": {
                "relations_checked": self.certificate.relations_checked,
                "powers_phase_free": self.certificate.powers_phase_free,
                "ok": True,
            },
        }


def decompose(pres: PCentralPresentation) -> Decomposition:
    if pres.p == 2:
        raise UnsupportedError("decomposition is only implemented for odd p")
    red = reduce_alternating(pres.c)
    new, cert = change_generators(pres, red.D)
    if new.c != red.canonical:
        raise AssertionError("transformed commutation matrix is not in normal form")
    m = red.m
    symbols = tuple((new.alpha[2 * k], new.alpha[2 * k + 1]) for k in range(m))
    comm = tuple((red.D.row(i), new.alpha[i]) for i in range(2 * m, pres.n))
    return Decomposition(
        D=red.D,
        m=m,
        symbols=symbols,
        commutative_generators=comm,
        degree=pres.p**m,
        certificate=cert,
    )
