"""Cubic equations over the Eisenstein integers from conjugation in a degree-3
symbol algebra.

In the algebra ``yx = rho xy``, ``x^3 = alpha``, ``y^3 = beta`` the element
``z = (ax + by) x (ax + by)^{-1}`` still cubes to ``alpha``.  Expanding ``z^3``
gives the polynomial identity checked by :func:`verify_core_identity`, and
from it the solution families of

    gamma Y^3 = gamma X1^3 + beta X2^3 + gamma^2 beta^2 X3^3.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .arith import CycloNum, EisensteinInt, ValidationError
from .clifford import CliffordElement, PCentralPresentation, inverse, mul, star3

Pair = tuple[int, int]


class DegenerateParameterError(ValueError):
    """``a^3 alpha + b^3 beta = 0``: ``ax + by`` is not invertible."""


# ---------------------------------------------------------------------------
# the symbol algebra and the conjugation oracle


def _as_cyclo(v) -> CycloNum:
    if isinstance(v, CycloNum):
        if v.p != 3:
            raise ValidationError("symbol algebra scalars must lie in Q(rho) with p = 3")
        return v
    if isinstance(v, EisensteinInt):
        return v.to_cyclo()
    return CycloNum.from_rational(3, v)


@dataclass(frozen=True)
class SymbolAlgebraModel:
    """``Q(rho)[x, y : x^3 = alpha, y^3 = beta, yx = rho xy]``."""

    alpha: CycloNum
    beta: CycloNum
    pres: PCentralPresentation = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        a, b = _as_cyclo(self.alpha), _as_cyclo(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        # x2 x1 = rho^{C[1][0]} x1 x2 with C[1][0] = 1
        pres = PCentralPresentation.build(3, [[0, 2], [1, 0]], [a, b])
        object.__setattr__(self, "pres", pres)
        if star3(self.x, self.y, self.xy2) != -3 * CycloNum.rho(3) * a * b:
            raise AssertionError("calibration star3(x, y, x^2 y^2) = -3 rho alpha beta failed")

    @property
    def x(self) -> CliffordElement:
        return self.pres.gen(0)

    @property
    def y(self) -> CliffordElement:
        return self.pres.gen(1)

    @property
    def xy2(self) -> CliffordElement:
        """The monomial ``x^2 y^2``."""
        return self.pres.monomial((2, 2))


@dataclass(frozen=True)
class Conjugation:
    z: CliffordElement
    z_cubed: CycloNum
    coefficients: tuple[CycloNum, CycloNum, CycloNum]


def closed_form_coefficients(alpha, beta, a, b) -> tuple[CycloNum, CycloNum, CycloNum]:
    """Coefficients of ``(a^3 alpha + b^3 beta) z`` on x, y and x^2 y^2:
    ``a^3 alpha + rho b^3 beta``, ``(1 - rho^-1) b a^2 alpha`` and ``(1 - rho) a b^2``."""
    alpha, beta, a, b = map(_as_cyclo, (alpha, beta, a, b))
    rho = CycloNum.rho(3)
    return (
        a**3 * alpha + rho * b**3 * beta,
        (1 - rho.inverse()) * b * a**2 * alpha,
        (1 - rho) * a * b**2,
    )


def conjugate_and_cube(model: SymbolAlgebraModel, a, b) -> Conjugation:
    a, b = _as_cyclo(a), _as_cyclo(b)
    norm = a**3 * model.alpha + b**3 * model.beta
    if norm.is_zero():
        raise DegenerateParameterError("a^3 alpha + b^3 beta = 0, so ax + by is not invertible")
    v = model.x * a + model.y * b
    z = mul(mul(v, model.x), inverse(v))
    z_cubed = mul(mul(z, z), z).scalar_value()
    if z_cubed is None:
        raise AssertionError("conjugate of x does not cube to a scalar")
    scaled = z * norm
    support = {(1, 0), (0, 1), (2, 2)}
    stray = set(scaled.terms) - support
    if stray:
        raise AssertionError(f"conjugate of x has unexpected monomials {sorted(stray)}")
    coeffs = tuple(scaled.coeff(e) for e in ((1, 0), (0, 1), (2, 2)))
    return Conjugation(z, z_cubed, coeffs)


# ---------------------------------------------------------------------------
# polynomial identity in a, b, alpha, beta over Z[rho]


class EisPoly:
    """Sparse polynomial in commuting indeterminates with Z[rho] coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None) -> None:
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], EisensteinInt] = {
            e: c for e, c in (terms or {}).items() if not c.is_zero()
        }

    @classmethod
    def var(cls, nvars: int, k: int) -> EisPoly:
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): EisensteinInt(1)})

    @classmethod
    def const(cls, nvars: int, c) -> EisPoly:
        c = c if isinstance(c, EisensteinInt) else EisensteinInt(c)
        return cls(nvars, {(0,) * nvars: c})

    def _lift(self, other) -> EisPoly:
        return other if isinstance(other, EisPoly) else EisPoly.const(self.nvars, other)

    def __add__(self, other) -> EisPoly:
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return EisPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> EisPoly:
        return EisPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> EisPoly:
        return self + (-self._lift(other))

    def __mul__(self, other) -> EisPoly:
        other = self._lift(other)
        out: dict = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                g = tuple(i + j for i, j in zip(e, f))
                out[g] = out[g] + c * d if g in out else c * d
        return EisPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> EisPoly:
        out = EisPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, *point: EisensteinInt) -> EisensteinInt:
        total = EisensteinInt(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term = term * x**k
            total = total + term
        return total


@dataclass(frozen=True)
class IdentityReport:
    agrees: bool
    monomials_compared: int
    mismatches: tuple[tuple[tuple[int, ...], EisensteinInt, EisensteinInt], ...]
    numeric_points: int
    numeric_agrees: bool
    variables: tuple[str, ...] = ("a", "b", "alpha", "beta")

    def to_json(self) -> dict:
        return {
            "agrees": self.agrees,
            "monomials_compared": self.monomials_compared,
            "mismatches": [
                {"monomial": list(e), "lhs": l.to_json(), "rhs": r.to_json()} for e, l, r in self.mismatches
            ],
            "numeric_points": self.numeric_points,
            "numeric_agrees": self.numeric_agrees,
            "variables": list(self.variables),
        }


_RHO = EisensteinInt.rho()
_ONE_MINUS_RHO = EisensteinInt(1, -1)
_ONE_MINUS_RHO_INV = EisensteinInt(2, 1)  # 1 - rho^2


def core_identity_sides(a, b, alpha, beta, x_power: int = 3):
    """Both sides of the conjugation identity, evaluated with any commutative
    arithmetic (EisensteinInt values or EisPoly indeterminates)."""
    lhs = alpha * (a**3 * alpha + b**3 * beta) ** 3
    rhs = (
        alpha * (a**3 * alpha + _RHO * b**3 * beta) ** 3
        + 3 * _ONE_MINUS_RHO * beta * (a**2 * b * alpha) ** x_power
        + 3 * _ONE_MINUS_RHO_INV * alpha**2 * beta**2 * (a * b**2) ** x_power
    )
    return lhs, rhs


def random_eisenstein(rng: random.Random, bound: int) -> EisensteinInt:
    return EisensteinInt(rng.randint(-bound, bound), rng.randint(-bound, bound))


def verify_core_identity(x_power: int = 3, numeric_points: int = 100, seed: int = 0) -> IdentityReport:
    """Expand both sides symbolically and compare monomial by monomial.

    Before the symbolic comparison the two sides are evaluated at random
    Eisenstein points; ``x_power=2`` reproduces the squared misprint so the
    verifier can reject it.
    """
    rng = random.Random(seed)
    numeric_ok = True
    for _ in range(numeric_points):
        pt = [random_eisenstein(rng, 20) for _ in range(4)]
        lhs, rhs = core_identity_sides(*pt, x_power=x_power)
        if lhs != rhs:
            numeric_ok = False
            break

    a, b, al, be = (EisPoly.var(4, k) for k in range(4))
    lhs, rhs = core_identity_sides(a, b, al, be, x_power=x_power)
    zero = EisensteinInt(0)
    keys = sorted(set(lhs.terms) | set(rhs.terms))
    mismatches = tuple(
        (e, lhs.terms.get(e, zero), rhs.terms.get(e, zero))
        for e in keys
        if lhs.terms.get(e, zero) != rhs.terms.get(e, zero)
    )
    return IdentityReport(
        agrees=not mismatches,
        monomials_compared=len(keys),
        mismatches=mismatches,
        numeric_points=numeric_points,
        numeric_agrees=numeric_ok,
    )


# ---------------------------------------------------------------------------
# solution families (hot path on (a, b) int pairs)


def _m(x: Pair, y: Pair) -> Pair:
    a, b = x
    c, d = y
    bd = b * d
    return (a * c - bd, a * d + b * c - bd)


def _add(x: Pair, y: Pair) -> Pair:
    return (x[0] + y[0], x[1] + y[1])


def _cube(x: Pair) -> Pair:
    # (a + b rho)^3 = a^3 + b^3 - 3ab^2 + 3ab(a - b) rho
    a, b = x
    ab3 = 3 * a * b
    return (a * a * a + b * b * b - ab3 * b, ab3 * (a - b))


def _rho(x: Pair) -> Pair:
    # rho (a + b rho) = -b + (a - b) rho
    return (-x[1], x[0] - x[1])


def _rho2(x: Pair) -> Pair:
    return _rho(_rho(x))


_OMR: Pair = (1, -1)
_THREE_OMR: Pair = (3, -3)
_THREE_OMR_INV: Pair = (6, 3)


def _final_sides(g: Pair, bt: Pair, Y: Pair, X1: Pair, X2: Pair, X3: Pair) -> tuple[Pair, Pair]:
    g2b2 = _m(_m(g, g), _m(bt, bt))
    lhs = _m(g, _cube(Y))
    t1, t2, t3 = _m(g, _cube(X1)), _m(bt, _cube(X2)), _m(g2b2, _cube(X3))
    return lhs, (t1[0] + t2[0] + t3[0], t1[1] + t2[1] + t3[1])


def _raw_sides(al: Pair, bt: Pair, Y: Pair, X1: Pair, X2: Pair, X3: Pair) -> tuple[Pair, Pair]:
    a2b2 = _m(_m(al, al), _m(bt, bt))
    lhs = _m(al, _cube(Y))
    rhs = _add(
        _add(_m(al, _cube(X1)), _m(_m(_THREE_OMR, bt), _cube(X2))),
        _m(_m(_THREE_OMR_INV, a2b2), _cube(X3)),
    )
    return lhs, rhs


def _pair(x: EisensteinInt) -> Pair:
    return (x.a, x.b)


def _eis(x: Pair) -> EisensteinInt:
    return EisensteinInt(x[0], x[1])


@dataclass(frozen=True)
class CubicSolution:
    """A tuple with ``gamma Y^3 = gamma X1^3 + beta X2^3 + gamma^2 beta^2 X3^3``."""

    gamma: EisensteinInt
    beta: EisensteinInt
    a: EisensteinInt
    c: EisensteinInt
    Y: EisensteinInt
    X1: EisensteinInt
    X2: EisensteinInt
    X3: EisensteinInt
    degenerate: bool

    FIELDS = ("gamma", "beta", "a", "c", "Y", "X1", "X2", "X3")

    def to_json(self) -> dict:
        doc = {k: getattr(self, k).to_json() for k in self.FIELDS}
        doc["degenerate"] = self.degenerate
        doc["verified"] = verify_solution(self)
        return doc

    @classmethod
    def from_json(cls, data) -> CubicSolution:
        if not isinstance(data, dict):
            raise ValueError("solution must be a JSON object")
        missing = [k for k in cls.FIELDS + ("degenerate",) if k not in data]
        if missing:
            raise ValueError(f"solution missing keys {missing}")
        if not isinstance(data["degenerate"], bool):
            raise ValueError("'degenerate' must be a boolean")
        vals = {k: EisensteinInt.from_json(data[k]) for k in cls.FIELDS}
        return cls(degenerate=data["degenerate"], **vals)


@dataclass(frozen=True)
class RawSolution:
    """A tuple with ``alpha Y^3 = alpha X1^3 + 3(1-rho) beta X2^3 + 3(1-rho^-1) alpha^2 beta^2 X3^3``."""

    alpha: EisensteinInt
    beta: EisensteinInt
    a: EisensteinInt
    b: EisensteinInt
    Y: EisensteinInt
    X1: EisensteinInt
    X2: EisensteinInt
    X3: EisensteinInt
    degenerate: bool


def verify_solution(s: CubicSolution) -> bool:
    lhs, rhs = _final_sides(*(_pair(getattr(s, k)) for k in ("gamma", "beta", "Y", "X1", "X2", "X3")))
    return lhs == rhs


def verify_raw_solution(s: RawSolution) -> bool:
    lhs, rhs = _raw_sides(*(_pair(getattr(s, k)) for k in ("alpha", "beta", "Y", "X1", "X2", "X3")))
    return lhs == rhs


def _final_tuple(g: Pair, bt: Pair, a: Pair, c: Pair, a2: Pair, a3: Pair, c2: Pair, c3: Pair):
    ga3 = _m(a3, g)
    bc3 = _m(bt, c3)
    Y = _add(ga3, _rho(_neg(bc3)))
    X1 = _add(ga3, _rho2(_neg(bc3)))
    X2 = _m(_m(g, _OMR), _m(a2, c))
    X3 = _m(_OMR, _m(a, c2))
    return Y, X1, X2, X3


def _neg(x: Pair) -> Pair:
    return (-x[0], -x[1])


def _build(g: Pair, bt: Pair, a: Pair, c: Pair, powers_a, powers_c) -> CubicSolution:
    Y, X1, X2, X3 = _final_tuple(g, bt, a, c, powers_a[0], powers_a[1], powers_c[0], powers_c[1])
    lhs, rhs = _final_sides(g, bt, Y, X1, X2, X3)
    if lhs != rhs:
        raise AssertionError(f"generated tuple fails the cubic equation (gamma={g}, beta={bt}, a={a}, c={c})")
    return CubicSolution(
        _eis(g), _eis(bt), _eis(a), _eis(c), _eis(Y), _eis(X1), _eis(X2), _eis(X3),
        degenerate=(a == (0, 0) or c == (0, 0)),
    )


def _powers(x: Pair) -> tuple[Pair, Pair]:
    x2 = _m(x, x)
    return x2, _m(x2, x)


def gen_solution(gamma: EisensteinInt, beta: EisensteinInt, a: EisensteinInt, c: EisensteinInt) -> CubicSolution:
    """``Y = a^3 gamma - rho beta c^3``, ``X1 = a^3 gamma - rho^2 beta c^3``,
    ``X2 = gamma (1 - rho) a^2 c``, ``X3 = (1 - rho) a c^2``."""
    ap, cp = _pair(a), _pair(c)
    return _build(_pair(gamma), _pair(beta), ap, cp, _powers(ap), _powers(cp))


def gen_solution_raw(alpha: EisensteinInt, beta: EisensteinInt, a: EisensteinInt, b: EisensteinInt) -> RawSolution:
    """``Y = a^3 alpha + b^3 beta``, ``X1 = a^3 alpha + rho b^3 beta``,
    ``X2 = a^2 b alpha``, ``X3 = a b^2``."""
    al, bt, ap, bp = map(_pair, (alpha, beta, a, b))
    a2, a3 = _powers(ap)
    b2, b3 = _powers(bp)
    a3al = _m(a3, al)
    b3bt = _m(b3, bt)
    Y = _add(a3al, b3bt)
    X1 = _add(a3al, _rho(b3bt))
    X2 = _m(_m(a2, bp), al)
    X3 = _m(ap, b2)
    lhs, rhs = _raw_sides(al, bt, Y, X1, X2, X3)
    if lhs != rhs:
        raise AssertionError(f"generated tuple fails the raw cubic equation (alpha={al}, beta={bt}, a={ap}, b={bp})")
    return RawSolution(
        alpha, beta, a, b, _eis(Y), _eis(X1), _eis(X2), _eis(X3),
        degenerate=(ap == (0, 0) or bp == (0, 0)),
    )


def eisenstein_ball(bound: int) -> list[EisensteinInt]:
    """All ``a + b rho`` with norm at most ``bound``, ordered by (a, b)."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    # 4 N(a + b rho) = (2a - b)^2 + 3 b^2
    bmax = math.isqrt(4 * bound // 3)
    out = []
    for b in range(-bmax, bmax + 1):
        rem = 4 * bound - 3 * b * b
        if rem < 0:
            continue
        r = math.isqrt(rem)
        for a in range((b - r) // 2 - 1, (b + r) // 2 + 2):
            if a * a - a * b + b * b <= bound:
                out.append((a, b))
    return [EisensteinInt(a, b) for a, b in sorted(out)]


def enumerate_solutions(gamma: EisensteinInt, beta: EisensteinInt, bound: int) -> Iterator[CubicSolution]:
    """``gen_solution`` over every (a, c) with both norms at most ``bound``,
    in lexicographic (a.a, a.b, c.a, c.b) order."""
    ball = [_pair(x) for x in eisenstein_ball(bound)]
    g, bt = _pair(gamma), _pair(beta)
    g_omr = _m(g, _OMR)
    g2b2 = _m(_m(g, g), _m(bt, bt))
    # per-c pieces: -rho beta c^3, -rho^2 beta c^3, (1 - rho) c^2
    c_parts = []
    for c in ball:
        c2, c3 = _powers(c)
        nbc3 = _neg(_m(bt, c3))
        c_parts.append((c, _eis(c), _rho(nbc3), _rho2(nbc3), _m(_OMR, c2), c == (0, 0)))
    e_gamma, e_beta = _eis(g), _eis(bt)
    new = EisensteinInt._new
    for a in ball:
        a2, a3 = _powers(a)
        ga3 = _m(a3, g)
        ga2 = _m(g_omr, a2)
        e_a = _eis(a)
        a_zero = a == (0, 0)
        for c, e_c, y_c, x1_c, omr_c2, c_zero in c_parts:
            Y = (ga3[0] + y_c[0], ga3[1] + y_c[1])
            X1 = (ga3[0] + x1_c[0], ga3[1] + x1_c[1])
            X2 = _m(ga2, c)
            X3 = _m(a, omr_c2)
            lhs = _m(g, _cube(Y))
            t1, t2, t3 = _m(g, _cube(X1)), _m(bt, _cube(X2)), _m(g2b2, _cube(X3))
            if lhs != (t1[0] + t2[0] + t3[0], t1[1] + t2[1] + t3[1]):
                raise AssertionError(f"generated tuple fails the cubic equation (gamma={g}, beta={bt}, a={a}, c={c})")
            yield CubicSolution(
                e_gamma, e_beta, e_a, e_c, new(*Y), new(*X1), new(*X2), new(*X3), a_zero or c_zero
            )
