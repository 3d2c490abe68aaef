"""Tournament structure of coherent 3-central sets.

Vertex i beats vertex j when ``x_i x_j = rho x_j x_i``.  The checks here are
necessary conditions on such tournaments; the monomial search verifies the
3m+1 bound on small tensor products of degree-3 symbol algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .arith import ValidationError
from .clifford import (
    PCentralPresentation,
    TripleCase,
    UnsupportedError,
    classify_triple,
    monomial_pth_power,
)
from .fplinalg import FpMatrix, bilinear, hyperbolic_normal_form

Triangle = tuple[int, int, int]


class Tournament:
    """Complete directed graph: exactly one edge between any two vertices."""

    __slots__ = ("vertices", "edges", "_succ")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> None:
        self.vertices: tuple[int, ...] = tuple(sorted(set(vertices)))
        self.edges: frozenset[tuple[int, int]] = frozenset((int(i), int(j)) for i, j in edges)
        vs = set(self.vertices)
        for i, j in self.edges:
            if i not in vs or j not in vs:
                raise ValidationError(f"edge ({i}, {j}) uses an unknown vertex")
            if i == j:
                raise ValidationError(f"self-loop at vertex {i}")
            if (j, i) in self.edges:
                raise ValidationError(f"both orientations present between {i} and {j}")
        for i, j in itertools.combinations(self.vertices, 2):
            if (i, j) not in self.edges and (j, i) not in self.edges:
                raise ValidationError(f"no edge between {i} and {j}")
        succ: dict[int, set[int]] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            succ[i].add(j)
        self._succ = succ

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Tournament:
        return cls(range(n), edges)

    def beats(self, i: int, j: int) -> bool:
        return j in self._succ[i]

    def successors(self, i: int) -> set[int]:
        return set(self._succ[i])

    def subtournament(self, keep: Iterable[int]) -> Tournament:
        ks = set(keep)
        return Tournament(ks, [(i, j) for i, j in self.edges if i in ks and j in ks])

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Tournament(vertices={list(self.vertices)}, edges={sorted(self.edges)})"

    def to_json(self) -> dict:
        doc = {"n": len(self.vertices), "edges": [list(e) for e in sorted(self.edges)]}
        if self.vertices != tuple(range(len(self.vertices))):
            doc["vertices"] = list(self.vertices)
        return doc

    @classmethod
    def from_json(cls, data) -> Tournament:
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise ValueError("tournament JSON needs 'n' and 'edges'")
        n, edges = data["n"], data["edges"]
        if type(n) is not int or n < 0:
            raise ValueError("'n' must be a non-negative integer")
        if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(type(x) is int for x in e) for e in edges
        ):
            raise ValueError("'edges' must be a list of [i, j] integer pairs")
        vertices = data.get("vertices", list(range(n)))
        if not isinstance(vertices, list) or len(vertices) != n or not all(type(v) is int for v in vertices):
            raise ValueError("'vertices' must list n integer labels")
        return cls(vertices, [tuple(e) for e in edges])


def build_tournament(pres: PCentralPresentation) -> Tournament:
    """Edge i -> j iff ``C[i][j] == 1``."""
    if pres.p != 3:
        raise UnsupportedError(f"tournaments are defined for p = 3 only, got p = {pres.p}")
    edges = []
    for i, j in itertools.combinations(range(pres.n), 2):
        c = pres.c[i, j]
        if c == 0:
            raise ValidationError(
                f"generators {i} and {j} commute; in a coherent 3-central set commuting "
                "elements are scalar multiples of each other"
            )
        edges.append((i, j) if c == 1 else (j, i))
    return Tournament(range(pres.n), edges)


def find_3cycles(t: Tournament) -> list[Triangle]:
    """All directed triangles, each once with sorted vertices."""
    out = []
    for i, j, k in itertools.combinations(t.vertices, 3):
        a, b, c = t.beats(i, j), t.beats(j, k), t.beats(k, i)
        if a == b == c:
            out.append((i, j, k))
    return out


def _reachability(t: Tournament) -> dict[int, set[int]]:
    reach = {v: t.successors(v) for v in t.vertices}
    changed = True
    while changed:
        changed = False
        for v in t.vertices:
            new = set(reach[v])
            for w in reach[v]:
                new |= reach[w]
            if new != reach[v]:
                reach[v] = new
                changed = True
    return reach


def strong_components(t: Tournament) -> list[tuple[int, ...]]:
    reach = _reachability(t)
    seen: set[int] = set()
    comps = []
    for v in t.vertices:
        if v in seen:
            continue
        comp = tuple(sorted({v} | {w for w in reach[v] if v in reach[w]}))
        seen.update(comp)
        comps.append(comp)
    return comps


def _long_cycle(t: Tournament) -> Optional[tuple[int, ...]]:
    # A strong tournament on k >= 4 vertices contains a 4-cycle, so looking
    # for 4-cycles inside large components is enough.
    for comp in strong_components(t):
        if len(comp) < 4:
            continue
        for quad in itertools.combinations(comp, 4):
            first = quad[0]
            for rest in itertools.permutations(quad[1:]):
                cyc = (first,) + rest
                if all(t.beats(cyc[k], cyc[(k + 1) % 4]) for k in range(4)):
                    return cyc
        raise AssertionError("strong component without a 4-cycle")
    return None


@dataclass(frozen=True)
class PropositionResult:
    ok: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "witness": self.witness}


@dataclass(frozen=True)
class PropositionReport:
    prop1: PropositionResult
    prop2: PropositionResult
    prop3: PropositionResult
    triangles: tuple[Triangle, ...]

    @property
    def admissible(self) -> bool:
        return self.prop1.ok and self.prop2.ok and self.prop3.ok

    def to_json(self) -> dict:
        return {
            "prop1": self.prop1.to_json(),
            "prop2": self.prop2.to_json(),
            "prop3": self.prop3.to_json(),
            "triangles": [list(c) for c in self.triangles],
            "admissible": self.admissible,
        }


def _directed(t: Tournament, tri: Triangle) -> list[int]:
    """Triangle vertices listed along the cycle direction, starting at the smallest."""
    i, j, k = tri
    return [i, j, k] if t.beats(i, j) else [i, k, j]


def validate_propositions(t: Tournament) -> PropositionReport:
    """Check the three structural constraints on a tournament.

    1. Every vertex outside a triangle either beats all three of its vertices
       or is beaten by all three.
    2. Distinct triangles are vertex-disjoint.
    3. There is no directed cycle of length four or more.
    """
    tris = find_3cycles(t)

    p1 = PropositionResult(True)
    for tri in tris:
        for v in t.vertices:
            if v in tri:
                continue
            wins = [t.beats(v, u) for u in tri]
            if any(wins) and not all(wins):
                p1 = PropositionResult(False, {"cycle": _directed(t, tri), "vertex": v})
                break
        if not p1.ok:
            break

    p2 = PropositionResult(True)
    for a, b in itertools.combinations(tris, 2):
        shared = sorted(set(a) & set(b))
        if shared:
            p2 = PropositionResult(
                False, {"cycles": [_directed(t, a), _directed(t, b)], "shared": shared}
            )
            break

    cyc = _long_cycle(t)
    p3 = PropositionResult(True) if cyc is None else PropositionResult(False, {"cycle": list(cyc)})
    return PropositionReport(p1, p2, p3, tuple(tris))


def is_acyclic(t: Tournament) -> bool:
    indeg = {v: 0 for v in t.vertices}
    for _, j in t.edges:
        indeg[j] += 1
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in t.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(t.vertices)


def diminish(t: Tournament, choice: Optional[Callable[[Triangle], int]] = None) -> Tournament:
    """Drop one vertex from every triangle (by default the smallest label)."""
    report = validate_propositions(t)
    if not report.admissible:
        bad = next(name for name in ("prop1", "prop2", "prop3") if not getattr(report, name).ok)
        raise ValidationError(f"tournament is not admissible ({bad} fails: {getattr(report, bad).witness})")
    pick = choice or min
    drop = set()
    for tri in report.triangles:
        v = pick(tri)
        if v not in tri:
            raise ValidationError(f"selector returned {v}, which is not on triangle {tri}")
        drop.add(v)
    out = t.subtournament(v for v in t.vertices if v not in drop)
    if not is_acyclic(out):
        raise AssertionError("diminished tournament still has a cycle")
    return out


# ---------------------------------------------------------------------------
# maximal coherent monomial sets


@dataclass(frozen=True, order=True)
class MonomialClass:
    """A monomial ``x^exponents`` of the split tensor product, tagged with its
    scalar class (``v`` and ``2v`` share a class)."""

    exponents: tuple[int, ...]

    @property
    def canonical(self) -> tuple[int, ...]:
        return min(self.exponents, tuple(2 * e % 3 for e in self.exponents))

    def __str__(self) -> str:
        names = "xyzwuvst"
        if len(self.exponents) <= len(names):
            label = lambda k: names[k]  # noqa: E731
        else:
            label = lambda k: f"x{k + 1}"  # noqa: E731
        parts = [label(k) + ("" if e == 1 else f"^{e}") for k, e in enumerate(self.exponents) if e]
        return "".join(parts) or "1"


def split_presentation(m: int) -> PCentralPresentation:
    """2m generators, ``C = H + ... + H``, every generator cubing to 1."""
    n = 2 * m
    return PCentralPresentation.build(3, hyperbolic_normal_form(3, n, m), [1] * n)


def witness_presentation(pres: PCentralPresentation, monomials: Sequence[Sequence[int]]) -> PCentralPresentation:
    """Presentation generated by the given monomials of ``pres`` (their Gram
    matrix under the commutation form, and their engine-computed p-th powers)."""
    gram = [[bilinear(u, pres.c, v) for v in monomials] for u in monomials]
    powers = [monomial_pth_power(pres, u) for u in monomials]
    return PCentralPresentation(pres.p, len(monomials), FpMatrix(pres.p, gram), tuple(powers))


@lru_cache(maxsize=None)
def max_coherent_monomial_set(m: int) -> tuple[int, tuple[MonomialClass, ...]]:
    """Largest set of monomials in m split degree-3 symbol algebras that is
    pairwise non-commuting with every triple of Case 1 or Case 2.

    Exhaustive branch and bound over all nonzero exponent vectors in lexicographic
    order; the returned witness is the lexicographically first maximum.
    """
    if m not in (1, 2):
        raise UnsupportedError("max_coherent_monomial_set is limited to m in {1, 2}")
    pres = split_presentation(m)
    vecs = [v for v in itertools.product(range(3), repeat=2 * m) if any(v)]
    monos = [pres.monomial(v) for v in vecs]
    N = len(vecs)

    nbr = [0] * N
    for i, j in itertools.combinations(range(N), 2):
        if bilinear(vecs[i], pres.c, vecs[j]):
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i

    triple_cache: dict[tuple[int, int, int], bool] = {}

    def triple_ok(i: int, j: int, k: int) -> bool:
        key = tuple(sorted((i, j, k)))
        hit = triple_cache.get(key)
        if hit is None:
            case = classify_triple(monos[key[0]], monos[key[1]], monos[key[2]])
            hit = case is not TripleCase.NOT_COHERENT
            triple_cache[key] = hit
        return hit

    best: list[int] = []

    def search(chosen: list[int], cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen[:]
        while cand:
            if len(chosen) + bin(cand).count("1") <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            nxt = cand & nbr[v]
            if chosen:
                rest, nxt = nxt, 0
                while rest:
                    lw = rest & -rest
                    w = lw.bit_length() - 1
                    rest ^= lw
                    if all(triple_ok(u, v, w) for u in chosen):
                        nxt |= lw
            search(chosen + [v], nxt)

    search([], (1 << N) - 1)
    return len(best), tuple(MonomialClass(vecs[i]) for i in best)
