import itertools

import networkx as nx
import pytest

from pcentral.arith import ValidationError
from pcentral.clifford import PCentralPresentation, UnsupportedError, commutes, is_p_central, spans_p_central_space
from pcentral.tournament import (
    MonomialClass,
    Tournament,
    build_tournament,
    diminish,
    find_3cycles,
    is_acyclic,
    max_coherent_monomial_set,
    split_presentation,
    validate_propositions,
    witness_presentation,
)


def all_tournaments(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product([0, 1], repeat=len(pairs)):
        yield Tournament.from_edges(n, [(i, j) if b else (j, i) for (i, j), b in zip(pairs, bits)])


def brute_cycles(t):
    """Every directed simple cycle as a tuple starting at its smallest vertex."""
    out = []
    for k in range(3, len(t) + 1):
        for sub in itertools.combinations(t.vertices, k):
            first = sub[0]
            for rest in itertools.permutations(sub[1:]):
                cyc = (first,) + rest
                if all(t.beats(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                    out.append(cyc)
    return out


def three_cycle():
    return Tournament.from_edges(3, [(0, 1), (1, 2), (2, 0)])


def transitive(n):
    return Tournament.from_edges(n, list(itertools.combinations(range(n), 2)))


def test_build_tournament_examples():
    t = build_tournament(PCentralPresentation.build(3, [[0, 1], [2, 0]], [1, 1]))
    assert t.edges == {(0, 1)}
    cyc = PCentralPresentation.build(3, [[0, 1, 2], [2, 0, 1], [1, 2, 0]], [1, 1, 1])
    assert build_tournament(cyc) == three_cycle()
    trans = PCentralPresentation.build(3, [[0, 1, 1], [2, 0, 1], [2, 2, 0]], [1, 1, 1])
    assert build_tournament(trans) == transitive(3)


def test_build_tournament_rejects():
    with pytest.raises(ValidationError, match="commute"):
        build_tournament(PCentralPresentation.build(3, [[0, 0], [0, 0]], [1, 1]))
    with pytest.raises(UnsupportedError):
        build_tournament(PCentralPresentation.build(5, [[0, 1], [4, 0]], [1, 1]))


def test_tournament_validation():
    with pytest.raises(ValidationError):
        Tournament.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValidationError):
        Tournament.from_edges(2, [(0, 1), (1, 0)])


def test_find_3cycles_examples():
    assert find_3cycles(three_cycle()) == [(0, 1, 2)]
    assert find_3cycles(transitive(4)) == []
    t = Tournament.from_edges(4, [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)])
    assert find_3cycles(t) == [(0, 1, 2)]


def test_validate_examples():
    mixed = Tournament.from_edges(4, [(0, 1), (1, 2), (2, 0), (3, 0), (1, 3), (3, 2)])
    rep = validate_propositions(mixed)
    assert not rep.prop1.ok
    assert rep.prop1.witness == {"cycle": [0, 1, 2], "vertex": 3}

    # triangles (0,1,2) and (0,3,4) share vertex 0
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 3), (1, 4), (2, 3), (2, 4)]
    rep = validate_propositions(Tournament.from_edges(5, edges))
    assert not rep.prop2.ok
    assert 0 in rep.prop2.witness["shared"]

    for n in range(1, 7):
        assert validate_propositions(transitive(n)).admissible


def test_validate_long_cycle_witness():
    # 4-cycle 0 -> 1 -> 2 -> 3 -> 0 with chords 0 -> 2, 1 -> 3
    t = Tournament.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
    rep = validate_propositions(t)
    assert not rep.prop3.ok
    cyc = rep.prop3.witness["cycle"]
    assert len(cyc) == 4 and all(t.beats(cyc[k], cyc[(k + 1) % 4]) for k in range(4))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_propositions_against_brute_force(n):
    count = 0
    for t in all_tournaments(n):
        count += 1
        cycles = brute_cycles(t)
        tris = sorted(tuple(sorted(c)) for c in cycles if len(c) == 3)
        rep = validate_propositions(t)
        assert list(rep.triangles) == tris == find_3cycles(t)
        assert rep.prop3.ok == all(len(c) == 3 for c in cycles)
        assert rep.prop2.ok == all(not set(a) & set(b) for a, b in itertools.combinations(tris, 2))
        uniform = all(
            len({t.beats(v, u) for u in tri}) == 1 for tri in tris for v in t.vertices if v not in tri
        )
        assert rep.prop1.ok == uniform
        # cycles exist iff triangles exist
        assert bool(cycles) == bool(tris)
        # admissible iff every strong component has 1 or 3 vertices
        g = nx.DiGraph(list(t.edges))
        g.add_nodes_from(t.vertices)
        sizes = {len(c) for c in nx.strongly_connected_components(g)}
        assert rep.admissible == sizes.issubset({1, 3})
        assert len(list(nx.simple_cycles(g))) == len(cycles)
    assert count == 2 ** (n * (n - 1) // 2)


def test_diminish_examples():
    out = diminish(three_cycle())
    assert out.vertices == (1, 2) and is_acyclic(out)
    assert diminish(transitive(4)) == transitive(4)
    t = Tournament.from_edges(4, [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)])
    out = diminish(t)
    assert len(out) == 3 and is_acyclic(out)
    assert diminish(t, choice=max).vertices == (0, 1, 3)


def test_diminish_rejects_non_admissible():
    mixed = Tournament.from_edges(4, [(0, 1), (1, 2), (2, 0), (3, 0), (1, 3), (3, 2)])
    with pytest.raises(ValidationError, match="prop1"):
        diminish(mixed)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_diminish_all_admissible(n):
    for t in all_tournaments(n):
        rep = validate_propositions(t)
        if not rep.admissible:
            continue
        out = diminish(t)
        assert is_acyclic(out) and find_3cycles(out) == []
        assert len(t) - len(out) == len(rep.triangles)


def test_tournament_json_roundtrip():
    t = Tournament.from_edges(4, [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)])
    assert Tournament.from_json(t.to_json()) == t
    d = diminish(t)
    assert Tournament.from_json(d.to_json()) == d
    with pytest.raises(ValueError):
        Tournament.from_json({"n": 2, "edges": [[0]]})


def _independently_coherent(pres, vecs):
    mons = [pres.monomial(v) for v in vecs]
    if any(commutes(a, b) for a, b in itertools.combinations(mons, 2)):
        return False
    return all(is_p_central(m) for m in mons) and spans_p_central_space(mons)


def test_max_coherent_m1():
    size, witness = max_coherent_monomial_set(1)
    assert size == 4 and len(witness) == 4
    pres = split_presentation(1)
    assert _independently_coherent(pres, [w.exponents for w in witness])
    # the set named in the examples: x, y, x^2 y^2, x y^2
    assert _independently_coherent(pres, [(1, 0), (0, 1), (2, 2), (1, 2)])


def test_max_coherent_m1_no_five():
    pres = split_presentation(1)
    vecs = [v for v in itertools.product(range(3), repeat=2) if any(v)]
    assert not any(_independently_coherent(pres, s) for s in itertools.combinations(vecs, 5))


def test_max_coherent_out_of_range():
    with pytest.raises(UnsupportedError):
        max_coherent_monomial_set(3)
    with pytest.raises(UnsupportedError):
        max_coherent_monomial_set(0)


def test_witness_tournament_passes_m1():
    _, witness = max_coherent_monomial_set(1)
    t = build_tournament(witness_presentation(split_presentation(1), [w.exponents for w in witness]))
    assert validate_propositions(t).admissible


def test_monomial_class_canonical():
    assert MonomialClass((2, 2)).canonical == (1, 1)
    assert MonomialClass((0, 1)).canonical == (0, 1)
    assert MonomialClass((2, 1)).canonical == (1, 2)
    assert str(MonomialClass((2, 2))) == "x^2y^2"
