import cmath
import random
from fractions import Fraction

import pytest

from pcentral import CycloNum, PCentralPresentation

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


def random_cyclo(rng, p, nonzero=True, size=4):
    while True:
        x = CycloNum(p, [Fraction(rng.randint(-size, size), rng.choice([1, 1, 2, 3])) for _ in range(p - 1)])
        if x or not nonzero:
            return x


def random_skew(rng, p, n):
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randrange(p)
            c[i][j] = v
            c[j][i] = -v % p
    return c


def random_presentation(rng, p, n):
    return PCentralPresentation.build(p, random_skew(rng, p, n), [random_cyclo(rng, p) for _ in range(n)])


def random_element(rng, pres, terms=3):
    out = pres.zero()
    for _ in range(terms):
        e = tuple(rng.randrange(pres.p) for _ in range(pres.n))
        out = out + pres.monomial(e, random_cyclo(rng, pres.p, size=3))
    return out


def to_complex(x: CycloNum) -> complex:
    """Numerical embedding rho -> exp(2 pi i / p); independent of the field arithmetic."""
    z = cmath.exp(2j * cmath.pi / x.p)
    return sum(float(c) * z**k for k, c in enumerate(x.coeffs))


def word_normal_form(pres, word, coeff=None):
    """Normal-order a generator word by adjacent swaps, one relation at a time.

    Returns {exponent tuple: CycloNum}.  Independent of the engine's closed-form
    phase: every swap of neighbours x_i x_j (i > j) applies x_i x_j = rho^{C_ij} x_j x_i,
    and every run of p equal letters is replaced by alpha.
    """
    p = pres.p
    rho = CycloNum.rho(p)
    coeff = CycloNum.one(p) if coeff is None else coeff
    w = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            i, j = w[k], w[k + 1]
            if i > j:
                w[k], w[k + 1] = j, i
                coeff = coeff * rho ** pres.c[i, j]
                changed = True
        # collapse p consecutive equal letters
        k = 0
        while k + p <= len(w):
            if all(w[k + t] == w[k] for t in range(p)):
                coeff = coeff * pres.alpha[w[k]]
                del w[k : k + p]
                changed = True
            else:
                k += 1
    exps = [0] * pres.n
    for g in w:
        exps[g] += 1
    return tuple(exps), coeff


def monomial_word(exps):
    return [k for k, e in enumerate(exps) for _ in range(e)]


@pytest.fixture
def rng():
    return random.Random(20261016)
