import itertools
import random
from fractions import Fraction
from functools import lru_cache

from ultrafine.files import load_algebra

# PASS/FAIL lines recorded by the acceptance criteria
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: s[6:10]):
            terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def flag_of(name):
    return load_algebra(f"catalog:{name}").jh_flag()


def functionals(m, count, seed=0, height=10):
    """Seeded mix of dense random, sparse random and sign-grid points."""
    rng = random.Random(seed)
    grid = list(itertools.product((-1, 0, 1), repeat=m)) if m <= 6 else []
    rng.shuffle(grid)
    out = [tuple(Fraction(v) for v in p) for p in grid[: count // 4]]
    while len(out) < count:
        xi = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(m)]
        if len(out) % 2:
            for t in range(m):
                if rng.random() < 0.5:
                    xi[t] = Fraction(0)
        out.append(tuple(xi))
    return out


def random_vector(rng, m, height=5):
    return tuple(Fraction(rng.randint(-height, height), rng.randint(1, 3)) for _ in range(m))
