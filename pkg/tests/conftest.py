from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from equichar.cyclotomic import CycloElem, CycloMatrix, totient

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

CONDUCTORS = (1, 3, 4, 5, 8, 12)

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def elems(draw, conductor, nonzero=False):
    coeffs = draw(st.lists(small_fractions, min_size=totient(conductor), max_size=totient(conductor)))
    x = CycloElem(conductor, coeffs)
    if nonzero and x.is_zero():
        x = x + Fraction(1)
    return x


@st.composite
def matrices(draw, conductor, n):
    return CycloMatrix(conductor, [[draw(elems(conductor)) for _ in range(n)] for _ in range(n)])


def random_setup(seed, local=False, max_rank=2, max_order=6, max_points=4):
    """A random Galois G-set with a sheaf on it, for the sheaf-level properties."""
    import random

    from equichar.catalog import group_catalog, random_galois_gset, random_sheaf

    rng = random.Random(seed)
    groups = group_catalog(max_order)
    G = groups[rng.choice(sorted(groups))]
    X = random_galois_gset(rng, G, max_points, local=local)
    N = rng.choice((1, 3, 4, 5))
    return rng, X, N, random_sheaf(rng, X, N, max_rank)


ACCEPTANCE: dict[str, str] = {}


def record(criterion: str, passed: bool, detail: str) -> None:
    line = f"{criterion} {'PASS' if passed else 'FAIL'}: {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
            terminalreporter.write_line(ACCEPTANCE[key])
