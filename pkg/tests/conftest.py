import math
import random
from fractions import Fraction

import pytest

from ietlab import app
from ietlab.__main__ import load_commands
from ietlab.core.gn import GnElement
from ietlab.core.iet import Iet
from ietlab.core.perm import Permutation
from ietlab.core.scalar import Scalar, SymbolTable

WITNESSES = {
    "alpha": "0.41421356237309504880168872420969807856967187537694",
    "beta": "0.30901699437494742410229341718281905886015458990288",
    "gamma1": "0.73205080756887729352744634150587236694280525381038",
    "gamma2": "0.44948974278317809819728407470589139196594748065667",
    "gamma3": "0.64575131106459059050161575363926042571025918308245",
    "delta": "0.14159265358979323846264338327950288419716939937510",
}


def make_table() -> SymbolTable:
    table = SymbolTable()
    for name, witness in WITNESSES.items():
        table = table.register(name, witness)
    return table


TABLE = make_table()


def sym(name: str, coefficient=1) -> Scalar:
    return Scalar.symbol(TABLE, name, coefficient)


def random_scalar(rng: random.Random, symbols=("alpha", "beta", "gamma1")) -> Scalar:
    out = Scalar.rational(Fraction(rng.randint(-8, 8), rng.randint(1, 8)))
    for name in rng.sample(symbols, rng.randint(0, len(symbols))):
        out = out + sym(name, rng.choice((-2, -1, 1, 2)))
    return out


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_gn(rng: random.Random, n: int, symbols=("alpha", "beta", "gamma1")) -> GnElement:
    return GnElement.make([random_scalar(rng, symbols) for _ in range(n)], random_permutation(rng, n))


def random_rational_iet(rng: random.Random, size: int, denominator: int = 12) -> Iet:
    """Random lengths on a grid of 1/denominator, random permutation."""
    cuts = sorted(rng.sample(range(1, denominator), size - 1))
    bounds = [0] + cuts + [denominator]
    lengths = [Fraction(b - a, denominator) for a, b in zip(bounds, bounds[1:])]
    return Iet.from_lengths(lengths, random_permutation(rng, size))


def random_gn_involution(rng: random.Random, n: int, symbols=("alpha", "beta", "gamma1")) -> GnElement:
    """Random tau with tau^2 = id, angles negated along its 2-cycles and 0 or 1/2n on its fixed points."""
    points = list(range(1, n + 1))
    rng.shuffle(points)
    images, angles = {}, {}
    while points:
        i = points.pop()
        if points and rng.random() < 0.6:
            j = points.pop()
            images[i], images[j] = j, i
            angles[i] = random_scalar(rng, symbols)
            angles[j] = -angles[i]
        else:
            images[i] = i
            angles[i] = rng.choice((Fraction(0), Fraction(1, 2 * n)))
    order = range(1, n + 1)
    return GnElement.make([angles[i] for i in order], Permutation(tuple(images[i] for i in order)))


def random_tower_iet(rng: random.Random, longest: int = 60):
    """A periodic IET stacked from random towers, with its period."""
    while True:
        heights = [rng.randint(1, 12) for _ in range(rng.randint(1, 4))]
        p = math.lcm(*heights)
        if p <= longest:
            break
    weights = [Fraction(rng.randint(1, 6)) for _ in heights]
    total = sum(h * w for h, w in zip(heights, weights))
    floors = [(t, k) for t, h in enumerate(heights) for k in range(h)]
    rng.shuffle(floors)
    left, cursor = {}, Fraction(0)
    for t, k in floors:
        left[t, k] = cursor
        cursor += weights[t] / total
    breakpoints = [left[floor] for floor in floors]
    translations = [left[t, (k + 1) % heights[t]] - left[t, k] for t, k in floors]
    return Iet.from_pieces(breakpoints, translations), p


@pytest.fixture
def table():
    return TABLE


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def alpha():
    return sym("alpha")


@pytest.fixture
def beta():
    return sym("beta")


@pytest.fixture
def cli(capsys):
    """Run ``iet-lab`` in-process; returns (exit code, stdout, stderr)."""
    load_commands()

    def run(*argv):
        code = app.run([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
