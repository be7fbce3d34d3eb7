"""Seeded random bundle expressions on a curve."""

import random

from hyperflat.bundles import DirectSum, Ext, Line
from hyperflat.cohomology import H1Class
from hyperflat.divisor import Divisor


def random_divisor(curve, rng, places):
    D = Divisor.zero(curve)
    for _ in range(rng.randint(0, 3)):
        D = D + Divisor.place(curve, rng.choice(places), rng.randint(-2, 2))
    return D


def random_class(curve, rng, over, places, zero=False):
    if zero:
        return H1Class(curve, over)
    tails = {}
    for P in rng.sample(places, rng.randint(1, 2)):
        k = -over[P] - rng.randint(1, 3)
        tails[P] = {k: curve.field(rng.randint(1, 5))}
    return H1Class(curve, over, tails)


def random_ext(curve, rng, places, zero=None):
    A, B = random_divisor(curve, rng, places), random_divisor(curve, rng, places)
    if zero is None:
        zero = rng.random() < 0.3
    return Ext(random_class(curve, rng, A - B, places, zero), Line(A), Line(B))


def random_bundle(curve, rng, places, depth=2):
    r = rng.random()
    if depth == 0 or r < 0.35:
        return Line(random_divisor(curve, rng, places))
    if r < 0.7:
        n = rng.randint(1, 3)
        return DirectSum([random_bundle(curve, rng, places, depth - 1) for _ in range(n)])
    return random_ext(curve, rng, places)


def bundles(curve, seed, n):
    rng = random.Random(seed)
    places = curve.degree_one_places(6)
    return [random_bundle(curve, rng, places) for _ in range(n)]
