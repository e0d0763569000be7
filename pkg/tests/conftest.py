import os
import random
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.slider import SlidingIndex  # noqa: E402


def fibonacci_word(length: int) -> bytes:
    a, b = b'a', b'ab'
    while len(b) < length:
        a, b = b, b + a
    return b[:length]


def de_bruijn(k: int, order: int) -> bytes:
    alphabet = b'abcdefghijklmnopqrstuvwxyz'[:k]
    a = [0] * k * order
    seq = []

    def db(t, p):
        if t > order:
            if order % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, k):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return bytes(alphabet[i] for i in seq)


def random_stream(rng: random.Random, length: int, sigma: int) -> bytes:
    return bytes(rng.choice(b'abcdefghijklmnopqrstuvwxyz'[:sigma]) for _ in range(length))


CORPUS = [
    b'a' * 300,
    b'ab' * 150,
    fibonacci_word(300),
    de_bruijn(2, 7)[:300],
    de_bruijn(4, 4)[:300],
    b'abcabdab' * 30,
    b'aabaabaaab' * 25,
]


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def s1():
    index = SlidingIndex(8)
    index.feed(b'abcabdab')
    return index
