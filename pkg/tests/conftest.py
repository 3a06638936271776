import random

import pytest

from ncds.series import Series, two_letter_alphabet
from ncds.lie import lyndon_basis
from ncds.series import letter_swap

X = two_letter_alphabet()


def x_series(terms, max_weight):
    """Build a Series over (x0, x1) from {"0100...": coef} digit strings."""
    data = {bytes(int(ch) for ch in w): c for w, c in terms.items()}
    return Series(X, max_weight, data)


def random_lie(weight, rng, skew=False, span=3, max_weight=None):
    """Random integer combination of Lyndon bracketings; optionally the skew
    projection (doubled to stay integral)."""
    mw = weight if max_weight is None else max_weight
    out = Series.zero(X, mw)
    for _, _, elt in lyndon_basis(weight, mw).elements:
        c = rng.randint(-span, span)
        if c:
            out = out + elt.scale(c)
    if skew:
        out = out - letter_swap(out)
    return out


@pytest.fixture
def rng():
    return random.Random(20240901)
