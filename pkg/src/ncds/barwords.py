"""Formal bar-construction words for one- and two-variable multiple
polylogarithms, their pairing with braid elements, and Chen integrability.

A bar word is a homogeneous Series over the five 1-forms of the moduli space
of five points, identified letterwise with the chord alphabet
(w45, w34, w24, w12, w23 <-> x45, x34, x24, x12, x23); one-variable words in
the single variable z live over the two-letter alphabet instead.  The pairing
reads leftmost bar letter against leftmost word letter.

The two-variable words are the unique solutions of the dualized differential
recursions; the y,x order is the letter swap w12 <-> w45, w23 <-> w34 of the
x,y order.
"""

from __future__ import annotations

from functools import lru_cache

from .braid import chord_alphabet, p5_relations
from .series import Series, two_letter_alphabet, _iadd

# 1-form dictionary:  dx/x = w12,  dx/(1-x) = -w23,  dy/y = w45,
# dy/(1-y) = -w34,  d(xy)/(1-xy) = -w24,  d(xy)/xy = w12 + w45.


def _g():
    return chord_alphabet()


def _letter(name):
    return _g().index(name)


def _prepend(combo, terms):
    """combo: iterable of (letter index, coef); prepends one bar slot."""
    out = {}
    for li, lc in combo:
        head = bytes((li,))
        for w, c in terms.items():
            _iadd(out, head + w, lc * c)
    return out


_SINGLE_PAIRS = {
    "x": ("12", "23"),
    "y": ("45", "34"),
}


def bar_single(index, variable):
    """l_a in one variable: the pattern (-1)^k [A^(a_k - 1)|B|...|A^(a_1-1)|B]
    with (A, B) the variable's form pair; variable "xy" uses the two-letter
    combination A = w12 + w45, B = w24, and "z" the two-letter alphabet."""
    if not index:
        raise ValueError("empty index")
    k = len(index)
    if variable == "z":
        alphabet = two_letter_alphabet()
        a_combo = ((0, 1),)
        b_combo = ((1, 1),)
    elif variable == "xy":
        alphabet = _g()
        a_combo = ((_letter("12"), 1), (_letter("45"), 1))
        b_combo = ((_letter("24"), 1),)
    elif variable in _SINGLE_PAIRS:
        alphabet = _g()
        a_name, b_name = _SINGLE_PAIRS[variable]
        a_combo = ((_letter(a_name), 1),)
        b_combo = ((_letter(b_name), 1),)
    else:
        raise ValueError("unknown variable %r" % (variable,))
    terms = {b"": 1 if k % 2 == 0 else -1}
    for a_i in index:  # a_1 block built first, ends up rightmost
        terms = _prepend(b_combo, terms)
        for _ in range(a_i - 1):
            terms = _prepend(a_combo, terms)
    return Series(alphabet, sum(index), terms, _clean=False)


def _omega_swap(f):
    """Swap the roles of the two variables: w12 <-> w45, w23 <-> w34."""
    g = _g()
    table = bytes.maketrans(
        bytes((g.index("12"), g.index("45"), g.index("23"), g.index("34"))),
        bytes((g.index("45"), g.index("12"), g.index("34"), g.index("23"))))
    out = {w.translate(table): c for w, c in f.terms.items()}
    return Series(g, f.max_weight, out, _clean=False)


@lru_cache(maxsize=None)
def _bar_xy(a, b):
    """l^{x,y}_{a,b}: dualized differential recursion, both d/dx and d/dy
    branches prepend one 1-form on the left."""
    g = _g()
    w12, w23, w34, w45 = (_letter("12"), _letter("23"), _letter("34"),
                          _letter("45"))
    out = {}

    def acc(combo, sub):
        for w, c in _prepend(combo, sub.terms).items():
            _iadd(out, w, c)

    # d/dy branch acts on b
    if b[-1] > 1:
        acc(((w45, 1),), _bar_xy(a, b[:-1] + (b[-1] - 1,)))
    elif len(b) > 1:
        acc(((w34, -1),), _bar_xy(a, b[:-1]))
    else:
        acc(((w34, -1),), bar_single(a, "xy"))
    # d/dx branch acts on a
    if a[-1] > 1:
        acc(((w12, 1),), _bar_xy(a[:-1] + (a[-1] - 1,), b))
    else:
        if len(a) > 1:
            shortened = _bar_xy(a[:-1], b)
            merged = (_bar_xy(a[:-1] + (b[0],), b[1:]) if len(b) > 1
                      else bar_single(a[:-1] + (b[0],), "xy"))
        else:
            shortened = bar_single(b, "y")
            merged = (_bar_xy((b[0],), b[1:]) if len(b) > 1
                      else bar_single((b[0],), "xy"))
        acc(((w23, -1),), shortened)
        acc(((w12, -1), (w23, 1)), merged)
    return Series(g, sum(a) + sum(b), out, _clean=False)


def bar_double(a, b, order=("x", "y")):
    """l^{x,y}_{a,b} or l^{y,x}_{a,b} for nonempty indices a, b."""
    a, b = tuple(a), tuple(b)
    if not a or not b:
        raise ValueError("indices must be nonempty")
    word = _bar_xy(a, b)
    if tuple(order) == ("x", "y"):
        return word
    if tuple(order) == ("y", "x"):
        return _omega_swap(word)
    raise ValueError("order must be ('x','y') or ('y','x')")


def bar_cache_clear():
    _bar_xy.cache_clear()


def pair(bar, elt):
    """<[w_{j_m}|...|w_{j_1}], word> = coefficient of x_{j_m}...x_{j_1},
    leftmost to leftmost, extended bilinearly."""
    if bar.alphabet != elt.alphabet:
        raise ValueError("alphabet mismatch")
    if len(bar.terms) > len(elt.terms):
        bar, elt = elt, bar
    total = 0
    other = elt.terms
    for w, c in bar.terms.items():
        oc = other.get(w)
        if oc:
            total += c * oc
    return total


def restrict_to_letters(bar, names):
    """Sub-sum of bar tensors supported on the given 1-form letters."""
    keep = {bar.alphabet.index(n) for n in names}
    out = {w: c for w, c in bar.terms.items() if set(w) <= keep}
    return Series(bar.alphabet, bar.max_weight, out, _clean=False)


@lru_cache(maxsize=8)
def _relation_slot_map(mw=2):
    """2-letter word -> ((relation idx, coef), ...) over the chord alphabet."""
    table = {}
    for ridx, (_pair, rel) in enumerate(p5_relations(mw)):
        for w, c in rel.terms.items():
            table.setdefault(w, []).append((ridx, c))
    return {w: tuple(v) for w, v in table.items()}


def integrable(bar):
    """Chen integrability via descent: the bar word must annihilate
    u . r . v for every defining quadratic relation r of the braid Lie
    algebra and all monomial flanks u, v.  Organized as a slotwise
    contraction so no flank enumeration is needed.

    One-variable z words live over the free two-letter algebra, where there
    are no relations.
    """
    if bar.alphabet == two_letter_alphabet():
        return True
    slot_map = _relation_slot_map()
    weights = {len(w) for w in bar.terms}
    for m in weights:
        for p in range(m - 1):
            acc = {}
            for w, c in bar.terms.items():
                if len(w) != m:
                    continue
                hits = slot_map.get(w[p:p + 2])
                if not hits:
                    continue
                for ridx, rc in hits:
                    _iadd(acc, (w[:p], ridx, w[p + 2:]), c * rc)
            if acc:
                return False
    return True
