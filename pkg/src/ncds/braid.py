"""The sphere braid Lie algebra on five strands, as free-algebra
representatives over the canonical chords, together with the pentagon defect,
strand projections, the dihedral action, and the Fox-pairing cocycle algebra.

Elements of the enveloping algebra are carried as free associative
polynomials over the chord basis G = (x12, x23, x34, x45, x24) with no
quotient normal form; every scalar extraction goes through bar-word pairing
or the pi maps, which are well defined on the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .series import (Alphabet, Series, substitute, two_letter_alphabet,
                     _iadd)

CHORD_NAMES = ("12", "23", "34", "45", "24")
PI23_NAMES = ("12", "23", "24", "34", "13")
PI34_NAMES = ("14", "24", "13", "23", "34")


@lru_cache(maxsize=None)
def chord_alphabet():
    return Alphabet(CHORD_NAMES)


@lru_cache(maxsize=None)
def pi_alphabet(flavor):
    if flavor == "23":
        return Alphabet(PI23_NAMES)
    if flavor == "34":
        return Alphabet(PI34_NAMES)
    raise ValueError("flavor must be '23' or '34'")


def _chord_name(i, j):
    if i == j:
        raise ValueError("x_ii is zero")
    i, j = min(i, j), max(i, j)
    return "%d%d" % (i, j)


# x13, x14, x15, x25, x35 solved from the five strand relations
# sum_j x_ij = 0; the members of G map to themselves.
_REWRITE = {
    "12": {"12": 1}, "23": {"23": 1}, "34": {"34": 1},
    "45": {"45": 1}, "24": {"24": 1},
    "13": {"12": -1, "23": -1, "45": 1},
    "14": {"24": -1, "34": -1, "45": -1},
    "15": {"23": 1, "24": 1, "34": 1},
    "25": {"12": -1, "23": -1, "24": -1},
    "35": {"12": 1, "34": -1, "45": -1},
}


def rewrite_chord(i, j):
    """x_ij as a linear combination over G, per the strand relations."""
    return dict(_REWRITE[_chord_name(i, j)])


def chord_series(i, j, max_weight=1):
    g = chord_alphabet()
    terms = {bytes((g.index(name),)): c for name, c in rewrite_chord(i, j).items()}
    return Series(g, max_weight, terms, _clean=False)


@lru_cache(maxsize=None)
def express_chord(i, j, base_names):
    """Coordinates of x_ij over an alternative basis of five chords."""
    g = chord_alphabet()
    cols = []
    for name in base_names:
        vec = [0] * 5
        for gname, c in _REWRITE[name].items():
            vec[g.index(gname)] = c
        cols.append(vec)
    target = [0] * 5
    for gname, c in _REWRITE[_chord_name(i, j)].items():
        target[g.index(gname)] = c
    # solve the 5x5 system by Gaussian elimination over Fractions
    m = [[Fraction(cols[c][r]) for c in range(5)] + [Fraction(target[r])]
         for r in range(5)]
    for col in range(5):
        piv = next(r for r in range(col, 5) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        m[col] = [v / m[col][col] for v in m[col]]
        for r in range(5):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    out = {}
    for c in range(5):
        v = m[c][5]
        if v:
            out[base_names[c]] = int(v) if v.denominator == 1 else v
    return out


def chord_series_in(i, j, alphabet, max_weight=1):
    names = alphabet.letters
    coords = express_chord(i, j, names)
    terms = {bytes((alphabet.index(name),)): c for name, c in coords.items()}
    return Series(alphabet, max_weight, terms, _clean=False)


def insert_triple(psi, i, j, k):
    """psi(x_ij, x_jk) as a chord-basis element."""
    if len({i, j, k}) != 3:
        raise ValueError("strand indices must be distinct")
    mw = psi.max_weight
    return substitute(psi, {"x0": chord_series(i, j, mw),
                            "x1": chord_series(j, k, mw)})


def defect(psi, form="alpha"):
    """Signed five-term pentagon defect of a Lie series.

    form "alpha" is psi_451 + psi_123 - psi_432 - psi_215 - psi_543;
    form "alpha_hat" is the change-of-variable defect built from the
    second coface family, eta(x13,x23) + eta(x14,x24+x34) + eta(x24,x34)
    - eta(x14+x24,x34) - eta(x13+x14,x23+x24), rewritten over G.
    """
    from .lie import is_lie_series
    if not is_lie_series(psi):
        raise ValueError("the pentagon defect is defined for Lie series")
    mw = psi.max_weight
    if form == "alpha":
        out = insert_triple(psi, 4, 5, 1) + insert_triple(psi, 1, 2, 3)
        out = out - insert_triple(psi, 4, 3, 2) - insert_triple(psi, 2, 1, 5)
        return out - insert_triple(psi, 5, 4, 3)
    if form == "alpha_hat":
        c = lambda i, j: chord_series(i, j, mw)
        def sub(u, v):
            return substitute(psi, {"x0": u, "x1": v})
        out = sub(c(1, 3), c(2, 3)) + sub(c(1, 4), c(2, 4) + c(3, 4))
        out = out + sub(c(2, 4), c(3, 4)) - sub(c(1, 4) + c(2, 4), c(3, 4))
        return out - sub(c(1, 3) + c(1, 4), c(2, 3) + c(2, 4))
    raise ValueError("unknown defect form %r" % (form,))


_COFACE_23 = {
    "1,2,3": ((("12",),), (("23",),)),
    "2,3,4": ((("23",),), (("34",),)),
    "12,3,4": ((("13",), ("23",)), (("34",),)),
    "1,23,4": ((("12",), ("13",)), (("24",), ("34",))),
    "1,2,34": ((("12",),), (("23",), ("24",))),
}

_COFACE_34 = {
    "1,2,34": ((("13",), ("14",)), (("23",), ("24",))),
    "2,3,4": ((("24",),), (("34",),)),
    "12,3,4": ((("14",), ("24",)), (("34",),)),
    "1,2,3": ((("13",),), (("23",),)),
    "1,23,4": ((("14",),), (("24",), ("34",))),
}


def coface_images(name, flavor):
    """Letter names of the images of (x0, x1) under a coface map."""
    table = _COFACE_23 if flavor == "23" else _COFACE_34
    if name not in table:
        raise ValueError("unknown coface %r" % (name,))
    img0, img1 = table[name]
    return tuple(n for (n,) in img0), tuple(n for (n,) in img1)


def coface(psi, name, flavor="23"):
    """Coface substitution, kept over the five-letter pi presentation."""
    alphabet = pi_alphabet(flavor)
    img0_names, img1_names = coface_images(name, flavor)
    mw = psi.max_weight

    def combo(names):
        out = Series.zero(alphabet, mw)
        for n in names:
            out = out + Series.letter(alphabet, n, mw)
        return out

    return substitute(psi, {"x0": combo(img0_names), "x1": combo(img1_names)})


def permute_strands(e, perm):
    """Relabel strands by a permutation of {1..5} and rewrite into G."""
    g = chord_alphabet()
    mw = e.max_weight
    images = {}
    for name in g.letters:
        i, j = int(name[0]), int(name[1])
        images[name] = chord_series(perm[i], perm[j], mw)
    return substitute(e, images)


SIGMA = {1: 2, 2: 3, 3: 4, 4: 5, 5: 1}
TAU = {1: 5, 2: 4, 3: 3, 4: 2, 5: 1}


def _perm_power(perm, n):
    out = {i: i for i in perm}
    for _ in range(n % 5):
        out = {i: perm[out[i]] for i in out}
    return out


# pr_2 on the chord basis; x_infinity = -x0-x1 expanded
def _pr2_images(max_weight):
    x = two_letter_alphabet()
    x0 = Series.letter(x, "x0", max_weight)
    x1 = Series.letter(x, "x1", max_weight)
    zero = Series.zero(x, max_weight)
    return {"12": zero, "23": zero, "24": zero, "34": x1, "45": -1 * x0 - x1}


def project_strand(e, i):
    """Strand-elimination morphism pr_i onto the two-letter algebra.

    pr_2 is the explicit table x12,x23,x24 -> 0, x34 -> x1, x45 -> -x0-x1;
    the other projections conjugate pr_2 by the cyclic strand rotation.  Both
    maps are algebra morphisms, so they are composed once on the letters.
    """
    if i not in (1, 2, 3, 4, 5):
        raise ValueError("strand index out of range")
    m = {2: 0, 3: 1, 4: 2, 5: 3, 1: 4}[i]
    pr2 = _pr2_images(e.max_weight)
    if not m:
        return substitute(e, pr2)
    perm = _perm_power(SIGMA, 5 - m)
    x = two_letter_alphabet()
    images = {}
    for name in chord_alphabet().letters:
        a, b = int(name[0]), int(name[1])
        out = Series.zero(x, e.max_weight)
        for gname, c in rewrite_chord(perm[a], perm[b]).items():
            out = out + pr2[gname].scale(c)
        images[name] = out
    return substitute(e, images)


# -- Fox pairing and the two-cocycle algebra --------------------------------

def rho_kks(a, b):
    """The diagonal Fox pairing: left Fox derivative in the first slot and
    right Fox derivative in the second, with rho(x_i, x_j) = delta_ij x_i.

    On words it contracts the last letter of a with the first letter of b:
    rho(u, v) = [last(u) == first(v)] u . tail(v).
    """
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    mw = min(a.max_weight, b.max_weight)
    ww = a.alphabet.word_weight
    out = {}
    for u, cu in a.terms.items():
        if not u:
            continue
        for v, cv in b.terms.items():
            if v and u[-1] == v[0]:
                w = u + v[1:]
                if ww(w) <= mw:
                    _iadd(out, w, cu * cv)
    return Series(a.alphabet, mw, out, _clean=False)


def _rho_words(u, v):
    if not u or not v or u[-1] != v[0]:
        return None
    return u + v[1:]


@dataclass
class CocycleElement:
    """Element of A (x) A + M with the Fox-pairing twisted product; the
    module M is A with the bimodule rule (f (x) g) a (h (x) k) =
    eps(f) eps(k) g a h."""

    max_weight: int
    tensor: dict = field(default_factory=dict)   # (word, word) -> coef
    module: dict = field(default_factory=dict)   # word -> coef

    @property
    def is_zero(self):
        return not self.tensor and not self.module

    def __add__(self, other):
        t = dict(self.tensor)
        for k, c in other.tensor.items():
            _iadd(t, k, c)
        m = dict(self.module)
        for k, c in other.module.items():
            _iadd(m, k, c)
        return CocycleElement(min(self.max_weight, other.max_weight), t, m)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if not c:
            return CocycleElement(self.max_weight)
        return CocycleElement(self.max_weight,
                              {k: c * v for k, v in self.tensor.items()},
                              {k: c * v for k, v in self.module.items()})

    def __eq__(self, other):
        return (isinstance(other, CocycleElement)
                and self.tensor == other.tensor and self.module == other.module)

    def tensor_series(self, alphabet=None):
        return dict(self.tensor)

    def module_series(self, alphabet=None):
        x = alphabet or two_letter_alphabet()
        return Series(x, self.max_weight, dict(self.module))


def cocycle_mul(u, v):
    """(a1 (x) b1 + c1)(a2 (x) b2 + c2) = a1 a2 (x) b1 b2
    + eps(a1) b1 c2 + c1 a2 eps(b2) + eps(a1) rho(b1, a2) eps(b2)."""
    if u.max_weight != v.max_weight:
        raise ValueError("truncation mismatch")
    mw = u.max_weight
    tensor = {}
    module = {}
    for (a1, b1), cu in u.tensor.items():
        for (a2, b2), cv in v.tensor.items():
            if len(a1) + len(a2) + len(b1) + len(b2) <= mw:
                _iadd(tensor, (a1 + a2, b1 + b2), cu * cv)
            if not a1 and not b2:
                w = _rho_words(b1, a2)
                if w is not None and len(w) + 1 <= mw:
                    _iadd(module, w, cu * cv)
        if not a1:
            for m2, cv in v.module.items():
                if len(b1) + len(m2) + 1 <= mw:
                    _iadd(module, b1 + m2, cu * cv)
    for m1, cu in u.module.items():
        for (a2, b2), cv in v.tensor.items():
            if not b2 and len(m1) + len(a2) + 1 <= mw:
                _iadd(module, m1 + a2, cu * cv)
    return CocycleElement(mw, tensor, module)


def _letter_images(flavor, max_weight):
    # pi^{2,3}: x12 -> x0 (x) 1, x24 -> x1 (x) 1, x13 -> 1 (x) x0,
    #           x34 -> 1 (x) x1, x23 -> -e
    # pi^{3,4}: x14, x24, x13, x23 likewise, x34 -> -e
    if flavor == "23":
        tensor_letters = {"12": (b"\x00", b""), "24": (b"\x01", b""),
                          "13": (b"", b"\x00"), "34": (b"", b"\x01")}
        module_letter = "23"
    else:
        tensor_letters = {"14": (b"\x00", b""), "24": (b"\x01", b""),
                          "13": (b"", b"\x00"), "23": (b"", b"\x01")}
        module_letter = "34"
    images = {}
    for name, key in tensor_letters.items():
        images[name] = CocycleElement(max_weight, {key: 1}, {})
    images[module_letter] = CocycleElement(max_weight, {}, {b"": -1})
    return images


def pi_decompose(e, flavor="23"):
    """Image of a five-letter presentation element under pi^{2,3} or
    pi^{3,4}; returns the CocycleElement (tensor part, module part)."""
    alphabet = pi_alphabet(flavor)
    if e.alphabet != alphabet:
        raise ValueError("element is not over the %s-presentation letters" % flavor)
    images = _letter_images(flavor, e.max_weight)
    by_index = [images[name] for name in alphabet.letters]
    out = CocycleElement(e.max_weight)
    one = CocycleElement(e.max_weight, {(b"", b""): 1}, {})
    for w, c in e.terms.items():
        acc = one
        for i in w:
            acc = cocycle_mul(acc, by_index[i])
        out = out + acc.scale(c)
    return out


def pi_coface(psi, name, flavor="23"):
    """pi o coface without materializing the intermediate substitution: the
    generators map straight to sums of cocycle letter images."""
    images = _letter_images(flavor, psi.max_weight)
    img0_names, img1_names = coface_images(name, flavor)
    zero = CocycleElement(psi.max_weight)
    img = [zero, zero]
    for n in img0_names:
        img[0] = img[0] + images[n]
    for n in img1_names:
        img[1] = img[1] + images[n]
    out = CocycleElement(psi.max_weight)
    one = CocycleElement(psi.max_weight, {(b"", b""): 1}, {})
    for w, c in psi.terms.items():
        acc = one
        for i in w:
            acc = cocycle_mul(acc, img[i])
        out = out + acc.scale(c)
    return out


def cyclic_defect_pi23(psi):
    """The cyclic pentagon defect expressed over the pi^{2,3} presentation
    letters (x45 and x15 are linear in them), then pushed through pi^{2,3}."""
    alphabet = pi_alphabet("23")
    mw = psi.max_weight
    c = lambda i, j: chord_series_in(i, j, alphabet, mw)
    terms = [
        substitute(psi, {"x0": c(1, 2), "x1": c(2, 3)}),
        substitute(psi, {"x0": c(2, 3), "x1": c(3, 4)}),
        substitute(psi, {"x0": c(3, 4), "x1": c(4, 5)}),
        substitute(psi, {"x0": c(4, 5), "x1": c(5, 1)}),
        substitute(psi, {"x0": c(5, 1), "x1": c(1, 2)}),
    ]
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return pi_decompose(total, "23")


# -- defining quadratic relations -------------------------------------------

@lru_cache(maxsize=None)
def p5_relations(max_weight=2):
    """The fifteen commuting-disjoint-chord relations rewritten over G."""
    out = []
    for (i, j), (k, l) in combinations(combinations(range(1, 6), 2), 2):
        if {i, j} & {k, l}:
            continue
        a = chord_series(i, j, max_weight)
        b = chord_series(k, l, max_weight)
        out.append((("%d%d" % (i, j), "%d%d" % (k, l)), a * b - b * a))
    return tuple(out)


def r23_relations(max_weight=2):
    """The R^{2,3} presentation relations as elements of the free algebra on
    the pi^{2,3} letters (each must map to zero under pi^{2,3}).

    [x34,x24] = [x24,x23] here, with no sign: projecting out strand 5 sends
    both sides to -[x,y] in the four-strand algebra, and the sign-flipped
    variant is killed by neither that projection nor the pi map.
    """
    alphabet = pi_alphabet("23")
    L = lambda n: Series.letter(alphabet, n, max_weight)
    br = lambda a, b: L(a) * L(b) - L(b) * L(a)
    return (
        br("13", "23") - br("23", "12"),
        br("34", "23") - br("23", "24"),
        br("13", "24"),
        br("12", "13") + br("12", "23"),
        br("34", "24") - br("24", "23"),
        br("12", "34"),
    )


@lru_cache(maxsize=None)
def _relation_ideal_rows(weight):
    g = chord_alphabet()
    rows = []
    by_len = {0: [b""]}
    for n in range(1, weight - 1):
        by_len[n] = [w + bytes((i,)) for w in by_len[n - 1] for i in range(5)]
    for _, rel in p5_relations(weight):
        for i in range(weight - 1):
            j = weight - 2 - i
            for u in by_len[i]:
                for v in by_len[j]:
                    left = Series(g, weight, {u: 1}, _clean=False)
                    right = Series(g, weight, {v: 1}, _clean=False)
                    rows.append(left * rel * right)
    return tuple(rows)


def in_relation_ideal(f, max_check_weight=5):
    """Whether a chord-basis element lies in the two-sided ideal generated by
    the disjoint-chord commutators, i.e. represents zero in the enveloping
    algebra.  Exponential in the weight; intended for small regression checks.
    """
    from .lie import series_span_contains
    ww = f.alphabet.word_weight
    for w in sorted({ww(word) for word in f.terms}):
        if w > max_check_weight:
            raise ValueError("ideal membership check capped at weight %d"
                             % max_check_weight)
        if w < 2:
            return False
        part = f.homogeneous_part(w)
        if not series_span_contains(list(_relation_ideal_rows(w)), part):
            return False
    return True
