"""Exact-rational noncommutative formal series over finite weighted alphabets.

Words are packed byte strings (one byte per letter index) keyed in plain
dicts; coefficients are Python ints or ``fractions.Fraction`` and are never
floats.  Every binary operation truncates its result to the smaller of the
two operands' ``max_weight``.  All values are treated as immutable after
construction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

EMPTY = b""


class Alphabet:
    """Ordered list of letter names with positive integer weights."""

    __slots__ = ("letters", "weights", "_index")

    def __init__(self, letters, weights=None):
        letters = tuple(letters)
        if len(set(letters)) != len(letters):
            raise ValueError("letter names must be unique")
        if weights is None:
            weights = (1,) * len(letters)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(letters) or any(w < 1 for w in weights):
            raise ValueError("need one weight >= 1 per letter")
        self.letters = letters
        self.weights = weights
        self._index = {name: i for i, name in enumerate(letters)}

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (isinstance(other, Alphabet)
                and self.letters == other.letters
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.letters, self.weights))

    def __repr__(self):
        return "Alphabet(%r)" % (self.letters,)

    def index(self, name):
        return self._index[name]

    def word_weight(self, word):
        w = self.weights
        return sum(w[i] for i in word)

    def word_name(self, word, sep="."):
        return sep.join(self.letters[i] for i in word)


@lru_cache(maxsize=None)
def two_letter_alphabet():
    """The alphabet of the main series algebra on x0, x1."""
    return Alphabet(("x0", "x1"))


@lru_cache(maxsize=None)
def one_letter_alphabet():
    """One-variable power series live over the single letter s."""
    return Alphabet(("s",))


def _iadd(terms, word, coef):
    cur = terms.get(word)
    if cur is None:
        if coef:
            terms[word] = coef
    else:
        cur = cur + coef
        if cur:
            terms[word] = cur
        else:
            del terms[word]


class Series:
    """Sparse map word -> nonzero exact rational, truncated by total weight."""

    __slots__ = ("alphabet", "max_weight", "terms")

    def __init__(self, alphabet, max_weight, terms=None, _clean=True):
        self.alphabet = alphabet
        self.max_weight = int(max_weight)
        if self.max_weight < 0:
            raise ValueError("max_weight must be >= 0")
        if terms is None:
            self.terms = {}
        elif _clean:
            ww = alphabet.word_weight
            self.terms = {w: c for w, c in terms.items()
                          if c and ww(w) <= self.max_weight}
        else:
            self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet, max_weight):
        return cls(alphabet, max_weight, {}, _clean=False)

    @classmethod
    def unit(cls, alphabet, max_weight):
        return cls(alphabet, max_weight, {EMPTY: 1}, _clean=False)

    @classmethod
    def letter(cls, alphabet, name, max_weight):
        i = alphabet.index(name)
        return cls(alphabet, max_weight, {bytes((i,)): 1})

    @classmethod
    def word(cls, alphabet, letters, max_weight, coef=1):
        w = bytes(alphabet.index(n) for n in letters)
        return cls(alphabet, max_weight, {w: coef})

    # -- basic queries -----------------------------------------------------

    def coeff(self, word):
        return self.terms.get(word, 0)

    def coeff_names(self, names):
        word = bytes(self.alphabet.index(n) for n in names)
        return self.terms.get(word, 0)

    @property
    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get(EMPTY, 0)

    def weights(self):
        ww = self.alphabet.word_weight
        return sorted({ww(w) for w in self.terms})

    def homogeneous_part(self, weight):
        ww = self.alphabet.word_weight
        return Series(self.alphabet, self.max_weight,
                      {w: c for w, c in self.terms.items() if ww(w) == weight},
                      _clean=False)

    def truncated(self, max_weight):
        ww = self.alphabet.word_weight
        return Series(self.alphabet, max_weight,
                      {w: c for w, c in self.terms.items() if ww(w) <= max_weight},
                      _clean=False)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        return min(self.max_weight, other.max_weight)

    def __add__(self, other):
        mw = self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _iadd(terms, w, c)
        return Series(self.alphabet, mw, terms).truncated(mw)

    def __sub__(self, other):
        mw = self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _iadd(terms, w, -c)
        return Series(self.alphabet, mw, terms).truncated(mw)

    def __neg__(self):
        return Series(self.alphabet, self.max_weight,
                      {w: -c for w, c in self.terms.items()}, _clean=False)

    def scale(self, c):
        if not c:
            return Series.zero(self.alphabet, self.max_weight)
        return Series(self.alphabet, self.max_weight,
                      {w: c * v for w, v in self.terms.items()}, _clean=False)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return conc_mul(self, other)

    def __eq__(self, other):
        return (isinstance(other, Series)
                and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "<0>"
        names = self.alphabet.letters
        bits = []
        for w in sorted(self.terms, key=lambda w: (self.alphabet.word_weight(w), w)):
            c = self.terms[w]
            mono = ".".join(names[i] for i in w) if w else "1"
            bits.append("%s*%s" % (c, mono))
        return "<" + " + ".join(bits) + ">"


class TensorSeries:
    """Element of the two-fold tensor square: sparse map (word, word) -> rational."""

    __slots__ = ("alphabet", "max_weight", "terms")

    def __init__(self, alphabet, max_weight, terms=None, _clean=True):
        self.alphabet = alphabet
        self.max_weight = int(max_weight)
        if terms is None:
            self.terms = {}
        elif _clean:
            ww = alphabet.word_weight
            self.terms = {k: c for k, c in terms.items()
                          if c and ww(k[0]) + ww(k[1]) <= self.max_weight}
        else:
            self.terms = terms

    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, left, right):
        return self.terms.get((left, right), 0)

    def __add__(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _iadd(terms, k, c)
        return TensorSeries(self.alphabet, min(self.max_weight, other.max_weight),
                            terms, _clean=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if not c:
            return TensorSeries(self.alphabet, self.max_weight)
        return TensorSeries(self.alphabet, self.max_weight,
                            {k: c * v for k, v in self.terms.items()}, _clean=False)

    def __eq__(self, other):
        return (isinstance(other, TensorSeries)
                and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __repr__(self):
        return "TensorSeries(%d terms)" % len(self.terms)


# -- products and coproducts ----------------------------------------------

def conc_mul(f, g):
    """Concatenation product, truncated to the smaller max_weight."""
    mw = f._check(g)
    ww = f.alphabet.word_weight
    out = {}
    for wf, cf in f.terms.items():
        wwf = ww(wf)
        if wwf > mw:
            continue
        for wg, cg in g.terms.items():
            if wwf + ww(wg) <= mw:
                _iadd(out, wf + wg, cf * cg)
    return Series(f.alphabet, mw, out, _clean=False)


@lru_cache(maxsize=200000)
def _shuffle_words(u, v):
    """dict word -> multiplicity of riffle shuffles of the two words."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for w, m in _shuffle_words(u[1:], v).items():
        _iadd(out, u[:1] + w, m)
    for w, m in _shuffle_words(u, v[1:]).items():
        _iadd(out, v[:1] + w, m)
    return out


def shuffle_mul(f, g):
    """Shuffle product: sum over riffle shuffles of word pairs."""
    mw = f._check(g)
    ww = f.alphabet.word_weight
    out = {}
    for wf, cf in f.terms.items():
        wwf = ww(wf)
        if wwf > mw:
            continue
        for wg, cg in g.terms.items():
            if wwf + ww(wg) > mw:
                continue
            c = cf * cg
            for w, m in _shuffle_words(wf, wg).items():
                _iadd(out, w, m * c)
    return Series(f.alphabet, mw, out, _clean=False)


def shuffle_coproduct(f):
    """Deshuffle coproduct: every letter is primitive, extended multiplicatively.

    On a word it is the sum over subsets of letter positions of
    (subword, complementary subword).
    """
    out = {}
    for w, c in f.terms.items():
        n = len(w)
        for r in range(n + 1):
            for pos in itertools.combinations(range(n), r):
                left = bytes(w[i] for i in pos)
                rest = set(pos)
                right = bytes(w[i] for i in range(n) if i not in rest)
                _iadd(out, (left, right), c)
    return TensorSeries(f.alphabet, f.max_weight, out, _clean=False)


def antipode(f):
    """Standard antipode: S(w) = (-1)^len(w) * reverse(w), extended linearly."""
    out = {}
    for w, c in f.terms.items():
        _iadd(out, w[::-1], -c if len(w) % 2 else c)
    return Series(f.alphabet, f.max_weight, out, _clean=False)


_SWAP01 = bytes.maketrans(b"\x00\x01", b"\x01\x00")


def letter_swap(f):
    """Exchange the two letters of a two-letter alphabet in every word."""
    if len(f.alphabet) != 2:
        raise ValueError("letter_swap needs a two-letter alphabet")
    out = {}
    for w, c in f.terms.items():
        _iadd(out, w.translate(_SWAP01), c)
    return Series(f.alphabet, f.max_weight, out, _clean=False)


def fox_derivative(f, letter, side):
    """One-sided letter strip: side "right" takes the part starting with the
    letter and removes it (d^R), side "left" strips a trailing letter (d^L).
    The counit part is discarded."""
    i = f.alphabet.index(letter) if isinstance(letter, str) else int(letter)
    out = {}
    if side == "right":
        for w, c in f.terms.items():
            if w and w[0] == i:
                _iadd(out, w[1:], c)
    elif side == "left":
        for w, c in f.terms.items():
            if w and w[-1] == i:
                _iadd(out, w[:-1], c)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return Series(f.alphabet, f.max_weight, out, _clean=False)


def substitute(f, images):
    """Algebra-morphism extension of letter -> Series, truncated.

    ``images`` maps letter names of f's alphabet to Series over a common
    target alphabet.  Every image must have zero constant term, which keeps
    composition stable under truncation.
    """
    target = None
    by_index = {}
    for name, img in images.items():
        if img.constant_term():
            raise ValueError("substitution image of %s has a constant term" % name)
        if target is None:
            target = img.alphabet
        elif target != img.alphabet:
            raise ValueError("substitution images over different alphabets")
        by_index[f.alphabet.index(name)] = img
    if target is None:
        raise ValueError("no images given")
    mw = min([f.max_weight] + [img.max_weight for img in images.values()])
    ww = target.word_weight
    out = {}
    for w, c in f.terms.items():
        partial = {EMPTY: c}
        for i in w:
            img = by_index.get(i)
            if img is None:
                raise ValueError("no image for letter %r" % (f.alphabet.letters[i],))
            nxt = {}
            for pw, pc in partial.items():
                base = ww(pw)
                for iw, ic in img.terms.items():
                    if base + ww(iw) <= mw:
                        _iadd(nxt, pw + iw, pc * ic)
            partial = nxt
            if not partial:
                break
        for pw, pc in partial.items():
            _iadd(out, pw, pc)
    return Series(target, mw, out, _clean=False)


def abelianize(f):
    """Image in the commutative series ring: map exponent vector -> rational."""
    k = len(f.alphabet)
    out = {}
    for w, c in f.terms.items():
        deg = [0] * k
        for i in w:
            deg[i] += 1
        key = tuple(deg)
        cur = out.get(key, 0) + c
        if cur:
            out[key] = cur
        else:
            del out[key]
    return out


# -- cyclic words ----------------------------------------------------------

def _canonical_rotation(w):
    if len(w) < 2:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class CyclicSeries:
    """Series with words identified up to rotation; the stored representative
    is the lexicographically least rotation."""

    __slots__ = ("alphabet", "max_weight", "terms")

    def __init__(self, alphabet, max_weight, terms=None, _clean=True):
        self.alphabet = alphabet
        self.max_weight = int(max_weight)
        if terms is None:
            self.terms = {}
        elif _clean:
            ww = alphabet.word_weight
            out = {}
            for w, c in terms.items():
                if c and ww(w) <= self.max_weight:
                    _iadd(out, _canonical_rotation(w), c)
            self.terms = out
        else:
            self.terms = terms

    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, word):
        return self.terms.get(_canonical_rotation(word), 0)

    def __add__(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _iadd(terms, w, c)
        return CyclicSeries(self.alphabet, min(self.max_weight, other.max_weight),
                            terms, _clean=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if not c:
            return CyclicSeries(self.alphabet, self.max_weight)
        return CyclicSeries(self.alphabet, self.max_weight,
                            {w: c * v for w, v in self.terms.items()}, _clean=False)

    def __eq__(self, other):
        return (isinstance(other, CyclicSeries)
                and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __repr__(self):
        names = self.alphabet.letters
        bits = ["%s*|%s|" % (c, ".".join(names[i] for i in w))
                for w, c in sorted(self.terms.items())]
        return "<" + (" + ".join(bits) or "0") + ">"


def cyclic_project(f):
    """Projection A -> |A| = A/[A,A]."""
    return CyclicSeries(f.alphabet, f.max_weight, f.terms)


def symmetrize(c):
    """N: |s_1...s_k| -> sum of all k rotations, extended linearly."""
    out = {}
    for w, coef in c.terms.items():
        if not w:
            _iadd(out, w, coef)
            continue
        for i in range(len(w)):
            _iadd(out, w[i:] + w[:i], coef)
    return Series(c.alphabet, c.max_weight, out, _clean=False)


# -- JSON ------------------------------------------------------------------

def _coef_num_den(c):
    if isinstance(c, Fraction):
        return str(c.numerator), str(c.denominator)
    return str(c), "1"


def series_to_json(f):
    """Schema: {"alphabet": [...], "maxWeight": N,
    "terms": [{"word": "001", "num": "1", "den": "3"}]} with terms sorted by
    (weight, word).  Letter indices are single decimal digits."""
    if len(f.alphabet) > 10:
        raise ValueError("JSON word encoding supports at most 10 letters")
    ww = f.alphabet.word_weight
    terms = []
    for w in sorted(f.terms, key=lambda w: (ww(w), w)):
        num, den = _coef_num_den(f.terms[w])
        terms.append({"word": "".join(str(i) for i in w), "num": num, "den": den})
    out = {"alphabet": list(f.alphabet.letters),
           "maxWeight": f.max_weight,
           "terms": terms}
    if any(w != 1 for w in f.alphabet.weights):
        out["weights"] = list(f.alphabet.weights)
    return out


def series_from_json(data):
    weights = data.get("weights")
    alphabet = Alphabet(tuple(data["alphabet"]),
                        tuple(weights) if weights else None)
    terms = {}
    for t in data["terms"]:
        w = bytes(int(ch) for ch in t["word"])
        c = Fraction(int(t["num"]), int(t.get("den", "1")))
        if c.denominator == 1:
            c = int(c)
        if c:
            terms[w] = c
    return Series(alphabet, int(data["maxWeight"]), terms)
