"""Kashiwara-Vergne layer: tangential and special derivations, divergence,
the krv equations, the potential and its noncommutative krv2 equation, the
necklace Lie bialgebra on cyclic words, and the krv_2 solution spaces.

A tangential derivation is stored as the pair (a1, a2) with u(x0) = [x0, a1]
and u(x1) = [x1, a2]; the canonical pair strips the linear terms k1 x0 and
k2 x1, which do not move the derivation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .coaction import change_of_variable, reduced_coaction
from .lie import (SolutionSpace, assemble_rows, is_lie_series, lie_bracket,
                  lyndon_basis, series_to_json)
from .linalg import kernel_basis
from .series import (CyclicSeries, Series, TensorSeries, cyclic_project,
                     fox_derivative, substitute, symmetrize,
                     two_letter_alphabet, _canonical_rotation, _iadd)


def _strip_linear(a, letter_index):
    w = bytes((letter_index,))
    if w in a.terms:
        terms = dict(a.terms)
        del terms[w]
        return Series(a.alphabet, a.max_weight, terms, _clean=False)
    return a


class TangentialDerivation:
    __slots__ = ("a1", "a2")

    def __init__(self, a1, a2, normalize=True):
        if a1.alphabet != a2.alphabet:
            raise ValueError("alphabet mismatch")
        if normalize:
            a1 = _strip_linear(a1, 0)
            a2 = _strip_linear(a2, 1)
        self.a1 = a1
        self.a2 = a2

    @property
    def is_zero(self):
        return self.a1.is_zero and self.a2.is_zero

    def normalized(self):
        return TangentialDerivation(self.a1, self.a2, normalize=True)

    def __add__(self, other):
        return TangentialDerivation(self.a1 + other.a1, self.a2 + other.a2,
                                    normalize=False)

    def __sub__(self, other):
        return TangentialDerivation(self.a1 - other.a1, self.a2 - other.a2,
                                    normalize=False)

    def scale(self, c):
        return TangentialDerivation(self.a1.scale(c), self.a2.scale(c),
                                    normalize=False)

    def __eq__(self, other):
        return (isinstance(other, TangentialDerivation)
                and self.a1 == other.a1 and self.a2 == other.a2)

    def __repr__(self):
        return "TangentialDerivation(%r, %r)" % (self.a1, self.a2)

    def coordinate_items(self):
        for w, c in self.a1.terms.items():
            yield (0, w), c
        for w, c in self.a2.terms.items():
            yield (1, w), c

    def to_json(self):
        return {"a1": series_to_json(self.a1), "a2": series_to_json(self.a2)}

    def generator_images(self):
        """(u(x0), u(x1)); equality of these is equality of derivations."""
        x = self.a1.alphabet
        mw = max(self.a1.max_weight, self.a2.max_weight) + 1
        x0 = Series.letter(x, "x0", mw)
        x1 = Series.letter(x, "x1", mw)
        a1 = Series(x, mw, self.a1.terms, _clean=False)
        a2 = Series(x, mw, self.a2.terms, _clean=False)
        return (x0 * a1 - a1 * x0, x1 * a2 - a2 * x1)


def tder_apply(u, f):
    """Leibniz extension over words of u(x0) = [x0, a1], u(x1) = [x1, a2]."""
    img = u.generator_images()
    mw = f.max_weight
    x = f.alphabet
    out = Series.zero(x, mw)
    for w, c in f.terms.items():
        for i, li in enumerate(w):
            pre = Series(x, mw, {w[:i]: c}, _clean=False)
            post = Series(x, mw, {w[i + 1:]: 1}, _clean=False)
            out = out + pre * img[li].truncated(mw) * post
    return out


def tder_bracket(u, v):
    """Commutator in tDer: ( u(b1) - v(a1) + [a1,b1], same on the second
    slot ), renormalized."""
    c1 = tder_apply(u, v.a1) - tder_apply(v, u.a1) + lie_bracket(u.a1, v.a1)
    c2 = tder_apply(u, v.a2) - tder_apply(v, u.a2) + lie_bracket(u.a2, v.a2)
    return TangentialDerivation(c1, c2)


def is_sder(u):
    """Special: u(x0 + x1) = 0."""
    img0, img1 = u.generator_images()
    return (img0 + img1).is_zero


def same_derivation(u, v):
    a = u.generator_images()
    b = v.generator_images()
    return (a[0] - b[0]).is_zero and (a[1] - b[1]).is_zero


def divergence(u):
    """u = (a0, a1) -> |x0 d^R_0(a0) + x1 d^R_1(a1)| on the canonical pair."""
    x = u.a1.alphabet
    mw = max(u.a1.max_weight, u.a2.max_weight)
    x0 = Series.letter(x, "x0", mw)
    x1 = Series.letter(x, "x1", mw)
    a1 = Series(x, mw, u.a1.terms, _clean=False)
    a2 = Series(x, mw, u.a2.terms, _clean=False)
    body = x0 * fox_derivative(a1, "x0", "right") \
        + x1 * fox_derivative(a2, "x1", "right")
    return cyclic_project(body)


def krv1_residual(psi):
    """[x1, psi(-x0-x1, x1)] + [x0, psi(-x0-x1, x0)]."""
    if not is_lie_series(psi):
        raise ValueError("krv1 residual is defined for Lie series")
    return _krv1_linear(psi)


def _krv1_linear(psi):
    x = psi.alphabet
    mw = psi.max_weight + 1  # the residual lives one weight up
    x0 = Series.letter(x, "x0", mw)
    x1 = Series.letter(x, "x1", mw)
    lifted = Series(x, mw, psi.terms, _clean=False)
    minus = -1 * x0 - x1
    at_x1 = substitute(lifted, {"x0": minus, "x1": x1})
    at_x0 = substitute(lifted, {"x0": minus, "x1": x0})
    return lie_bracket(x1, at_x1) + lie_bracket(x0, at_x0)


def tangential_pair_of(psi):
    """(psi(-x0-x1, x0), psi(-x0-x1, x1)), the canonical pair attached to a
    Lie series; krv1_residual(psi) = 0 iff this pair is special."""
    x = psi.alphabet
    mw = psi.max_weight
    x0 = Series.letter(x, "x0", mw)
    x1 = Series.letter(x, "x1", mw)
    minus = -1 * x0 - x1
    return TangentialDerivation(substitute(psi, {"x0": minus, "x1": x0}),
                                substitute(psi, {"x0": minus, "x1": x1}))


def potential(psi):
    """h_psi = x0 psi(-x0-x1, x0) + x1 psi(-x0-x1, x1), one weight up."""
    if not is_lie_series(psi):
        raise ValueError("the potential is defined for Lie series")
    return _potential_linear(psi)


def _potential_linear(psi):
    x = psi.alphabet
    mw = psi.max_weight + 1
    x0 = Series.letter(x, "x0", mw)
    x1 = Series.letter(x, "x1", mw)
    lifted = Series(x, mw, psi.terms, _clean=False)
    minus = -1 * x0 - x1
    return x0 * substitute(lifted, {"x0": minus, "x1": x0}) \
        + x1 * substitute(lifted, {"x0": minus, "x1": x1})


def nc_krv2_fit(psi):
    """mu(h_psi) against f(x0+x1) - f(x0) - f(x1) with the explicit
    candidate f = x0 d^R_1(psi(-x0-x1, x1))(x0, 0).

    Returns (residual, f) where f is a one-letter Series.
    """
    from .series import one_letter_alphabet
    h = potential(psi)
    mu_h = reduced_coaction(h)
    eta = change_of_variable(psi)
    g = fox_derivative(eta, "x1", "right")
    s_alpha = one_letter_alphabet()
    f_terms = {}
    for w, c in g.terms.items():
        if not any(w):  # pure x0 power (possibly empty)
            _iadd(f_terms, bytes(len(w) + 1), c)
    f = Series(s_alpha, psi.max_weight + 1, f_terms, _clean=False)
    x = psi.alphabet
    mw = h.max_weight
    x0 = Series.letter(x, "x0", mw)
    x1 = Series.letter(x, "x1", mw)
    if f.is_zero:
        return mu_h, f
    combo = substitute(f, {"s": x0 + x1}) - substitute(f, {"s": x0}) \
        - substitute(f, {"s": x1})
    return mu_h - combo, f


def is_cyclic_invariant(h):
    """In the image of the symmetrization N: coefficients constant on the
    rotation class of every word."""
    seen = {}
    for w, c in h.terms.items():
        canon = _canonical_rotation(w)
        if canon in seen:
            if seen[canon] != c:
                return False
        else:
            seen[canon] = c
    for w, c in h.terms.items():
        canon = _canonical_rotation(w)
        rot = w
        for _ in range(len(w)):
            rot = rot[1:] + rot[:1]
            if h.terms.get(rot, 0) != c:
                return False
    return True


def hamiltonian(c):
    """H: |a| -> (d^R_0 N(|a|), d^R_1 N(|a|)), landing in special
    derivations; weight-one and constant components are excluded."""
    ww = c.alphabet.word_weight
    if any(ww(w) < 2 for w in c.terms):
        raise ValueError("hamiltonian needs homogeneous weight >= 2 input")
    n = symmetrize(c)
    return TangentialDerivation(fox_derivative(n, "x0", "right"),
                                fox_derivative(n, "x1", "right"),
                                normalize=False)


def hamiltonian_inverse(u):
    """|x0 a1 + x1 a2| with each weight-m homogeneous piece divided by m,
    so that hamiltonian_inverse(hamiltonian(|a|)) = |a|."""
    x = u.a1.alphabet
    mw = max(u.a1.max_weight, u.a2.max_weight) + 1
    x0 = Series.letter(x, "x0", mw)
    x1 = Series.letter(x, "x1", mw)
    a1 = Series(x, mw, u.a1.terms, _clean=False)
    a2 = Series(x, mw, u.a2.terms, _clean=False)
    body = x0 * a1 + x1 * a2
    out = {}
    ww = x.word_weight
    for w, c in body.terms.items():
        m = ww(w)
        v = Fraction(c, m)
        _iadd(out, w, int(v) if v.denominator == 1 else v)
    return CyclicSeries(x, mw, out)


# -- necklace Lie bialgebra ---------------------------------------------------

def necklace_bracket(a, b):
    """Necklace bracket of cyclic words induced by the diagonal Fox pairing.

    Local gluing rule of the star-quiver necklace bracket: for every pair of
    positions carrying the same letter s, glue the two necklaces through one
    copy of s, in both orders with opposite signs:

        {|a|, |b|} = sum_{a_i = b_j = s} ( |s A B| - |s B A| ),

    with A, B the complementary arcs.  This is the reading of the Fox-pairing
    display arbitrated by the Hamiltonian morphism test: H{|a|,|b|} =
    [H|a|, H|b|] as derivations.
    """
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    mw = min(a.max_weight, b.max_weight)
    out = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            if len(wa) + len(wb) - 1 > mw:
                continue
            coef = ca * cb
            for i in range(len(wa)):
                for j in range(len(wb)):
                    if wa[i] != wb[j]:
                        continue
                    arc_a = wa[i:] + wa[:i]
                    arc_b = wb[j:] + wb[:j]
                    _iadd(out, _canonical_rotation(arc_a + arc_b[1:]), coef)
                    _iadd(out, _canonical_rotation(arc_b + arc_a[1:]), -coef)
    return CyclicSeries(a.alphabet, mw, out, _clean=False)


def _shuffle_splits(word):
    n = len(word)
    for r in range(n + 1):
        for pos in itertools.combinations(range(n), r):
            keep = set(pos)
            yield (bytes(word[i] for i in pos),
                   bytes(word[i] for i in range(n) if i not in keep))


def necklace_cobracket(a):
    """delta(|a|) = |a' S(mu(a'')')| (x) |mu(a'')''| - flip, with the Sweedler
    sums read through the Hopf algebra's own (shuffle) coproduct.

    Antisymmetric by construction; this reading is the only one of the
    deconcatenation/shuffle family that also satisfies co-Jacobi and the Lie
    bialgebra cocycle identity against the necklace bracket.
    """
    out = {}
    for w, c in a.terms.items():
        for a1, a2 in _shuffle_splits(w):
            for i in range(len(a2) - 1):
                if a2[i] != a2[i + 1]:
                    continue
                m_word = a2[:i + 1] + a2[i + 2:]
                for m1, m2 in _shuffle_splits(m_word):
                    sgn = -c if len(m1) % 2 else c
                    left = _canonical_rotation(a1 + m1[::-1])
                    right = _canonical_rotation(m2)
                    _iadd(out, (left, right), sgn)
                    _iadd(out, (right, left), -sgn)
    return TensorSeries(a.alphabet, a.max_weight, out, _clean=False)


# -- krv2 solution space ------------------------------------------------------

def krv2_space(weight):
    """Basis of tangential derivations (a1, a2) of the given weight with
    u(x0+x1) = 0 and div(u) = f_w |(x0+x1)^w - x0^w - x1^w|.

    The single f coefficient per weight is eliminated: it enters the linear
    system as one extra column (a rank-1 allowance), and solutions are
    projected back to (a1, a2) pairs.
    """
    if weight < 1:
        raise ValueError("weight must be >= 1")
    x = two_letter_alphabet()
    basis = lyndon_basis(weight, weight + 1).series()
    n = len(basis)
    x0 = Series.letter(x, "x0", weight + 1)
    x1 = Series.letter(x, "x1", weight + 1)
    # ambient columns: a1 coordinates, a2 coordinates, f
    values = []
    for comp in (0, 1):
        for elt in basis:
            u = TangentialDerivation(elt if comp == 0 else Series.zero(x, weight),
                                     elt if comp == 1 else Series.zero(x, weight),
                                     normalize=False)
            items = []
            img0, img1 = u.generator_images()
            sder = img0 + img1
            items.extend((("s", k), v) for k, v in sder.terms.items())
            items.extend((("d", k), v) for k, v in divergence(u).terms.items())
            # normalization: no linear x0 in a1, no linear x1 in a2
            items.append((("n", comp),
                          elt.coeff(b"\x00") if comp == 0 else elt.coeff(b"\x01")))
            values.append(items)
    # f column: -( |(x0+x1)^w| - |x0^w| - |x1^w| ) on the divergence keys
    power = Series.unit(x, weight)
    for _ in range(weight):
        power = power * (x0 + x1)
    f_target = cyclic_project(power
                              - Series(x, weight, {b"\x00" * weight: 1}, _clean=False)
                              - Series(x, weight, {b"\x01" * weight: 1}, _clean=False))
    values.append([(("d", k), -v) for k, v in f_target.terms.items()])
    rows = assemble_rows(values, 2 * n + 1)
    combos = kernel_basis(rows) if rows else kernel_basis([[0] * (2 * n + 1)])
    pairs = []
    for vec in combos:
        a1 = Series.zero(x, weight)
        a2 = Series.zero(x, weight)
        for c, elt in zip(vec[:n], basis):
            if c:
                a1 = a1 + elt.scale(c)
        for c, elt in zip(vec[n:2 * n], basis):
            if c:
                a2 = a2 + elt.scale(c)
        if not (a1.is_zero and a2.is_zero):
            pairs.append(TangentialDerivation(a1, a2))
    return SolutionSpace("krv2", weight, canonical_pair_basis(pairs))


def canonical_pair_basis(pairs):
    """Reduced echelon basis of a span of tangential pairs."""
    from .lie import _coordinate_keys, _coordinate_rows
    from .linalg import rref
    pairs = [p for p in pairs if not p.is_zero]
    if not pairs:
        return []
    x = pairs[0].a1.alphabet
    mw = max(max(p.a1.max_weight, p.a2.max_weight) for p in pairs)
    keys = _coordinate_keys(pairs)
    ech, _ = rref(_coordinate_rows(pairs, keys))
    out = []
    for row in ech:
        t1, t2 = {}, {}
        for k, c in zip(keys, row):
            if c:
                coef = int(c) if c.denominator == 1 else c
                (t1 if k[0] == 0 else t2)[k[1]] = coef
        out.append(TangentialDerivation(Series(x, mw, t1, _clean=False),
                                        Series(x, mw, t2, _clean=False),
                                        normalize=False))
    return out
