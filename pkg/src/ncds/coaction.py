"""Reduced coaction, the rc spaces, the meta-abelian quotient, and the Ihara
bracket.

The reduced coaction of a word contracts each adjacent equal-letter pair to a
single letter; the associated one-variable series r collects the coefficients
of the words x0^(l+1) x1.  An eta with zero linear part solves the reduced
coaction equation when

    mu(eta) = -r_eta(x1) + r_eta(-x0) - (eta)_x0 - x1_(eta),

where (eta)_x0 is the part ending in x0 (left Fox derivative) and x1_(eta)
the part starting in x1 (right Fox derivative).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .lie import is_lie_series, lie_bracket, solve_space, SolutionSpace
from .series import (Series, abelianize, fox_derivative, letter_swap,
                     one_letter_alphabet, substitute, _iadd)


def reduced_coaction(f):
    """mu: sum over adjacent equal-letter contractions of each word."""
    if len(f.alphabet) != 2:
        raise ValueError("reduced coaction is defined on a two-letter alphabet")
    out = {}
    for w, c in f.terms.items():
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                _iadd(out, w[:i + 1] + w[i + 2:], c)
    return Series(f.alphabet, f.max_weight, out, _clean=False)


def r_series(eta):
    """r_eta(x) = sum_l c_{x0^(l+1) x1}(eta) x^(l+1), as a one-letter Series."""
    s = one_letter_alphabet()
    out = {}
    for w, c in eta.terms.items():
        if len(w) >= 2 and w[-1] == 1 and not any(w[:-1]):
            _iadd(out, bytes(len(w) - 1), c)
    return Series(s, max(eta.max_weight - 1, 0), out, _clean=False)


def _eval_one_letter(f, image):
    """Substitute the single variable of a one-letter series."""
    if f.is_zero:
        return Series.zero(image.alphabet, image.max_weight)
    return substitute(f, {"s": image})


def _rc_residual_linear(eta):
    """The residual as a plain linear operator, no precondition checks; this
    is what the solvers impose as a constraint."""
    alphabet = eta.alphabet
    mw = eta.max_weight
    x0 = Series.letter(alphabet, "x0", mw)
    x1 = Series.letter(alphabet, "x1", mw)
    r = r_series(eta)
    out = reduced_coaction(eta)
    out = out + _eval_one_letter(r, x1)
    out = out - _eval_one_letter(r, -1 * x0)
    out = out + fox_derivative(eta, "x0", "left")
    out = out + fox_derivative(eta, "x1", "right")
    return out


def rc_residual(eta):
    """mu(eta) + r_eta(x1) - r_eta(-x0) + (eta)_x0 + x1_(eta); zero iff the
    reduced coaction equation holds."""
    if eta.coeff(b"\x00") or eta.coeff(b"\x01"):
        raise ValueError("rc residual needs c_x0(eta) = c_x1(eta) = 0")
    if not is_lie_series(eta):
        raise ValueError("rc residual is defined for Lie series")
    return _rc_residual_linear(eta)


def _skew_constraint(s):
    return letter_swap(s) + s


def _linear_coeff_constraint(s):
    return {"x0": s.coeff(b"\x00"), "x1": s.coeff(b"\x01")}


def rc_space(weight, lam=None, chart="lyndon"):
    """Skew-symmetric solutions of the reduced coaction equation at a weight.

    lam constrains the coefficient of [x0, x1]; it only bites at weight 2
    since higher weights have no commutator component.  lam=None leaves it
    free (the space rc), lam=0 gives rc_0, and a nonzero lam produces an
    affine set returned as offset + homogeneous basis.
    """
    if weight < 2:
        raise ValueError("rc space starts at weight 2")
    constraints = [_skew_constraint, _linear_coeff_constraint, _rc_residual_linear]
    if chart == "words":
        from .lie import primitivity_defect
        constraints = [primitivity_defect] + constraints
    if lam == 0:
        constraints = constraints + [lambda s: {"lam": s.coeff(b"\x00\x01")}]
        return solve_space(weight, constraints, space="rc0", chart=chart)
    space = solve_space(weight, constraints, space="rc", chart=chart)
    if lam is None:
        return space
    particular = None
    for b in space.basis:
        v = b.coeff(b"\x00\x01")
        if v:
            particular = b.scale(Fraction(lam, 1) / v)
            break
    if particular is None:
        raise ValueError("no solution with the requested commutator coefficient")
    return SolutionSpace("rc_lambda", weight, rc_space(weight, 0, chart=chart).basis,
                         offset=particular)


def meta_abelian(psi):
    """B_psi = abelianization of (part of psi ending in x1) * x1."""
    tail = fox_derivative(psi, "x1", "left")
    x1 = Series.letter(psi.alphabet, "x1", psi.max_weight + 1)
    shifted = Series(psi.alphabet, psi.max_weight + 1, tail.terms, _clean=False) * x1
    return abelianize(shifted)


def frak_b_check(beta):
    """Test beta(x0,x1) = gamma(x0) + gamma(x1) - gamma(x0+x1) with
    gamma in s^2 k[[s]]; returns (bool, gamma Series or None).

    gamma_n is reconstructed from the bidegree (n-1, 1) coefficient as
    -beta_(n-1,1) / binom(n, 1), then all coefficients are verified.
    """
    if not beta:
        return True, Series.zero(one_letter_alphabet(), 0)
    degrees = sorted({sum(k) for k in beta})
    if min(degrees) < 2:
        return False, None
    top = max(degrees)
    gamma_terms = {}
    for n in range(2, top + 1):
        c = beta.get((n - 1, 1), 0)
        if c:
            gamma_terms[bytes(n)] = -Fraction(c, comb(n, 1))
    expected = {}
    for word, g in gamma_terms.items():
        n = len(word)
        # gamma(x0) + gamma(x1) - gamma(x0+x1)
        for key in ((n, 0), (0, n)):
            cur = expected.get(key, 0) + g
            if cur:
                expected[key] = cur
            else:
                expected.pop(key, None)
        for i in range(n + 1):
            key = (i, n - i)
            cur = expected.get(key, 0) - g * comb(n, i)
            if cur:
                expected[key] = cur
            else:
                expected.pop(key, None)
    if expected != dict(beta):
        return False, None
    gamma = Series(one_letter_alphabet(), top, gamma_terms, _clean=False)
    return True, gamma


def ihara_derivation(psi, f):
    """d_psi: the derivation with d(x0) = 0, d(x1) = [x1, psi], applied to f."""
    alphabet = f.alphabet
    mw = min(f.max_weight, psi.max_weight)
    x1 = Series.letter(alphabet, "x1", mw)
    img1 = lie_bracket(x1, psi.truncated(mw))
    out = Series.zero(alphabet, mw)
    for w, c in f.terms.items():
        for i, li in enumerate(w):
            if li != 1:
                continue
            pre = Series(alphabet, mw, {w[:i]: c}, _clean=False)
            post = Series(alphabet, mw, {w[i + 1:]: 1}, _clean=False)
            out = out + pre * img1 * post
    return out


def ihara_bracket(psi1, psi2):
    """{psi1, psi2} = d_psi2(psi1) - d_psi1(psi2) - [psi1, psi2]."""
    if not (is_lie_series(psi1) and is_lie_series(psi2)):
        raise ValueError("Ihara bracket needs Lie series inputs")
    return (ihara_derivation(psi2, psi1) - ihara_derivation(psi1, psi2)
            - lie_bracket(psi1, psi2))


def change_of_variable(psi):
    """psi(-x0-x1, x1)."""
    alphabet = psi.alphabet
    mw = psi.max_weight
    x0 = Series.letter(alphabet, "x0", mw)
    x1 = Series.letter(alphabet, "x1", mw)
    return substitute(psi, {"x0": -1 * x0 - x1, "x1": x1})


def c4_residual(psi):
    """Residual of the change-of-variable form of the coaction equation:
    mu(eta) - g(x0+x1, 0) + g + g(x1, 0) for eta = psi(-x0-x1, x1) and
    g = d^R_1(eta)."""
    eta = change_of_variable(psi)
    g = fox_derivative(eta, "x1", "right")
    alphabet = psi.alphabet
    mw = psi.max_weight
    x0 = Series.letter(alphabet, "x0", mw)
    x1 = Series.letter(alphabet, "x1", mw)
    zero = Series.zero(alphabet, mw)
    g_sum = substitute(g, {"x0": x0 + x1, "x1": zero}) if not g.is_zero else zero
    g_x1 = substitute(g, {"x0": x1, "x1": zero}) if not g.is_zero else zero
    return reduced_coaction(eta) - g_sum + g + g_x1
