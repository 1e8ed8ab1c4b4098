"""Dual pairings between the coordinate and derivative algebras, and the
q-exponentials built from dually paired bases.

Exponentials are truncated tensor data: lists of (coordinate monomial,
derivative word, coefficient).  The flipped variants (derivative leg first)
carry the coefficients their defining pairings dictate — a sign per
derivative factor on top of the reciprocal factorials; the Kronecker
reconstruction test pins these down.
"""

from __future__ import annotations

import itertools

from .cfunc import CFunction, space_vars
from .ncalgebra import NCElement, act
from .reports import VerificationReport
from .scalars import ONE, QScalar, qfact, qpow, scalar

PAIR_VARIANTS = ("L_Rbar", "Lbar_R")
EXP_VARIANTS = ("x_d", "x_dhat", "d_x", "dhat_x")

_FACT_BASES = {"line": {"x1": 1}, "euclid3": {"xp": 4, "x3": 2, "xm": 4}}
_DWORD_ORDER = {  # derivative word, leftmost first; the paired basis order
    "line": ("d0", "d1"),
    "euclid3": ("d0", "dm", "d3", "dp"),
}
_DWORD_ORDER_HAT = {  # the hatted basis words run through the indices reversely
    "line": ("d0", "d1"),
    "euclid3": ("d0", "dp", "d3", "dm"),
}
_EXP_KEY = {  # coordinate variable feeding each derivative slot
    "line": {"d0": "x0", "d1": "x1"},
    "euclid3": {"d0": "x0", "dp": "xp", "d3": "x3", "dm": "xm"},
}
_HAT_POWER = {"line": 1, "euclid3": 6}


def classical_factorial(n: int) -> QScalar:
    out = ONE
    for j in range(2, n + 1):
        out = out * scalar(j)
    return out


def _norm_factor(space, exps, inv: bool) -> QScalar:
    """n0! times the q-factorials of the spatial exponents."""
    vars_ = space_vars(space)
    out = classical_factorial(exps[0])
    sign = -1 if inv else 1
    for v, a in _FACT_BASES[space].items():
        out = out * qfact(exps[vars_.index(v)], sign * a)
    return out


def deriv_word_element(space, exps, hatted: bool) -> NCElement:
    """The normal-ordered derivative word for monomial exponents; hatted
    words are stored through their q-power multiples of the plain ones."""
    vars_ = space_vars(space)
    order = _DWORD_ORDER_HAT[space] if hatted else _DWORD_ORDER[space]
    word = []
    for d in order:
        word.extend([d] * exps[vars_.index(_EXP_KEY[space][d])])
    el = NCElement.from_word(space, tuple(word))
    if hatted:
        spatial = sum(exps[1:])
        el = el.scale(qpow(_HAT_POWER[space] * spatial))
    return el


def coord_word_element(space, exps, reversed_order: bool) -> NCElement:
    """The coordinate basis word: standard ordering, or the reversed one the
    hatted pairings run against."""
    vars_ = space_vars(space)
    if not reversed_order or space == "line":
        word = []
        for i, v in enumerate(vars_):
            word.extend([{"x0": "x0", "x1": "x1", "xp": "xp",
                          "x3": "x3", "xm": "xm"}[v]] * exps[i])
        return NCElement.from_word(space, tuple(word))
    word = (
        ("x0",) * exps[0] + ("xm",) * exps[3] + ("x3",) * exps[2] + ("xp",) * exps[1]
    )
    return NCElement.from_word(space, word)


class TensorSeries:
    """Truncated q-exponential: (coordinate monomial, derivative word) pairs."""

    def __init__(self, space, variant, degree_bound, terms):
        self.space = space
        self.variant = variant
        self.degree_bound = degree_bound
        self.terms = terms  # list of (exps tuple, NCElement, QScalar)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self):
        vars_ = space_vars(self.space)
        parts = []
        for exps, dword, coeff in self.terms:
            mono = " ".join(
                f"{v}^{n}" if n > 1 else v for v, n in zip(vars_, exps) if n
            ) or "1"
            cs = str(coeff)
            lhs, rhs = (mono, dword) if self.variant.startswith("x") else (dword, mono)
            if cs == "1":
                parts.append(f"{lhs} (x) {rhs}")
            else:
                parts.append(f"({cs}) {lhs} (x) {rhs}")
        return "  +  ".join(parts) if parts else "0"


def qexp(space: str, variant: str, degree_bound: int) -> TensorSeries:
    """The four q-exponential variants, truncated at total degree.

    'x_d' pairs coordinate monomials with plain-derivative words (reciprocal
    factorial coefficients), 'x_dhat' with hatted words (inverse bases); the
    flipped variants put the derivative leg first and are dual to the
    coordinate-first pairings, whose printed values carry a sign per
    derivative factor.
    """
    if variant not in EXP_VARIANTS:
        raise ValueError(f"unknown exponential variant {variant!r}")
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    vars_ = space_vars(space)
    hat = variant in ("x_dhat", "dhat_x")
    flipped = variant in ("d_x", "dhat_x")
    terms = []
    for exps in itertools.product(range(degree_bound + 1), repeat=len(vars_)):
        if sum(exps) > degree_bound:
            continue
        c = ONE / _norm_factor(space, exps, inv=hat)
        if flipped and sum(exps) % 2:
            c = -c
        terms.append((exps, deriv_word_element(space, exps, hat), c))
    terms.sort(key=lambda t: (sum(t[0]), t[0]))
    return TensorSeries(space, variant, degree_bound, terms)


_PAIR_MODES = {
    # (variant, deriv_first) -> action mode used by act-then-evaluate-at-zero
    ("L_Rbar", True): "left",
    ("Lbar_R", True): "left_bar",
    ("L_Rbar", False): "right_bar",
    ("Lbar_R", False): "right",
}


def pair(space, variant, u: NCElement, v: NCElement, order: str = "deriv_first") -> QScalar:
    """Dual pairing of a derivative word against a coordinate word, computed
    by acting and evaluating at the origin."""
    if variant not in PAIR_VARIANTS:
        raise ValueError(f"unknown pairing variant {variant!r}")
    deriv_first = order == "deriv_first"
    mode = _PAIR_MODES[(variant, deriv_first)]
    res = act(u, v, mode)
    return res.constant_term()


def kronecker_check(space, variant: str, degree_bound: int) -> VerificationReport:
    """Duality of the exponential legs: contracting the derivative leg with a
    monomial and evaluating at the origin rebuilds the monomial through the
    coordinate leg with coefficient one."""
    rep = VerificationReport(f"qexp-kronecker-{variant}", space)
    exp = qexp(space, variant, degree_bound)
    vars_ = space_vars(space)
    deriv_first = variant in ("d_x", "dhat_x")
    hat = variant in ("x_dhat", "dhat_x")
    mode = _PAIR_MODES[("Lbar_R" if hat else "L_Rbar", not deriv_first)]
    for target in itertools.product(range(degree_bound + 1), repeat=len(vars_)):
        if sum(target) > degree_bound:
            continue
        # the hatted tower pairs against the reversed-ordering basis words
        v = coord_word_element(space, target, reversed_order=hat)
        acc = CFunction.zero(vars_)
        for exps, dword, coeff in exp:
            val = act(dword, v, mode).constant_term()
            if val:
                acc = acc + CFunction.monomial(vars_, exps, coeff * val)
        want = CFunction.monomial(vars_, target)
        if acc != want:
            rep.record(f"{variant}:{target}", str(acc), str(want))
    return rep
