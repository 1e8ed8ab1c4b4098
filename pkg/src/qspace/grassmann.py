"""Superanalysis on the antisymmetrized braided line.

Two nilpotent generators (a time-like and a space-like one) with their two
derivative calculi; the workhorse type keeps only the space-like direction,
where supernumbers have a body and a single soul coefficient.  Derivatives
and integrals coincide up to the printed signs."""

from __future__ import annotations

from .reports import VerificationReport
from .scalars import ONE, QScalar, ZERO, qpow, scalar

# generator tags: th0, th1, dth0, dth1 (exponents are 0 or 1)
_ORDER = {"th0": 0, "th1": 1, "dth0": 2, "dth1": 3}


class GElement:
    """Linear combination of normal-ordered Grassmann words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[tuple(w)] = c

    @staticmethod
    def zero():
        return GElement()

    @staticmethod
    def one():
        return GElement({(): ONE})

    @staticmethod
    def gen(tag):
        return GElement({(tag,): ONE})

    def _accum(self, w, c):
        s = self.terms.get(w)
        s = c if s is None else s + c
        if s:
            self.terms[w] = s
        else:
            self.terms.pop(w, None)

    def __add__(self, other):
        out = GElement(self.terms)
        for w, c in other.terms.items():
            out._accum(w, c)
        return out

    def __neg__(self):
        return GElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int):
            c = scalar(c)
        return GElement({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        out = GElement()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                for w, c in _normalize(w1 + w2).items():
                    out._accum(w, c1 * c2 * c)
        return out

    def __eq__(self, other):
        if isinstance(other, GElement):
            return self.terms == other.terms
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def counit(self) -> QScalar:
        return self.terms.get((), ZERO)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda ww: (len(ww), ww)):
            c = self.terms[w]
            mono = " ".join(w) if w else ""
            cs = str(c)
            if mono:
                term = mono if cs == "1" else (f"-{mono}" if cs == "-1" else f"({cs}) {mono}")
            else:
                term = cs
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append(" - " + term[1:])
            else:
                parts.append(" + " + term)
        return "".join(parts)

    __repr__ = __str__


def _rules(a, b):
    """Rewrite for the disordered adjacent pair (a, b); None when ordered."""
    if a == b:
        return []  # squares vanish
    ra, rb = _ORDER[a], _ORDER[b]
    if ra <= rb and not (a.startswith("dth") and b.startswith("th")):
        return None
    if a.startswith("th") and b.startswith("th"):
        return [(-ONE, (b, a))]
    if a.startswith("dth") and b.startswith("dth"):
        return [(-ONE, (b, a))]
    # derivative past a coordinate: Leibniz with the braiding matrix
    if a == "dth0" and b == "th0":
        return [(ONE, ()), (-ONE, ("th0", "dth0"))]
    if a == "dth0" and b == "th1":
        return [(-ONE, ("th1", "dth0"))]
    if a == "dth1" and b == "th0":
        return [(-ONE, ("th0", "dth1"))]
    if a == "dth1" and b == "th1":
        return [(ONE, ()), (-qpow(1), ("th1", "dth1"))]
    raise AssertionError((a, b))


_HAT_RULES = {
    ("dth0", "th0"): [(ONE, ()), (-ONE, ("th0", "dth0"))],
    ("dth0", "th1"): [(-ONE, ("th1", "dth0"))],
    ("dth1", "th0"): [(-ONE, ("th0", "dth1"))],
    ("dth1", "th1"): [(ONE, ()), (-qpow(-1), ("th1", "dth1"))],
}


def _normalize(word, hatted=False):
    out = {}
    stack = [(ONE, tuple(word))]
    while stack:
        coeff, w = stack.pop()
        for i in range(len(w) - 1):
            pair = (w[i], w[i + 1])
            if hatted and pair in _HAT_RULES and w[i].startswith("dth"):
                alts = _HAT_RULES[pair] if w[i] != w[i + 1] else []
            else:
                alts = _rules(*pair)
            if alts is None:
                continue
            for c, repl in alts:
                stack.append((coeff * c, w[:i] + repl + w[i + 2:]))
            break
        else:
            s = out.get(w)
            s = coeff if s is None else s + coeff
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def g_normal_form(word, coeff=ONE, hatted=False) -> GElement:
    out = GElement()
    for w, c in _normalize(tuple(word), hatted=hatted).items():
        out._accum(w, coeff * c)
    return out


class SuperNumber:
    """body + soul * theta1, the workhorse subspace."""

    __slots__ = ("body", "soul")

    def __init__(self, body: QScalar = ZERO, soul: QScalar = ZERO):
        self.body = body
        self.soul = soul

    def __eq__(self, other):
        return self.body == other.body and self.soul == other.soul

    def __mul__(self, other):
        # (theta1)^2 = 0 kills the soul-soul term
        return SuperNumber(
            self.body * other.body,
            self.body * other.soul + self.soul * other.body,
        )

    def __add__(self, other):
        return SuperNumber(self.body + other.body, self.soul + other.soul)

    def __str__(self):
        return f"({self.body}) + ({self.soul}) th1"


def g_deriv_int(f: SuperNumber, mode: str, as_integral: bool = False) -> QScalar:
    """Left actions return the soul, right actions its negative; integration
    along each geometry coincides with the matching differentiation."""
    if mode in ("left", "left_bar"):
        return f.soul
    if mode in ("right", "right_bar"):
        return -f.soul
    raise ValueError(f"unknown mode {mode!r}")


def g_translate(f: SuperNumber):
    """f' + f1 (theta + psi); both coproduct variants coincide."""
    return (f.body, f.soul, f.soul)  # coefficients of 1, theta1, psi1


def g_antipode(f: SuperNumber) -> SuperNumber:
    return SuperNumber(f.body, -f.soul)


def g_pairing(kind: str) -> dict:
    """The printed pairing values on generators and the two-index words,
    computed by the act-then-counit procedure in the rewriting engine."""
    out = {}
    for i in (0, 1):
        for j in (0, 1):
            d = GElement.gen(f"dth{i}")
            th = GElement.gen(f"th{j}")
            if kind == "plain":
                out[(i, j)] = _pair_deriv_first(d, th, hatted=False)
            elif kind == "hat":
                out[(i, j)] = _pair_deriv_first(d, th, hatted=True)
            elif kind == "coord_first":
                out[(i, j)] = _pair_coord_first(th, d, hatted=False)
            elif kind == "coord_first_hat":
                out[(i, j)] = _pair_coord_first(th, d, hatted=True)
    return out


def _pair_deriv_first(d: GElement, th: GElement, hatted: bool) -> QScalar:
    total = ZERO
    for w1, c1 in d.terms.items():
        for w2, c2 in th.terms.items():
            res = g_normal_form(w1 + w2, hatted=hatted)
            total = total + c1 * c2 * res.counit()
    return total


def _pair_coord_first(th: GElement, d: GElement, hatted: bool) -> QScalar:
    """Coordinate-first pairings carry one sign per derivative factor, the
    mirror of the bosonic case."""
    total = ZERO
    for w2, c2 in d.terms.items():
        sign = -ONE if len(w2) % 2 else ONE
        for w1, c1 in th.terms.items():
            res = g_normal_form(w2 + w1, hatted=hatted)
            total = total + c1 * c2 * res.counit() * sign
    return total


def g_exponential(variant: str):
    """The four truncated exponentials; nilpotency cuts them at one term."""
    if variant == "x_d":
        return [((), (), ONE), (("th1",), ("dth1",), ONE)]
    if variant == "x_dhat":
        return [((), (), ONE), (("th1",), ("dth1",), ONE)]
    if variant == "d_x":
        return [((), (), ONE), (("dth1",), ("th1",), -ONE)]
    if variant == "dhat_x":
        return [((), (), ONE), (("dth1",), ("th1",), -ONE)]
    raise ValueError(f"unknown variant {variant!r}")


def g_delta(variant: str) -> SuperNumber:
    """Delta functions: integrate the matching exponential leg over the
    matching measure.  Left measures extract the soul, right measures its
    negative; all four land on the odd coordinate of the other leg."""
    terms = g_exponential(variant)
    left_measure = variant in ("x_d", "x_dhat")
    body = ZERO
    soul = ZERO
    for first, second, coeff in terms:
        theta_leg, other = (first, second) if left_measure else (second, first)
        if theta_leg != ("th1",):
            continue  # the measure kills the rest
        val = coeff if left_measure else -coeff
        if other == ("th1",) or other == ("dth1",):
            soul = soul + val  # coefficient of the other leg's odd variable
        else:
            body = body + val
    return SuperNumber(body, soul)


def grassmann_suite() -> VerificationReport:
    """Every printed superanalysis identity, checked exactly."""
    rep = VerificationReport("grassmann", "line")

    th0, th1 = GElement.gen("th0"), GElement.gen("th1")
    d0, d1 = GElement.gen("dth0"), GElement.gen("dth1")

    # nilpotency and antisymmetry
    rep.require((th1 * th1).is_zero(), "th1^2", str(th1 * th1), "0")
    rep.require((th0 * th0).is_zero(), "th0^2", str(th0 * th0), "0")
    got = g_normal_form(("th1", "th0"))
    want = g_normal_form(("th0", "th1")).scale(-1)
    rep.require(got == want, "th1 th0 = -th0 th1", str(got), str(want))

    # Leibniz rules, plain and hatted
    got = g_normal_form(("dth1", "th1"))
    want = GElement.one() + g_normal_form(("th1", "dth1")).scale(-qpow(1))
    rep.require(got == want, "dth1 th1", str(got), str(want))
    goth = g_normal_form(("dth1", "th1"), hatted=True)
    wanth = GElement.one() + g_normal_form(("th1", "dth1")).scale(-qpow(-1))
    rep.require(goth == wanth, "hat dth1 th1", str(goth), str(wanth))

    # supernumber actions: left +soul, right -soul; integral aliases agree
    f = SuperNumber(scalar(3), scalar(5))
    for mode, want_val in (
        ("left", scalar(5)),
        ("left_bar", scalar(5)),
        ("right", -scalar(5)),
        ("right_bar", -scalar(5)),
    ):
        got_val = g_deriv_int(f, mode)
        rep.require(got_val == want_val, f"deriv {mode}", str(got_val), str(want_val))
        got_int = g_deriv_int(f, mode, as_integral=True)
        rep.require(got_int == want_val, f"integral {mode}", str(got_int), str(want_val))
    const = SuperNumber(scalar(7), ZERO)
    rep.require(g_deriv_int(const, "left") == ZERO, "constant derivative", "", "")

    # translations and antipodes
    body, soul_th, soul_psi = g_translate(f)
    rep.require(
        body == f.body and soul_th == f.soul and soul_psi == f.soul,
        "translation", str((body, soul_th, soul_psi)), "(f', f1, f1)",
    )
    rep.require(g_antipode(g_antipode(f)) == f, "antipode involution", "", "")
    rep.require(g_antipode(const) == const, "antipode on constants", "", "")

    # pairings: <dth_i, th^j> = delta (both calculi); coordinate-first = -delta
    for kind, want_val in (("plain", ONE), ("hat", ONE)):
        vals = g_pairing(kind)
        for i in (0, 1):
            for j in (0, 1):
                v = vals[(i, j)]
                expect = want_val if i == j else ZERO
                rep.require(v == expect, f"pair {kind} ({i},{j})", str(v), str(expect))
    for kind in ("coord_first", "coord_first_hat"):
        vals = g_pairing(kind)
        for i in (0, 1):
            for j in (0, 1):
                v = vals[(i, j)]
                expect = -ONE if i == j else ZERO
                rep.require(v == expect, f"pair {kind} ({i},{j})", str(v), str(expect))

    # the four printed two-index pairing values (derivative word, coordinate
    # word, hatted calculus, coordinate-first ordering)
    pairs = [
        (("dth0", "dth1"), ("th1", "th0"), False, False),
        (("dth1", "dth0"), ("th0", "th1"), True, False),
        (("dth1", "dth0"), ("th0", "th1"), False, True),
        (("dth0", "dth1"), ("th1", "th0"), True, True),
    ]
    for dword, thword, hatted, coord_first in pairs:
        # coordinate-first pairings carry one sign per derivative factor
        sign = -ONE if (coord_first and len(dword) % 2) else ONE
        res = g_normal_form(tuple(dword) + tuple(thword), hatted=hatted)
        total = res.counit() * sign
        rep.require(total == ONE, f"pair {dword}|{thword}", str(total), "1")

    # exponentials and delta functions
    for variant in ("x_d", "x_dhat", "d_x", "dhat_x"):
        terms = g_exponential(variant)
        rep.require(len(terms) == 2, f"exp {variant} truncation", str(len(terms)), "2")
        delta = g_delta(variant)
        rep.require(
            delta.body == ZERO and delta.soul == ONE,
            f"delta {variant}", str(delta), "eta",
        )
    return rep
