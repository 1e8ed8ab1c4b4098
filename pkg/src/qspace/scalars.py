"""Exact coefficient field: rational functions of q with Gaussian-rational
coefficients.

Everything downstream (matrices, normal ordering, star products, series)
computes over this field, so equality of canonical forms is the notion of
"exactly equal" used by the whole verification suite.

Internally a scalar is a reduced fraction of Laurent polynomials in
``s = q^(1/2)``; half-integer powers of q are needed for the scaling-operator
bookkeeping.  The denominator is kept monic, with nonzero constant term, and
coprime to the numerator, which makes the representation canonical.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "GaussianRational",
    "QScalar",
    "QScalarError",
    "DivisionByZero",
    "PoleError",
    "ZERO",
    "ONE",
    "I",
    "Q",
    "LAM",
    "LAMP",
    "qpow",
    "scalar",
    "qnum",
    "qfact",
    "eval_at",
]


class QScalarError(ArithmeticError):
    pass


class DivisionByZero(QScalarError):
    """Division of scalars by the zero scalar."""


class PoleError(QScalarError):
    """Numeric evaluation at a pole of the rational function."""


class GaussianRational:
    """a + b*i with a, b exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.re == other and self.im == 0
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise DivisionByZero("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


_GR_ZERO = GaussianRational(0)
_GR_ONE = GaussianRational(1)


def _as_gr(c):
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c)
    raise TypeError(f"cannot coerce {c!r} to a Gaussian rational")


# -- Laurent polynomials in s = q^(1/2), as {exponent: GaussianRational} --

def _pstrip(p):
    return {k: c for k, c in p.items() if c}


def _padd(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _pneg(a):
    return {k: -c for k, c in a.items()}


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(a) == 1:
        ((ka, ca),) = a.items()
        return {ka + k: ca * c for k, c in b.items()}
    if len(b) == 1:
        ((kb, cb),) = b.items()
        return {k + kb: c * cb for k, c in a.items()}
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            s = out.get(k)
            v = ca * cb
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _pshift(a, n):
    return {k + n: c for k, c in a.items()} if n else dict(a)


def _pscale(a, c):
    return {k: v * c for k, v in a.items()} if c else {}


def _pconj(a):
    return {k: c.conj() for k, c in a.items()}


def _pdeg(a):
    return max(a) if a else None


def _pdivmod(a, b):
    """Polynomial division (nonnegative exponents) over the Gaussian field."""
    r = dict(a)
    db = _pdeg(b)
    lb = b[db].inverse()
    quo = {}
    while r and _pdeg(r) >= db:
        dr = _pdeg(r)
        c = r[dr] * lb
        quo[dr - db] = c
        for k, v in b.items():
            kk = k + dr - db
            s = r.get(kk, _GR_ZERO) - v * c
            if s:
                r[kk] = s
            else:
                r.pop(kk, None)
    return quo, r


def _pgcd(a, b):
    a, b = dict(a), dict(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
        if a:
            lead = a[_pdeg(a)].inverse()
            a = _pscale(a, lead)
    return a if a else {0: _GR_ONE}


_P_ONE = {0: _GR_ONE}


class QScalar:
    """Canonical rational function of q over the Gaussian rationals."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = _P_ONE
        if _canonical:
            self.num = num
            self.den = den
            return
        num = _pstrip(num)
        den = _pstrip(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num = {}
            self.den = dict(_P_ONE)
            return
        # Move any pure s-power of the denominator into the numerator so the
        # denominator is an ordinary polynomial with nonzero constant term.
        dmin = min(den)
        if dmin:
            den = _pshift(den, -dmin)
            num = _pshift(num, -dmin)
        nmin = min(num)
        if nmin < 0:
            base = _pshift(num, -nmin)
        else:
            base = num
        if len(den) > 1 or 0 not in den:
            g = _pgcd(base, den)
            if len(g) > 1 or 0 not in g or g[0] != _GR_ONE:
                base, _ = _pdivmod(base, g)
                den, _ = _pdivmod(den, g)
            num = _pshift(base, min(nmin, 0))
        lead = den[_pdeg(den)]
        if lead != _GR_ONE:
            inv = lead.inverse()
            den = _pscale(den, inv)
            num = _pscale(num, inv)
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(re, im=0):
        c = GaussianRational(re, im)
        return QScalar({0: c} if c else {}, dict(_P_ONE), _canonical=True)

    @staticmethod
    def q_power(half_steps: int):
        """q**(half_steps/2); exponents are tracked in units of sqrt(q)."""
        return QScalar({half_steps: _GR_ONE}, dict(_P_ONE), _canonical=True)

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _P_ONE and self.den == _P_ONE

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QScalar.from_rational(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(
            (
                tuple(sorted((k, c.re, c.im) for k, c in self.num.items())),
                tuple(sorted((k, c.re, c.im) for k, c in self.den.items())),
            )
        )

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = QScalar.from_rational(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        if self.den == other.den:
            return QScalar(_padd(self.num, other.num), self.den)
        return QScalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = QScalar.from_rational(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return QScalar(_pneg(self.num), dict(self.den), _canonical=True)

    def __mul__(self, other):
        if isinstance(other, int):
            other = QScalar.from_rational(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den == _P_ONE and other.den == _P_ONE:
            return QScalar(_pmul(self.num, other.num))
        return QScalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = QScalar.from_rational(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero scalar")
        return QScalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def conj(self):
        """Complex conjugation; q itself is treated as real."""
        return QScalar(_pconj(self.num), _pconj(self.den))

    def subs_q_inverse(self):
        """The substitution q -> 1/q."""
        return QScalar(
            {-k: c for k, c in self.num.items()},
            {-k: c for k, c in self.den.items()},
        )

    # -- evaluation --------------------------------------------------------

    def _eval_exact_s(self, s0: GaussianRational):
        num = _GR_ZERO
        for k, c in self.num.items():
            num = num + c * _gr_pow(s0, k)
        den = _GR_ZERO
        for k, c in self.den.items():
            den = den + c * _gr_pow(s0, k)
        if not den:
            raise PoleError("denominator vanishes at evaluation point")
        return num * den.inverse()

    def eval_exact(self, q0) -> GaussianRational:
        """Evaluate at an exact rational (or Gaussian-rational) q0."""
        q0 = _as_gr(q0)
        if all(k % 2 == 0 for k in self.num) and all(k % 2 == 0 for k in self.den):
            half = QScalar(
                {k // 2: c for k, c in self.num.items()},
                {k // 2: c for k, c in self.den.items()},
                _canonical=True,
            )
            return half._eval_exact_s(q0)
        s0 = _gr_sqrt(q0)
        return self._eval_exact_s(s0)

    def eval_float(self, q0) -> complex:
        q0 = complex(q0)
        if q0 == 0:
            raise PoleError("q = 0 is outside the domain")
        s0 = q0 ** 0.5
        num = sum(complex(c) * s0 ** k for k, c in self.num.items())
        den = sum(complex(c) * s0 ** k for k, c in self.den.items())
        if abs(den) < 1e-300:
            raise PoleError("denominator vanishes at evaluation point")
        return num / den

    # -- rendering ----------------------------------------------------------

    def _poly_str(self, p):
        return _poly_to_str(p)

    def __str__(self):
        if not self.num:
            return "0"
        ns = _poly_to_str(self.num)
        if self.den == _P_ONE:
            return ns
        ds = _poly_to_str(self.den)
        if len(self.num) > 1:
            ns = f"({ns})"
        if len(self.den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"QScalar({self})"


def _gr_pow(c: GaussianRational, k: int) -> GaussianRational:
    if k == 0:
        return _GR_ONE
    base = c if k > 0 else c.inverse()
    out = _GR_ONE
    for _ in range(abs(k)):
        out = out * base
    return out


def _gr_sqrt(c: GaussianRational) -> GaussianRational:
    if c.im:
        raise QScalarError("exact evaluation needs sqrt of a complex rational")
    f = c.re
    if f < 0:
        raise QScalarError("exact evaluation at negative q is not supported")
    rn = math.isqrt(f.numerator)
    rd = math.isqrt(f.denominator)
    if rn * rn != f.numerator or rd * rd != f.denominator:
        raise QScalarError(
            "half-integer powers of q present and q0 has no rational square root"
        )
    return GaussianRational(Fraction(rn, rd))


def _coeff_to_str(c: GaussianRational, need_one=False):
    """Render a Gaussian rational the expression grammar can read back."""
    if c.re and c.im:
        re = str(c.re) if c.re.denominator == 1 else f"({c.re})"
        im = f"{abs(c.im)}i" if abs(c.im) != 1 else "i"
        if abs(c.im) != 1 and c.im.denominator != 1:
            im = f"({abs(c.im)})i"
        sign = "+" if c.im > 0 else "-"
        return f"({re}{sign}{im})"
    if c.im:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        if c.im.denominator != 1:
            return f"({c.im})i"
        return f"{c.im}i"
    if c.re == 1 and not need_one:
        return ""
    if c.re == -1 and not need_one:
        return "-"
    if c.re.denominator != 1:
        sign = "-" if c.re < 0 else ""
        return f"{sign}({abs(c.re)})"
    return str(c.re)


def _poly_to_str(p):
    parts = []
    for k in sorted(p, reverse=True):
        c = p[k]
        if k == 0:
            mono = ""
        elif k == 2:
            mono = "q"
        elif k % 2 == 0:
            mono = f"q^{k // 2}"
        else:
            mono = f"q^({Fraction(k, 2)})"
        cs = _coeff_to_str(c, need_one=(mono == ""))
        if cs in ("", "-") and mono == "":
            cs = "1" if cs == "" else "-1"
        if mono and cs.endswith("i"):
            term = f"{cs} {mono}"
        else:
            term = cs + mono
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append(" - " + term[1:])
        else:
            parts.append(" + " + term)
    return "".join(parts) if parts else "0"


ZERO = QScalar.from_rational(0)
ONE = QScalar.from_rational(1)
I = QScalar.from_rational(0, 1)
Q = QScalar.q_power(2)
QINV = QScalar.q_power(-2)
LAM = Q - QINV          # q - 1/q
LAMP = Q + QINV         # q + 1/q


def qpow(n: int) -> QScalar:
    """Integer power q**n."""
    return QScalar.q_power(2 * n)


def scalar(re, im=0) -> QScalar:
    return QScalar.from_rational(re, im)


def qnum(n: int, a: int = 1) -> QScalar:
    """Antisymmetric q-number: the explicit sum 1 + q^a + ... + q^(a(n-1)).

    Stored as the finite sum (never the quotient form), so specializing
    q -> 1 is an ordinary evaluation with value n.
    """
    if n < 0:
        raise ValueError("q-numbers are defined for n >= 0")
    if a == 0:
        raise ValueError("q-number base exponent must be nonzero")
    return QScalar({2 * a * k: _GR_ONE for k in range(n)})


def qfact(n: int, a: int = 1, kind: str = "plain") -> QScalar:
    """q-factorial [[n]]_{q^a}! or the even double factorial [[n]]_{q^a}!!."""
    if n < 0:
        raise ValueError("q-factorials are defined for n >= 0")
    if kind == "plain":
        out = ONE
        for j in range(1, n + 1):
            out = out * qnum(j, a)
        return out
    if kind == "double":
        if n % 2:
            raise ValueError("double q-factorial needs an even argument")
        out = ONE
        for j in range(2, n + 1, 2):
            out = out * qnum(j, a)
        return out
    raise ValueError(f"unknown q-factorial kind: {kind!r}")


def eval_at(x: QScalar, q0):
    """Numeric value of a scalar at q = q0 (exact if q0 is rational)."""
    if isinstance(x, QScalar):
        if isinstance(q0, (int, Fraction, GaussianRational)):
            return x.eval_exact(q0)
        return x.eval_float(q0)
    raise TypeError("eval_at expects a QScalar")
