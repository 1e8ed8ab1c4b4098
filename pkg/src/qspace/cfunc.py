"""Commutative polynomials with QScalar coefficients, plus lattice-sampled
functions for the numeric Jackson integrals.

A CFunction carries its own variable tuple, so the same class serves the
plain coordinate functions (x0, x1) / (x0, xp, x3, xm), the doubled variable
sets appearing in translations, and symbolic integration endpoints.
"""

from __future__ import annotations

from .scalars import ONE, QScalar, qnum, scalar

LINE_VARS = ("x0", "x1")
E3_VARS = ("x0", "xp", "x3", "xm")


def space_vars(space: str):
    if space == "line":
        return LINE_VARS
    if space == "euclid3":
        return E3_VARS
    raise ValueError(f"unknown space {space!r}")


class NonConvergentSum(ArithmeticError):
    """A lattice sum failed to fall below tolerance inside the cutoff."""


class CFunction:
    """Polynomial in commuting variables, exact coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = c

    @staticmethod
    def zero(variables):
        return CFunction(variables)

    @staticmethod
    def constant(variables, c):
        variables = tuple(variables)
        if isinstance(c, int):
            c = scalar(c)
        return CFunction(variables, {(0,) * len(variables): c})

    @staticmethod
    def monomial(variables, exps, coeff=ONE):
        return CFunction(variables, {tuple(exps): coeff})

    @staticmethod
    def var(variables, name, power=1, coeff=ONE):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = power
        return CFunction(variables, {tuple(e): coeff})

    def _vi(self, name):
        return self.vars.index(name)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CFunction):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __add__(self, other):
        if self.vars != other.vars:
            raise ValueError("variable sets differ")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return CFunction(self.vars, out)

    def __neg__(self):
        return CFunction(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QScalar, int)):
            return self.scale(other)
        if self.vars != other.vars:
            raise ValueError("variable sets differ")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                s = out.get(e)
                s = v if s is None else s + v
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return CFunction(self.vars, out)

    __rmul__ = __mul__

    def scale(self, c):
        if isinstance(c, int):
            c = scalar(c)
        if not c:
            return CFunction(self.vars)
        return CFunction(self.vars, {e: v * c for e, v in self.terms.items()})

    def degree(self, name=None):
        if not self.terms:
            return 0
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self._vi(name)
        return max(e[i] for e in self.terms)

    # -- calculus -----------------------------------------------------------

    def jackson_d(self, name, a):
        """Jackson derivative D_{q^a} in one variable; exact on monomials."""
        i = self._vi(name)
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            if n == 0:
                continue
            e2 = e[:i] + (n - 1,) + e[i + 1:]
            v = c * qnum(n, a)
            s = out.get(e2)
            s = v if s is None else s + v
            if s:
                out[e2] = s
            else:
                out.pop(e2, None)
        return CFunction(self.vars, out)

    def classical_d(self, name):
        i = self._vi(name)
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            if n == 0:
                continue
            e2 = e[:i] + (n - 1,) + e[i + 1:]
            v = c * scalar(n)
            s = out.get(e2)
            s = v if s is None else s + v
            if s:
                out[e2] = s
        return CFunction(self.vars, out)

    def jackson_antiderivative(self, name, a):
        """Monomial rule x^n -> x^(n+1)/[[n+1]]_{q^a}; inverse of jackson_d."""
        i = self._vi(name)
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            e2 = e[:i] + (n + 1,) + e[i + 1:]
            out[e2] = c / qnum(n + 1, a)
        return CFunction(self.vars, out)

    def classical_antiderivative(self, name):
        i = self._vi(name)
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            e2 = e[:i] + (n + 1,) + e[i + 1:]
            out[e2] = c / scalar(n + 1)
        return CFunction(self.vars, out)

    def scale_var(self, name, half_steps: int):
        """Substitute x -> q^(half_steps/2) x."""
        if half_steps == 0:
            return self
        i = self._vi(name)
        out = {}
        for e, c in self.terms.items():
            out[e] = c * QScalar.q_power(half_steps * e[i])
        return CFunction(self.vars, out)

    def negate_var(self, name):
        i = self._vi(name)
        out = {}
        for e, c in self.terms.items():
            out[e] = -c if e[i] % 2 else c
        return CFunction(self.vars, out)

    def subs_scalar(self, name, value: QScalar):
        """Evaluate one variable at an exact scalar value; drops the variable
        dependence but keeps the slot (exponent 0)."""
        i = self._vi(name)
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            v = c
            for _ in range(n):
                v = v * value
            e2 = e[:i] + (0,) + e[i + 1:]
            if not v:
                continue
            s = out.get(e2)
            s = v if s is None else s + v
            if s:
                out[e2] = s
            else:
                out.pop(e2, None)
        return CFunction(self.vars, out)

    def shift_var(self, name, t0: QScalar):
        """Substitute x -> x + t0 (classical binomial shift)."""
        i = self._vi(name)
        out = CFunction(self.vars)
        for e, c in self.terms.items():
            n = e[i]
            # (x + t0)^n expanded term by term
            binom = 1
            p = ONE
            for j in range(n + 1):
                if j:
                    binom = binom * (n - j + 1) // j
                    p = p * t0
                e2 = e[:i] + (n - j,) + e[i + 1:]
                out = out + CFunction(self.vars, {e2: c * p * scalar(binom)})
        return out

    # -- variable-set plumbing ------------------------------------------------

    def embed(self, variables, rename=None):
        """View this polynomial inside a larger variable tuple."""
        variables = tuple(variables)
        rename = rename or {}
        idx = [variables.index(rename.get(v, v)) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(variables)
            for j, n in zip(idx, e):
                e2[j] += n
            key = tuple(e2)
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
        return CFunction(variables, out)

    def restrict(self, variables, rename=None):
        """Project onto a smaller variable tuple; all dropped variables must
        have exponent zero."""
        variables = tuple(variables)
        rename = rename or {}
        keep = {}
        for j, v in enumerate(self.vars):
            name = rename.get(v, v)
            if name in variables:
                keep[j] = variables.index(name)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(variables)
            for j, n in enumerate(e):
                if n == 0:
                    continue
                if j not in keep:
                    raise ValueError(f"variable {self.vars[j]} survives restriction")
                e2[keep[j]] += n
            key = tuple(e2)
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
        return CFunction(variables, out)

    # -- evaluation -----------------------------------------------------------

    def eval_coeffs_exact(self, q0):
        """Coefficients evaluated at exact rational q0, keyed by exponents."""
        out = {}
        for e, c in self.terms.items():
            v = c.eval_exact(q0)
            if v:
                out[e] = v
        return out

    def eval_float(self, q0, point):
        """Evaluate at numeric q0 and a point given as {var: complex}."""
        total = 0j
        for e, c in self.terms.items():
            v = c.eval_float(q0)
            for name, n in zip(self.vars, e):
                if n:
                    v *= complex(point[name]) ** n
            total += v
        return total

    def monomials(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = " ".join(
                f"{v}^{n}" if n > 1 else v for v, n in zip(self.vars, e) if n
            )
            cs = str(c)
            if mono:
                if cs == "1":
                    term = mono
                elif cs == "-1":
                    term = f"-{mono}"
                elif any(op in cs[1:] for op in "+-/ ") or cs.startswith("("):
                    term = f"({cs}) {mono}"
                else:
                    term = f"{cs} {mono}"
            else:
                term = cs if not (any(op in cs[1:] for op in "+-/") and "/" not in cs) else f"({cs})"
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append(" - " + term[1:])
            else:
                parts.append(" + " + term)
        return "".join(parts)

    def __repr__(self):
        return f"CFunction({self})"


class LatticeFunction:
    """Complex samples on the geometric lattice {±q0^k : |k| <= cutoff}."""

    __slots__ = ("q0", "cutoff", "samples")

    def __init__(self, q0: float, cutoff: int, samples=None):
        if not q0 > 1:
            raise ValueError("lattice base q0 must exceed 1")
        self.q0 = float(q0)
        self.cutoff = int(cutoff)
        self.samples = dict(samples or {})

    @staticmethod
    def from_callable(fn, q0, cutoff):
        samples = {}
        for k in range(-cutoff, cutoff + 1):
            for sign in (1, -1):
                samples[(sign, k)] = complex(fn(sign * q0 ** k))
        return LatticeFunction(q0, cutoff, samples)

    @staticmethod
    def from_cfunction(f: CFunction, name: str, q0, cutoff, window=None):
        """Sample a one-variable polynomial; outside the window it is treated
        as zero, which makes whole-line integrals of the window convergent."""
        i = f.vars.index(name)
        for e in f.terms:
            if any(n and j != i for j, n in enumerate(e)):
                raise ValueError("polynomial must depend on a single variable")
        window = cutoff if window is None else window
        samples = {}
        for k in range(-cutoff, cutoff + 1):
            for sign in (1, -1):
                if abs(k) > window:
                    samples[(sign, k)] = 0j
                else:
                    x = sign * q0 ** k
                    samples[(sign, k)] = f.eval_float(q0, {name: x})
        return LatticeFunction(q0, cutoff, samples)

    def value(self, sign, k):
        try:
            return self.samples[(sign, k)]
        except KeyError:
            raise NonConvergentSum(
                f"sample at {'+' if sign > 0 else '-'}q0^{k} is outside the lattice cutoff"
            )

    def map(self, fn):
        return LatticeFunction(
            self.q0, self.cutoff, {k: fn(v) for k, v in self.samples.items()}
        )

    def pointwise(self, other, fn):
        if abs(self.q0 - other.q0) > 1e-12 or self.cutoff != other.cutoff:
            raise ValueError("lattices differ")
        return LatticeFunction(
            self.q0,
            self.cutoff,
            {k: fn(v, other.samples[k]) for k, v in self.samples.items()},
        )


def _geometric_sum(term_fn, k_start, k_max, tol):
    """Sum term_fn(k) for k >= k_start until three consecutive terms fall
    below tol; geometric decay makes this stopping rule safe."""
    total = 0j
    small = 0
    k = k_start
    while k <= k_max:
        t = term_fn(k)
        total += t
        if abs(t) < tol:
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
        k += 1
    raise NonConvergentSum("series did not decay below tolerance within the cutoff")


def jackson_integral_numeric(f: LatticeFunction, a: int, bounds: str, tol: float,
                             k0: int = 0) -> complex:
    """Numeric Jackson integral of a lattice function.

    bounds selects the printed geometric sums: '0_x' and 'x_inf' integrate on
    the positive axis from/to the lattice point x = q0^k0; 'x_0' and
    'minusinf_x' are their negative-axis twins at x = -q0^k0.
    """
    if a == 0:
        raise ValueError("Jackson integral base exponent must be nonzero")
    q0 = f.q0
    aa = abs(a)
    qa = q0 ** aa

    if bounds in ("0_x", "x_inf"):
        sign = 1
    elif bounds in ("x_0", "minusinf_x"):
        sign = -1
    else:
        raise ValueError(f"unknown bounds {bounds!r}")

    def down(k):  # x * q^(-a k), shrinking toward 0
        kk = k0 - aa * k
        x = sign * q0 ** kk
        return x * f.value(sign, kk)

    def up(k):  # x * q^(a k), growing toward the infinite end
        kk = k0 + aa * k
        x = sign * q0 ** kk
        return x * f.value(sign, kk)

    if a > 0:
        if bounds == "0_x":
            return -(1 - qa) * _geometric_sum(down, 1, 2 * f.cutoff, tol)
        if bounds == "x_inf":
            return -(1 - qa) * _geometric_sum(up, 0, 2 * f.cutoff, tol)
        if bounds == "x_0":
            return (1 - qa) * _geometric_sum(down, 1, 2 * f.cutoff, tol)
        if bounds == "minusinf_x":
            return (1 - qa) * _geometric_sum(up, 0, 2 * f.cutoff, tol)
    else:
        qia = 1 - qa ** -1
        if bounds == "0_x":
            return qia * _geometric_sum(down, 0, 2 * f.cutoff, tol)
        if bounds == "x_inf":
            return qia * _geometric_sum(up, 1, 2 * f.cutoff, tol)
        if bounds == "x_0":
            return -qia * _geometric_sum(down, 0, 2 * f.cutoff, tol)
        if bounds == "minusinf_x":
            return -qia * _geometric_sum(up, 1, 2 * f.cutoff, tol)
    raise AssertionError


def jackson_integral_whole_line(f: LatticeFunction, a: int, tol: float) -> complex:
    """(D_{q^a})^{-1} between -infinity and +infinity, split at the origin."""
    pos = jackson_integral_numeric(f, a, "0_x", tol) + jackson_integral_numeric(
        f, a, "x_inf", tol
    )
    neg = jackson_integral_numeric(f, a, "x_0", tol) + jackson_integral_numeric(
        f, a, "minusinf_x", tol
    )
    return pos + neg
