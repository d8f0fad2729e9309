"""Twist matrices, their determinants and the Sullivan twist zeta function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NonUnitConstant, StructureMismatch
from .symbolic import KneadingPair, star_pair
from .template import TemplateModel, build_template

__all__ = [
    "TwistPolynomial",
    "TwistSeries",
    "TwistCensus",
    "SullivanReport",
    "twist_char_poly",
    "bareiss_det",
    "sullivan_series",
    "orbit_census",
    "mobius",
    "matrix_traces",
    "verify_sullivan_exp_identity",
    "verify_sullivan_factorization",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 24

Exponent = tuple[int, ...]


class TwistPolynomial:
    """Integer polynomial in commuting variables, e.g. ``("u", "v")`` or ``("t",)``."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] = ()):
        self.variables = tuple(variables)
        clean: dict[Exponent, int] = {}
        for exp, c in dict(terms).items():
            exp = tuple(exp)
            if len(exp) != len(self.variables) or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for variables {self.variables}")
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, c: int, variables: Sequence[str]) -> TwistPolynomial:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, exp: Exponent, variables: Sequence[str], c: int = 1) -> TwistPolynomial:
        return cls(variables, {tuple(exp): c})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], var: str = "t") -> TwistPolynomial:
        return cls((var,), {(k,): c for k, c in enumerate(coeffs)})

    def _check(self, other: TwistPolynomial) -> None:
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")

    def _lift(self, other) -> TwistPolynomial:
        if isinstance(other, int):
            return TwistPolynomial.constant(other, self.variables)
        if isinstance(other, TwistPolynomial):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TwistPolynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistPolynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TwistPolynomial(self.variables, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = TwistPolynomial.constant(other, self.variables)
        if not isinstance(other, TwistPolynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def leading(self) -> tuple[Exponent, int]:
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, d: TwistPolynomial) -> TwistPolynomial:
        """Quotient ``self / d``; ``ArithmeticError`` unless ``d`` divides exactly."""
        self._check(d)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        de, dc = d.leading()
        rem = dict(self.terms)
        quot: dict[Exponent, int] = {}
        while rem:
            re_ = max(rem)
            rc = rem[re_]
            qe = tuple(a - b for a, b in zip(re_, de))
            if min(qe) < 0 or rc % dc:
                raise ArithmeticError("inexact polynomial division")
            qc = rc // dc
            quot[qe] = qc
            for e, c in d.terms.items():
                k = tuple(a + b for a, b in zip(qe, e))
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return TwistPolynomial(self.variables, quot)

    def specialize(self, *powers: int, var: str = "t") -> TwistPolynomial:
        """Substitute ``var**powers[k]`` for the k-th variable."""
        if len(powers) != len(self.variables):
            raise ValueError("one power per variable is required")
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            k = (sum(a * p for a, p in zip(e, powers)),)
            out[k] = out.get(k, 0) + c
        return TwistPolynomial((var,), out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficients(self) -> list[int]:
        """Dense coefficient list of a univariate polynomial."""
        if len(self.variables) != 1:
            raise ValueError("coefficients() needs a univariate polynomial")
        out = [0] * (self.degree() + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def _monomial_str(self, e: Exponent) -> str:
        parts = []
        for v, a in zip(self.variables, e):
            if a == 1:
                parts.append(v)
            elif a > 1:
                parts.append(f"{v}^{a}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = self._monomial_str(e)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"TwistPolynomial({self.variables}, {self.terms})"

    def to_dict(self) -> dict:
        key = lambda e: ",".join(map(str, e))  # noqa: E731
        return {"variables": list(self.variables), "terms": {key(e): c for e, c in sorted(self.terms.items())}}


def _mul_terms(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _sub_terms(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def bareiss_det(matrix: list[list[TwistPolynomial]]) -> TwistPolynomial:
    """Fraction-free Gaussian elimination over an integer polynomial ring."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    variables = matrix[0][0].variables
    # raw term dicts: elimination is dominated by zero and constant entries
    m = [[dict(p.terms) for p in row] for row in matrix]
    one = {(0,) * len(variables): 1}
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return TwistPolynomial(variables)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        divisor = TwistPolynomial(variables, prev)
        row_k = m[k]
        for i in range(k + 1, n):
            row = m[i]
            mik = row[k]
            for j in range(k + 1, n):
                num = _mul_terms(row[j], pivot) if row[j] else {}
                if mik and row_k[j]:
                    num = _sub_terms(num, _mul_terms(mik, row_k[j]))
                if num and prev is not one:
                    num = TwistPolynomial(variables, num).exact_div(divisor).terms
                row[j] = num
            row[k] = {}
        prev = pivot
    return TwistPolynomial(variables, m[n - 1][n - 1]) * sign


def twist_char_poly(t: TemplateModel) -> TwistPolynomial:
    """``det(I - A(u, v))`` with L-labelled entries ``u`` and R-labelled entries ``v``."""
    uv = ("u", "v")
    one = TwistPolynomial.constant(1, uv)
    zero = TwistPolynomial(uv)
    var = {"L": TwistPolynomial.monomial((1, 0), uv), "R": TwistPolynomial.monomial((0, 1), uv)}
    n = len(t)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = one if i == j else zero
            lab = t.labels[i][j]
            if lab != "0":
                entry = entry - var[lab]
            row.append(entry)
        rows.append(row)
    return bareiss_det(rows)


@dataclass(frozen=True)
class TwistSeries:
    """Power series in ``t`` known up to ``t**order``."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def inverse_of(cls, poly: TwistPolynomial, order: int) -> TwistSeries:
        p = poly.coefficients() + [0] * (order + 1)
        if p[0] != 1:
            raise NonUnitConstant(f"constant term {p[0]} of {poly}")
        out = [Fraction(1)]
        for n in range(1, order + 1):
            out.append(-sum(p[k] * out[n - k] for k in range(1, n + 1)))
        return cls(tuple(out))

    @classmethod
    def exp_of(cls, log_coeffs: Sequence[Fraction], order: int) -> TwistSeries:
        """``exp`` of a series with zero constant term, via ``n f_n = sum k g_k f_{n-k}``."""
        g = list(log_coeffs) + [Fraction(0)] * (order + 1)
        if g[0]:
            raise ValueError("exp_of needs zero constant term")
        f = [Fraction(1)]
        for n in range(1, order + 1):
            f.append(sum(k * g[k] * f[n - k] for k in range(1, n + 1)) / n)
        return cls(tuple(f))

    def __str__(self) -> str:
        return f"{_fraction_series_str(self.coefficients)} + O(t^{self.order + 1})"

    def to_dict(self) -> dict:
        return {"order": self.order, "terms": {str(k): str(c) for k, c in enumerate(self.coefficients) if c}}


def _fraction_series_str(coeffs: Sequence[Fraction]) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
        sign = ("-" if c < 0 else "") if not parts else (" - " if c < 0 else " + ")
        parts.append(sign + body)
    return "".join(parts) or "0"


def sullivan_series(t: TemplateModel, order: int = DEFAULT_ORDER) -> TwistSeries:
    """``1 / det(I - A(t))`` with every transition weighted ``t**2``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TwistSeries.inverse_of(twist_char_poly(t).specialize(2, 2), order)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def matrix_traces(matrix: Sequence[Sequence[int]], count: int) -> list[int]:
    """``[tr(A), tr(A^2), ..., tr(A^count)]`` in exact integers."""
    n = len(matrix)
    power = [list(r) for r in matrix]
    out = []
    for k in range(count):
        out.append(sum(power[i][i] for i in range(n)))
        if k + 1 < count:
            power = [[sum(power[i][l] * matrix[l][j] for l in range(n) if power[i][l]) for j in range(n)] for i in range(n)]
    return out


@dataclass(frozen=True)
class TwistCensus:
    order: int
    orbits: dict[int, int]  # least period n -> number of closed orbits
    twists: dict[int, int]  # computed twist q -> number of closed orbits
    weighted: dict[int, int]  # q -> sum over q' | q of q' * twists[q']

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "orbits": {str(k): v for k, v in self.orbits.items()},
            "twists": {str(k): v for k, v in self.twists.items()},
            "weighted": {str(k): v for k, v in self.weighted.items()},
        }


def orbit_census(t: TemplateModel, order: int = DEFAULT_ORDER) -> TwistCensus:
    """Count closed orbits by least period through Moebius inversion of traces.

    Each transition of a sub-Lorenz template adds twist 2, so an orbit of
    period n has computed twist 2n.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    top = order // 2
    tr = matrix_traces(t.transition, top)
    orbits = {}
    for n in range(1, top + 1):
        total = sum(mobius(d) * tr[n // d - 1] for d in range(1, n + 1) if n % d == 0)
        if total % n:
            raise StructureMismatch(f"orbit count for period {n} is not an integer")
        orbits[n] = total // n
    twists = {q: (orbits[q // 2] if q % 2 == 0 else 0) for q in range(1, order + 1)}
    weighted = {q: sum(d * twists[d] for d in range(1, q + 1) if q % d == 0) for q in range(1, order + 1)}
    return TwistCensus(order, orbits, twists, weighted)


@dataclass(frozen=True)
class SullivanReport:
    passed: bool
    lhs: object
    rhs: object
    detail: str = ""

    def to_dict(self) -> dict:
        return {"pass": self.passed, "lhs": str(self.lhs), "rhs": str(self.rhs), "detail": self.detail}


def verify_sullivan_exp_identity(t: TemplateModel, order: int = DEFAULT_ORDER) -> SullivanReport:
    """Compare ``exp(sum_q T_q t^q / q)`` from the orbit census with ``1/det(I - A(t))``."""
    if order < 2:
        one = TwistSeries((Fraction(1),) + (Fraction(0),) * max(order, 0))
        return SullivanReport(True, one, one)
    census = orbit_census(t, order)
    log = [Fraction(0)] * (order + 1)
    for q in range(2, order + 1):
        log[q] = Fraction(census.weighted[q], q)
    lhs = TwistSeries.exp_of(log, order)
    rhs = sullivan_series(t, order)
    return SullivanReport(lhs == rhs, lhs, rhs)


def verify_sullivan_factorization(outer: KneadingPair, inner: KneadingPair) -> SullivanReport:
    """Check ``det_{outer*inner}(t^2,t^2) = det_outer(t^2,t^2) * det_inner(t^{2|X|}, t^{2|Y|})``."""
    product = star_pair(outer, inner)
    a, b = 2 * len(outer.x), 2 * len(outer.y)
    lhs = twist_char_poly(build_template(product)).specialize(2, 2)
    rhs = twist_char_poly(build_template(outer)).specialize(2, 2) * twist_char_poly(
        build_template(inner)
    ).specialize(a, b)
    return SullivanReport(lhs == rhs, lhs, rhs, f"inner specialization (t^{a}, t^{b})")

