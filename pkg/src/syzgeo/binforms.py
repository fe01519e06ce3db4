"""Binary forms: homogeneous polynomials in u, v over exact rationals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce


class FormParseError(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


@dataclass(frozen=True)
class BinForm:
    """A form of degree n; ``coeffs[i]`` is the coefficient of u^i v^(n-i).

    The zero form keeps its declared degree so vector-space operations stay
    well-typed.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs:
            raise ValueError("a form needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, degree: int) -> "BinForm":
        return cls((Fraction(0),) * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, upow: int, coeff=1) -> "BinForm":
        if not 0 <= upow <= degree:
            raise ValueError("exponent out of range")
        cs = [Fraction(0)] * (degree + 1)
        cs[upow] = Fraction(coeff)
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    @property
    def lead_index(self) -> int | None:
        """Largest u-exponent with a nonzero coefficient (None for 0)."""
        for i in range(self.degree, -1, -1):
            if self.coeffs[i]:
                return i
        return None

    @property
    def u_multiplicity(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero form has no root multiplicities")

    @property
    def v_multiplicity(self) -> int:
        return self.degree - self.lead_index

    def __add__(self, other: "BinForm") -> "BinForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in form addition")
        return BinForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinForm") -> "BinForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in form subtraction")
        return BinForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BinForm(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BinForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
            return BinForm(tuple(out))
        return BinForm(tuple(a * Fraction(other) for a in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def scale(self, c) -> "BinForm":
        return self * c

    def evaluate(self, a, b) -> Fraction:
        a, b = Fraction(a), Fraction(b)
        total = Fraction(0)
        pa = Fraction(1)
        powers_a = []
        for _ in range(self.degree + 1):
            powers_a.append(pa)
            pa *= a
        pb = Fraction(1)
        for i in range(self.degree, -1, -1):
            if self.coeffs[i]:
                total += self.coeffs[i] * powers_a[i] * pb
            pb *= b
        return total

    def __str__(self):
        if self.is_zero:
            return "0"
        n = self.degree
        pieces = []
        for i in range(n, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = []
            if i > 0:
                mono.append("u" if i == 1 else f"u^{i}")
            if n - i > 0:
                mono.append("v" if n - i == 1 else f"v^{n - i}")
            mag = abs(c)
            if mag != 1 or not mono:
                mono.insert(0, str(mag))
            term = " ".join(mono)
            if not pieces:
                pieces.append(term if c > 0 else f"-{term}")
            else:
                pieces.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(pieces)


U = BinForm.monomial(1, 1)
V = BinForm.monomial(1, 0)
ONE = BinForm.monomial(0, 0)


def mul(f: BinForm, g: BinForm) -> BinForm:
    return f * g


def divexact(f: BinForm, g: BinForm) -> BinForm:
    """Quotient q with q*g == f; raises InexactDivision otherwise."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero:
        return BinForm.zero(max(f.degree - g.degree, 0))
    if f.degree < g.degree:
        raise InexactDivision(f"degree {f.degree} not divisible by degree {g.degree}")
    qdeg = f.degree - g.degree
    glead = g.lead_index
    gl = g.coeffs[glead]
    rem = list(f.coeffs)
    q = [Fraction(0)] * (qdeg + 1)
    top = f.degree
    while True:
        while top >= 0 and not rem[top]:
            top -= 1
        if top < 0:
            return BinForm(tuple(q))
        shift = top - glead
        if not 0 <= shift <= qdeg:
            raise InexactDivision(f"({f}) is not divisible by ({g})")
        c = rem[top] / gl
        q[shift] = c
        for j in range(glead + 1):
            if g.coeffs[j]:
                rem[j + shift] -= c * g.coeffs[j]


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        _trim(a)
        if not a:
            break
    return a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def gcd_forms(forms) -> BinForm:
    """Monic greatest common divisor of the given forms.

    Pure powers of u and v are stripped first, the Euclidean algorithm runs
    on the dehomogenization in t = u/v, and the result is re-homogenized, so
    roots at (1:0) and (0:1) are handled uniformly.
    """
    nonzero = [f for f in forms if not f.is_zero]
    if not nonzero:
        raise ValueError("gcd of all-zero forms is undefined")
    u_shift = min(f.u_multiplicity for f in nonzero)
    v_shift = min(f.v_multiplicity for f in nonzero)
    dehom = []
    for f in nonzero:
        top = f.lead_index
        dehom.append(_trim([f.coeffs[i] for i in range(u_shift, top + 1)]))
    g = reduce(_poly_gcd, dehom)
    tdeg = len(g) - 1
    total = tdeg + u_shift + v_shift
    coeffs = [Fraction(0)] * (total + 1)
    for i, c in enumerate(g):
        coeffs[i + u_shift] = c
    out = BinForm(tuple(coeffs))
    return out * (1 / out.coeffs[out.lead_index])


_TOKEN = re.compile(
    r"(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>[uv])(?:\s*\^\s*(?P<exp>\d+))?|(?P<op>[+\-*])|(?P<ws>\s+)"
)


def _tokenize(text: str, alphabet: str = "uv"):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormParseError(f"unexpected character {text[pos]!r} at position {pos}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        if m.lastgroup in ("num", "op"):
            tokens.append((m.lastgroup, m.group()))
        else:
            var = m.group("var")
            if var not in alphabet:
                raise FormParseError(f"unknown variable {var!r}")
            tokens.append(("var", (var, int(m.group("exp") or 1))))
    return tokens


def _parse_terms(tokens):
    """Split a token stream into (coefficient, {var: exponent}) terms."""
    terms = []
    i = 0
    n = len(tokens)
    while i < n:
        sign = Fraction(1)
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = sign
        powers: dict = {}
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, val = tokens[i]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                if not saw_factor:
                    raise FormParseError("misplaced '*'")
                expect_factor = True
                i += 1
                continue
            if kind == "num":
                coeff *= Fraction(val.replace(" ", ""))
            else:
                var, exp = val
                if var in powers:
                    raise FormParseError(f"repeated factor {var!r} in one term")
                powers[var] = exp
            saw_factor = True
            expect_factor = False
            i += 1
        if not saw_factor or expect_factor:
            raise FormParseError("empty term")
        terms.append((coeff, powers))
    if not terms:
        raise FormParseError("empty input")
    return terms


def parse_form(text: str, expected_degree: int | None = None) -> BinForm:
    """Parse the text grammar: sum of terms ``[coef] [u[^i]] [v[^j]]``."""
    terms = [
        (c, p.get("u", 0), p.get("v", 0)) for c, p in _parse_terms(_tokenize(text))
    ]
    live = [(c, i, j) for c, i, j in terms if c]
    if not live:
        return BinForm.zero(expected_degree if expected_degree is not None else 0)
    degrees = {i + j for _, i, j in live}
    if len(degrees) > 1:
        raise FormParseError(f"inhomogeneous input: degrees {sorted(degrees)}")
    degree = degrees.pop()
    if expected_degree is not None and degree != expected_degree:
        raise FormParseError(f"degree {degree} where {expected_degree} was expected")
    coeffs = [Fraction(0)] * (degree + 1)
    for c, i, _ in live:
        coeffs[i] += c
    return BinForm(tuple(coeffs))


def form_from_roots(pairs) -> BinForm:
    """Product of the linear forms (b*u - a*v) over parameter pairs (a:b)."""
    out = ONE
    for a, b in pairs:
        out = out * BinForm((Fraction(-1) * Fraction(a), Fraction(b)))
    return out


def random_form(degree: int, rng, lo: int = -100, hi: int = 100) -> BinForm:
    """Nonzero random form with integer coefficients drawn from [lo, hi]."""
    while True:
        f = BinForm(tuple(Fraction(rng.randint(lo, hi)) for _ in range(degree + 1)))
        if not f.is_zero:
            return f
