"""Sparse multivariate polynomials in x0..x_{k+1} over exact rationals.

The monomial order is graded lexicographic with x0 > x1 > ... fixed
globally; printing, normalization and leading-term division all use it.
Also hosts the projective points and lines of the ambient space P^{k+1}.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .binforms import BinForm, FormParseError, InexactDivision


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class MPoly:
    """Polynomial as a map {exponent vector -> nonzero rational}."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in dict(terms).items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps}")
                c = Fraction(c)
                if c:
                    clean[exps] = c
        self._terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    def terms(self):
        """Terms in descending grlex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coefficient(self, exps: tuple) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int | None:
        """Total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _require_same_ring(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts")

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "MPoly") -> "MPoly":
        self._require_same_ring(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(self.nvars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly(self.nvars, {e: c * Fraction(other) for e, c in self._terms.items()})
        self._require_same_ring(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, var: int) -> "MPoly":
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        out = {}
        for e, c in self._terms.items():
            if e[var] == 0:
                continue
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = c * e[var]
        return MPoly(self.nvars, out)

    def eval_at(self, coords) -> Fraction:
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.nvars:
            raise ValueError("dimension mismatch")
        total = Fraction(0)
        for e, c in self._terms.items():
            val = c
            for x, p in zip(coords, e):
                if p:
                    val *= x**p
            total += val
        return total

    def leading_term(self) -> tuple[tuple, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.terms():
            factors = []
            for i, p in enumerate(e):
                if p == 1:
                    factors.append(f"x{i}")
                elif p > 1:
                    factors.append(f"x{i}^{p}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            term = "*".join(factors)
            if not pieces:
                pieces.append(term if c > 0 else f"-{term}")
            else:
                pieces.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(pieces)

    __repr__ = __str__


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix of MPoly entries sharing one variable count."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        nv = rows[0][0].nvars
        for row in rows:
            if len(row) != len(rows[0]):
                raise ValueError("ragged rows")
            for p in row:
                if p.nvars != nv:
                    raise ValueError("mixed variable counts")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def nvars(self) -> int:
        return self.entries[0][0].nvars


def laplace_det(entries, zero):
    """Determinant of a square grid over any commutative ring.

    Laplace expansion memoized over column subsets; entries only need
    +, -, * and truthiness.  ``zero`` is returned for the zero determinant.
    """
    n = len(entries)
    if n == 0 or any(len(row) != n for row in entries):
        raise ValueError("determinant requires a nonempty square grid")
    memo: dict = {}

    def rec(cols: tuple):
        row = n - len(cols)
        if len(cols) == 1:
            e = entries[row][cols[0]]
            return e if e else None
        if cols in memo:
            return memo[cols]
        acc = None
        for t, c in enumerate(cols):
            e = entries[row][c]
            if not e:
                continue
            sub = rec(cols[:t] + cols[t + 1 :])
            if sub is None:
                continue
            term = e * sub
            if acc is None:
                acc = term if t % 2 == 0 else -term
            elif t % 2 == 0:
                acc = acc + term
            else:
                acc = acc - term
        if acc is not None and not acc:
            acc = None
        memo[cols] = acc
        return acc

    result = rec(tuple(range(n)))
    return zero if result is None else result


def poly_matrix_det(m: PolyMatrix, max_size: int = 12) -> MPoly:
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    if m.rows > max_size:
        raise ValueError(f"matrix size {m.rows} exceeds bound {max_size}")
    return laplace_det([list(row) for row in m.entries], MPoly.zero(m.nvars))


def divexact_mpoly(p: MPoly, q: MPoly) -> MPoly:
    """Quotient p/q when q divides p exactly; raises InexactDivision else."""
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    p._require_same_ring(q)
    if p.is_zero:
        return MPoly.zero(p.nvars)
    qe, qc = q.leading_term()
    quotient = MPoly.zero(p.nvars)
    rem = p
    while not rem.is_zero:
        re_, rc = rem.leading_term()
        diff = tuple(a - b for a, b in zip(re_, qe))
        if any(d < 0 for d in diff):
            raise InexactDivision(f"({p}) is not divisible by ({q})")
        t = MPoly(p.nvars, {diff: rc / qc})
        quotient = quotient + t
        rem = rem - t * q
    return quotient


def normalize_primitive(p: MPoly) -> MPoly:
    """Scale to coprime integer coefficients with a positive grlex leader."""
    if p.is_zero:
        raise ValueError("cannot normalize the zero polynomial")
    denoms = [c.denominator for c in p._terms.values()]
    nums = [c.numerator for c in p._terms.values()]
    scale = Fraction(math.lcm(*denoms), math.gcd(*nums))
    out = p * scale
    _, lead = out.leading_term()
    if lead < 0:
        out = -out
    return out


def proportional(p: MPoly, q: MPoly) -> bool:
    """True iff p == c*q for some nonzero scalar c (zero ~ zero)."""
    if p.nvars != q.nvars:
        return False
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    if set(p._terms) != set(q._terms):
        return False
    e, qc = q.leading_term()
    c = p._terms[e] / qc
    return all(pc == c * q._terms[ex] for ex, pc in p._terms.items())


@dataclass(frozen=True)
class ProjPoint:
    """Point of projective space; stored with first nonzero coordinate 1."""

    coords: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coords)
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", tuple(c / lead for c in cs))

    @property
    def dim_ambient(self) -> int:
        return len(self.coords) - 1

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ProjLine:
    """Line spanned by two distinct projective points."""

    p: ProjPoint
    q: ProjPoint

    def __post_init__(self):
        if len(self.p.coords) != len(self.q.coords):
            raise ValueError("spanning points in different spaces")
        if self.p == self.q:
            raise ValueError("spanning points must be projectively distinct")

    def __str__(self):
        return f"line {self.p}, {self.q}"


def restrict_to_line(p: MPoly, line: ProjLine) -> BinForm:
    """Substitute x = s*P + t*Q; zero as a form iff the line lies in V(p)."""
    if not p.is_homogeneous():
        raise ValueError("restriction needs a homogeneous polynomial")
    if p.is_zero:
        return BinForm.zero(0)
    if len(line.p.coords) != p.nvars:
        raise ValueError("dimension mismatch")
    deg = p.degree()
    total = BinForm.zero(deg)
    lin = [BinForm((qc, pc)) for pc, qc in zip(line.p.coords, line.q.coords)]
    for e, c in p._terms.items():
        prod = BinForm.monomial(0, 0, c)
        for i, power in enumerate(e):
            for _ in range(power):
                prod = prod * lin[i]
        total = total + prod
    return total


_MTOKEN = re.compile(
    r"(?P<num>\d+(?:\s*/\s*\d+)?)|x(?P<var>\d+)(?:\s*\^\s*(?P<exp>\d+))?|(?P<op>[+\-*])|(?P<ws>\s+)"
)


def parse_mpoly(text: str, nvars: int | None = None) -> MPoly:
    """Parse ``3/2 x0^2 x1 - x2^3`` style text ('*' optional)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _MTOKEN.match(text, pos)
        if m is None:
            raise FormParseError(f"unexpected character {text[pos]!r} at position {pos}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        if m.lastgroup in ("num", "op"):
            tokens.append((m.lastgroup, m.group()))
        else:
            tokens.append(("var", (int(m.group("var")), int(m.group("exp") or 1))))

    from .binforms import _parse_terms

    raw = _parse_terms(tokens)
    max_var = max((max(p) for _, p in raw if p), default=-1)
    if nvars is None:
        nvars = max_var + 1 if max_var >= 0 else 1
    elif max_var >= nvars:
        raise FormParseError(f"variable x{max_var} out of range for {nvars} variables")
    terms: dict = {}
    for c, powers in raw:
        exps = [0] * nvars
        for var, e in powers.items():
            exps[var] += e
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + c
    return MPoly(nvars, terms)
