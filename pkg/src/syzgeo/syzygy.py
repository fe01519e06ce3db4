"""Linear systems of binary forms and their syzygies.

A linear system of degree n and projective dimension k is a (k+1)-dimensional
subspace of the degree-n forms, held as a full-row-rank coefficient matrix.
This module computes syzygy counts and bases, the splitting type of the
kernel bundle on the projective line, the base divisor, three independent
codimension numbers for the determinantal stratum of systems with r syzygies
of degree d (the expected count, the tangent-space count, and the bundle
cohomology count), and random stratum members via the Hilbert-Burch
maximal-minor construction.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .binforms import (
    BinForm,
    FormParseError,
    U,
    V,
    divexact,
    gcd_forms,
    parse_form,
    random_form,
)
from .exactlin import DEFAULT_PRIME, ExactMatrix
from .mpoly import laplace_det


class NoGenericSplitting(ValueError):
    """No generic stratum member exists for the requested parameters."""


class SamplingBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LinearSystem:
    """Subspace of degree-n forms spanned by the rows of ``basis``.

    Rows are coefficient vectors (index = u-exponent); the matrix must have
    full row rank k+1, and n > k is required throughout.
    """

    basis: ExactMatrix

    def __post_init__(self):
        if self.basis.rows < 1:
            raise ValueError("empty basis")
        if self.n <= self.k:
            raise ValueError(f"need degree > projective dimension, got n={self.n}, k={self.k}")
        if self.basis.rank() != self.basis.rows:
            raise ValueError("basis rows are linearly dependent")

    @classmethod
    def from_forms(cls, forms) -> "LinearSystem":
        forms = list(forms)
        degrees = {f.degree for f in forms}
        if len(degrees) != 1:
            raise ValueError(f"mixed degrees {sorted(degrees)}")
        return cls(ExactMatrix.from_rows([f.coeffs for f in forms]))

    @property
    def n(self) -> int:
        return self.basis.cols - 1

    @property
    def k(self) -> int:
        return self.basis.rows - 1

    @property
    def forms(self) -> tuple:
        return tuple(BinForm(row) for row in self.basis.entries)


@dataclass(frozen=True)
class SplittingType:
    """Kernel-bundle splitting b_1 <= ... <= b_k plus the base-divisor degree.

    For a system of degree n the parts sum to n - base_degree.
    """

    parts: tuple
    base_degree: int = 0

    def __post_init__(self):
        parts = tuple(int(b) for b in self.parts)
        if not parts or any(b < 1 for b in parts):
            raise ValueError("parts must be positive integers")
        if list(parts) != sorted(parts):
            raise ValueError("parts must be sorted ascending")
        if self.base_degree < 0:
            raise ValueError("negative base degree")
        object.__setattr__(self, "parts", parts)

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts) + self.base_degree

    def __str__(self):
        inner = ", ".join(str(b) for b in self.parts)
        if self.base_degree:
            return f"{{{inner}}} + base divisor of degree {self.base_degree}"
        return f"{{{inner}}}"


@dataclass(frozen=True)
class Syzygy:
    """(k+1)-tuple of degree-d forms g with sum(g_i * f_i) = 0."""

    forms: tuple

    @property
    def degree(self) -> int:
        return self.forms[0].degree

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.forms) + ")"


@dataclass(frozen=True)
class StratumReport:
    k: int
    n: int
    d: int
    r: int
    expected_codim: int
    tangent_codim: int
    h1_codim: int
    splitting: SplittingType

    @property
    def verdict(self) -> bool:
        return self.expected_codim == self.tangent_codim == self.h1_codim


def build_phi(system: LinearSystem, d: int) -> ExactMatrix:
    """Matrix of multiplication from span{f_i} x (degree-d monomials) to V_{n+d}.

    Column (i, j), ordered i-major, holds the coefficients of f_i * u^j v^(d-j);
    row l is the coefficient of u^l v^(n+d-l).
    """
    if d < 0:
        raise ValueError("negative twist degree")
    n, k = system.n, system.k
    nrows = n + d + 1
    cols = []
    for i in range(k + 1):
        fi = system.basis.entries[i]
        for j in range(d + 1):
            col = [Fraction(0)] * nrows
            for l, c in enumerate(fi):
                if c:
                    col[l + j] = c
            cols.append(col)
    return ExactMatrix.from_rows(
        [[cols[c][r] for c in range((k + 1) * (d + 1))] for r in range(nrows)]
    )


def syzygy_count(system: LinearSystem, d: int) -> int:
    """Number r of independent degree-d syzygies."""
    return (system.k + 1) * (d + 1) - build_phi(system, d).rank()


def syzygy_basis(system: LinearSystem, d: int) -> list[Syzygy]:
    """Canonical basis of the degree-d syzygies, decoded from the kernel."""
    out = []
    for vec in build_phi(system, d).kernel_basis():
        forms = []
        for i in range(system.k + 1):
            forms.append(BinForm(tuple(vec[i * (d + 1) : (i + 1) * (d + 1)])))
        out.append(Syzygy(tuple(forms)))
    return out


def base_divisor(system: LinearSystem) -> BinForm:
    """Monic gcd of the basis forms; basis-independent."""
    return gcd_forms(system.forms)


def splitting_type(system: LinearSystem) -> SplittingType:
    """Recover the splitting from first differences of the syzygy counts.

    The number of parts <= d equals r(d) - r(d-1); scanning d = 1..n finds
    all k parts since every part is at most n.
    """
    n, k = system.n, system.k
    d0 = base_divisor(system).degree
    parts = []
    r_prev = 0  # r(0) = 0: the basis is linearly independent
    m_prev = 0
    for d in range(1, n + 1):
        r_d = syzygy_count(system, d)
        m_d = r_d - r_prev
        parts.extend([d] * (m_d - m_prev))
        if len(parts) == k:
            break
        r_prev, m_prev = r_d, m_d
    if len(parts) != k or sum(parts) + d0 != n:
        raise RuntimeError(f"splitting recovery failed: parts={parts}, base degree={d0}")
    return SplittingType(tuple(parts), d0)


def expected_codim(k: int, n: int, r: int, d: int) -> int:
    """Determinantal (Thom-Porteous) codimension r*(n + r - (d+1)*k).

    May be <= 0, meaning the stratum fills the whole Grassmannian.
    """
    if k < 1 or n <= k or r < 1 or d < 0:
        raise ValueError("need k >= 1, n > k, r >= 1, d >= 0")
    return r * (n + r - (d + 1) * k)


def generic_splitting(k: int, n: int, r: int, d: int) -> SplittingType:
    """Splitting {d^r, A^(k-r-B), (A+1)^B} of the generic stratum member.

    A and B are defined by n - d*r = A*(k-r) + B with 0 <= B < k-r, and A > d
    must hold for the r degree-d syzygies to be exactly r.
    """
    if k < 1 or n <= k or d < 1 or not 1 <= r <= k:
        raise NoGenericSplitting(
            f"no generic stratum member with these parameters (k={k}, n={n}, r={r}, d={d})"
        )
    if r == k:
        if n != d * k:
            raise NoGenericSplitting(
                f"no generic stratum member with these parameters: r=k needs n=d*k, got n={n}"
            )
        return SplittingType((d,) * k)
    a, b = divmod(n - d * r, k - r)
    if a <= d:
        raise NoGenericSplitting(
            f"no generic stratum member with these parameters: A={a} <= d={d}"
        )
    parts = (d,) * r + (a,) * (k - r - b) + (a + 1,) * b
    return SplittingType(tuple(sorted(parts)))


def h1_end(splitting: SplittingType) -> int:
    """h^1 of End of the split bundle: sum over ordered pairs of max(0, b_i-b_j-1)."""
    if splitting.base_degree != 0:
        raise ValueError("tangent formula applies to base-point-free systems only")
    parts = splitting.parts
    return sum(max(0, bi - bj - 1) for bi in parts for bj in parts)


def _complement_columns(system: LinearSystem) -> tuple[ExactMatrix, tuple, tuple]:
    """Row-reduced basis, its pivot columns, and the non-pivot columns.

    The non-pivot standard monomials are the fixed complement basis of the
    quotient V_n / span(system).
    """
    red, pivots = system.basis.rref()
    free = tuple(c for c in range(system.n + 1) if c not in set(pivots))
    return red, pivots, free


def tangent_codim(system: LinearSystem, d: int) -> int:
    """Codimension of the stratum's tangent space at this system.

    The stratum of systems with >= r degree-d syzygies is determinantal; at a
    point of exact corank r its tangent space is the kernel of the linear map
    sending a Grassmannian tangent direction (a perturbation of one basis form
    by a complement monomial) to the induced map ker -> coker of the
    multiplication matrix.  The returned value is the rank of that map.
    """
    if base_divisor(system).degree != 0:
        raise ValueError("tangent computation requires a base-point-free system")
    phi = build_phi(system, d)
    kernel = phi.kernel_basis()
    if not kernel:
        raise ValueError("stratum condition is vacuous: no degree-d syzygies")
    coker = phi.transpose().kernel_basis()
    if not coker:
        return 0
    n, k = system.n, system.k
    _, _, free = _complement_columns(system)
    columns = []
    for i in range(k + 1):
        for c in free:
            col = []
            for kv in kernel:
                w = [Fraction(0)] * (n + d + 1)
                for j in range(d + 1):
                    coeff = kv[i * (d + 1) + j]
                    if coeff:
                        w[c + j] += coeff
                for q in coker:
                    col.append(sum(a * b for a, b in zip(q, w)))
            columns.append(col)
    tmap = ExactMatrix.from_rows(
        [[columns[c][r] for c in range(len(columns))] for r in range(len(columns[0]))]
    )
    return tmap.rank()


def _minor_system(grid, n: int, k: int):
    """Signed maximal minors of a (k+1) x k form matrix, as basis rows."""
    minors = []
    for i in range(k + 1):
        sub = [grid[r] for r in range(k + 1) if r != i]
        det = laplace_det(sub, BinForm.zero(n))
        minors.append(det if i % 2 == 0 else -det)
    return minors


def hilbert_burch_sample(
    parts: SplittingType, seed: int, retry_budget: int = 50
) -> LinearSystem:
    """Random system whose syzygy module has the prescribed column degrees.

    Draws a (k+1) x k matrix with column j of degree parts[j] and integer
    coefficients in [-100, 100], takes signed maximal minors, and redraws
    until the minors are independent and the splitting round-trips.
    Deterministic for a fixed seed.
    """
    if parts.base_degree != 0:
        raise ValueError("sampling requires a base-point-free splitting")
    k = parts.rank
    n = parts.total
    rng = random.Random(seed)
    for _ in range(retry_budget):
        grid = [
            [random_form(parts.parts[j], rng) for j in range(k)] for i in range(k + 1)
        ]
        minors = _minor_system(grid, n, k)
        if any(f.is_zero for f in minors):
            continue
        coeff_rows = ExactMatrix.from_rows([f.coeffs for f in minors])
        # full rank mod p certifies full rank over Q; fall back to the
        # rational check only when the modular one is inconclusive
        if coeff_rows.mod_p(DEFAULT_PRIME).rank() != k + 1:
            if coeff_rows.rank() != k + 1:
                continue
        system = LinearSystem(coeff_rows)
        if splitting_type(system) == parts:
            return system
    raise SamplingBudgetExceeded(
        f"no sample with splitting {parts} found in {retry_budget} draws"
    )


def random_system(n: int, k: int, rng) -> LinearSystem:
    """Random full-rank system of degree n and projective dimension k."""
    while True:
        rows = [[Fraction(rng.randint(-100, 100)) for _ in range(n + 1)] for _ in range(k + 1)]
        m = ExactMatrix.from_rows(rows)
        if m.rank() == k + 1:
            return LinearSystem(m)


def normalize_linear_syzygy(system: LinearSystem):
    """Pencil form of a system with a linear syzygy.

    If sum((alpha_i u + beta_i v) f_i) = 0 for some nonzero linear tuple,
    there is a degree-(n-1) form f with sum(beta_i f_i) = u*f and
    sum(alpha_i f_i) = -v*f; returns (f, system rebased to start u*f, v*f),
    or None when no linear syzygy exists.  f is normalized monic.
    """
    syzygies = syzygy_basis(system, 1)
    if not syzygies:
        return None
    g = syzygies[0].forms
    alphas = [gi.coeffs[1] for gi in g]
    betas = [gi.coeffs[0] for gi in g]
    forms = system.forms
    n = system.n
    h = BinForm.zero(n)
    for b, fi in zip(betas, forms):
        h = h + b * fi
    f = divexact(h, U)
    f = f * (1 / f.coeffs[f.lead_index])
    uf, vf = U * f, V * f
    rows = [uf.coeffs, vf.coeffs]
    rank = 2
    for fi in forms:
        if rank == system.k + 1:
            break
        candidate = rows + [fi.coeffs]
        if ExactMatrix.from_rows(candidate).rank() > rank:
            rows = candidate
            rank += 1
    rebased = LinearSystem(ExactMatrix.from_rows(rows))
    return f, rebased


def verify_dime(k: int, n: int, r: int, d: int, trials: int, seed: int) -> list[StratumReport]:
    """Check expected, tangent and cohomology codimension on random samples."""
    ec = expected_codim(k, n, r, d)
    if ec < 0:
        raise ValueError(f"expected codimension {ec} < 0: no proper stratum")
    parts = generic_splitting(k, n, r, d)
    reports = []
    for t in range(trials):
        system = hilbert_burch_sample(parts, seed + t)
        st = splitting_type(system)
        reports.append(
            StratumReport(
                k=k,
                n=n,
                d=d,
                r=r,
                expected_codim=ec,
                tangent_codim=tangent_codim(system, d),
                h1_codim=h1_end(st),
                splitting=st,
            )
        )
    return reports


_DEGREE_HEADER = re.compile(r"#\s*degree\s*:\s*(\d+)\s*$")


def parse_system_file(text: str) -> LinearSystem:
    """One form per line; optional ``# degree: n`` header; '#' comments."""
    declared = None
    forms = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _DEGREE_HEADER.match(line)
            if m and declared is None:
                declared = int(m.group(1))
            continue
        forms.append(parse_form(line, expected_degree=declared))
    if not forms:
        raise FormParseError("no forms in system file")
    return LinearSystem.from_forms(forms)
