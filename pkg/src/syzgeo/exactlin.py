"""Exact dense linear algebra over the rationals or a prime field.

A matrix holds either ``fractions.Fraction`` entries or :class:`Fp` entries
(integers modulo an odd prime); the two scalar types are never mixed inside
one matrix.  Rationals are the default everywhere; the prime-field mode is
an accelerator for randomized sampling, where a full rank mod p certifies
full rank over the rationals.

Elimination always takes the first nonzero entry in column order as pivot.
No pivot-size heuristics: results are deterministic and reproducible.

All values are immutable after construction and every operation is pure, so
matrices are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

DEFAULT_PRIME = 2**31 - 1


class Fp:
    """Element of Z/p for an odd prime p, stored reduced to [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int = DEFAULT_PRIME):
        if p < 3 or p % 2 == 0:
            raise ValueError("modulus must be an odd prime")
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed prime moduli")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self.inverse()

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __bool__(self):
        return self.value != 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Fp({self.value}, p={self.p})"


Scalar = Union[Fraction, Fp]


def _coerce_entry(x) -> Scalar:
    if isinstance(x, (Fp, Fraction)):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense exact matrix; ``entries[i][j]`` is row i, column j."""

    entries: tuple
    cols: int

    def __post_init__(self):
        rows = tuple(tuple(_coerce_entry(x) for x in row) for row in self.entries)
        for row in rows:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "ExactMatrix":
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count from an empty matrix")
            cols = len(rows[0])
        return cls(tuple(rows), cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)], cols=n
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def _zero_one(self):
        for row in self.entries:
            for x in row:
                z = x * 0
                return z, z + 1
        return Fraction(0), Fraction(1)

    def mod_p(self, p: int = DEFAULT_PRIME) -> "ExactMatrix":
        """Reduce a rational matrix mod p (denominators must be invertible)."""
        def red(x: Fraction) -> Fp:
            return Fp(x.numerator, p) / Fp(x.denominator, p)

        return ExactMatrix.from_rows(
            [[red(x) for x in row] for row in self.entries], cols=self.cols
        )

    def mat_vec(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        vec = [_coerce_entry(x) for x in vec]
        zero, _ = self._zero_one()
        return tuple(
            sum((a * b for a, b in zip(row, vec)), start=zero) for row in self.entries
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        zero, _ = self._zero_one()
        out = [
            [sum((a * b for a, b in zip(row, col)), start=zero) for col in cols]
            for row in self.entries
        ]
        return ExactMatrix.from_rows(out, cols=other.cols)

    def rref(self) -> tuple["ExactMatrix", tuple]:
        """Reduced row-echelon form and the tuple of pivot column indices."""
        m = [list(r) for r in self.entries]
        nrows, ncols = self.rows, self.cols
        pivots = []
        pr = 0
        for c in range(ncols):
            if pr == nrows:
                break
            pivot_row = None
            for r in range(pr, nrows):
                if m[r][c]:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
            pv = m[pr][c]
            m[pr] = [x / pv for x in m[pr]]
            for r in range(nrows):
                if r != pr and m[r][c]:
                    f = m[r][c]
                    m[r] = [a - f * b for a, b in zip(m[r], m[pr])]
            pivots.append(c)
            pr += 1
        return ExactMatrix.from_rows(m, cols=ncols), tuple(pivots)

    def rank(self) -> int:
        _, pivots = self.rref()
        return len(pivots)

    def kernel_basis(self) -> list[tuple]:
        """Canonical right null-space basis.

        One vector per free column, in increasing free-column order; the
        free column itself carries 1, the other free columns 0, and pivot
        coordinates are read off the reduced echelon form.
        """
        red, pivots = self.rref()
        zero, one = self._zero_one()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [zero] * self.cols
            v[fc] = one
            for r, pc in enumerate(pivots):
                v[pc] = -red.entries[r][fc]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: Sequence) -> tuple | None:
        """One exact solution of ``self @ x = rhs`` with free variables 0.

        Returns ``None`` when the system is inconsistent.
        """
        if len(rhs) != self.rows:
            raise ValueError("dimension mismatch")
        aug = ExactMatrix.from_rows(
            [tuple(row) + (_coerce_entry(b),) for row, b in zip(self.entries, rhs)],
            cols=self.cols + 1,
        )
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        zero, _ = self._zero_one()
        x = [zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.entries[r][self.cols]
        return tuple(x)

    def det_fraction_free(self) -> Scalar:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        m = [list(r) for r in self.entries]
        zero = m[0][0] * 0
        sign = 1
        prev = None
        for k in range(n - 1):
            if not m[k][k]:
                for r in range(k + 1, n):
                    if m[r][k]:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return zero
            piv = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * piv - m[i][k] * m[k][j]
                    m[i][j] = num if prev is None else num / prev
                m[i][k] = zero
            prev = piv
        d = m[n - 1][n - 1]
        return -d if sign < 0 else d

    det = det_fraction_free

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)
