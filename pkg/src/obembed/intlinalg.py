"""Exact integer matrix algebra: Smith normal form and cokernels.

Everything here runs on Python ints, so intermediate entries may grow
arbitrarily large without overflow.  Matrices are immutable values;
the reduction routines work on private copies.
"""

from __future__ import annotations

from dataclasses import dataclass


class IntMatrix:
    """An immutable rows x cols integer matrix."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, data):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        data = tuple(tuple(int(x) for x in row) for row in data)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError("entry grid does not match declared shape")
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def entry(self, i, j):
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def row_lists(self):
        return [list(r) for r in self._data]

    def column(self, j):
        return tuple(self._data[i][j] for i in range(self.rows))

    def diagonal(self):
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         [[self._data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            srow = self._data[i]
            orow = []
            for j in range(other.cols):
                orow.append(sum(srow[k] * other._data[k][j] for k in range(self.cols)))
            out.append(orow)
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix times column vector, returned as a tuple."""
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(row[k] * vec[k] for k in range(self.cols)) for row in self._data)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix)
                and self.rows == other.rows
                and self.cols == other.cols
                and self._data == other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {list(map(list, self._data))!r})"

    def is_identity(self):
        return self.rows == self.cols and all(
            self._data[i][j] == (1 if i == j else 0)
            for i in range(self.rows) for j in range(self.cols))


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k.

    Torsion coefficients are the invariant factors: each d_i >= 2 and
    d_i divides d_{i+1}.
    """

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2 (trivial factors are dropped)")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a divisibility chain, got {a}, {b}")

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def describe(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["free_rank"]), tuple(d["torsion"]))

    def __str__(self):
        return self.describe()


def _min_abs_nonzero(a, t, rows, cols):
    """Position of a minimal-|value| nonzero entry of the t-trailing block."""
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            x = a[i][j]
            if x != 0:
                ax = abs(x)
                if best is None or ax < best[0]:
                    best = (ax, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(m):
    """Diagonalize m over Z: returns (d, u, v) with d = u * m * v.

    u and v are unimodular, d is diagonal with nonnegative entries
    satisfying d_i | d_{i+1}.  Pivots are chosen with minimal absolute
    value, which keeps entry growth down and the output deterministic.
    Total on every rectangular shape, including empty ones.
    """
    rows, cols = m.rows, m.cols
    a = m.row_lists()
    u = IntMatrix.identity(rows).row_lists()
    v = IntMatrix.identity(cols).row_lists()

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, coeff):
        # row_dst += coeff * row_src, tracked in u
        arow, srow = a[dst], a[src]
        for k in range(cols):
            arow[k] += coeff * srow[k]
        urow, usrc = u[dst], u[src]
        for k in range(rows):
            urow[k] += coeff * usrc[k]

    def add_col(dst, src, coeff):
        # col_dst += coeff * col_src, tracked in v
        for row in a:
            row[dst] += coeff * row[src]
        for row in v:
            row[dst] += coeff * row[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        piv = _min_abs_nonzero(a, t, rows, cols)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # Euclidean clearing of column t, then row t.  A nonzero
            # remainder is strictly smaller than the pivot, so swapping
            # it into the pivot slot makes progress.
            for i in range(t + 1, rows):
                while a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(i, t)
            for j in range(t + 1, cols):
                while a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(j, t)
            if any(a[i][t] != 0 for i in range(t + 1, rows)):
                continue
            if any(a[t][j] != 0 for j in range(t + 1, cols)):
                continue
            # Fold in any entry the pivot does not divide yet; this is
            # what makes the diagonal a divisibility chain.
            bad = None
            p = a[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        t += 1

    for i in range(limit):
        if a[i][i] < 0:
            for k in range(cols):
                a[i][k] = -a[i][k]
            for k in range(rows):
                u[i][k] = -u[i][k]

    return (IntMatrix(rows, cols, a),
            IntMatrix(rows, rows, u),
            IntMatrix(cols, cols, v))


def cokernel(m):
    """Structure of Z^rows / (column span of m) as an AbelianGroup."""
    d, _, _ = smith_normal_form(m)
    diag = d.diagonal()
    nonzero = sum(1 for x in diag if x != 0)
    torsion = tuple(x for x in diag if x >= 2)
    return AbelianGroup(m.rows - nonzero, torsion)
