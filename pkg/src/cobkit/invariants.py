"""Exact integer-linear-algebra invariants of diagrams.

Everything here runs over arbitrary-precision integers (or rationals for
the signature); entries can grow during elimination, so machine ints are
never trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, linking_matrix, linking_number
from .errors import PreconditionError


@dataclass(frozen=True)
class IntMatrix:
    """A dense rectangular matrix of Python ints."""

    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n))
                         for i in range(n)))

    @classmethod
    def zero(cls, r, c):
        return cls(tuple(tuple(0 for _ in range(c)) for _ in range(r)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return IntMatrix(tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j]
                      for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows)))

    def transpose(self):
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else self

    def diagonal(self):
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def det(self):
        """Exact determinant by fraction-free expansion (small matrices)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        if n == 1:
            return self.entries[0][0]
        total = 0
        for j in range(n):
            a = self.entries[0][j]
            if a == 0:
                continue
            minor = IntMatrix(tuple(
                tuple(row[k] for k in range(n) if k != j)
                for row in self.entries[1:]))
            total += (-1) ** j * a * minor.det()
        return total


def smith_normal_form(m: IntMatrix):
    """(U, D, V) with U m V = D, U and V unimodular, D diagonal with a
    divisibility chain and nonnegative entries.

    Pivot rule: smallest nonzero absolute value in the working block,
    ties by (row, col) index; rows are cleared before columns.  The rule
    is deterministic so the transforms are reproducible.
    """
    a = [list(r) for r in m.entries]
    R, C = m.rows, m.cols
    u = [[int(i == j) for j in range(R)] for i in range(R)]
    v = [[int(i == j) for j in range(C)] for i in range(C)]

    def row_op(i, j, q):      # row_i -= q * row_j
        for k in range(C):
            a[i][k] -= q * a[j][k]
        for k in range(R):
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):      # col_i -= q * col_j
        for r in range(R):
            a[r][i] -= q * a[r][j]
        for r in range(C):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(R):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(C):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        for k in range(C):
            a[i][k] = -a[i][k]
        for k in range(R):
            u[i][k] = -u[i][k]

    n = min(R, C)
    for s in range(n):
        while True:
            pivot = None
            for i in range(s, R):
                for j in range(s, C):
                    if a[i][j] != 0 and (pivot is None
                                         or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (s, s):
                if pivot[0] != s:
                    swap_rows(s, pivot[0])
                if pivot[1] != s:
                    swap_cols(s, pivot[1])
            if a[s][s] < 0:
                negate_row(s)
            clean = True
            for i in range(s + 1, R):
                q = a[i][s] // a[s][s]
                if q:
                    row_op(i, s, q)
                if a[i][s]:
                    clean = False
            for j in range(s + 1, C):
                q = a[s][j] // a[s][s]
                if q:
                    col_op(j, s, q)
                if a[s][j]:
                    clean = False
            if not clean:
                continue
            # Enforce divisibility into the remaining block.
            offender = None
            for i in range(s + 1, R):
                for j in range(s + 1, C):
                    if a[i][j] % a[s][s]:
                        offender = i
                        break
                if offender:
                    break
            if offender is None:
                break
            row_op(s, offender, -1)   # fold the offending row in, repeat

    d = IntMatrix(tuple(tuple(row) for row in a))
    uu = IntMatrix(tuple(tuple(r) for r in u))
    vv = IntMatrix(tuple(tuple(r) for r in v))
    assert uu.mul(m).mul(vv).entries == d.entries
    return uu, d, vv


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group: free rank plus torsion chain
    d_1 | d_2 | ... with every d_i >= 2."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if i and t % self.torsion[i - 1]:
                raise ValueError("torsion chain must be a divisibility chain")

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    @classmethod
    def free(cls, rank):
        return cls(rank=rank)


def cokernel(relations: IntMatrix, generators: int) -> AbelianGroup:
    """Z^generators modulo the row space of ``relations``."""
    if relations.rows == 0:
        return AbelianGroup(rank=generators)
    _, d, _ = smith_normal_form(relations)
    diag = [x for x in d.diagonal() if x != 0]
    return AbelianGroup(rank=generators - len(diag),
                        torsion=tuple(x for x in diag if x >= 2))


def h1_closed(d: Diagram) -> AbelianGroup:
    """First homology of the closed manifold presented by a wedge-free
    diagram: the cokernel of its linking matrix."""
    if d.wedges:
        raise PreconditionError("h1_closed needs a diagram with no wedges")
    m = linking_matrix(d)
    return cokernel(m, m.cols)


def h1_cobordism(d: Diagram) -> AbelianGroup:
    """First homology of the manifold presented by any diagram.

    Generators are the meridians of all circles (wedge circles included:
    removing a chosen neighbourhood frees its meridians); each surgery
    circle imposes the relation  f_i m_i + sum_j lk(i, j) m_j = 0.
    """
    ids = [c.id for c in d.circles]
    surg = d.surgery_circles()
    rows = []
    for s in surg:
        row = []
        for cid in ids:
            if cid == s.id:
                row.append(s.framing)
            else:
                row.append(linking_number(d, s.id, cid))
        rows.append(tuple(row))
    if not rows:
        return AbelianGroup(rank=len(ids))
    return cokernel(IntMatrix(tuple(rows)), len(ids))


def boundary_profile(d: Diagram):
    """(source genera, target genera) in boundary order."""
    return (tuple(d.wedge(w).genus for w in d.source_order),
            tuple(d.wedge(w).genus for w in d.target_order))


def signature(d: Diagram) -> int:
    """Signature of the linking matrix of a wedge-free diagram, computed
    exactly by symmetric (Schur complement) reduction over the rationals."""
    if d.wedges:
        raise PreconditionError("signature needs a diagram with no wedges")
    m = linking_matrix(d)
    a = [[Fraction(x) for x in row] for row in m.entries]
    alive = list(range(m.rows))
    sig = 0
    while alive:
        k = next((i for i in alive if a[i][i] != 0), None)
        if k is not None:
            sig += 1 if a[k][k] > 0 else -1
            alive.remove(k)
            pivot = a[k][k]
            for i in alive:
                for j in alive:
                    a[i][j] -= a[i][k] * a[k][j] / pivot
            continue
        pair = next(((i, j) for i in alive for j in alive
                     if i < j and a[i][j] != 0), None)
        if pair is None:
            break   # remaining block is zero: contributes nothing
        i0, j0 = pair
        b = a[i0][j0]
        alive.remove(i0)
        alive.remove(j0)
        # hyperbolic block [[0, b], [b, 0]]: signature 0; fold it out
        for i in alive:
            for j in alive:
                a[i][j] -= (a[i][i0] * a[j0][j] + a[i][j0] * a[i0][j]) / b
    return sig
