"""Exact Gaussian conditional independence from rational covariance matrices.

Everything here is exact over the rationals: faithfulness is a zero/nonzero
dichotomy, so a floating-point test of a partial covariance would make the
axiom checkers unsound.  Decimal input is parsed to exact fractions.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import MatrixError, ParseError
from .graphs import LINE, MixedGraph
from .limits import DEFAULT_CAPS
from .models import IndependenceModel, model_from_elementary


@dataclass(frozen=True)
class RationalMatrix:
    """Square matrix of exact fractions with row/column node labels."""

    labels: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise MatrixError("duplicate labels")
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise MatrixError(f"matrix must be {n}x{n} to match its labels")

    @classmethod
    def from_rows(cls, labels: Sequence[str], rows: Iterable[Iterable]) -> "RationalMatrix":
        frac_rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        return cls(tuple(labels), frac_rows)

    @classmethod
    def identity(cls, labels: Sequence[str]) -> "RationalMatrix":
        n = len(labels)
        return cls(
            tuple(labels),
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)),
        )

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def entry(self, a: str, b: str) -> Fraction:
        return self.rows[self._index[a]][self._index[b]]

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.n) for j in range(i + 1, self.n)
        )


def leading_principal_minors(m: RationalMatrix) -> list[Fraction]:
    """Determinants of the top-left k x k blocks, k = 1..n, computed exactly."""
    return [_det([row[: k + 1] for row in m.rows[: k + 1]]) for k in range(m.n)]


def _det(rows: list[Sequence[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / inv
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


def is_positive_definite(m: RationalMatrix) -> bool:
    """All leading principal minors strictly positive (exact)."""
    if not m.is_symmetric():
        return False
    return all(minor > 0 for minor in leading_principal_minors(m))


def is_m_matrix(m: RationalMatrix) -> bool:
    """Positive diagonal and non-positive off-diagonal entries."""
    n = m.n
    for i in range(n):
        if m.rows[i][i] <= 0:
            return False
        for j in range(n):
            if i != j and m.rows[i][j] > 0:
                return False
    return True


def inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact Gauss-Jordan inverse; raises on singular input."""
    n = m.n
    a = [list(row) for row in m.rows]
    b = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise MatrixError("matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        inv_p = a[col][col]
        a[col] = [x / inv_p for x in a[col]]
        b[col] = [x / inv_p for x in b[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                b[r] = [x - factor * y for x, y in zip(b[r], b[col])]
    return RationalMatrix(m.labels, tuple(tuple(row) for row in b))


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a x = b by exact elimination; `a` is invertible by construction."""
    n = len(a)
    a = [row[:] for row in a]
    b = b[:]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        inv_p = a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / inv_p
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
                b[r] -= factor * b[col]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc -= a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def partial_covariance(m: RationalMatrix, i: int, j: int, given: Sequence[int]) -> Fraction:
    """sigma_ij - sigma_iC (sigma_CC)^-1 sigma_Cj, exactly."""
    if not given:
        return m.rows[i][j]
    sub = [[m.rows[r][c] for c in given] for r in given]
    rhs = [m.rows[r][j] for r in given]
    x = _solve(sub, rhs)
    acc = m.rows[i][j]
    for idx, r in enumerate(given):
        acc -= m.rows[i][r] * x[idx]
    return acc


def model_from_covariance(
    sigma: RationalMatrix, *, cap: int = DEFAULT_CAPS.model_nodes
) -> IndependenceModel:
    """The independence model of the regular Gaussian with this covariance.

    An elementary statement holds exactly when the partial covariance is
    zero; set statements follow from their elementary ones, which is valid
    because regular Gaussian models satisfy composition and decomposition.
    """
    if sigma.n > cap:
        raise MatrixError(f"matrix has {sigma.n} rows, above the cap {cap}")
    if not sigma.is_symmetric():
        bad = next(
            (i, j)
            for i in range(sigma.n)
            for j in range(sigma.n)
            if sigma.rows[i][j] != sigma.rows[j][i]
        )
        raise MatrixError(
            f"covariance must be symmetric; entries ({sigma.labels[bad[0]]},{sigma.labels[bad[1]]}) differ"
        )
    for k, minor in enumerate(leading_principal_minors(sigma)):
        if minor <= 0:
            raise MatrixError(
                f"covariance is not positive definite: leading principal minor {k + 1} is {minor}"
            )
    order = sorted(range(sigma.n), key=lambda r: sigma.labels[r])
    ground = tuple(sigma.labels[r] for r in order)
    n = sigma.n
    elem: dict[tuple[int, int], int] = {}
    for a in range(n):
        for b in range(a + 1, n):
            i, j = order[a], order[b]
            bits = 0
            rest = [p for p in range(n) if p != a and p != b]
            for sub in range(1 << len(rest)):
                given = [order[rest[k]] for k in range(len(rest)) if (sub >> k) & 1]
                if partial_covariance(sigma, i, j, given) == 0:
                    cmask = 0
                    for k in range(len(rest)):
                        if (sub >> k) & 1:
                            cmask |= 1 << rest[k]
                    bits |= 1 << cmask
            elem[(a, b)] = bits
    return model_from_elementary(ground, elem)


def model_from_concentration(
    k_matrix: RationalMatrix, *, cap: int = DEFAULT_CAPS.model_nodes
) -> IndependenceModel:
    """Same, with the matrix read as a concentration (inverse covariance)."""
    if not k_matrix.is_symmetric():
        raise MatrixError("concentration matrix must be symmetric")
    return model_from_covariance(inverse(k_matrix), cap=cap)


def adjacency_weight_matrix(g: MixedGraph, eps: Fraction | int | str) -> RationalMatrix:
    """Identity plus eps at adjacent pairs of an undirected graph.

    With positive eps this is the classical candidate covariance for a
    distribution faithful to the graph; with -eps it is the matching
    concentration matrix (an M-matrix by construction).
    """
    if any(e.kind != LINE for e in g.edges):
        raise MatrixError("adjacency weight matrix needs an undirected (lines-only) graph")
    eps = Fraction(eps)
    labels = tuple(sorted(g.nodes))
    rows = []
    for a in labels:
        row = []
        for b in labels:
            if a == b:
                row.append(Fraction(1))
            elif g.is_adjacent(a, b):
                row.append(eps)
            else:
                row.append(Fraction(0))
        rows.append(tuple(row))
    return RationalMatrix(labels, tuple(rows))


# ----------------------------------------------------------------------
# CSV format: header row of labels, then one row of `p/q` or decimal entries
# per label, in header order.
# ----------------------------------------------------------------------


def parse_matrix_csv(text: str, *, path: str | None = None) -> RationalMatrix:
    rows_raw = [
        (lineno, row)
        for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1)
        if row and not (len(row) >= 1 and row[0].lstrip().startswith("#"))
        and any(cell.strip() for cell in row)
    ]
    if not rows_raw:
        raise ParseError("empty matrix file", path=path)
    header = [cell.strip() for cell in rows_raw[0][1]]
    n = len(header)
    if len(rows_raw) - 1 != n:
        raise ParseError(
            f"expected {n} data rows after the header, found {len(rows_raw) - 1}", path=path
        )
    data = []
    for lineno, row in rows_raw[1:]:
        cells = [cell.strip() for cell in row]
        if len(cells) != n:
            raise ParseError(f"expected {n} entries, found {len(cells)}", path=path, line=lineno)
        parsed = []
        for cell in cells:
            try:
                parsed.append(Fraction(cell))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"cannot parse entry {cell!r} as a rational", path=path, line=lineno)
        data.append(tuple(parsed))
    try:
        return RationalMatrix(tuple(header), tuple(data))
    except MatrixError as exc:
        raise ParseError(str(exc), path=path) from None


def matrix_to_csv(m: RationalMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(m.labels)
    for row in m.rows:
        writer.writerow([str(x) for x in row])
    return out.getvalue()
