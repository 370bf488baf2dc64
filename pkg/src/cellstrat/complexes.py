"""Delta-sets, integral chain complexes, Smith normal form and homology.

Matrices are handled sparsely: a boundary map is stored as a list of
columns, each column a ``{row_index: coefficient}`` dict.  All arithmetic
is on Python ints, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import InvalidStructure, InvariantViolation
from .report import ValidationReport

SparseColumns = list[dict[int, int]]


@dataclass(frozen=True)
class DeltaSet:
    """Graded cell sets with face operators.

    ``cells[n]`` lists the ids of the n-cells in canonical order and
    ``faces[c]`` is the tuple ``(d_0 c, ..., d_n c)`` for an n-cell ``c``
    with n >= 1.  0-cells have no entry (or an empty tuple).
    """

    cells: tuple[tuple[str, ...], ...]
    faces: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    @cached_property
    def dim_of(self) -> dict[str, int]:
        return {c: n for n, layer in enumerate(self.cells) for c in layer}

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {c: i for layer in self.cells for i, c in enumerate(layer)}

    @property
    def dimension(self) -> int:
        """Top nonempty degree, -1 for the empty Delta-set."""
        for n in range(len(self.cells) - 1, -1, -1):
            if self.cells[n]:
                return n
        return -1

    def counts(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.cells[: self.dimension + 1])

    def face(self, cell: str, i: int) -> str:
        return self.faces[cell][i]


def make_deltaset(layers: Sequence[Iterable[str]], faces: Mapping[str, Sequence[str]]) -> DeltaSet:
    cells = [tuple(layer) for layer in layers]
    while cells and not cells[-1]:
        cells.pop()
    return DeltaSet(tuple(cells), {c: tuple(f) for c, f in faces.items() if f})


def validate_deltaset(d: DeltaSet) -> ValidationReport:
    report = ValidationReport()
    seen: dict[str, int] = {}
    for n, layer in enumerate(d.cells):
        for c in layer:
            if c in seen:
                report.add("duplicate-id", c, f"appears in degrees {seen[c]} and {n}")
            seen[c] = n
    structural_ok: set[str] = set()
    for n, layer in enumerate(d.cells):
        for c in layer:
            fs = d.faces.get(c, ())
            if n == 0:
                if fs:
                    report.add("structure", c, "0-cell has face operators")
                continue
            if len(fs) != n + 1:
                report.add("structure", c, f"{n}-cell has {len(fs)} faces, expected {n + 1}")
                continue
            bad = False
            for i, f in enumerate(fs):
                if f not in seen:
                    report.add("structure", c, f"d_{i} targets missing id {f!r}")
                    bad = True
                elif seen[f] != n - 1:
                    report.add("structure", c, f"d_{i} targets {f!r} of degree {seen[f]}, expected {n - 1}")
                    bad = True
            if not bad:
                structural_ok.add(c)
    for c in d.faces:
        if c not in seen:
            report.add("structure", c, "face entry for an unknown cell")
    for n, layer in enumerate(d.cells):
        if n < 2:
            continue
        for c in layer:
            if c not in structural_ok:
                continue
            fs = d.faces[c]
            for j in range(n + 1):
                for i in range(j):
                    a, b = fs[j], fs[i]
                    if a not in structural_ok or b not in structural_ok:
                        continue
                    lhs = d.faces[a][i]
                    rhs = d.faces[b][j - 1]
                    if lhs != rhs:
                        report.add(
                            "delta-identity",
                            c,
                            f"d_{i} d_{j} = {lhs!r} but d_{j - 1} d_{i} = {rhs!r}",
                        )
    return report


def euler_characteristic(d: DeltaSet) -> int:
    return sum((-1) ** n * len(layer) for n, layer in enumerate(d.cells))


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class ChainComplex:
    """``boundaries[n]`` is the matrix of d_n : C_n -> C_{n-1} as sparse columns.

    ``boundaries[0]`` is the zero map out of C_0 (columns are empty dicts).
    """

    ranks: tuple[int, ...]
    boundaries: tuple[SparseColumns, ...]

    def dense(self, n: int) -> list[list[int]]:
        rows = self.ranks[n - 1] if n >= 1 else 0
        cols = self.boundaries[n] if 0 <= n < len(self.boundaries) else []
        out = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                out[i][j] = v
        return out


def chain_complex(d: DeltaSet) -> ChainComplex:
    index = d.index_of
    boundaries: list[SparseColumns] = [[{} for _ in d.cells[0]]] if d.cells else []
    for n in range(1, len(d.cells)):
        cols: SparseColumns = []
        for c in d.cells[n]:
            col: dict[int, int] = {}
            for i, f in enumerate(d.faces[c]):
                r = index[f]
                v = col.get(r, 0) + (-1) ** i
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)
            cols.append(col)
        boundaries.append(cols)
    cc = ChainComplex(tuple(len(layer) for layer in d.cells), tuple(boundaries))
    for n in range(2, len(boundaries)):
        if not boundary_squares_to_zero(cc, n):
            raise InvariantViolation(f"boundary composite d_{n - 1} d_{n} is nonzero")
    return cc


def boundary_squares_to_zero(cc: ChainComplex, n: int) -> bool:
    """True when d_{n-1} composed with d_n vanishes."""
    lower = cc.boundaries[n - 1]
    for col in cc.boundaries[n]:
        acc: dict[int, int] = {}
        for r, v in col.items():
            for r2, w in lower[r].items():
                acc[r2] = acc.get(r2, 0) + v * w
        if any(acc.values()):
            return False
    return True


# ---------------------------------------------------------------------------
# Smith normal form


class _Sparse:
    """Mutable sparse integer matrix with row and column incidence."""

    def __init__(self, columns: SparseColumns):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    self.rows.setdefault(i, {})[j] = v
                    self.cols.setdefault(j, set()).add(i)

    def _set(self, r: int, c: int, v: int) -> None:
        row = self.rows.setdefault(r, {})
        if v:
            row[c] = v
            self.cols.setdefault(c, set()).add(r)
        else:
            if c in row:
                del row[c]
                col = self.cols[c]
                col.discard(r)
                if not col:
                    del self.cols[c]
            if not row:
                del self.rows[r]

    def row_axpy(self, target: int, source: int, q: int) -> None:
        """row[target] -= q * row[source]"""
        trow = self.rows.get(target, {})
        for c, v in list(self.rows[source].items()):
            self._set(target, c, trow.get(c, 0) - q * v)
            trow = self.rows.get(target, {})

    def col_axpy(self, target: int, source: int, q: int) -> None:
        """col[target] -= q * col[source]"""
        for r in list(self.cols[source]):
            v = self.rows[r][source]
            self._set(r, target, self.rows[r].get(target, 0) - q * v)

    def drop(self, r: int, c: int) -> None:
        for c2 in list(self.rows.get(r, {})):
            self._set(r, c2, 0)
        for r2 in list(self.cols.get(c, ())):
            self._set(r2, c, 0)


def _diagonal(columns: SparseColumns) -> list[int]:
    """Absolute diagonal entries of a diagonalisation by unimodular row/column operations."""
    m = _Sparse(columns)
    diag: list[int] = []

    # unit pivots first: cheap, no coefficient growth
    progress = True
    while progress and m.cols:
        progress = False
        for c in sorted(m.cols):
            if c not in m.cols:
                continue
            best = None
            for r in m.cols[c]:
                if m.rows[r][c] in (1, -1):
                    key = (len(m.rows[r]), r)
                    if best is None or key < best:
                        best = key
            if best is None:
                continue
            r = best[1]
            p = m.rows[r][c]
            for r2 in list(m.cols[c]):
                if r2 != r:
                    m.row_axpy(r2, r, m.rows[r2][c] * p)
            m.drop(r, c)
            diag.append(1)
            progress = True

    # general phase: smallest absolute value pivot
    while m.cols:
        r, c = min(
            ((r, c) for r, row in m.rows.items() for c in row),
            key=lambda rc: (abs(m.rows[rc[0]][rc[1]]), len(m.rows[rc[0]]) * len(m.cols[rc[1]]), rc),
        )
        while True:
            p = m.rows[r][c]
            for r2 in list(m.cols[c]):
                if r2 != r:
                    m.row_axpy(r2, r, m.rows[r2][c] // p)
            for c2 in list(m.rows[r]):
                if c2 != c:
                    m.col_axpy(c2, c, m.rows[r][c2] // p)
            rest = [(abs(m.rows[r2][c]), r2, c) for r2 in m.cols[c] if r2 != r]
            rest += [(abs(v), r, c2) for c2, v in m.rows[r].items() if c2 != c]
            if not rest:
                break
            _, r, c = min(rest)
        diag.append(abs(p))
        m.drop(r, c)
    return diag


def _divisor_chain(diag: Iterable[int]) -> list[int]:
    units = [d for d in diag if d == 1]
    rest = sorted(d for d in diag if d != 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    return units + sorted(rest)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix and its rank.

    >>> smith_normal_form([[2, 4], [6, 8]])
    ([2, 4], 2)
    """
    ncols = max((len(row) for row in m), default=0)
    columns: SparseColumns = [{} for _ in range(ncols)]
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v:
                columns[j][i] = int(v)
    inv = _divisor_chain(_diagonal(columns))
    return inv, len(inv)


def sparse_invariants(columns: SparseColumns) -> list[int]:
    return _divisor_chain(_diagonal(columns))


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def groups(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """(betti, torsion) per degree with trailing trivial groups removed."""
        out = list(zip(self.betti, self.torsion))
        while out and out[-1] == (0, ()):
            out.pop()
        return tuple(out)

    def betti_trimmed(self) -> tuple[int, ...]:
        b = list(self.betti)
        while b and b[-1] == 0:
            b.pop()
        return tuple(b)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * b for n, b in enumerate(self.betti))

    def describe(self) -> str:
        parts = []
        for b, tors in self.groups() or ((0, ()),):
            terms = []
            if b:
                terms.append("Z" if b == 1 else f"Z^{b}")
            terms += [f"Z/{t}" for t in tors]
            parts.append(" + ".join(terms) if terms else "0")
        return "(" + ", ".join(parts) + ")"


def homology(cc: ChainComplex) -> HomologyResult:
    invariants = [sparse_invariants(cols) if n >= 1 else [] for n, cols in enumerate(cc.boundaries)]
    ranks = [len(inv) for inv in invariants] + [0]
    betti = []
    torsion = []
    for n, size in enumerate(cc.ranks):
        betti.append(size - ranks[n] - ranks[n + 1])
        nxt = invariants[n + 1] if n + 1 < len(invariants) else []
        torsion.append(tuple(d for d in nxt if d > 1))
    result = HomologyResult(tuple(betti), tuple(torsion))
    if result.euler_characteristic() != sum((-1) ** n * r for n, r in enumerate(cc.ranks)):
        raise InvariantViolation("Euler-Poincare identity failed")
    return result


def deltaset_homology(d: DeltaSet) -> HomologyResult:
    report = validate_deltaset(d)
    if not report.ok:
        raise InvalidStructure("invalid Delta-set:\n" + str(report), report)
    return homology(chain_complex(d))


# ---------------------------------------------------------------------------
# rational-rank oracle (independent of the SNF path)


def rational_rank(columns: SparseColumns) -> int:
    """Rank over Q by fraction-exact Gaussian elimination on columns."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for col in columns:
        v = {r: Fraction(x) for r, x in col.items() if x}
        while v:
            lead = max(v)
            if lead not in pivots:
                pivots[lead] = v
                rank += 1
                break
            piv = pivots[lead]
            f = v[lead] / piv[lead]
            for r, x in piv.items():
                y = v.get(r, 0) - f * x
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
    return rank


def rational_betti(cc: ChainComplex) -> tuple[int, ...]:
    ranks = [rational_rank(cols) if n >= 1 else 0 for n, cols in enumerate(cc.boundaries)] + [0]
    return tuple(size - ranks[n] - ranks[n + 1] for n, size in enumerate(cc.ranks))
