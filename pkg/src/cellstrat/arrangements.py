"""Face posets of rational hyperplane arrangements and higher order Salvetti complexes.

A (higher) sign vector is a tuple of ints: ``0`` for a point on the
hyperplane and ``s * j`` (s = +-1, 1 <= j <= level) for ``s e_j``.  At
level 1 this is the usual ``{-1, 0, +1}`` sign vector.

Realizability is decided exactly with Fourier-Motzkin elimination over
``fractions.Fraction``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .acyclic import Poset, order_complex
from .complexes import DeltaSet
from .errors import InvalidStructure

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class AffineForm:
    """The affine function ``x -> <coeffs, x> + const``."""

    coeffs: Vector
    const: Fraction = Fraction(0)

    @classmethod
    def of(cls, coeffs: Iterable, const=0) -> "AffineForm":
        return cls(tuple(Fraction(c) for c in coeffs), Fraction(const))

    def __call__(self, x: Sequence) -> Fraction:
        return sum((a * xi for a, xi in zip(self.coeffs, x)), Fraction(0)) + self.const

    def __neg__(self) -> "AffineForm":
        return AffineForm(tuple(-a for a in self.coeffs), -self.const)

    def scaled(self, s) -> "AffineForm":
        return AffineForm(tuple(a * s for a in self.coeffs), self.const * s)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_constant(self) -> bool:
        return not any(self.coeffs)


# ---------------------------------------------------------------------------
# exact linear feasibility


def _solve_equalities(equalities: Sequence[AffineForm], n: int):
    """Parametrise {x : f(x) = 0 for f in equalities} as x = base + basis * t.

    Returns ``None`` when inconsistent, else ``(base, basis, rank)`` where
    ``basis`` is a list of direction vectors.
    """
    rows = [list(f.coeffs) + [-f.const] for f in equalities]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][col]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for row in rows[r:]:
        if row[n] != 0:
            return None
    free = [c for c in range(n) if c not in pivots]
    base = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        base[col] = rows[i][n]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -rows[i][fc]
        basis.append(v)
    return base, basis, len(pivots)


def _restrict(f: AffineForm, base, basis) -> tuple[Vector, Fraction]:
    coeffs = tuple(sum((a * b for a, b in zip(f.coeffs, v)), Fraction(0)) for v in basis)
    return coeffs, f(base)


def _normalise(coeffs: Vector, const: Fraction, strict: bool):
    lead = next((abs(a) for a in coeffs if a != 0), None)
    if lead is None or lead == 1:
        return coeffs, const, strict
    return tuple(a / lead for a in coeffs), const / lead, strict


def _fourier_motzkin(constraints, nvars: int, rng: random.Random | None):
    """Decide ``a.t + c > 0`` (strict) / ``>= 0`` systems; return a witness t or None."""
    system = {_normalise(*con) for con in constraints}
    eliminated = []
    for k in range(nvars - 1, -1, -1):
        lower, upper, rest = [], [], []
        for coeffs, const, strict in system:
            a = coeffs[k]
            if a > 0:
                lower.append((coeffs, const, strict))
            elif a < 0:
                upper.append((coeffs, const, strict))
            else:
                rest.append((coeffs, const, strict))
        eliminated.append((k, lower, upper))
        new = set(rest)
        for lc, lk, ls in lower:
            for uc, uk, us in upper:
                # lc[k] > 0 > uc[k]; cancel variable k with positive multipliers
                p, q = -uc[k], lc[k]
                coeffs = tuple(p * x + q * y for x, y in zip(lc, uc))
                coeffs = coeffs[:k] + (Fraction(0),) + coeffs[k + 1 :]
                new.add(_normalise(coeffs, p * lk + q * uk, ls or us))
        system = new
        if len(system) > 20000:
            raise InvalidStructure("Fourier-Motzkin system too large")
    for coeffs, const, strict in system:
        if (strict and const <= 0) or (not strict and const < 0):
            return None
    t = [Fraction(0)] * nvars
    for k, lower, upper in reversed(eliminated):
        t[k] = _pick(k, lower, upper, t, rng)
    return t


def _pick(k, lower, upper, t, rng):
    def bound(coeffs, const):
        partial = sum((a * v for i, (a, v) in enumerate(zip(coeffs, t)) if i != k), Fraction(0))
        return -(partial + const) / coeffs[k]

    lo = max(((bound(c, k0), s) for c, k0, s in lower), default=None, key=lambda b: (b[0], b[1]))
    hi = min(((bound(c, k0), s) for c, k0, s in upper), default=None, key=lambda b: (b[0], not b[1]))
    jitter = Fraction(rng.randint(1, 99), 100) if rng else Fraction(1, 2)
    if lo is None and hi is None:
        return Fraction(rng.randint(-3, 3)) if rng else Fraction(0)
    if hi is None:
        return lo[0] + 1 + jitter if lo[1] else lo[0] + jitter
    if lo is None:
        return hi[0] - 1 - jitter if hi[1] else hi[0] - jitter
    if lo[0] == hi[0]:
        return lo[0]
    return lo[0] + (hi[0] - lo[0]) * jitter


def find_witness(
    equalities: Sequence[AffineForm],
    strict_positive: Sequence[AffineForm] = (),
    nonnegative: Sequence[AffineForm] = (),
    dim: int | None = None,
    rng: random.Random | None = None,
) -> list[Fraction] | None:
    """An exact rational point with f = 0, g > 0, h >= 0 as listed, or None."""
    forms = [*equalities, *strict_positive, *nonnegative]
    n = dim if dim is not None else (forms[0].dim if forms else 0)
    solved = _solve_equalities(equalities, n)
    if solved is None:
        return None
    base, basis, _ = solved
    cons = [(*_restrict(g, base, basis), True) for g in strict_positive]
    cons += [(*_restrict(h, base, basis), False) for h in nonnegative]
    t = _fourier_motzkin(cons, len(basis), rng)
    if t is None:
        return None
    return [b + sum((ti * v[i] for ti, v in zip(t, basis)), Fraction(0)) for i, b in enumerate(base)]


def feasible(
    equalities: Sequence[AffineForm],
    strict_positive: Sequence[AffineForm] = (),
    nonnegative: Sequence[AffineForm] = (),
    dim: int | None = None,
) -> bool:
    return find_witness(equalities, strict_positive, nonnegative, dim) is not None


def flat_dimension(equalities: Sequence[AffineForm], n: int) -> int:
    solved = _solve_equalities(equalities, n)
    if solved is None:
        return -1
    return n - solved[2]


# ---------------------------------------------------------------------------
# arrangements and faces


@dataclass(frozen=True)
class Arrangement:
    dim: int
    forms: tuple[AffineForm, ...]

    def __post_init__(self):
        for i, f in enumerate(self.forms):
            if f.dim != self.dim:
                raise InvalidStructure(f"form {i} has {f.dim} coefficients in dimension {self.dim}")
            if f.is_constant():
                raise InvalidStructure(f"form {i} has zero linear part")
        for i, j in combinations(range(len(self.forms)), 2):
            if _same_hyperplane(self.forms[i], self.forms[j]):
                raise InvalidStructure(f"forms {i} and {j} define the same hyperplane")

    def __len__(self) -> int:
        return len(self.forms)


def _same_hyperplane(f: AffineForm, g: AffineForm) -> bool:
    k = next(i for i, a in enumerate(f.coeffs) if a != 0)
    if g.coeffs[k] == 0:
        return False
    s = g.coeffs[k] / f.coeffs[k]
    return f.scaled(s) == g


def braid_arrangement(k: int) -> Arrangement:
    if k < 2:
        raise ValueError("braid arrangement needs k >= 2")
    forms = []
    for i, j in combinations(range(k), 2):
        c = [0] * k
        c[i], c[j] = 1, -1
        forms.append(AffineForm.of(c))
    return Arrangement(k, tuple(forms))


def sign_label(signs: Sequence[int], level: int) -> str:
    if level == 1:
        return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in signs)
    return ",".join("0" if s == 0 else f"{'+' if s > 0 else '-'}e{abs(s)}" for s in signs)


def parse_sign_label(label: str, level: int) -> tuple[int, ...]:
    if level == 1:
        return tuple({"+": 1, "-": -1, "0": 0}[ch] for ch in label)
    out = []
    for part in label.split(","):
        out.append(0 if part == "0" else (1 if part[0] == "+" else -1) * int(part[2:]))
    return tuple(out)


@dataclass(frozen=True)
class Face:
    signs: tuple[int, ...]
    dim: int
    level: int = 1

    @property
    def label(self) -> str:
        return sign_label(self.signs, self.level)

    def is_complement(self) -> bool:
        return all(self.signs)


def sign_leq(a: int, b: int) -> bool:
    """Order on S_level: 0 < +-e_1 < ... < +-e_level, +e_j and -e_j incomparable."""
    return a == b or abs(a) < abs(b)


def face_leq(f: Face, g: Face) -> bool:
    return all(sign_leq(a, b) for a, b in zip(f.signs, g.signs))


@dataclass(frozen=True)
class FacePoset:
    faces: tuple[Face, ...]
    level: int

    @cached_property
    def poset(self) -> Poset:
        labels = tuple(f.label for f in self.faces)
        rel = frozenset(
            (f.label, g.label) for f in self.faces for g in self.faces if face_leq(f, g)
        )
        return Poset(labels, rel)

    @cached_property
    def by_label(self) -> dict[str, Face]:
        return {f.label: f for f in self.faces}

    def dim_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            out[f.dim] = out.get(f.dim, 0) + 1
        return dict(sorted(out.items()))

    def __len__(self) -> int:
        return len(self.faces)


def sign_system(a: Arrangement, signs: Sequence[int]):
    """Equalities and strict inequalities of a level-1 sign (prefix) vector."""
    eq = [a.forms[i] for i, s in enumerate(signs) if s == 0]
    strict = [a.forms[i].scaled(s) for i, s in enumerate(signs) if s != 0]
    return eq, strict


def level_system(a: Arrangement, signs: Sequence[int], j: int):
    """Constraints on the j-th copy of R^n imposed by a higher sign (prefix) vector.

    ``s e_m`` forces ``f(x_j) = 0`` above level m, sign s at level m, and
    nothing below it.
    """
    eq, strict = [], []
    for i, s in enumerate(signs):
        m = abs(s)
        if m == 0 or m < j:
            eq.append(a.forms[i])
        elif m == j:
            strict.append(a.forms[i].scaled(1 if s > 0 else -1))
    return eq, strict


def enumerate_faces(a: Arrangement) -> FacePoset:
    """All realizable sign vectors, by prefix extension with feasibility pruning."""
    partial: list[tuple[int, ...]] = [()]
    for _ in a.forms:
        nxt = []
        for prefix in partial:
            for s in (-1, 0, 1):
                cand = prefix + (s,)
                if feasible(*sign_system(a, cand), dim=a.dim):
                    nxt.append(cand)
        partial = nxt
    faces = [Face(sv, flat_dimension(sign_system(a, sv)[0], a.dim), 1) for sv in partial]
    faces.sort(key=lambda f: f.signs)
    return FacePoset(tuple(faces), 1)


def _higher_feasible(a: Arrangement, signs: Sequence[int], level: int) -> bool:
    return all(feasible(*level_system(a, signs, j), dim=a.dim) for j in range(1, level + 1))


def higher_face_dimension(a: Arrangement, signs: Sequence[int], level: int) -> int:
    return sum(flat_dimension(level_system(a, signs, j)[0], a.dim) for j in range(1, level + 1))


def enumerate_higher_faces(a: Arrangement, level: int) -> FacePoset:
    if level < 1:
        raise ValueError("level must be >= 1")
    values = [0] + [s * j for j in range(1, level + 1) for s in (-1, 1)]
    partial: list[tuple[int, ...]] = [()]
    for _ in a.forms:
        partial = [
            prefix + (v,)
            for prefix in partial
            for v in values
            if _higher_feasible(a, prefix + (v,), level)
        ]
    faces = [Face(sv, higher_face_dimension(a, sv, level), level) for sv in partial]
    faces.sort(key=lambda f: f.signs)
    return FacePoset(tuple(faces), level)


def complement_subposet(fp: FacePoset) -> FacePoset:
    return FacePoset(tuple(f for f in fp.faces if f.is_complement()), fp.level)


def salvetti(a: Arrangement, level: int) -> DeltaSet:
    """Order complex of the complement part of the level-th order face poset."""
    if level < 2:
        raise ValueError("the higher order Salvetti complex needs level >= 2")
    return order_complex(complement_subposet(enumerate_higher_faces(a, level)).poset)


# ---------------------------------------------------------------------------
# independent re-checks


def face_witness(a: Arrangement, face: Face, rng: random.Random | None = None) -> list[list[Fraction]] | None:
    """One exact point per level inside the face, or None."""
    pts = []
    for j in range(1, face.level + 1):
        x = find_witness(*level_system(a, face.signs, j), dim=a.dim, rng=rng)
        if x is None:
            return None
        pts.append(x)
    return pts


def higher_sign(values: Sequence[Fraction]) -> int:
    """sign_l of a vector in R^l: s * j where j is the last nonzero coordinate."""
    for j in range(len(values), 0, -1):
        v = values[j - 1]
        if v != 0:
            return j if v > 0 else -j
    return 0


def sign_vector_at(a: Arrangement, point_per_level: Sequence[Sequence[Fraction]]) -> tuple[int, ...]:
    return tuple(higher_sign([f(x) for x in point_per_level]) for f in a.forms)


def face_in_closure(a: Arrangement, lower: Face, upper: Face) -> bool:
    """Exact test that the face ``lower`` lies in the closure of ``upper``.

    Each constraint of ``upper`` is relaxed to its closed form and must hold
    on all of ``lower``: no point of ``lower`` may violate it.
    """
    for j in range(1, upper.level + 1):
        eq, strict = level_system(a, lower.signs, j)
        up_eq, up_strict = level_system(a, upper.signs, j)
        for f in up_eq:
            if feasible(eq, strict + [f], dim=a.dim) or feasible(eq, strict + [-f], dim=a.dim):
                return False
        for g in up_strict:
            if feasible(eq, strict + [-g], dim=a.dim):
                return False
    return True
