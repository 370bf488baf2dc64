"""Totally normal cellular stratified spaces encoded as graded acyclic categories.

A cell is an object, its dimension is ``dim[obj]``, and ``Hom(mu, lam)``
is the finite set of lifts of the cell structure map of ``mu`` into the
domain of ``lam``.  Barycentric subdivision is the nondegenerate nerve of
this face category.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .acyclic import (
    FiniteAcyclicCategory,
    GradedPoset,
    Morphism,
    Poset,
    join_ids,
    nondegenerate_nerve,
    order_complex,
    poset_to_category,
)
from .complexes import DeltaSet, deltaset_homology
from .errors import InputError, InvalidStructure
from .report import ValidationReport


@dataclass(frozen=True)
class TotallyNormalCSS:
    category: FiniteAcyclicCategory
    dim: Mapping[str, int]

    @property
    def cells(self) -> tuple[str, ...]:
        return self.category.objects

    def f_vector(self) -> tuple[int, ...]:
        if not self.dim:
            return ()
        top = max(self.dim.values())
        return tuple(sum(1 for x in self.cells if self.dim[x] == n) for n in range(top + 1))

    @cached_property
    def _lifts_into(self) -> dict[str, list[Morphism]]:
        into: dict[str, list[Morphism]] = defaultdict(list)
        for m in self.category.morphisms:
            into[m.dst].append(m)
        return into


BoundaryPoset = GradedPoset


def boundary_poset(s: TotallyNormalCSS, lam: str) -> BoundaryPoset:
    """Poset of lifts ``b: mu -> lam``; ``b0 <= b1`` iff ``b0 = b1 o c`` for some c.

    Elements are identified by the id of the lift ``b`` (its source is
    determined by it).
    """
    if lam not in s.dim:
        raise InputError(f"unknown cell {lam!r}")
    c = s.category
    lifts = sorted(s._lifts_into.get(lam, ()), key=lambda m: m.id)
    ids = [b.id for b in lifts]
    pairs = {(b, b) for b in ids}
    for b1 in lifts:
        for cm in s._lifts_into.get(b1.src, ()):
            pairs.add((c.compose[b1.id, cm.id], b1.id))
    poset = Poset(tuple(ids), frozenset(pairs))
    return GradedPoset(poset, {b.id: s.dim[b.src] for b in lifts})


def _sphere_betti(n: int) -> tuple[int, ...]:
    """Betti numbers of S^(n-1), as expected for the boundary of an n-cell."""
    if n == 1:
        return (2,)
    return (1,) + (0,) * (n - 2) + (1,)


def validate_css(
    s: TotallyNormalCSS,
    closed_mode: bool = False,
    closed_cells: Iterable[str] | None = None,
) -> ValidationReport:
    """Check the combinatorial conditions of total normality.

    Always: dimension monotonicity, unique factorization, well-formed
    boundary posets.  With ``closed_mode`` also purity, the diamond
    condition, and homological sphericity of every cell boundary (or only
    of ``closed_cells`` when given).
    """
    report = ValidationReport()
    c = s.category
    report.extend(c.report)
    if not report.ok:
        return report
    for x in c.objects:
        d = s.dim.get(x)
        if not isinstance(d, int) or d < 0:
            report.add("dimension", x, f"missing or negative dimension {d!r}")
    if not report.ok:
        return report
    for m in c.morphisms:
        if s.dim[m.src] >= s.dim[m.dst]:
            report.add("dimension", m.id, f"dim {m.src}={s.dim[m.src]} not below dim {m.dst}={s.dim[m.dst]}")

    factor: dict[tuple[str, str], list[str]] = defaultdict(list)
    for (g, f), gf in c.compose.items():
        factor[g, gf].append(f)
    for (g, gf), fs in sorted(factor.items()):
        if len(fs) > 1:
            report.add(
                "unique-factorization",
                c.morphism[g].dst,
                f"{gf} = {g} o c for {len(fs)} distinct c: {sorted(fs)}",
            )

    boundaries: dict[str, BoundaryPoset] = {}
    for lam in c.objects:
        try:
            boundaries[lam] = boundary_poset(s, lam)
        except InvalidStructure as exc:
            for v in exc.report or ():
                report.add("boundary-poset", lam, f"{v.check}: {v.detail}")
    if not closed_mode:
        return report

    targets = c.objects if closed_cells is None else tuple(closed_cells)
    for lam in targets:
        n = s.dim[lam]
        if n == 0 or lam not in boundaries:
            continue
        bp = boundaries[lam]
        p = bp.poset
        for b in p.elements:
            if not p.strictly_above(b) and bp.dim[b] != n - 1:
                report.add("purity", lam, f"maximal boundary element {b} has dimension {bp.dim[b]}")
        for b in p.elements:
            if bp.dim[b] == n - 2:
                k = sum(1 for u in p.strictly_above(b) if bp.dim[u] == n - 1)
                if k != 2:
                    report.add("diamond", lam, f"{b} lies below {k} codimension-one lifts, expected 2")
        h = deltaset_homology(order_complex(p))
        if h.betti_trimmed() != _sphere_betti(n) or any(h.torsion):
            report.add("sphericity", lam, f"boundary homology {h.describe()} is not that of S^{n - 1}")
    return report


def require_valid_css(s: TotallyNormalCSS) -> None:
    report = validate_css(s)
    if not report.ok:
        raise InvalidStructure("invalid cellular stratified space:\n" + str(report), report)


def barycentric_subdivision(s: TotallyNormalCSS) -> DeltaSet:
    require_valid_css(s)
    return nondegenerate_nerve(s.category)


# ---------------------------------------------------------------------------
# constructions


def _apply_injection(d: DeltaSet, cell: str, n: int, image: tuple[int, ...]) -> str:
    removed = [i for i in range(n + 1) if i not in image]
    for i in reversed(removed):
        cell = d.faces[cell][i]
    return cell


def css_of_deltaset(d: DeltaSet) -> TotallyNormalCSS:
    """Cells of ``d``; a morphism tau -> sigma per injection u with X(u)(sigma) = tau."""
    dim = dict(d.dim_of)
    morphisms: list[Morphism] = []
    key: dict[tuple[str, tuple[int, ...]], str] = {}
    by_target: dict[str, list[tuple[str, tuple[int, ...]]]] = defaultdict(list)
    for n, layer in enumerate(d.cells):
        for sigma in layer:
            for m in range(n):
                for image in combinations(range(n + 1), m + 1):
                    tau = _apply_injection(d, sigma, n, image)
                    mid = join_ids([tau, sigma, "".join(f"{i}," for i in image)], "~")
                    morphisms.append(Morphism(mid, tau, sigma))
                    key[sigma, image] = mid
                    by_target[sigma].append((tau, image))
    compose = {}
    for rho, entries in by_target.items():
        for sigma, v in entries:
            for tau, u in by_target.get(sigma, ()):
                vu = tuple(v[i] for i in u)
                compose[key[rho, v], key[sigma, u]] = key[rho, vu]
    cat = FiniteAcyclicCategory(tuple(c for layer in d.cells for c in layer), tuple(morphisms), compose)
    return TotallyNormalCSS(cat, dim)


def css_of_regular_poset(p: Poset, dim: Mapping[str, int]) -> TotallyNormalCSS:
    for a, b in p.strict_pairs():
        if dim[a] >= dim[b]:
            raise InvalidStructure(f"dimension does not increase along {a} < {b}")
    return TotallyNormalCSS(poset_to_category(p), {x: dim[x] for x in p.elements})


def simplex_boundary_poset(n: int) -> tuple[Poset, dict[str, int]]:
    """Face poset of the boundary of the n-simplex with face dimensions."""
    faces = [
        tuple(s)
        for k in range(1, n + 1)
        for s in combinations(range(n + 1), k)
    ]
    name = {f: "".join(str(i) for i in f) for f in faces}
    pairs = [(name[a], name[b]) for a in faces for b in faces if set(a) <= set(b)]
    p = Poset(tuple(sorted(name.values())), frozenset(pairs))
    return p, {name[f]: len(f) - 1 for f in faces}


# ---------------------------------------------------------------------------
# fixtures


def _css(objects: dict[str, int], morphisms: list[tuple[str, str, str]], compose: dict[tuple[str, str], str]) -> TotallyNormalCSS:
    cat = FiniteAcyclicCategory(
        tuple(objects),
        tuple(Morphism(*m) for m in morphisms),
        dict(compose),
    )
    return TotallyNormalCSS(cat, dict(objects))


def _circle_min() -> TotallyNormalCSS:
    return _css({"e0": 0, "e1": 1}, [("b-", "e0", "e1"), ("b+", "e0", "e1")], {})


def _punctured_torus() -> TotallyNormalCSS:
    # e0xe1 is pinned in the first coordinate (x = -1 or x = +1 on the square)
    return _css(
        {"e0xe1": 1, "e1xe0": 1, "e1xe1": 2},
        [
            ("b01'", "e0xe1", "e1xe1"),
            ("b01''", "e0xe1", "e1xe1"),
            ("b10'", "e1xe0", "e1xe1"),
            ("b10''", "e1xe0", "e1xe1"),
        ],
        {},
    )


def _torus() -> TotallyNormalCSS:
    pt = _punctured_torus()
    # corner (x, y) of the square [-1, 1]^2
    morphisms = [(m.id, m.src, m.dst) for m in pt.category.morphisms] + [
        ("s-", "e0", "e1xe0"),
        ("s+", "e0", "e1xe0"),
        ("t-", "e0", "e0xe1"),
        ("t+", "e0", "e0xe1"),
        ("c--", "e0", "e1xe1"),
        ("c-+", "e0", "e1xe1"),
        ("c+-", "e0", "e1xe1"),
        ("c++", "e0", "e1xe1"),
    ]
    compose = {
        # b10' is the side y = -1, b10'' is y = +1; s-/s+ pick x = -1/+1 on it
        ("b10'", "s-"): "c--",
        ("b10'", "s+"): "c+-",
        ("b10''", "s-"): "c-+",
        ("b10''", "s+"): "c++",
        # b01' is the side x = -1, b01'' is x = +1; t-/t+ pick y = -1/+1
        ("b01'", "t-"): "c--",
        ("b01'", "t+"): "c-+",
        ("b01''", "t-"): "c+-",
        ("b01''", "t+"): "c++",
    }
    return _css({"e0": 0, "e0xe1": 1, "e1xe0": 1, "e1xe1": 2}, morphisms, compose)


def _rp2() -> TotallyNormalCSS:
    return _css(
        {"e0": 0, "e1": 1, "e2": 2},
        [
            ("s-", "e0", "e1"),
            ("s+", "e0", "e1"),
            ("t1", "e1", "e2"),
            ("t2", "e1", "e2"),
            ("p1", "e0", "e2"),
            ("p2", "e0", "e2"),
        ],
        {("t1", "s-"): "p1", ("t1", "s+"): "p2", ("t2", "s-"): "p2", ("t2", "s+"): "p1"},
    )


def _interval_cell(n: int = 2) -> TotallyNormalCSS:
    return _css({"e0": 0, f"e{n}": n}, [("b", "e0", f"e{n}")], {})


FIXTURES = {
    "circle_min": _circle_min,
    "punctured_torus": _punctured_torus,
    "torus": _torus,
    "rp2": _rp2,
    "interval_cell": _interval_cell,
}


def fixture(name: str) -> TotallyNormalCSS:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise InputError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


def sd_homology(s: TotallyNormalCSS):
    return deltaset_homology(barycentric_subdivision(s))

