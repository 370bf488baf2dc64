"""Finite posets, finite acyclic categories, and their nerves.

Identities are never stored: a category lists only its non-identity
morphisms and the composites of composable non-identity pairs.  The
nondegenerate nerve then needs no degeneracy bookkeeping.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .complexes import DeltaSet, make_deltaset
from .errors import InvalidStructure
from .report import ValidationReport


def escape(s: str, specials: str) -> str:
    out = s.replace("\\", "\\\\")
    for ch in specials:
        out = out.replace(ch, "\\" + ch)
    return out


def join_ids(parts: Iterable[str], sep: str) -> str:
    """Join ids so that the result determines the parts uniquely."""
    return sep.join(escape(p, sep) for p in parts)


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class Poset:
    elements: tuple[str, ...]
    relation: frozenset[tuple[str, str]]

    def __post_init__(self):
        report = validate_poset(self)
        if not report.ok:
            raise InvalidStructure("invalid poset:\n" + str(report), report)

    @classmethod
    def from_relation(cls, elements: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "Poset":
        """Reflexive-transitive closure of ``pairs`` (which must generate an order)."""
        elements = tuple(elements)
        up: dict[str, set[str]] = {a: {a} for a in elements}
        succ: dict[str, set[str]] = defaultdict(set)
        for a, b in pairs:
            succ[a].add(b)
        for a in elements:
            stack = list(succ[a])
            while stack:
                b = stack.pop()
                if b not in up[a]:
                    up[a].add(b)
                    stack.extend(succ[b])
        return cls(elements, frozenset((a, b) for a in elements for b in up[a]))

    @cached_property
    def _up(self) -> dict[str, frozenset[str]]:
        up: dict[str, set[str]] = {a: set() for a in self.elements}
        for a, b in self.relation:
            up.setdefault(a, set()).add(b)
        return {a: frozenset(s) for a, s in up.items()}

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def less(self, a: str, b: str) -> bool:
        return a != b and (a, b) in self.relation

    def strictly_above(self, a: str) -> frozenset[str]:
        return self._up[a] - {a}

    def strict_pairs(self) -> list[tuple[str, str]]:
        return sorted((a, b) for a, b in self.relation if a != b)

    def covers(self) -> list[tuple[str, str]]:
        out = []
        for a in self.elements:
            above = self.strictly_above(a)
            for b in above:
                if not any(self.less(c, b) for c in above if c != b):
                    out.append((a, b))
        return sorted(out)

    def induced(self, keep: Iterable[str]) -> "Poset":
        keep_set = set(keep)
        elems = tuple(e for e in self.elements if e in keep_set)
        rel = frozenset((a, b) for a, b in self.relation if a in keep_set and b in keep_set)
        return Poset(elems, rel)

    def __len__(self) -> int:
        return len(self.elements)


def validate_poset(p: Poset) -> ValidationReport:
    report = ValidationReport()
    elems = set(p.elements)
    if len(elems) != len(p.elements):
        report.add("duplicate-id", "", "repeated poset element")
    up: dict[str, set[str]] = {a: set() for a in p.elements}
    for a, b in p.relation:
        if a not in elems or b not in elems:
            report.add("structure", f"{a}<={b}", "relation mentions an unknown element")
            continue
        up[a].add(b)
    for a in p.elements:
        if a not in up[a]:
            report.add("reflexivity", a, "a <= a missing")
    for a in p.elements:
        for b in up[a]:
            if b != a and a in up[b]:
                if a < b:
                    report.add("antisymmetry", a, f"{a} <= {b} and {b} <= {a}")
            missing = up[b] - up[a]
            if missing:
                report.add("transitivity", a, f"{a} <= {b} <= {sorted(missing)[0]} but not {a} <= {sorted(missing)[0]}")
    return report


@dataclass(frozen=True)
class GradedPoset:
    """A poset together with a dimension for each element."""

    poset: Poset
    dim: Mapping[str, int]

    def f_vector(self) -> tuple[int, ...]:
        if not self.dim:
            return ()
        top = max(self.dim.values())
        return tuple(sum(1 for d in self.dim.values() if d == n) for n in range(top + 1))


# ---------------------------------------------------------------------------
# acyclic categories


@dataclass(frozen=True)
class Morphism:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class FiniteAcyclicCategory:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...] = ()
    compose: Mapping[tuple[str, str], str] = field(default_factory=dict)

    @cached_property
    def morphism(self) -> dict[str, Morphism]:
        return {m.id: m for m in self.morphisms}

    @cached_property
    def outgoing(self) -> dict[str, tuple[Morphism, ...]]:
        out: dict[str, list[Morphism]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            out.setdefault(m.src, []).append(m)
        return {x: tuple(sorted(ms, key=lambda m: m.id)) for x, ms in out.items()}

    @cached_property
    def _hom(self) -> dict[tuple[str, str], tuple[Morphism, ...]]:
        hom: dict[tuple[str, str], list[Morphism]] = defaultdict(list)
        for m in self.morphisms:
            hom[m.src, m.dst].append(m)
        return {k: tuple(sorted(v, key=lambda m: m.id)) for k, v in hom.items()}

    def hom(self, x: str, y: str) -> tuple[Morphism, ...]:
        """Non-identity morphisms x -> y."""
        return self._hom.get((x, y), ())

    def comp(self, g: str, f: str) -> str:
        return self.compose[g, f]

    @cached_property
    def report(self) -> ValidationReport:
        return validate_category(self)

    def require_valid(self) -> None:
        if not self.report.ok:
            raise InvalidStructure("invalid acyclic category:\n" + str(self.report), self.report)


def validate_category(c: FiniteAcyclicCategory) -> ValidationReport:
    report = ValidationReport()
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        report.add("duplicate-id", "", "repeated object id")
    ids: dict[str, Morphism] = {}
    for m in c.morphisms:
        if m.id in ids:
            report.add("duplicate-id", m.id, "repeated morphism id")
        ids[m.id] = m
        if m.src not in objs or m.dst not in objs:
            report.add("structure", m.id, f"endpoint not an object: {m.src} -> {m.dst}")
        if m.src == m.dst:
            report.add("acyclicity", m.src, f"non-identity endomorphism {m.id}")
    pairs = {(m.src, m.dst) for m in c.morphisms if m.src != m.dst}
    for x, y in sorted(pairs):
        if x < y and (y, x) in pairs:
            report.add("acyclicity", f"({x},{y})", f"Hom({x},{y}) and Hom({y},{x}) both nonempty")

    for (g, f), gf in sorted(c.compose.items()):
        if g not in ids or f not in ids:
            report.add("structure", f"{g}*{f}", "composition of unknown morphisms")
            continue
        if ids[f].dst != ids[g].src:
            report.add("structure", f"{g}*{f}", "composition listed for a non-composable pair")
            continue
        if gf not in ids:
            report.add("composition", f"{g}*{f}", f"composite {gf!r} is not a listed morphism")
            continue
        if ids[gf].src != ids[f].src or ids[gf].dst != ids[g].dst:
            report.add("composition", f"{g}*{f}", f"composite {gf} has wrong source or target")

    by_src: dict[str, list[Morphism]] = defaultdict(list)
    for m in c.morphisms:
        by_src[m.src].append(m)
    for f in c.morphisms:
        for g in by_src.get(f.dst, ()):
            if (g.id, f.id) not in c.compose:
                report.add("missing-composition", f"{g.id}*{f.id}", f"{f.id}: {f.src}->{f.dst}, {g.id}: {g.src}->{g.dst}")

    if report.ok:
        for f in c.morphisms:
            for g in by_src.get(f.dst, ()):
                gf = c.compose[g.id, f.id]
                for h in by_src.get(g.dst, ()):
                    left = c.compose[h.id, gf]
                    right = c.compose[c.compose[h.id, g.id], f.id]
                    if left != right:
                        report.add("associativity", f"{h.id}*{g.id}*{f.id}", f"(hg)f = {right} but h(gf) = {left}")
    return report


def underlying_poset(c: FiniteAcyclicCategory) -> Poset:
    c.require_valid()
    pairs = {(m.src, m.dst) for m in c.morphisms} | {(x, x) for x in c.objects}
    return Poset(tuple(c.objects), frozenset(pairs))


def poset_to_category(p: Poset) -> FiniteAcyclicCategory:
    """One morphism ``a<b`` for every strict pair; composition forced by uniqueness."""
    strict = p.strict_pairs()
    mid = {pair: join_ids(pair, "<") for pair in strict}
    morphisms = tuple(Morphism(mid[a, b], a, b) for a, b in strict)
    above: dict[str, list[str]] = defaultdict(list)
    for a, b in strict:
        above[a].append(b)
    compose = {}
    for a, b in strict:
        for c in above[b]:
            compose[mid[b, c], mid[a, b]] = mid[a, c]
    return FiniteAcyclicCategory(tuple(p.elements), morphisms, compose)


# ---------------------------------------------------------------------------
# nerves


@dataclass(frozen=True)
class Chain:
    """A composable string x_0 -f_1-> x_1 -> ... -f_n-> x_n of non-identity morphisms."""

    objects: tuple[str, ...]
    morphisms: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.morphisms)

    @property
    def id(self) -> str:
        parts = [self.objects[0]]
        for f, x in zip(self.morphisms, self.objects[1:]):
            parts += [f, x]
        return join_ids(parts, ">")


def nerve_chains(c: FiniteAcyclicCategory) -> list[list[Chain]]:
    """Nondegenerate chains grouped by length, each level in lexicographic order."""
    levels = [[Chain((x,)) for x in sorted(c.objects)]]
    while True:
        nxt = []
        for ch in levels[-1]:
            for m in c.outgoing.get(ch.objects[-1], ()):
                nxt.append(Chain(ch.objects + (m.dst,), ch.morphisms + (m.id,)))
        if not nxt:
            break
        nxt.sort(key=lambda ch: (ch.morphisms, ch.objects))
        levels.append(nxt)
    return levels


def chain_face(c: FiniteAcyclicCategory, ch: Chain, i: int) -> Chain:
    n = ch.length
    objs, ms = ch.objects, ch.morphisms
    if i == 0:
        return Chain(objs[1:], ms[1:])
    if i == n:
        return Chain(objs[:-1], ms[:-1])
    composite = c.compose[ms[i], ms[i - 1]]
    return Chain(objs[:i] + objs[i + 1 :], ms[: i - 1] + (composite,) + ms[i + 1 :])


def nondegenerate_nerve(c: FiniteAcyclicCategory) -> DeltaSet:
    c.require_valid()
    levels = nerve_chains(c)
    faces = {}
    for n, level in enumerate(levels):
        if n == 0:
            continue
        for ch in level:
            faces[ch.id] = tuple(chain_face(c, ch, i).id for i in range(n + 1))
    return make_deltaset([[ch.id for ch in level] for level in levels], faces)


def order_complex(p: Poset) -> DeltaSet:
    """Strict chains a_0 < ... < a_n with d_i deleting a_i."""
    above = {a: sorted(p.strictly_above(a)) for a in p.elements}
    levels: list[list[tuple[str, ...]]] = [[(a,) for a in sorted(p.elements)]]
    while True:
        nxt = [ch + (b,) for ch in levels[-1] for b in above[ch[-1]]]
        if not nxt:
            break
        nxt.sort()
        levels.append(nxt)
    faces = {}
    for n, level in enumerate(levels):
        if n == 0:
            continue
        for ch in level:
            faces[join_ids(ch, "<")] = tuple(join_ids(ch[:i] + ch[i + 1 :], "<") for i in range(n + 1))
    return make_deltaset([[join_ids(ch, "<") for ch in level] for level in levels], faces)
