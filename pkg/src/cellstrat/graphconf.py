"""Cellular models of configuration spaces of graphs.

The ordered model: the product stratification of X^k cut by the braid
hyperplanes ``t_a = t_b`` for tokens sharing an edge, restricted to the
complement of the diagonals.  A cell places each token on a vertex or in
the interior of an edge, with a total order of the tokens on each edge.
A face is obtained by pushing the first token of an edge onto its tail
and/or the last token onto its head, as long as no two tokens collide.

Abrams' discretized model is implemented separately as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

from .acyclic import (
    Chain,
    FiniteAcyclicCategory,
    GradedPoset,
    Morphism,
    Poset,
    chain_face,
    nerve_chains,
)
from .complexes import DeltaSet, make_deltaset
from .errors import InvalidStructure
from .strata import TotallyNormalCSS, require_valid_css


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def ends(self) -> set[str]:
        return {self.tail, self.head}


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InvalidStructure("repeated vertex id")
        es = [e.id for e in self.edges]
        if len(set(es)) != len(es):
            raise InvalidStructure("repeated edge id")
        if vs & set(es):
            raise InvalidStructure("vertex and edge ids must be distinct")
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise InvalidStructure(f"edge {e.id} has an unknown endpoint")

    @classmethod
    def from_pairs(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> "Graph":
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges))

    def edge(self, eid: str) -> Edge:
        return next(e for e in self.edges if e.id == eid)


def subdivide_graph(g: Graph, n: int) -> Graph:
    """Replace every edge by a path of ``n`` edges (a loop becomes an n-cycle)."""
    if n < 1:
        raise ValueError("subdivision factor must be >= 1")
    if n == 1:
        return g
    vertices = list(g.vertices)
    edges = []
    for e in g.edges:
        inner = [f"{e.id}:{i}" for i in range(1, n)]
        vertices += inner
        path = [e.tail, *inner, e.head]
        edges += [Edge(f"{e.id}/{i}", path[i], path[i + 1]) for i in range(n)]
    return Graph(tuple(vertices), tuple(edges))


# a few graphs used throughout the tests and scripts


def loop_graph() -> Graph:
    return Graph.from_pairs(["v"], [("e", "v", "v")])


def interval_graph() -> Graph:
    return Graph.from_pairs(["a", "b"], [("e", "a", "b")])


def star_graph(k: int) -> Graph:
    return Graph.from_pairs(["c"] + [f"l{i}" for i in range(1, k + 1)], [(f"a{i}", "c", f"l{i}") for i in range(1, k + 1)])


def y_graph() -> Graph:
    return star_graph(3)


def theta_graph() -> Graph:
    return Graph.from_pairs(["p", "q"], [("e1", "p", "q"), ("e2", "p", "q"), ("e3", "p", "q")])


def complete_graph(n: int) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    return Graph.from_pairs(vs, [(f"e{i}{j}", vs[i], vs[j]) for i, j in combinations(range(n), 2)])


def graph_css(g: Graph) -> TotallyNormalCSS:
    """0-cells are vertices, 1-cells edges; one lift per edge end."""
    morphisms = []
    for e in g.edges:
        morphisms.append(Morphism(f"{e.id}-", e.tail, e.id))
        morphisms.append(Morphism(f"{e.id}+", e.head, e.id))
    dim = {v: 0 for v in g.vertices} | {e.id: 1 for e in g.edges}
    cat = FiniteAcyclicCategory(tuple(g.vertices) + tuple(e.id for e in g.edges), tuple(morphisms), {})
    return TotallyNormalCSS(cat, dim)


# ---------------------------------------------------------------------------
# the ordered configuration space model


@dataclass(frozen=True)
class ConfCell:
    """``slots[t]`` locates token t+1: ``("v", vertex)`` or ``("e", edge, position)``."""

    slots: tuple[tuple, ...]

    @property
    def k(self) -> int:
        return len(self.slots)

    @property
    def dim(self) -> int:
        return sum(1 for s in self.slots if s[0] == "e")

    @property
    def id(self) -> str:
        parts = []
        for t, s in enumerate(self.slots, start=1):
            parts.append(f"{t}@{s[1]}" if s[0] == "v" else f"{t}@{s[1]}:{s[2]}")
        return "|".join(parts)

    def on_edge(self, eid: str) -> list[int]:
        """Tokens (0-based) on an edge, in increasing position."""
        toks = [(s[2], t) for t, s in enumerate(self.slots) if s[0] == "e" and s[1] == eid]
        return [t for _, t in sorted(toks)]

    def relabel(self, perm: Sequence[int]) -> "ConfCell":
        """Token t moves to token perm[t]."""
        slots = [None] * self.k
        for t, s in enumerate(self.slots):
            slots[perm[t]] = s
        return ConfCell(tuple(slots))


Pin = tuple[int, int]  # (0-based token, -1 tail | +1 head)


def pin_string(pins: Iterable[Pin]) -> str:
    return ",".join(f"{t + 1}{'-' if s < 0 else '+'}" for t, s in sorted(pins))


@dataclass(frozen=True)
class PinMorphism:
    source: ConfCell
    target: ConfCell
    pins: frozenset[Pin]

    @property
    def id(self) -> str:
        return f"{self.target.id}#{pin_string(self.pins)}"


def apply_pins(g: Graph, edges: Mapping[str, Edge], cell: ConfCell, pins: Iterable[Pin]) -> ConfCell | None:
    """The face of ``cell`` after pinning; None when a collision occurs."""
    slots = list(cell.slots)
    pins = dict(pins)
    for t, sign in pins.items():
        e = edges[slots[t][1]]
        slots[t] = ("v", e.tail if sign < 0 else e.head)
    for eid in {cell.slots[t][1] for t in pins}:
        rest = [t for t in cell.on_edge(eid) if t not in pins]
        for pos, t in enumerate(rest):
            slots[t] = ("e", eid, pos)
    occupied = [s[1] for s in slots if s[0] == "v"]
    if len(occupied) != len(set(occupied)):
        return None
    return ConfCell(tuple(slots))


def conf_cells(g: Graph, k: int) -> list[ConfCell]:
    places = [("v", v) for v in g.vertices] + [("e", e.id) for e in g.edges]
    out = []
    for choice in product(places, repeat=k):
        vs = [p[1] for p in choice if p[0] == "v"]
        if len(vs) != len(set(vs)):
            continue
        by_edge: dict[str, list[int]] = {}
        for t, p in enumerate(choice):
            if p[0] == "e":
                by_edge.setdefault(p[1], []).append(t)
        eids = sorted(by_edge)
        for orders in product(*(permutations(by_edge[e]) for e in eids)):
            slots: list[tuple] = [None] * k
            for t, p in enumerate(choice):
                if p[0] == "v":
                    slots[t] = p
            for eid, order in zip(eids, orders):
                for pos, t in enumerate(order):
                    slots[t] = ("e", eid, pos)
            out.append(ConfCell(tuple(slots)))
    out.sort(key=lambda c: c.id)
    return out


def pin_options(cell: ConfCell, edge_ids: Iterable[str]) -> list[frozenset[Pin]]:
    """All nonempty pin sets: per edge, first token to the tail and/or last to the head."""
    per_edge = []
    for eid in sorted(edge_ids):
        toks = cell.on_edge(eid)
        if not toks:
            continue
        first, last = toks[0], toks[-1]
        if first == last:
            per_edge.append([(), ((first, -1),), ((first, 1),)])
        else:
            per_edge.append([(), ((first, -1),), ((last, 1),), ((first, -1), (last, 1))])
    out = []
    for combo in product(*per_edge):
        pins = frozenset(p for part in combo for p in part)
        if pins:
            out.append(pins)
    return out


@dataclass(frozen=True)
class ConfModel(TotallyNormalCSS):
    """Face category of the ordered model, remembering token structure."""

    graph: Graph = None
    k: int = 0
    cell: Mapping[str, ConfCell] = field(default_factory=dict)
    pin_morphism: Mapping[str, PinMorphism] = field(default_factory=dict)

    def closed_cells(self) -> list[str]:
        """Cells whose whole closed domain stays collision-free."""
        out = []
        edges = {e.id: e for e in self.graph.edges}
        for cid, c in self.cell.items():
            used: list[set[str]] = []
            ok = True
            for s in c.slots:
                if s[0] == "v":
                    used.append({s[1]})
                elif s[2] > 0 or len(c.on_edge(s[1])) > 1:
                    ok = False
                else:
                    used.append(edges[s[1]].ends())
            if ok and all(not (a & b) for a, b in combinations(used, 2)):
                out.append(cid)
        return sorted(out)


def conf_face_category(g: Graph, k: int) -> ConfModel:
    if k < 1:
        raise ValueError("k must be >= 1")
    edges = {e.id: e for e in g.edges}
    cells = conf_cells(g, k)
    by_id = {c.id: c for c in cells}
    morphisms: dict[str, PinMorphism] = {}
    lookup: dict[tuple[str, frozenset[Pin]], str] = {}
    for u in cells:
        occupied_edges = {s[1] for s in u.slots if s[0] == "e"}
        for pins in pin_options(u, occupied_edges):
            low = apply_pins(g, edges, u, pins)
            if low is None:
                continue
            pm = PinMorphism(low, u, pins)
            morphisms[pm.id] = pm
            lookup[u.id, pins] = pm.id
    into: dict[str, list[PinMorphism]] = {}
    for pm in morphisms.values():
        into.setdefault(pm.target.id, []).append(pm)
    compose = {}
    for gm in morphisms.values():
        for fm in into.get(gm.source.id, ()):
            # pins of fm refer to tokens on the same edges as in gm's target
            union = gm.pins | fm.pins
            key = (gm.target.id, union)
            if key not in lookup:
                raise InvalidStructure(f"pin composite {gm.id} o {fm.id} is not a face")
            compose[gm.id, fm.id] = lookup[key]
    cat = FiniteAcyclicCategory(
        tuple(c.id for c in cells),
        tuple(Morphism(m.id, m.source.id, m.target.id) for m in sorted(morphisms.values(), key=lambda m: m.id)),
        compose,
    )
    return ConfModel(cat, {c.id: c.dim for c in cells}, g, k, by_id, morphisms)


def token_permutations(k: int) -> list[tuple[int, ...]]:
    return [p for p in permutations(range(k)) if p != tuple(range(k))]


def relabel_morphism(pm: PinMorphism, perm: Sequence[int]) -> PinMorphism:
    return PinMorphism(
        pm.source.relabel(perm),
        pm.target.relabel(perm),
        frozenset((perm[t], s) for t, s in pm.pins),
    )


def unordered_quotient(s: TotallyNormalCSS) -> DeltaSet:
    """Quotient of the barycentric subdivision by the free token-relabelling action."""
    if not isinstance(s, ConfModel):
        raise InvalidStructure("unordered quotient needs a configuration-space model with token labels")
    require_valid_css(s)
    c = s.category
    levels = nerve_chains(c)
    perms = token_permutations(s.k)
    cell_maps = [{cid: cell.relabel(p).id for cid, cell in s.cell.items()} for p in perms]
    morph_maps = [{mid: relabel_morphism(pm, p).id for mid, pm in s.pin_morphism.items()} for p in perms]

    def canonical(ch: Chain) -> Chain:
        best = ch
        for cm, mm in zip(cell_maps, morph_maps):
            img = Chain(tuple(cm[x] for x in ch.objects), tuple(mm[f] for f in ch.morphisms))
            if (img.morphisms, img.objects) < (best.morphisms, best.objects):
                best = img
        return best

    layers = []
    faces = {}
    for n, level in enumerate(levels):
        reps = {}
        for ch in level:
            rep = canonical(ch)
            reps[rep.id] = rep
        ordered = sorted(reps.values(), key=lambda ch: (ch.morphisms, ch.objects))
        layers.append([ch.id for ch in ordered])
        if n:
            for ch in ordered:
                faces[ch.id] = tuple(canonical(chain_face(c, ch, i)).id for i in range(n + 1))
    return make_deltaset(layers, faces)


# ---------------------------------------------------------------------------
# Abrams' discretized model (oracle)


def _closure(g: Graph, cell: str) -> set[str]:
    for e in g.edges:
        if e.id == cell:
            return {cell, e.tail, e.head}
    return {cell}


def abrams_complex(g: Graph, k: int, ordered: bool = True) -> GradedPoset:
    """Cells: k-tuples (or k-subsets) of cells of g with pairwise disjoint closures."""
    cells = sorted([*g.vertices, *(e.id for e in g.edges)])
    closure = {c: _closure(g, c) for c in cells}
    is_edge = {e.id for e in g.edges}
    below = {c: {c} for c in cells}
    for e in g.edges:
        below[e.id] |= {e.tail, e.head}

    groups = [
        grp
        for grp in combinations(cells, k)
        if all(not (closure[a] & closure[b]) for a, b in combinations(grp, 2))
    ]
    if ordered:
        tuples = [p for grp in groups for p in permutations(grp)]
        name = {t: "(" + ",".join(t) + ")" for t in tuples}
        dim = {name[t]: sum(1 for c in t if c in is_edge) for t in tuples}
        index = {t: name[t] for t in tuples}
        pairs = set()
        for t in tuples:
            for faces in product(*(sorted(below[c]) for c in t)):
                if faces in index:
                    pairs.add((name[faces], name[t]))
        return GradedPoset(Poset(tuple(sorted(name.values())), frozenset(pairs)), dim)

    name = {grp: "{" + ",".join(grp) + "}" for grp in groups}
    dim = {name[grp]: sum(1 for c in grp if c in is_edge) for grp in groups}
    pairs = set()
    for grp in groups:
        for faces in product(*(sorted(below[c]) for c in grp)):
            key = tuple(sorted(faces))
            if key in name:
                pairs.add((name[key], name[grp]))
    return GradedPoset(Poset(tuple(sorted(name.values())), frozenset(pairs)), dim)
