"""Independent oracles and hypothesis strategies shared by the tests.

Nothing here calls into the code paths it is used to check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

from hypothesis import assume
from hypothesis import strategies as st

from cellstrat.acyclic import FiniteAcyclicCategory, Morphism, Poset
from cellstrat.arrangements import AffineForm, Arrangement
from cellstrat.complexes import make_deltaset
from cellstrat.errors import InvalidStructure
from cellstrat.graphconf import Graph


# -- linear algebra oracles --------------------------------------------------


def det(m):
    """Integer determinant by Laplace expansion (tiny matrices only)."""
    if not m:
        return 1
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(len(m)))


def determinantal_invariants(m):
    """Invariant factors via gcds of k x k minors: d_k = D_k / D_{k-1}."""
    rows, cols = len(m), len(m[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def fraction_rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# -- arrangement oracles -----------------------------------------------------


def poincare_polynomial(normals):
    """Coefficients of the Poincare polynomial of a central arrangement.

    Intersection lattice from spans of normals, Moebius function by
    recursion, pi(t) = sum mu(X) (-t)^rank(X).
    """
    k = len(normals)
    flats = {}
    for size in range(k + 1):
        for sub in combinations(range(k), size):
            r = fraction_rank([normals[i] for i in sub]) if sub else 0
            closed = frozenset(
                i for i in range(k) if fraction_rank([normals[j] for j in sub] + [normals[i]]) == r
            ) if sub else frozenset()
            flats[closed] = r
    order = sorted(flats, key=lambda f: (flats[f], sorted(f)))
    mu = {}
    for x in order:
        mu[x] = 1 if not x else -sum(mu[y] for y in order if y < x)
    top = max(flats.values())
    coeffs = [0] * (top + 1)
    for x, r in flats.items():
        coeffs[r] += mu[x] * (-1) ** r
    return coeffs


def complement_betti(normals, level):
    """Betti numbers of the complement of A tensor R^level: pi(A, t^(level-1))."""
    pi = poincare_polynomial(normals)
    out = [0] * ((len(pi) - 1) * (level - 1) + 1)
    for r, c in enumerate(pi):
        out[r * (level - 1)] += c
    return tuple(out)


def ordered_set_partitions(n):
    """Count ordered set partitions of {0..n-1} by number of blocks (brute force)."""
    counts = {}
    seen = set()
    for perm in permutations(range(n)):
        for cuts in range(1 << (n - 1)):
            blocks, cur = [], [perm[0]]
            for i in range(1, n):
                if cuts >> (i - 1) & 1:
                    blocks.append(frozenset(cur))
                    cur = []
                cur.append(perm[i])
            blocks.append(frozenset(cur))
            key = tuple(blocks)
            if key not in seen:
                seen.add(key)
                counts[len(blocks)] = counts.get(len(blocks), 0) + 1
    return counts


# -- strategies --------------------------------------------------------------


@st.composite
def small_matrices(draw, max_size=4, bound=6):
    r = draw(st.integers(1, max_size))
    c = draw(st.integers(1, max_size))
    return [[draw(st.integers(-bound, bound)) for _ in range(c)] for _ in range(r)]


@st.composite
def posets(draw, max_size=8):
    n = draw(st.integers(1, max_size))
    names = [f"p{i}" for i in range(n)]
    less = [(names[i], names[j]) for i, j in combinations(range(n), 2) if draw(st.booleans())]
    return Poset.from_relation(names, less)


@st.composite
def free_categories(draw, max_objects=6, max_mult=2):
    """Free category on a random DAG multigraph: morphisms are nonempty paths."""
    n = draw(st.integers(1, max_objects))
    objs = [f"x{i}" for i in range(n)]
    arrows = []
    for i, j in combinations(range(n), 2):
        for m in range(draw(st.integers(0, max_mult)) if j - i <= 2 else draw(st.integers(0, 1))):
            arrows.append((f"a{i}{j}{m}", i, j))
    paths = {(a,): (i, j) for a, i, j in arrows}
    frontier = dict(paths)
    while frontier:
        nxt = {}
        for p, (i, j) in frontier.items():
            for a, s, t in arrows:
                if s == j:
                    nxt[p + (a,)] = (i, t)
        paths.update(nxt)
        frontier = nxt
    pid = {p: ".".join(p) for p in paths}
    morphisms = tuple(Morphism(pid[p], objs[i], objs[j]) for p, (i, j) in sorted(paths.items()))
    compose = {}
    for f, (i, j) in paths.items():
        for g, (s, t) in paths.items():
            if s == j:
                compose[pid[g], pid[f]] = pid[f + g]
    return FiniteAcyclicCategory(tuple(objs), morphisms, compose)


@st.composite
def delta_sets(draw):
    """Random 2-dimensional Delta-sets with consistent triangle boundaries."""
    nv = draw(st.integers(1, 4))
    verts = [f"v{i}" for i in range(nv)]
    ne = draw(st.integers(0, 6))
    edges = {}
    for i in range(ne):
        d0 = draw(st.sampled_from(verts))
        d1 = draw(st.sampled_from(verts))
        edges[f"e{i}"] = (d0, d1)
    tris = {}
    names = sorted(edges)
    if names:
        for i in range(draw(st.integers(0, 4))):
            # edge faces: d0 = [v1 v2], d1 = [v0 v2], d2 = [v0 v1]
            e2 = draw(st.sampled_from(names))
            v0, v1 = edges[e2][1], edges[e2][0]
            c0 = [e for e in names if edges[e][1] == v1]
            if not c0:
                continue
            e0 = draw(st.sampled_from(c0))
            v2 = edges[e0][0]
            c1 = [e for e in names if edges[e] == (v2, v0)]
            if not c1:
                continue
            e1 = draw(st.sampled_from(c1))
            tris[f"t{i}"] = (e0, e1, e2)
    faces = {**edges, **tris}
    return make_deltaset([verts, sorted(edges), sorted(tris)], faces)


@st.composite
def arrangements(draw, dim=3, max_forms=4):
    k = draw(st.integers(1, max_forms))
    forms = []
    for _ in range(k):
        coeffs = draw(st.lists(st.integers(-2, 2), min_size=dim, max_size=dim).filter(any))
        forms.append(AffineForm.of(coeffs, draw(st.integers(-2, 2))))
    try:
        return Arrangement(dim, tuple(forms))
    except InvalidStructure:
        assume(False)


@st.composite
def trees(draw, max_edges=5):
    m = draw(st.integers(1, max_edges))
    parents = [draw(st.integers(0, i)) for i in range(m)]
    verts = [f"n{i}" for i in range(m + 1)]
    return Graph.from_pairs(verts, [(f"t{i}", verts[p], verts[i + 1]) for i, p in enumerate(parents)])
