"""Plumbing trees: intersection forms, Wu classes, blow-downs, and compilation
of spin Seifert data into spin plumbed 4-manifolds.

A plumbing tree is a finite weighted tree; the plumbed 4-manifold it encodes
has intersection matrix M with M_ii the weight of vertex i and M_ij = 1 on
edges.  A Wu vector is a GF(2) solution w of M w = diag(M); w = 0 exactly
when all weights are even, i.e. when the 4-manifold is spin.  For a tree
bounding a spherical space form with spin structure matched to w,

    delta = sign(M) - w.M.w

which gives a third, homological route to the defect, independent of both
the closed-form catalog and the torus-splitting engine.  ``blow_down``
removes a +-1 vertex; the multiset of defects over all Wu vectors is
invariant under it, which is how the routine is tested.

All signature work is exact (rational congruent diagonalization); nothing
here touches floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSolution, NoSpinForm
from .seifert import LensSpace, SeifertData, SpinAssignment, spin_conditions_hold
from .sigma import even_cf_expand

__all__ = [
    "PlumbingGraph",
    "WuVector",
    "intersection_matrix",
    "signature",
    "wu_solutions",
    "plumbing_delta",
    "blow_down",
    "seifert_to_plumbing",
    "star_graph",
    "chain_graph",
    "parse_star",
    "graph_to_json",
    "graph_from_json",
]

_KERNEL_CAP = 12  # refuse to enumerate GF(2) kernels of dimension above this


@dataclass(frozen=True)
class PlumbingGraph:
    """A weighted tree: vertices as (id, weight) pairs, edges as id pairs.

    The empty graph is allowed (it is the terminal state of blow-down
    sequences); any nonempty graph must be a connected tree.
    """

    vertices: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertices, edges=()):
        vertices = tuple((int(i), int(w)) for i, w in vertices)
        ids = [i for i, _ in vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex ids")
        idset = set(ids)
        norm = []
        for e in edges:
            i, j = e
            if i == j or i not in idset or j not in idset:
                raise ValueError(f"bad edge {e!r}")
            norm.append((min(i, j), max(i, j)))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edges")
        if vertices and len(norm) != len(vertices) - 1:
            raise ValueError("not a tree: |edges| != |vertices| - 1")
        if vertices:
            seen = {ids[0]}
            frontier = [ids[0]]
            adj = {i: [] for i in ids}
            for i, j in norm:
                adj[i].append(j)
                adj[j].append(i)
            while frontier:
                v = frontier.pop()
                for u in adj[v]:
                    if u not in seen:
                        seen.add(u)
                        frontier.append(u)
            if seen != idset:
                raise ValueError("not a tree: graph is disconnected")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(set(norm))))

    def __len__(self):
        return len(self.vertices)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.vertices)

    def weight(self, v: int) -> int:
        for i, w in self.vertices:
            if i == v:
                return w
        raise KeyError(v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        if v not in set(self.ids):
            raise KeyError(v)
        return tuple(j if i == v else i for i, j in self.edges if v in (i, j))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))


@dataclass(frozen=True)
class WuVector:
    """Support of a GF(2) characteristic vector: the ids with eps = 1."""

    support: frozenset[int]

    def __init__(self, support=()):
        object.__setattr__(self, "support", frozenset(int(v) for v in support))

    def as_bits(self, g: PlumbingGraph) -> tuple[int, ...]:
        unknown = self.support - set(g.ids)
        if unknown:
            raise ValueError(f"Wu support {sorted(unknown)} not in the graph")
        return tuple(1 if i in self.support else 0 for i in g.ids)


def intersection_matrix(g: PlumbingGraph) -> list[list[int]]:
    """M with M_ii = weight(i), M_ij = 1 on edges, in vertex order."""
    index = {v: k for k, v in enumerate(g.ids)}
    n = len(g)
    m = [[0] * n for _ in range(n)]
    for k, (_, w) in enumerate(g.vertices):
        m[k][k] = w
    for i, j in g.edges:
        m[index[i]][index[j]] = 1
        m[index[j]][index[i]] = 1
    return m


def signature(m) -> tuple[int, int, int]:
    """Inertia (n_plus, n_minus, n_zero) of a symmetric matrix, exactly.

    Congruent diagonalization over the rationals: pick a nonzero diagonal
    pivot and clear its row/column; when the active diagonal vanishes but an
    off-diagonal entry b survives, the 2x2 block [[0,b],[b,0]] splits off a
    hyperbolic (+1,-1) pair.  No eigenvalues, no floating point.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    a = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    active = list(range(n))
    plus = minus = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                plus += 1
            else:
                minus += 1
            active.remove(piv)
            for r in active:
                if a[r][piv] == 0:
                    continue
                f = a[r][piv] / d
                for s in active:
                    a[r][s] -= f * a[piv][s]
            for r in active:
                a[r][piv] = a[piv][r] = Fraction(0)
            continue
        off = next(
            ((i, j) for i, j in itertools.combinations(active, 2) if a[i][j] != 0),
            None,
        )
        if off is None:
            break  # remaining block is zero
        i, j = off
        b = a[i][j]
        plus += 1
        minus += 1
        active.remove(i)
        active.remove(j)
        for r in active:
            ci, cj = a[r][i], a[r][j]
            if ci == 0 and cj == 0:
                continue
            for s in active:
                a[r][s] -= (ci * a[j][s] + cj * a[i][s]) / b
        for r in active:
            a[r][i] = a[i][r] = a[r][j] = a[j][r] = Fraction(0)
    return plus, minus, n - plus - minus


def _gf2_solve(g: PlumbingGraph):
    """Row-reduce M x = diag(M) over GF(2); rows/solutions as bitmasks."""
    n = len(g)
    index = {v: k for k, v in enumerate(g.ids)}
    rows = []
    for k, (v, w) in enumerate(g.vertices):
        mask = (w & 1) << k  # diagonal contributes only for odd weight
        for u in g.neighbors(v):
            mask |= 1 << index[u]
        rows.append((mask, w & 1))
    pivots = {}  # column -> reduced row
    for mask, rhs in rows:
        for col, (pmask, prhs) in pivots.items():
            if mask >> col & 1:
                mask ^= pmask
                rhs ^= prhs
        if mask == 0:
            if rhs:
                raise NoSolution("characteristic system is inconsistent")
            continue
        col = mask.bit_length() - 1
        pivots[col] = (mask, rhs)
        for c2 in list(pivots):
            if c2 != col and pivots[c2][0] >> col & 1:
                m2, r2 = pivots[c2]
                pivots[c2] = (m2 ^ mask, r2 ^ rhs)
    particular = 0
    for col, (_, rhs) in pivots.items():
        if rhs:
            particular |= 1 << col
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = 1 << fc
        for col, (pmask, _) in pivots.items():
            if pmask >> fc & 1:
                vec |= 1 << col
        basis.append(vec)
    return particular, basis


def wu_solutions(g: PlumbingGraph) -> list[WuVector]:
    """All Wu vectors of the tree, deterministically ordered.

    The system M x = diag(M) over GF(2) is always solvable for trees (the
    diagonal functional vanishes on the kernel); NoSolution would mean the
    input is not one.  Solutions are checked against the fact that no two
    adjacent vertices can both carry eps = 1.
    """
    if len(g) == 0:
        return [WuVector()]
    particular, basis = _gf2_solve(g)
    if len(basis) > _KERNEL_CAP:
        raise NoSolution(
            f"GF(2) kernel dimension {len(basis)} exceeds the enumeration cap"
        )
    sols = []
    for bits in itertools.product((0, 1), repeat=len(basis)):
        x = particular
        for take, vec in zip(bits, basis):
            if take:
                x ^= vec
        support = frozenset(v for k, v in enumerate(g.ids) if x >> k & 1)
        for i, j in g.edges:
            assert not (i in support and j in support), (
                f"adjacent Wu pair {i},{j}: not a plumbing tree?"
            )
        sols.append(WuVector(support))
    sols.sort(key=lambda w: sorted(w.support))
    return sols


def _is_wu(g: PlumbingGraph, w: WuVector) -> bool:
    bits = w.as_bits(g)
    m = intersection_matrix(g)
    n = len(g)
    return all(
        (sum(m[i][j] * bits[j] for j in range(n)) - m[i][i]) % 2 == 0
        for i in range(n)
    )


def plumbing_delta(g: PlumbingGraph, w: WuVector) -> int:
    """sign(M) - w.M.w for a Wu vector w (integer 0/1 lift)."""
    if not _is_wu(g, w):
        raise ValueError(f"{sorted(w.support)} is not a Wu vector of the graph")
    plus, minus, _ = signature(intersection_matrix(g))
    self_pairing = sum(g.weight(v) for v in w.support)
    # distinct support vertices joined by an edge would add cross terms,
    # but Wu non-adjacency (asserted in wu_solutions) rules that out
    for i, j in g.edges:
        if i in w.support and j in w.support:
            self_pairing += 2
    return (plus - minus) - self_pairing


def blow_down(g: PlumbingGraph, w: WuVector, v: int) -> tuple[PlumbingGraph, list[WuVector]]:
    """Remove a +-1 vertex of degree <= 2, reconnecting across it.

    Each neighbor loses the blown-down weight; the two neighbors of a
    degree-2 vertex become adjacent.  Returns the reduced tree together
    with its full Wu-solution set; the multiset of defects over that set
    matches the input graph's.
    """
    if not _is_wu(g, w):
        raise ValueError(f"{sorted(w.support)} is not a Wu vector of the graph")
    wv = g.weight(v)
    if wv not in (1, -1):
        raise ValueError(f"vertex {v} has weight {wv}, need +-1")
    nbrs = g.neighbors(v)
    if len(nbrs) > 2:
        raise ValueError(f"vertex {v} has degree {len(nbrs)} > 2")
    new_vertices = [(i, wt - wv if i in nbrs else wt) for i, wt in g.vertices if i != v]
    new_edges = [e for e in g.edges if v not in e]
    if len(nbrs) == 2:
        new_edges.append((min(nbrs), max(nbrs)))
    g2 = PlumbingGraph(new_vertices, new_edges)
    return g2, wu_solutions(g2)


# ---------------------------------------------------------------------------
# builders and compilation


def chain_graph(weights, start_id: int = 0) -> PlumbingGraph:
    weights = list(weights)
    ids = range(start_id, start_id + len(weights))
    return PlumbingGraph(
        list(zip(ids, weights)),
        [(i, i + 1) for i in ids[:-1]],
    )


def star_graph(center_weight: int, arms) -> PlumbingGraph:
    """Star-shaped tree: center id 0, each arm a chain hanging off it."""
    vertices = [(0, int(center_weight))]
    edges = []
    nxt = 1
    for arm in arms:
        prev = 0
        for w in arm:
            vertices.append((nxt, int(w)))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return PlumbingGraph(vertices, edges)


def seifert_to_plumbing(s, c=None) -> tuple[PlumbingGraph, WuVector]:
    """Spin plumbing tree bounded by (S, c); the Wu vector is always zero.

    For three-fiber data: rewrite each (a_i, b_i) as (a_i, b_i') with
    |b_i'| < a_i and b_i' of opposite parity to a_i, which is possible in
    exactly one way compatible with the transported labels vanishing on the
    meridians; the extracted integer framings sum to an even central weight.
    The tree is the star with center -sum(shifts) and arms the even
    expansions of a_i / b_i'.  Lens spaces compile to a single chain.
    """
    if isinstance(s, LensSpace):
        return _lens_to_plumbing(s)
    if not isinstance(s, SeifertData) or len(s) != 3 or not s.is_spherical_candidate():
        raise ValueError("need a LensSpace or three-fiber spherical SeifertData")
    if not isinstance(c, SpinAssignment) or not spin_conditions_hold(s, c):
        raise NoSpinForm(f"labels are not a spin structure on {s.pairs}")
    # c(h) = 0 is forced by the 2-fiber, so the meridian condition reads
    # k_i = c(g_i) mod 2; of the two integers with |b_i - a_i k_i| < a_i
    # exactly one has the right parity
    shifts = []
    arms = []
    for (a, b), cg in zip(s, c.cg):
        k = b // a  # floor; candidates are k and k+1
        if k % 2 != cg:
            k += 1
        bp = b - a * k
        assert 0 < abs(bp) < a and (a + bp) % 2 == 1, (a, b, k)
        shifts.append(k)
        arms.append(even_cf_expand(a, bp))
    total = sum(shifts)
    assert total % 2 == 0, "meridian shifts should sum to an even framing"
    g = star_graph(-total, arms)
    w = WuVector()
    assert _is_wu(g, w)
    return g, w


def _lens_to_plumbing(lens: LensSpace) -> tuple[PlumbingGraph, WuVector]:
    p, q, eps = lens.p, lens.q, lens.eps
    if p == 1:
        return PlumbingGraph([], []), WuVector()
    # pick the representative q' of {q, q+p} mod 2p in (-p, p) carrying the
    # requested structure: for p even the eps = -1 chain has q' = q mod 2p,
    # the eps = +1 chain q' = q+p; for p odd the even q' is the spin one
    candidates = []
    for shift in (0, p):
        r = (q + shift) % (2 * p)
        if r >= p:
            r -= 2 * p
        candidates.append((shift, r))
    if p % 2 == 0:
        want = 0 if eps == -1 else 1
        qp = next(r for shift, r in candidates if (shift // p) % 2 == want)
    else:
        qp = next(r for _, r in candidates if r % 2 == 0)
    g = chain_graph(even_cf_expand(-p, qp))
    w = WuVector()
    assert _is_wu(g, w)
    return g, w


# ---------------------------------------------------------------------------
# text and JSON forms


def parse_star(text: str) -> PlumbingGraph:
    """Parse "(a; c1,c2; d1; e1,e2,e3)": center weight, then arm chains."""
    stripped = "".join(text.split())
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
    if not stripped:
        raise ValueError("empty star description")
    parts = stripped.split(";")
    try:
        center = int(parts[0])
        arms = [[int(tok) for tok in arm.split(",") if tok != ""] for arm in parts[1:]]
    except ValueError:
        raise ValueError(f"cannot read star weights from {text!r}") from None
    if any(not arm for arm in arms):
        raise ValueError("empty arm in star description")
    return star_graph(center, arms)


def graph_to_json(g: PlumbingGraph, w: WuVector | None = None) -> dict:
    doc = {
        "vertices": [{"id": i, "weight": wt} for i, wt in g.vertices],
        "edges": [list(e) for e in g.edges],
    }
    if w is not None:
        doc["wu"] = list(w.as_bits(g))
    return doc


def graph_from_json(doc: dict) -> tuple[PlumbingGraph, WuVector | None]:
    g = PlumbingGraph(
        [(v["id"], v["weight"]) for v in doc["vertices"]],
        [tuple(e) for e in doc.get("edges", [])],
    )
    w = None
    if "wu" in doc:
        bits = doc["wu"]
        if len(bits) != len(g):
            raise ValueError("wu vector length does not match vertex count")
        w = WuVector(i for (i, _), b in zip(g.vertices, bits) if b)
    return g, w
