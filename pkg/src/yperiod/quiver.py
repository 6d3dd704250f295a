"""Quivers and valued quivers as exchange matrices, with mutation and
the tensor / triangle / square products.

A quiver is stored as an ordered vertex tuple plus the skew-symmetric
matrix B with b[i][j] = (#arrows i -> j) - (#arrows j -> i).  Loops and
2-cycles are unrepresentable by construction, which is lossless for
everything in scope.  A valued quiver carries a positive symmetrizer d
with diag(d) . B skew-symmetric and at most one arrow between any two
vertices; the arrow i -> j has valuation (b[i][j], -b[j][i]).

Products use row-major vertex order over pairs (i, i').  The square
product reverses the slices through sources of the first factor and
sinks of the second, the convention under which mutating the square
product at all (source, sink) pairs yields the triangle product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, List, Sequence, Tuple

from . import dynkin
from .dynkin import DynkinType
from .errors import InputError

Matrix = Tuple[Tuple[int, ...], ...]
Label = Hashable


def to_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise InputError("matrix is not square")
    return m


def is_skew_symmetric(b: Matrix) -> bool:
    n = len(b)
    return all(b[i][j] == -b[j][i] for i in range(n) for j in range(i, n))


def mutate_matrix(b: Matrix, k: int) -> Matrix:
    """Fomin-Zelevinsky matrix mutation at index k."""
    n = len(b)
    if not 0 <= k < n:
        raise InputError(f"mutation index {k} out of range")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            elif b[i][k] * b[k][j] > 0:
                sign = 1 if b[i][k] > 0 else -1
                row.append(b[i][j] + sign * b[i][k] * b[k][j])
            else:
                row.append(b[i][j])
        out.append(tuple(row))
    return tuple(out)


class _QuiverBase:
    """Shared behaviour of Quiver and ValuedQuiver (vertices + matrix)."""

    vertices: Tuple[Label, ...]
    b: Matrix

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: Label) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise InputError(f"unknown vertex {v!r}") from None

    def arrows(self) -> List[Tuple[Label, Label, int, int]]:
        """Arrows as (source, target, v1, v2) sorted by vertex order."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    out.append((self.vertices[i], self.vertices[j], self.b[i][j], -self.b[j][i]))
        return out

    def is_source(self, v: Label) -> bool:
        i = self.index(v)
        return all(self.b[j][i] <= 0 for j in range(self.n))

    def is_sink(self, v: Label) -> bool:
        i = self.index(v)
        return all(self.b[i][j] <= 0 for j in range(self.n))

    def sources(self) -> Tuple[Label, ...]:
        return tuple(v for v in self.vertices if self.is_source(v))

    def sinks(self) -> Tuple[Label, ...]:
        return tuple(v for v in self.vertices if self.is_sink(v))

    def is_alternating(self) -> bool:
        return all(self.is_source(v) or self.is_sink(v) for v in self.vertices)

    def vertex_sign(self, v: Label) -> int:
        """+1 for a source, -1 for a sink; isolated vertices count as sources."""
        if self.is_source(v):
            return 1
        if self.is_sink(v):
            return -1
        raise InputError(f"vertex {v!r} is neither a source nor a sink")

    def is_acyclic(self) -> bool:
        n = self.n
        indeg = [0] * n
        for i in range(n):
            for j in range(n):
                if self.b[i][j] > 0:
                    indeg[j] += 1
        queue = [i for i in range(n) if indeg[i] == 0]
        seen = 0
        while queue:
            i = queue.pop()
            seen += 1
            for j in range(n):
                if self.b[i][j] > 0:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        queue.append(j)
        return seen == n

    def has_loops_or_two_cycles(self) -> bool:
        n = self.n
        for i in range(n):
            if self.b[i][i] != 0:
                return True
            for j in range(n):
                if i != j and self.b[i][j] > 0 and self.b[j][i] > 0:
                    return True
        return False


@dataclass(frozen=True)
class Quiver(_QuiverBase):
    """Finite quiver without loops or 2-cycles, as a skew-symmetric matrix."""

    vertices: Tuple[Label, ...]
    b: Matrix

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "b", to_matrix(self.b))
        if len(self.b) != len(self.vertices):
            raise InputError("matrix size does not match vertex count")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        if not is_skew_symmetric(self.b):
            raise InputError("exchange matrix is not skew-symmetric")

    def mutate(self, v: Label) -> "Quiver":
        return Quiver(self.vertices, mutate_matrix(self.b, self.index(v)))

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(tuple(-x for x in row) for row in self.b))

    def full_subquiver(self, labels: Sequence[Label]) -> "Quiver":
        idx = [self.index(v) for v in labels]
        return Quiver(tuple(labels), tuple(tuple(self.b[i][j] for j in idx) for i in idx))


@dataclass(frozen=True)
class ValuedQuiver(_QuiverBase):
    """Valued quiver: skew-symmetrizable matrix plus positive symmetrizer."""

    vertices: Tuple[Label, ...]
    b: Matrix
    d: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "b", to_matrix(self.b))
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        n = len(self.vertices)
        if len(self.b) != n or len(self.d) != n:
            raise InputError("matrix or symmetrizer size does not match vertex count")
        if len(set(self.vertices)) != n:
            raise InputError("duplicate vertex labels")
        if any(x <= 0 for x in self.d):
            raise InputError("symmetrizer entries must be positive")
        for i in range(n):
            if self.b[i][i] != 0:
                raise InputError("diagonal entries must vanish")
            for j in range(n):
                # diag(d).B skew-symmetric forces opposite signs across the diagonal
                if self.d[i] * self.b[i][j] != -self.d[j] * self.b[j][i]:
                    raise InputError("matrix is not skew-symmetrizable by d")

    def mutate(self, v: Label) -> "ValuedQuiver":
        return ValuedQuiver(self.vertices, mutate_matrix(self.b, self.index(v)), self.d)

    def opposite(self) -> "ValuedQuiver":
        return ValuedQuiver(
            self.vertices, tuple(tuple(-x for x in row) for row in self.b), self.d
        )

    def full_subquiver(self, labels: Sequence[Label]) -> "ValuedQuiver":
        idx = [self.index(v) for v in labels]
        return ValuedQuiver(
            tuple(labels),
            tuple(tuple(self.b[i][j] for j in idx) for i in idx),
            tuple(self.d[i] for i in idx),
        )


def mutate(q, v: Label):
    """Mutated copy of a quiver or valued quiver; the input is untouched."""
    return q.mutate(v)


def mutate_valued(q: ValuedQuiver, v: Label) -> ValuedQuiver:
    if not isinstance(q, ValuedQuiver):
        raise InputError("mutate_valued expects a valued quiver")
    return q.mutate(v)


def mutate_set(q, vs: Iterable[Label]):
    """Mutate at a set of pairwise non-adjacent vertices (order immaterial)."""
    labels = list(vs)
    idx = [q.index(v) for v in labels]
    for a in idx:
        for b_ in idx:
            if a != b_ and q.b[a][b_] != 0:
                raise InputError(
                    f"vertices {q.vertices[a]!r} and {q.vertices[b_]!r} are adjacent"
                )
    out = q
    for v in labels:
        out = out.mutate(v)
    return out


# ---------------------------------------------------------------------------
# products


def _require_acyclic(q, name: str) -> None:
    if not q.is_acyclic():
        raise InputError(f"{name} factor contains an oriented cycle")


def _require_alternating(q, name: str) -> None:
    if not q.is_alternating():
        raise InputError(f"{name} factor is not alternating")


def _product_vertices(q, qp) -> Tuple[Tuple[Label, Label], ...]:
    return tuple((u, v) for u in q.vertices for v in qp.vertices)


def _both_plain(q, qp) -> bool:
    return isinstance(q, Quiver) and isinstance(qp, Quiver)


def _tensor_matrix(q, qp) -> List[List[int]]:
    m, mp = q.n, qp.n
    size = m * mp

    def pos(i: int, ip: int) -> int:
        return i * mp + ip

    b = [[0] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            if i != j:
                for ip in range(mp):
                    b[pos(i, ip)][pos(j, ip)] = q.b[i][j]
    for ip in range(mp):
        for jp in range(mp):
            if ip != jp:
                for i in range(m):
                    b[pos(i, ip)][pos(i, jp)] = qp.b[ip][jp]
    return b


def _product_d(q, qp) -> Tuple[int, ...]:
    dq = q.d if isinstance(q, ValuedQuiver) else (1,) * q.n
    dqp = qp.d if isinstance(qp, ValuedQuiver) else (1,) * qp.n
    return tuple(a * b for a in dq for b in dqp)


def _wrap_product(q, qp, b: List[List[int]]):
    verts = _product_vertices(q, qp)
    if _both_plain(q, qp):
        return Quiver(verts, b)
    return ValuedQuiver(verts, b, _product_d(q, qp))


def tensor_product(q, qp):
    """Vertex set Q0 x Q0'; every row a copy of q, every column a copy of qp."""
    _require_acyclic(q, "first")
    _require_acyclic(qp, "second")
    return _wrap_product(q, qp, _tensor_matrix(q, qp))


def triangle_product(q, qp):
    """Tensor product plus a return arrow (j,j') -> (i,i') for every pair
    of arrows i -> j and i' -> j' of the factors."""
    _require_acyclic(q, "first")
    _require_acyclic(qp, "second")
    m, mp = q.n, qp.n
    b = _tensor_matrix(q, qp)

    def pos(i: int, ip: int) -> int:
        return i * mp + ip

    for i in range(m):
        for j in range(m):
            if q.b[i][j] > 0:
                for ip in range(mp):
                    for jp in range(mp):
                        if qp.b[ip][jp] > 0:
                            # valuation (v2*v2', v1*v1') of the diagonal arrow
                            b[pos(j, jp)][pos(i, ip)] += (-q.b[j][i]) * (-qp.b[jp][ip])
                            b[pos(i, ip)][pos(j, jp)] -= q.b[i][j] * qp.b[ip][jp]
    return _wrap_product(q, qp, b)


def square_product(q, qp):
    """Tensor product with the slices through sources of q and sinks of qp
    reversed; both factors must be alternating."""
    _require_acyclic(q, "first")
    _require_acyclic(qp, "second")
    _require_alternating(q, "first")
    _require_alternating(qp, "second")
    m, mp = q.n, qp.n
    b = _tensor_matrix(q, qp)

    def pos(i: int, ip: int) -> int:
        return i * mp + ip

    for i, u in enumerate(q.vertices):
        if q.vertex_sign(u) == 1:  # vertical slice {i} x Q' through a source of q
            for ip in range(mp):
                for jp in range(mp):
                    b[pos(i, ip)][pos(i, jp)] = -b[pos(i, ip)][pos(i, jp)]
    for ip, v in enumerate(qp.vertices):
        if qp.vertex_sign(v) == -1:  # horizontal slice Q x {i'} through a sink of qp
            for i in range(m):
                for j in range(m):
                    b[pos(i, ip)][pos(j, ip)] = -b[pos(i, ip)][pos(j, ip)]
    return _wrap_product(q, qp, b)


# ---------------------------------------------------------------------------
# constrained product structure

def _square_templates() -> FrozenSet[FrozenSet]:
    """Arrow sets the full subquiver over an arrow pair may take.

    Corners are 0=(i,i'), 1=(j,i'), 2=(i,j'), 3=(j,j').  The two base
    shapes are the commuting square with a return diagonal and the
    oriented 4-cycle; row and column swaps generate the legal variants.
    """
    shape1 = {(0, 1): 1, (2, 3): 1, (0, 2): 1, (1, 3): 1, (3, 0): 1}
    shape2 = {(0, 2): 1, (2, 3): 1, (3, 1): 1, (1, 0): 1}
    row_swap = {0: 1, 1: 0, 2: 3, 3: 2}
    col_swap = {0: 2, 2: 0, 1: 3, 3: 1}
    variants = set()
    for base in (shape1, shape2):
        for swap_rows in (False, True):
            for swap_cols in (False, True):
                arrows = {}
                for (a, c), mult in base.items():
                    if swap_rows:
                        a, c = row_swap[a], row_swap[c]
                    if swap_cols:
                        a, c = col_swap[a], col_swap[c]
                    arrows[(a, c)] = mult
                variants.add(frozenset(arrows.items()))
    return frozenset(variants)


_TEMPLATES = _square_templates()


def _adjacent(q, i: int, j: int) -> bool:
    return q.b[i][j] != 0 or q.b[j][i] != 0


def is_constrained(r: Quiver, q: Quiver, qp: Quiver) -> bool:
    """Whether r is a product-shaped quiver over (q, qp): its non-diagonal
    part has the underlying graph of the tensor product and every arrow
    pair of the factors spans one of the admissible squares."""
    expected = set(_product_vertices(q, qp))
    if set(r.vertices) != expected:
        raise InputError("vertex set is not the product of the factor vertex sets")
    pos = {v: r.index(v) for v in r.vertices}

    # (a) non-diagonal underlying graph equals that of the tensor product
    for u in q.vertices:
        for w in q.vertices:
            iu, iw = q.index(u), q.index(w)
            if iu < iw:
                for x in qp.vertices:
                    a, c = pos[(u, x)], pos[(w, x)]
                    if abs(r.b[a][c]) != abs(q.b[iu][iw]):
                        return False
    for x in qp.vertices:
        for y in qp.vertices:
            ix, iy = qp.index(x), qp.index(y)
            if ix < iy:
                for u in q.vertices:
                    a, c = pos[(u, x)], pos[(u, y)]
                    if abs(r.b[a][c]) != abs(qp.b[ix][iy]):
                        return False

    # every diagonal arrow must sit over an edge in each factor
    for (u, x) in r.vertices:
        for (w, y) in r.vertices:
            if u != w and x != y and r.b[pos[(u, x)]][pos[(w, y)]] > 0:
                if not _adjacent(q, q.index(u), q.index(w)) or not _adjacent(
                    qp, qp.index(x), qp.index(y)
                ):
                    return False

    # (b) each arrow pair spans an admissible square
    for (u, w, _, _) in q.arrows():
        for (x, y, _, _) in qp.arrows():
            corners = [pos[(u, x)], pos[(w, x)], pos[(u, y)], pos[(w, y)]]
            arrows = {}
            for a in range(4):
                for c in range(4):
                    mult = r.b[corners[a]][corners[c]]
                    if mult > 0:
                        arrows[(a, c)] = mult
            if frozenset(arrows.items()) not in _TEMPLATES:
                return False
    return True


def horizontal_slice(r, q, qp, x: Label):
    """Full subquiver on the vertices (u, x), u in q, in factor order."""
    return r.full_subquiver(tuple((u, x) for u in q.vertices))


def vertical_slice(r, q, qp, u: Label):
    return r.full_subquiver(tuple((u, x) for x in qp.vertices))


def source_sink_vertices(r: Quiver, q: Quiver, qp: Quiver) -> FrozenSet[Label]:
    """Vertices that are sources in their horizontal slice, sinks in their
    vertical slice, and touch no diagonal arrow."""
    if not is_constrained(r, q, qp):
        raise InputError("quiver is not product-constrained")
    pos = {v: r.index(v) for v in r.vertices}
    out = set()
    for (u, x) in r.vertices:
        a = pos[(u, x)]
        ok = True
        for (w, y) in r.vertices:
            c = pos[(w, y)]
            if a == c:
                continue
            horizontal = y == x
            vertical = w == u
            if not horizontal and not vertical:
                if r.b[a][c] != 0:
                    ok = False  # diagonal arrow at this vertex
                    break
            elif horizontal and r.b[c][a] > 0:
                ok = False  # not a source in its row
                break
            elif vertical and r.b[a][c] > 0:
                ok = False  # not a sink in its column
                break
        if ok:
            out.add((u, x))
    return frozenset(out)


# ---------------------------------------------------------------------------
# alternating quivers of Dynkin diagrams

def alternating_quiver(t: DynkinType) -> Quiver:
    """Bipartite orientation of a simply laced diagram, sources in the
    plus class of the canonical 2-coloring."""
    if not t.simply_laced:
        raise InputError(f"{t} is not simply laced; use alternating_valued_quiver")
    return Quiver(t.vertices, _bipartite_matrix(t))


def alternating_valued_quiver(t: DynkinType) -> ValuedQuiver:
    """Bipartite orientation of any diagram, as a valued quiver."""
    return ValuedQuiver(t.vertices, _bipartite_matrix(t), dynkin.symmetrizer(t))


def _bipartite_matrix(t: DynkinType) -> Matrix:
    c = dynkin.cartan_matrix(t)
    bip = dynkin.bipartition(t)
    n = t.rank
    b = [[0] * n for _ in range(n)]
    for i, j in dynkin.edges(t):
        src, dst = (i, j) if bip.sign(i) == 1 else (j, i)
        b[src - 1][dst - 1] = -c[src - 1][dst - 1]
        b[dst - 1][src - 1] = c[dst - 1][src - 1]
    return tuple(tuple(row) for row in b)


# ---------------------------------------------------------------------------
# text and JSON forms

def format_label(v: Label) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(format_label(x) for x in v) + ")"
    return str(v)


def format_quiver(q) -> str:
    """Canonical text: vertex list, arrows 'i -> j (v1,v2)' sorted by
    (source, target) in vertex order, and the symmetrizer when valued."""
    lines = ["vertices: " + " ".join(format_label(v) for v in q.vertices)]
    lines.append("arrows:")
    for (u, w, v1, v2) in q.arrows():
        lines.append(f"  {format_label(u)} -> {format_label(w)} ({v1},{v2})")
    if isinstance(q, ValuedQuiver):
        lines.append("d: " + " ".join(str(x) for x in q.d))
    return "\n".join(lines)


def _freeze_label(v):
    if isinstance(v, list):
        return tuple(_freeze_label(x) for x in v)
    return v


def _thaw_label(v):
    if isinstance(v, tuple):
        return [_thaw_label(x) for x in v]
    return v


def quiver_to_json(q) -> dict:
    out = {
        "vertices": [_thaw_label(v) for v in q.vertices],
        "b": [list(row) for row in q.b],
    }
    if isinstance(q, ValuedQuiver):
        out["d"] = list(q.d)
    return out


def quiver_from_json(obj: dict):
    if not isinstance(obj, dict) or "vertices" not in obj or "b" not in obj:
        raise InputError("quiver JSON needs 'vertices' and 'b' fields")
    vertices = tuple(_freeze_label(v) for v in obj["vertices"])
    b = obj["b"]
    try:
        if "d" in obj and obj["d"] is not None:
            return ValuedQuiver(vertices, b, obj["d"])
        return Quiver(vertices, b)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad quiver JSON: {exc}") from exc


def quiver_from_json_text(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return quiver_from_json(obj)
