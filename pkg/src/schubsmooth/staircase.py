"""Staircase diagrams over path and cycle Coxeter graphs.

A staircase diagram is a partially ordered collection of connected vertex
subsets (blocks) of a Coxeter graph satisfying four axioms:

  (1) every block is connected, and so is B ∪ B' for every cover B ⋖ B';
  (2) for every vertex s, the set 𝓓_s of blocks containing s is a chain;
  (3) for adjacent vertices s ~ t, 𝓓_s ∪ 𝓓_t is a chain in which 𝓓_s and
      𝓓_t are saturated (occupy consecutive positions);
  (4) every block is the minimum of some 𝓓_s and the maximum of some 𝓓_t.

The graphs here are the path Γ_n on vertices s_1..s_n and the cycle Γ̃_n on
s_0..s_{n-1}; connected subsets are intervals.  Structural well-formedness
(nonempty distinct blocks, an acyclic cover relation) is enforced at
construction; the four axioms are checked by validate().

Fully supported increasing diagrams on Γ_n biject with Dyck paths of
semilength n.  Removing the vertex s_{n+1} from a fully supported
increasing/decreasing diagram on Γ_{n+1} gives a broken staircase on Γ_n,
whose last block may sit inside its predecessor; these broken pieces are
the tiles from which every fully supported diagram on a path (line
decomposition) or cycle (cycle decomposition, with a marked vertex) is
glued.  The gluing bijections drive exact enumeration, and to_element maps
spherical diagrams to Weyl group elements by multiplying maximal parabolic
coset representatives block by block.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence, Union

from .affine import AffinePermutation, identity, longest_element
from .errors import BudgetExceeded, MalformedDiagram

INCREASING = "increasing"
DECREASING = "decreasing"


# ----------------------------------------------------------------------
# Coxeter graphs


@dataclass(frozen=True)
class CoxGraph:
    """A path on vertices 1..n or a cycle on vertices 0..n-1.

    >>> cycle_graph(4).adjacent(3, 0)
    True
    >>> path_graph(4).adjacent(1, 3)
    False
    """

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("path", "cycle"):
            raise ValueError(f"unknown graph kind {self.kind!r}")
        if self.kind == "path" and self.n < 1:
            raise ValueError("path graph needs at least one vertex")
        if self.kind == "cycle" and self.n < 2:
            raise ValueError("cycle graph needs at least two vertices")

    @property
    def vertices(self) -> tuple[int, ...]:
        if self.kind == "path":
            return tuple(range(1, self.n + 1))
        return tuple(range(self.n))

    def adjacent(self, u: int, v: int) -> bool:
        if self.kind == "path":
            return abs(u - v) == 1
        return u != v and (u - v) % self.n in (1, self.n - 1)

    def edges(self) -> list[tuple[int, int]]:
        if self.kind == "path":
            return [(i, i + 1) for i in range(1, self.n)]
        if self.n == 2:
            return [(0, 1)]
        return [(i, (i + 1) % self.n) for i in range(self.n)]

    def is_connected(self, subset: Iterable[int]) -> bool:
        vs = set(subset)
        if not vs:
            return True
        if self.kind == "path":
            return max(vs) - min(vs) + 1 == len(vs)
        if len(vs) == self.n:
            return True
        starts = [v for v in vs if (v - 1) % self.n not in vs]
        return len(starts) == 1

    def run_order(self, subset: Iterable[int]) -> tuple[int, ...]:
        """A connected subset listed in consecutive order (cyclic runs start
        at the vertex whose predecessor is outside).  Falls back to sorted
        order for disconnected sets."""
        vs = set(subset)
        if not vs:
            return ()
        if self.kind == "path" or len(vs) == self.n:
            return tuple(sorted(vs))
        starts = [v for v in vs if (v - 1) % self.n not in vs]
        if len(starts) != 1:
            return tuple(sorted(vs))
        out, v = [], starts[0]
        while v in vs:
            out.append(v)
            v = (v + 1) % self.n
        return tuple(out) if len(out) == len(vs) else tuple(sorted(vs))

    def runs(self, subset: Iterable[int]) -> tuple[tuple[int, ...], ...]:
        """Maximal connected runs of a vertex subset, each in consecutive
        order; a full cycle is rejected (it has no run decomposition)."""
        vs = set(subset)
        if not vs:
            return ()
        if self.kind == "cycle" and len(vs) == self.n:
            raise ValueError("full cycle support has no run decomposition")
        starts = sorted(v for v in vs if (v - 1) % self.n not in vs) if self.kind == "cycle" else sorted(
            v for v in vs if v - 1 not in vs
        )
        out = []
        for start in starts:
            run, v = [], start
            while v in vs:
                run.append(v)
                v = (v + 1) % self.n if self.kind == "cycle" else v + 1
            out.append(tuple(run))
        return tuple(out)


def path_graph(n: int) -> CoxGraph:
    return CoxGraph("path", n)


def cycle_graph(n: int) -> CoxGraph:
    return CoxGraph("cycle", n)


# ----------------------------------------------------------------------
# Staircase diagrams


@dataclass(frozen=True)
class StaircaseDiagram:
    """Blocks with a partial order given by covers.

    The constructor canonicalizes: blocks are sorted, the supplied relation
    pairs (indices into the block list as given) are closed transitively
    and reduced back to covers.  Structural defects (empty or duplicate
    blocks, relation cycles, bad indices) raise MalformedDiagram; axiom
    violations are reported by validate() instead.

    >>> d = StaircaseDiagram(cycle_graph(10),
    ...     [[0, 1, 2, 3], [7, 8, 9, 0, 1], [5, 6, 7], [3, 4, 5, 6]],
    ...     [(0, 1), (1, 2), (2, 3)])
    >>> d.validate()[0]
    True
    >>> StaircaseDiagram(path_graph(3), [[1], [3]], [(0, 1)]).validate()[0]
    False
    """

    graph: CoxGraph
    blocks: tuple[frozenset[int], ...]
    covers: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        raw = [frozenset(b) for b in self.blocks]
        verts = set(self.graph.vertices)
        for b in raw:
            if not b:
                raise MalformedDiagram("empty block")
            if not b <= verts:
                raise MalformedDiagram(f"block {sorted(b)} leaves the graph")
        if len(set(raw)) != len(raw):
            raise MalformedDiagram("duplicate blocks")
        k = len(raw)
        leq = [[False] * k for _ in range(k)]
        for pair in self.covers:
            i, j = pair
            if not (0 <= i < k and 0 <= j < k):
                raise MalformedDiagram(f"cover index {pair} out of range")
            if i == j:
                raise MalformedDiagram("reflexive cover")
            leq[i][j] = True
        for m in range(k):  # Warshall
            for i in range(k):
                if leq[i][m]:
                    for j in range(k):
                        if leq[m][j]:
                            leq[i][j] = True
        for i in range(k):
            if leq[i][i]:
                raise MalformedDiagram("relation has a cycle: not a partial order")
        perm = sorted(range(k), key=lambda i: tuple(sorted(raw[i])))
        pos = {old: new for new, old in enumerate(perm)}
        closure = frozenset(
            (pos[i], pos[j]) for i in range(k) for j in range(k) if leq[i][j]
        )
        reduced = tuple(
            sorted(
                (i, j)
                for (i, j) in closure
                if not any((i, m) in closure and (m, j) in closure for m in range(k))
            )
        )
        object.__setattr__(self, "blocks", tuple(raw[i] for i in perm))
        object.__setattr__(self, "covers", reduced)
        object.__setattr__(self, "_closure", closure)

    # -- order queries ------------------------------------------------

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self._closure  # type: ignore[attr-defined]

    def comparable(self, i: int, j: int) -> bool:
        return i == j or self.less(i, j) or self.less(j, i)

    def chain_of(self, s: int) -> tuple[int, ...]:
        """Indices of blocks containing vertex s, sorted bottom to top."""
        members = [i for i, b in enumerate(self.blocks) if s in b]
        return tuple(sorted(members, key=lambda i: sum(self.less(j, i) for j in members)))

    @cached_property
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.blocks:
            out |= b
        return frozenset(out)

    def is_fully_supported(self) -> bool:
        return self.support == frozenset(self.graph.vertices)

    def is_spherical(self) -> bool:
        """Every block generates a finite parabolic: automatic on a path,
        and equivalent to properness of every block on a cycle."""
        if self.graph.kind == "path":
            return True
        return all(len(b) < self.graph.n for b in self.blocks)

    def is_empty(self) -> bool:
        return not self.blocks

    def heights(self) -> tuple[int, ...]:
        """Length of a longest chain strictly below each block."""
        k = len(self.blocks)
        hs = [0] * k
        for i in sorted(range(k), key=lambda i: sum(self.less(j, i) for j in range(k))):
            below = [hs[j] + 1 for j in range(k) if self.less(j, i)]
            hs[i] = max(below, default=0)
        return tuple(hs)

    def flip(self) -> "StaircaseDiagram":
        """Reverse the partial order; an involution.

        >>> d = StaircaseDiagram(path_graph(2), [[1], [2]], [(0, 1)])
        >>> d.flip().flip() == d
        True
        """
        return StaircaseDiagram(self.graph, self.blocks, tuple((j, i) for i, j in self.covers))

    # -- geometry on a path --------------------------------------------

    def _position_sorted(self) -> list[int]:
        return sorted(range(len(self.blocks)), key=lambda i: tuple(sorted(self.blocks[i])))

    def is_chain(self) -> bool:
        return all(
            self.comparable(i, j) for i, j in itertools.combinations(range(len(self.blocks)), 2)
        )

    def _monotone(self, increasing: bool) -> bool:
        if self.graph.kind != "path":
            raise ValueError("increasing/decreasing is defined for path graphs only")
        if not self.is_chain():
            return False
        k = len(self.blocks)
        order = sorted(range(k), key=lambda i: sum(self.less(j, i) for j in range(k)))
        for a, b in zip(order, order[1:]):
            lo, hi = self.blocks[a], self.blocks[b]
            if increasing and not (min(lo) < min(hi) and max(lo) < max(hi)):
                return False
            if not increasing and not (min(lo) > min(hi) and max(lo) > max(hi)):
                return False
        return True

    def is_increasing(self) -> bool:
        """A chain whose blocks move strictly rightward going up."""
        return self._monotone(increasing=True)

    def is_decreasing(self) -> bool:
        return self._monotone(increasing=False)

    # -- axioms ---------------------------------------------------------

    def validate(self) -> tuple[bool, str]:
        """Check the four staircase axioms; report the first violation.

        >>> StaircaseDiagram(path_graph(3), [[1, 2]], []).validate()
        (True, '')
        """
        g = self.graph
        for b in self.blocks:
            if not g.is_connected(b):
                return False, f"axiom (1): block {sorted(b)} is disconnected"
        for i, j in self.covers:
            if not g.is_connected(self.blocks[i] | self.blocks[j]):
                return False, (
                    f"axiom (1): cover union {sorted(self.blocks[i])} u "
                    f"{sorted(self.blocks[j])} is disconnected"
                )
        for s in sorted(self.support):
            ch = self.chain_of(s)
            for i, j in itertools.combinations(ch, 2):
                if not self.comparable(i, j):
                    return False, f"axiom (2): blocks containing s_{s} are not a chain"
        for s, t in g.edges():
            ds, dt = set(self.chain_of(s)), set(self.chain_of(t))
            union = ds | dt
            for i, j in itertools.combinations(union, 2):
                if not self.comparable(i, j):
                    return False, (
                        f"axiom (3): blocks meeting {{s_{s}, s_{t}}} are not a chain"
                    )
            order = sorted(union, key=lambda i: sum(self.less(j, i) for j in union))
            for d, name in ((ds, s), (dt, t)):
                slots = [p for p, i in enumerate(order) if i in d]
                if slots and slots[-1] - slots[0] + 1 != len(slots):
                    return False, (
                        f"axiom (3): blocks containing s_{name} are not saturated "
                        f"in the {{s_{s}, s_{t}}} chain"
                    )
        for i, b in enumerate(self.blocks):
            is_min = any(
                all(not self.less(j, i) for j in self.chain_of(s) if j != i) for s in b
            )
            is_max = any(
                all(not self.less(i, j) for j in self.chain_of(s) if j != i) for s in b
            )
            if not (is_min and is_max):
                return False, (
                    f"axiom (4): block {sorted(b)} is not both a minimum and a "
                    f"maximum of vertex chains"
                )
        return True, ""

    def is_valid(self) -> bool:
        return self.validate()[0]


# ----------------------------------------------------------------------
# JSON and rendering


def to_json(d: StaircaseDiagram) -> str:
    """Serialize; blocks are listed in consecutive (run) order.

    >>> json.loads(to_json(StaircaseDiagram(path_graph(2), [[1], [2]], [(0, 1)])))
    {'graph': {'kind': 'path', 'n': 2}, 'blocks': [[1], [2]], 'covers': [[0, 1]]}
    """
    obj = {
        "graph": {"kind": d.graph.kind, "n": d.graph.n},
        "blocks": [list(d.graph.run_order(b)) for b in d.blocks],
        "covers": [list(c) for c in d.covers],
    }
    return json.dumps(obj)


def from_json(source: Union[str, dict]) -> StaircaseDiagram:
    """Parse the diagram JSON {"graph": {...}, "blocks": [...], "covers": [...]}."""
    try:
        obj = json.loads(source) if isinstance(source, str) else source
        g = CoxGraph(obj["graph"]["kind"], int(obj["graph"]["n"]))
        blocks = [frozenset(int(v) for v in b) for b in obj["blocks"]]
        covers = [(int(i), int(j)) for i, j in obj["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDiagram(f"bad diagram JSON: {exc}") from exc
    return StaircaseDiagram(g, blocks, covers)


def render(d: StaircaseDiagram) -> str:
    """Two-dimensional ASCII picture: one column per vertex (the cycle is
    cut at s_0, which is repeated at the right edge), one row per block,
    drawn top row first in decreasing height order."""
    cols = list(d.graph.vertices)
    if d.graph.kind == "cycle":
        cols = cols + [cols[0]]
    header = " ".join(f"s{v}" for v in cols)
    width = [len(f"s{v}") for v in cols]
    if d.is_empty():
        return header + "\n(empty diagram)"
    hs = d.heights()
    rows = []
    for i in sorted(range(len(d.blocks)), key=lambda i: (-hs[i], tuple(sorted(d.blocks[i])))):
        cells = []
        for v, w in zip(cols, width):
            cells.append(("#" if v in d.blocks[i] else ".") * w)
        rows.append(" ".join(cells))
    return "\n".join([header] + rows)


# ----------------------------------------------------------------------
# Dyck paths and increasing diagrams


@dataclass(frozen=True)
class DyckPath:
    """Run-length form of a Dyck path: pairs (r_i, u_i) of up/down runs.

    >>> DyckPath(((2, 1), (1, 2))).semilength
    3
    >>> DyckPath(((1, 2),))
    Traceback (most recent call last):
        ...
    ValueError: path dips below the axis
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((int(r), int(u)) for r, u in self.pairs))
        if any(r <= 0 or u <= 0 for r, u in self.pairs):
            raise ValueError("runs must be positive")
        h = 0
        for r, u in self.pairs:
            h += r - u
            if h < 0:
                raise ValueError("path dips below the axis")
        if h != 0:
            raise ValueError("ups and downs must balance")

    @property
    def semilength(self) -> int:
        return sum(r for r, _ in self.pairs)


def dyck_paths(n: int) -> Iterator[DyckPath]:
    """All Dyck paths of semilength n, in lexicographic run order.

    >>> sum(1 for _ in dyck_paths(4))
    14
    """

    def gen(ups_left: int, h: int, acc: tuple[tuple[int, int], ...]) -> Iterator[DyckPath]:
        if ups_left == 0:
            if h == 0:
                yield DyckPath(acc)
            return
        for r in range(1, ups_left + 1):
            for u in range(1, h + r + 1):
                yield from gen(ups_left - r, h + r - u, acc + ((r, u),))

    if n < 0:
        raise ValueError("semilength must be nonnegative")
    if n == 0:
        return iter((DyckPath(()),))
    return gen(n, 0, ())


def to_dyck(d: StaircaseDiagram) -> DyckPath:
    """Run lengths r_i = |B_i \\ B_{i-1}|, u_i = |B_i \\ B_{i+1}| along the
    chain of a fully supported increasing diagram."""
    if d.graph.kind != "path":
        raise ValueError("Dyck bijection lives on path graphs")
    if not d.is_fully_supported():
        raise ValueError("diagram is not fully supported")
    if not d.is_increasing():
        raise ValueError("diagram is not increasing")
    chain = sorted(d.blocks, key=min)
    pairs = []
    for i, b in enumerate(chain):
        prev = chain[i - 1] if i > 0 else frozenset()
        nxt = chain[i + 1] if i + 1 < len(chain) else frozenset()
        pairs.append((len(b - prev), len(b - nxt)))
    return DyckPath(tuple(pairs))


def from_dyck(p: DyckPath, n: int) -> StaircaseDiagram:
    """Inverse of to_dyck: block i is {s_j : sum(u_{<i}) < j <= sum(r_{<=i})}.

    >>> d = from_dyck(DyckPath(((1, 1), (4, 2), (1, 3))), 6)
    >>> [sorted(b) for b in sorted(d.blocks, key=min)]
    [[1], [2, 3, 4, 5], [4, 5, 6]]
    """
    if p.semilength != n:
        raise ValueError(f"path has semilength {p.semilength}, expected {n}")
    blocks = []
    r_acc = u_acc = 0
    for r, u in p.pairs:
        r_acc += r
        blocks.append(frozenset(range(u_acc + 1, r_acc + 1)))
        u_acc += u
    covers = [(i, i + 1) for i in range(len(blocks) - 1)]
    return StaircaseDiagram(path_graph(n), blocks, covers)


@lru_cache(maxsize=None)
def increasing_diagrams(n: int) -> tuple[StaircaseDiagram, ...]:
    """All fully supported increasing diagrams on the path with n vertices;
    there are Catalan(n) of them."""
    if n == 0:
        return ()
    return tuple(from_dyck(p, n) for p in dyck_paths(n))


# ----------------------------------------------------------------------
# Broken staircases


@dataclass(frozen=True)
class BrokenStaircase:
    """What remains of a fully supported increasing or decreasing diagram
    on a path with n+1 vertices after dropping the last vertex.

    Blocks are intervals in 1..n listed from the s_1 end; the direction
    records whether the parent chain rose or fell to the right.  The last
    block may sit inside its predecessor (the broken case, which violates
    staircase axiom (4)); otherwise the chain is itself a valid fully
    supported diagram.
    """

    n: int
    blocks: tuple[frozenset[int], ...]
    direction: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))
        if self.direction not in (INCREASING, DECREASING):
            raise ValueError(f"bad direction {self.direction!r}")
        bl = self.blocks
        if not bl:
            raise ValueError("a broken staircase has at least one block")
        ends = []
        for b in bl:
            if not b or min(b) < 1 or max(b) > self.n or max(b) - min(b) + 1 != len(b):
                raise ValueError(f"block {sorted(b)} is not an interval in 1..{self.n}")
            ends.append((min(b), max(b)))
        united: set[int] = set()
        for b in bl:
            united |= b
        if united != set(range(1, self.n + 1)):
            raise ValueError("blocks must cover 1..n")
        head = ends if not self._broken_shape(ends) else ends[:-1]
        for (a1, b1), (a2, b2) in zip(head, head[1:]):
            if not (a1 < a2 <= b1 + 1 and b1 < b2):
                raise ValueError("blocks must step strictly rightward")
        if self._broken_shape(ends):
            a_last = ends[-1][0]
            if not (ends[-2][0] < a_last and ends[-1][1] == ends[-2][1] == self.n):
                raise ValueError("broken overhang must be a right tail of its predecessor")

    @staticmethod
    def _broken_shape(ends: list[tuple[int, int]]) -> bool:
        return len(ends) >= 2 and ends[-1][0] >= ends[-2][0] and ends[-1][1] <= ends[-2][1]

    @property
    def is_broken(self) -> bool:
        return len(self.blocks) >= 2 and self.blocks[-1] <= self.blocks[-2]

    def as_diagram(self) -> StaircaseDiagram:
        """The chain as a staircase diagram on the local path (only valid
        as a diagram when not broken)."""
        k = len(self.blocks)
        covers = [(i, i + 1) for i in range(k - 1)]
        if self.direction == DECREASING:
            covers = [(j, i) for i, j in covers]
        return StaircaseDiagram(path_graph(self.n), self.blocks, covers)


def _chain_blocks(d: StaircaseDiagram) -> list[frozenset[int]]:
    if not d.is_chain():
        raise ValueError("diagram is not a chain")
    return sorted(d.blocks, key=min)


def break_staircase(d: StaircaseDiagram, direction: Optional[str] = None) -> BrokenStaircase:
    """Drop the last vertex of a fully supported monotone diagram on a path
    with n+1 vertices, keeping the nonempty intersections.

    The name avoids the reserved word; this is the breaking operation.
    A single-block diagram is both increasing and decreasing, so the
    direction may need to be supplied; it defaults to increasing.
    """
    if d.graph.kind != "path" or d.graph.n < 2:
        raise ValueError("need a path diagram on at least two vertices")
    if not d.is_fully_supported():
        raise ValueError("diagram is not fully supported")
    inc, dec = d.is_increasing(), d.is_decreasing()
    if direction is None:
        direction = INCREASING if inc else DECREASING
    if direction == INCREASING and not inc or direction == DECREASING and not dec:
        raise ValueError(f"diagram is not {direction}")
    n = d.graph.n - 1
    last = d.graph.n
    blocks = [b - {last} for b in _chain_blocks(d)]
    blocks = [b for b in blocks if b]
    return BrokenStaircase(n, tuple(blocks), direction)


def unbreak(b: BrokenStaircase) -> tuple[StaircaseDiagram, ...]:
    """The 1 or 2 fully supported monotone diagrams on the path with n+1
    vertices whose break is b: extend the last block by the new vertex, or
    (when b is itself a valid staircase) append the new vertex as a block.
    """
    top = b.n + 1
    extended = b.blocks[:-1] + (b.blocks[-1] | {top},)
    out = [BrokenStaircase(top, extended, b.direction).as_diagram()]
    if not b.is_broken:
        appended = b.blocks + (frozenset({top}),)
        out.append(BrokenStaircase(top, appended, b.direction).as_diagram())
    return tuple(out)


@lru_cache(maxsize=None)
def broken_staircases(n: int, direction: str = INCREASING) -> tuple[BrokenStaircase, ...]:
    """All broken staircases on n vertices with the given direction; there
    are Catalan(n+1) - Catalan(n) of them."""
    shapes = {tuple(break_staircase(d).blocks) for d in increasing_diagrams(n + 1)}
    return tuple(
        BrokenStaircase(n, shape, direction)
        for shape in sorted(shapes, key=lambda bs: tuple(tuple(sorted(b)) for b in bs))
    )


# ----------------------------------------------------------------------
# Gluing engine


def _glue(
    graph: CoxGraph,
    pieces: Sequence[BrokenStaircase],
    labels: Sequence[int],
    cyclic: bool,
) -> StaircaseDiagram:
    """Lay the pieces side by side on the labelled slots and join them.

    At the seam after piece j: a broken piece merges its overhang into the
    first block of the next piece; otherwise the seam is a cover, pointing
    up into the peak (increasing -> decreasing) or down into the valley
    (decreasing -> increasing) that starts the next piece.
    """
    assert len(labels) == sum(p.n for p in pieces)
    blocks: list[set[int]] = []
    piece_ids: list[list[int]] = []
    covers: set[tuple[int, int]] = set()
    offset = 0
    for p in pieces:
        ids = []
        for b in p.blocks:
            blocks.append({labels[offset + v - 1] for v in b})
            ids.append(len(blocks) - 1)
        for lo, hi in zip(ids, ids[1:]):
            covers.add((lo, hi) if p.direction == INCREASING else (hi, lo))
        piece_ids.append(ids)
        offset += p.n

    parent = list(range(len(blocks)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seams = len(pieces) if cyclic else len(pieces) - 1
    for j in range(seams):
        a = pieces[j]
        b = pieces[(j + 1) % len(pieces)]
        a_last = piece_ids[j][-1]
        b_first = piece_ids[(j + 1) % len(pieces)][0]
        if a.is_broken:
            ra, rb = find(a_last), find(b_first)
            if ra != rb:
                parent[ra] = rb
                blocks[rb] |= blocks[ra]
        elif a.direction == INCREASING and b.direction == DECREASING:
            covers.add((a_last, b_first))
        elif a.direction == DECREASING and b.direction == INCREASING:
            covers.add((b_first, a_last))
        else:
            raise ValueError("piece directions must alternate")

    roots = sorted({find(i) for i in range(len(blocks))})
    index = {r: i for i, r in enumerate(roots)}
    final_blocks = [frozenset(blocks[r]) for r in roots]
    final_covers = {
        (index[find(i)], index[find(j)]) for i, j in covers if find(i) != find(j)
    }
    return StaircaseDiagram(graph, final_blocks, sorted(final_covers))


# ----------------------------------------------------------------------
# Cycle decomposition


def _block_runs(d: StaircaseDiagram) -> list[tuple[int, ...]]:
    return [d.graph.run_order(b) for b in d.blocks]


def _extremal_flags(d: StaircaseDiagram, order: list[int]) -> list[Optional[bool]]:
    """For blocks arranged in a cyclic zigzag, True = local maximum,
    False = local minimum, None = intermediate."""
    m = len(order)
    flags: list[Optional[bool]] = [None] * m
    for pos, i in enumerate(order):
        prv, nxt = order[(pos - 1) % m], order[(pos + 1) % m]
        up_p, up_n = d.less(prv, i), d.less(nxt, i)
        dn_p, dn_n = d.less(i, prv), d.less(i, nxt)
        if up_p and up_n:
            flags[pos] = True
        elif dn_p and dn_n:
            flags[pos] = False
    return flags


def _private_start(d: StaircaseDiagram, i: int) -> int:
    """First vertex, in the block's own run order, that lies in no other
    block.  Valid diagrams give every extremal block such a vertex."""
    run = d.graph.run_order(d.blocks[i])
    others: set[int] = set()
    for j, b in enumerate(d.blocks):
        if j != i:
            others |= b
    private = [v for v in run if v not in others]
    if not private:
        raise ValueError(f"block {sorted(d.blocks[i])} has no private vertex")
    positions = [run.index(v) for v in private]
    assert positions == list(range(positions[0], positions[0] + len(positions))), (
        "private vertices of an extremal block form a run"
    )
    return private[0]


def _restrict_piece(
    d: StaircaseDiagram, interval: Sequence[int], direction: str
) -> BrokenStaircase:
    """Restrict the diagram to a vertex interval, relabelled to 1..len."""
    pos = {v: i + 1 for i, v in enumerate(interval)}
    local: list[tuple[frozenset[int], int]] = []
    for idx, b in enumerate(d.blocks):
        hit = frozenset(pos[v] for v in b if v in pos)
        if hit:
            local.append((hit, idx))
    local.sort(key=lambda t: min(t[0]))
    for (_, i), (_, j) in zip(local, local[1:]):
        if direction == INCREASING:
            assert d.less(i, j), "piece covers must rise with an increasing piece"
        else:
            assert d.less(j, i), "piece covers must fall with a decreasing piece"
    return BrokenStaircase(len(interval), tuple(b for b, _ in local), direction)


def cycle_decompose(
    d: StaircaseDiagram,
) -> tuple[tuple[BrokenStaircase, ...], int]:
    """Cut a fully supported spherical cycle diagram into broken staircases.

    Cuts happen at the first private vertex of each extremal block; the
    piece starting at a maximal block descends, the piece starting at a
    minimal block ascends, so directions alternate around the cycle.  The
    pieces are rotated so the one containing s_{n-1} comes last, and the
    1-based position of s_{n-1} in that piece is returned as the mark.
    """
    if d.graph.kind != "cycle":
        raise ValueError("cycle decomposition needs a cycle diagram")
    if not d.is_fully_supported():
        raise ValueError("diagram is not fully supported")
    if not d.is_spherical():
        raise ValueError("diagram is not spherical")
    n = d.graph.n
    runs = _block_runs(d)
    order = sorted(range(len(d.blocks)), key=lambda i: runs[i][0])
    flags = _extremal_flags(d, order)
    ext = [(order[p], flags[p]) for p in range(len(order)) if flags[p] is not None]
    assert len(ext) % 2 == 0 and ext, "extremal blocks alternate around the cycle"
    cuts = [(_private_start(d, i), bool(mx)) for i, mx in ext]
    pieces = []
    for j, (c, is_max) in enumerate(cuts):
        nxt = cuts[(j + 1) % len(cuts)][0]
        span = (nxt - c) % n or n
        interval = [(c + t) % n for t in range(span)]
        direction = DECREASING if is_max else INCREASING
        pieces.append((interval, _restrict_piece(d, interval, direction)))
    last = next(j for j, (iv, _) in enumerate(pieces) if (n - 1) in iv)
    rotated = pieces[last + 1 :] + pieces[: last + 1]
    mark = rotated[-1][0].index(n - 1) + 1
    return tuple(p for _, p in rotated), mark


def cycle_glue(pieces: Sequence[BrokenStaircase], mark: int) -> StaircaseDiagram:
    """Inverse of cycle_decompose: lay the pieces around the cycle with the
    mark slot labelled s_{n-1}.

    >>> p = BrokenStaircase(1, (frozenset({1}),), INCREASING)
    >>> q = BrokenStaircase(1, (frozenset({1}),), DECREASING)
    >>> [sorted(b) for b in cycle_glue((p, q), 1).blocks]
    [[0], [1]]
    """
    pieces = tuple(pieces)
    if len(pieces) < 2 or len(pieces) % 2:
        raise ValueError("need an even number of pieces, at least two")
    for a, b in zip(pieces, pieces[1:] + pieces[:1]):
        if a.direction == b.direction:
            raise ValueError("piece directions must alternate")
    if not 1 <= mark <= pieces[-1].n:
        raise ValueError("mark must point into the last piece")
    n = sum(p.n for p in pieces)
    star = sum(p.n for p in pieces[:-1]) + mark
    labels = [(slot - star - 1) % n for slot in range(1, n + 1)]
    return _glue(cycle_graph(n), pieces, labels, cyclic=True)


# ----------------------------------------------------------------------
# Line decomposition


def line_decompose(
    d: StaircaseDiagram,
) -> tuple[tuple[BrokenStaircase, ...], StaircaseDiagram]:
    """Cut a fully supported path diagram into broken staircases followed
    by one increasing staircase.

    Cuts happen at the first private vertex of each extremal block, up to
    the last minimal one; a diagram that ends on a descent therefore ends
    with a decreasing broken piece followed by a single-block staircase.

    >>> d = StaircaseDiagram(path_graph(2), [[1], [2]], [(1, 0)])
    >>> pieces, final = line_decompose(d)
    >>> [(p.n, p.direction) for p in pieces], len(final.blocks)
    ([(1, 'decreasing')], 1)
    """
    if d.graph.kind != "path":
        raise ValueError("line decomposition needs a path diagram")
    if not d.is_fully_supported():
        raise ValueError("diagram is not fully supported")
    n = d.graph.n
    runs = _block_runs(d)
    order = sorted(range(len(d.blocks)), key=lambda i: runs[i][0])
    k = len(order)
    ext: list[tuple[int, bool]] = []
    for pos, i in enumerate(order):
        neigh = [order[pos - 1]] if pos else []
        if pos + 1 < k:
            neigh.append(order[pos + 1])
        if all(d.less(j, i) for j in neigh):
            ext.append((i, True))
        elif all(d.less(i, j) for j in neigh):
            ext.append((i, False))
    # single block: both tests pass; count it once, as a minimum
    if k == 1:
        ext = [(order[0], False)]
    m = max(p for p, (_, is_max) in enumerate(ext) if not is_max) + 1
    cuts = [_private_start(d, i) for i, _ in ext[:m]]
    assert cuts and cuts[0] == 1, "the leftmost block owns vertex 1"
    pieces = []
    for j in range(m - 1):
        interval = list(range(cuts[j], cuts[j + 1]))
        direction = DECREASING if ext[j][1] else INCREASING
        pieces.append(_restrict_piece(d, interval, direction))
    final_iv = list(range(cuts[m - 1], n + 1))
    final_piece = _restrict_piece(d, final_iv, INCREASING)
    assert not final_piece.is_broken, "the final piece is a staircase"
    final = final_piece.as_diagram()
    for i, p in enumerate(pieces):
        expect = DECREASING if (len(pieces) - i) % 2 == 1 else INCREASING
        assert p.direction == expect, "piece directions alternate back from the end"
    return tuple(pieces), final


def line_glue(
    pieces: Sequence[BrokenStaircase], final: StaircaseDiagram
) -> StaircaseDiagram:
    """Inverse of line_decompose."""
    if final.graph.kind != "path" or not final.is_fully_supported() or not final.is_increasing():
        raise ValueError("final part must be a fully supported increasing path diagram")
    chain = _chain_blocks(final)
    tail = BrokenStaircase(final.graph.n, tuple(chain), INCREASING)
    if tail.is_broken:
        raise ValueError("final part must not be broken")
    seq = tuple(pieces) + (tail,)
    for i, p in enumerate(seq[:-1]):
        expect = DECREASING if (len(seq) - 1 - i) % 2 == 1 else INCREASING
        if p.direction != expect:
            raise ValueError("piece directions must alternate back from the final piece")
    n = sum(p.n for p in seq)
    return _glue(path_graph(n), seq, list(range(1, n + 1)), cyclic=False)


# ----------------------------------------------------------------------
# Enumeration


@lru_cache(maxsize=None)
def fully_supported_path_diagrams(n: int) -> tuple[StaircaseDiagram, ...]:
    """All fully supported diagrams on the path with n vertices, generated
    by gluing broken pieces onto a final increasing staircase."""
    out = []
    for parts in range(1, n + 1):
        for comp in _compositions(n, parts):
            piece_pools = []
            for i, size in enumerate(comp[:-1]):
                direction = DECREASING if (parts - 1 - i) % 2 == 1 else INCREASING
                piece_pools.append(broken_staircases(size, direction))
            final_pool = increasing_diagrams(comp[-1])
            for choice in itertools.product(*piece_pools, final_pool):
                out.append(line_glue(choice[:-1], choice[-1]))
    result = tuple(out)
    assert len(set(result)) == len(result), "line gluing is injective"
    return result


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _cycle_fully_supported(n: int) -> tuple[StaircaseDiagram, ...]:
    """All fully supported spherical diagrams on the cycle with n vertices,
    generated by cyclic gluing of an even number of broken pieces with a
    marked vertex in the last one."""
    out = []
    for parts in range(2, n + 1, 2):
        for comp in _compositions(n, parts):
            for first_dir in (INCREASING, DECREASING):
                pools = []
                for i, size in enumerate(comp):
                    direction = first_dir if i % 2 == 0 else (
                        DECREASING if first_dir == INCREASING else INCREASING
                    )
                    pools.append(broken_staircases(size, direction))
                for choice in itertools.product(*pools):
                    for mark in range(1, comp[-1] + 1):
                        out.append(cycle_glue(choice, mark))
    result = tuple(out)
    assert len(set(result)) == len(result), "cycle gluing is injective"
    return result


def _place_on(
    graph: CoxGraph, run: Sequence[int], local: StaircaseDiagram
) -> tuple[list[frozenset[int]], list[tuple[int, int]]]:
    blocks = [frozenset(run[v - 1] for v in b) for b in local.blocks]
    return blocks, list(local.covers)


def enumerate_diagrams(
    g: CoxGraph,
    spherical_only: bool = False,
    fully_supported_only: bool = False,
    max_n: Optional[int] = None,
) -> frozenset[StaircaseDiagram]:
    """Every staircase diagram on g, optionally restricted to spherical or
    fully supported ones.  Exact and duplicate-free; n is capped (path 12,
    cycle 8 by default) because counts grow like 4.4^n.

    >>> len(enumerate_diagrams(cycle_graph(2), spherical_only=True))
    5
    """
    cap = max_n if max_n is not None else (12 if g.kind == "path" else 8)
    if g.n > cap:
        raise BudgetExceeded(f"{g.kind} enumeration capped at n = {cap}, got {g.n}")
    out: list[StaircaseDiagram] = []
    verts = g.vertices
    if g.kind == "path":
        supports: Iterable[tuple[int, ...]]
        if fully_supported_only:
            supports = [verts]
        else:
            supports = itertools.chain.from_iterable(
                itertools.combinations(verts, r) for r in range(len(verts) + 1)
            )
        for sup in supports:
            out.extend(_assemble_on_runs(g, sup))
        return frozenset(out)
    # cycle graph
    out.extend(_cycle_fully_supported(g.n))
    if not spherical_only:
        out.append(StaircaseDiagram(g, (frozenset(verts),), ()))
    if not fully_supported_only:
        for r in range(len(verts)):
            for sup in itertools.combinations(verts, r):
                out.extend(_assemble_on_runs(g, sup))
    return frozenset(out)


def _assemble_on_runs(g: CoxGraph, support: Sequence[int]) -> Iterator[StaircaseDiagram]:
    """Diagrams with the given (proper, on a cycle) support: independent
    fully supported path diagrams on each maximal run."""
    if not support:
        yield StaircaseDiagram(g, (), ())
        return
    runs = g.runs(support)
    pools = [fully_supported_path_diagrams(len(run)) for run in runs]
    for combo in itertools.product(*pools):
        blocks: list[frozenset[int]] = []
        covers: list[tuple[int, int]] = []
        for run, local in zip(runs, combo):
            base = len(blocks)
            bl, cv = _place_on(g, run, local)
            blocks.extend(bl)
            covers.extend((base + i, base + j) for i, j in cv)
        yield StaircaseDiagram(g, blocks, covers)


# ----------------------------------------------------------------------
# The map to Weyl group elements


def to_element(d: StaircaseDiagram) -> AffinePermutation:
    """Multiply, block by block, the maximal element of W_B modulo the
    parabolic on B's overlap with the union of lower blocks.

    Blocks are processed along a linear extension from the bottom; each new
    factor multiplies on the left, so maximal blocks end up leftmost.  The
    result has a complete maximal BP decomposition shaped by the diagram.
    Path diagrams on n vertices land in the affine group with period n+1
    (the finite group on s_1..s_n), cycle diagrams in period n.

    >>> to_element(StaircaseDiagram(path_graph(3), [[1, 2]], [])).window
    (3, 2, 1, 4)
    >>> d = StaircaseDiagram(path_graph(3), [[1, 2], [2, 3]], [(0, 1)])
    >>> to_element(d).window
    (4, 3, 1, 2)
    >>> to_element(d.flip()) == to_element(d).inverse()
    True
    """
    if not d.is_spherical():
        raise ValueError("only spherical diagrams map to group elements")
    period = d.graph.n if d.graph.kind == "cycle" else d.graph.n + 1
    remaining = set(range(len(d.blocks)))
    w = identity(period)
    processed: set[int] = set()
    expected = 0
    while remaining:
        ready = [i for i in remaining if not any(d.less(j, i) for j in remaining if j != i)]
        i = min(ready, key=lambda i: tuple(sorted(d.blocks[i])))
        remaining.discard(i)
        block = d.blocks[i]
        inner = frozenset(block & processed)
        factor = longest_element(period, block) * longest_element(period, inner)
        expected += factor.length
        w = factor * w
        processed |= block
    assert w.length == expected, "block factors multiply length-additively"
    return w
