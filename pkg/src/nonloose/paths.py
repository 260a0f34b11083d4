"""Farey paths attached to a torus knot class.

For coprime |q| > p > 1 the slope q/p determines a canonical pair of
minimal Farey paths: P1 runs anticlockwise from q/p to floor(q/p), P2 runs
clockwise from q/p to -1 (when pq < 0) or to infinity (when pq > 0).
Both paths subdivide into continued fraction blocks, interleaved by their
distance from q/p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .farey import (
    INFINITY,
    NEGATIVE,
    Slope,
    cf_expand,
    cf_step_increment,
    cf_value,
    dot,
    is_edge,
    make_slope,
    raw_diff,
)


@dataclass(frozen=True)
class FareyPath:
    vertices: tuple[Slope, ...]

    @property
    def edges(self) -> int:
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)

    def validate(self) -> None:
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not is_edge(a, b):
                raise ValueError(f"not a Farey path: {a} -- {b}")


@dataclass(frozen=True)
class PathPair:
    """The pair (P1, P2) representing q/p, with the knot class it came from."""

    p: int
    q: int
    p1: FareyPath
    p2: FareyPath

    @property
    def slope(self) -> Slope:
        return make_slope(self.q, self.p)

    @property
    def pq_positive(self) -> bool:
        return self.q > 0


@dataclass(frozen=True)
class Block:
    """A maximal continued fraction block of one path.

    index: 1-based position among all blocks ordered by distance from q/p.
    side: "P1" or "P2".
    pivot: the common Farey neighbor every vertex of the block shares
      (the canonicalized successive difference).
    in_truncation: False only for the pq < 0 integer run beyond ceil(q/p).
    """

    index: int
    side: str
    vertices: tuple[Slope, ...]
    pivot: Slope
    in_truncation: bool

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    @property
    def far_slope(self) -> Slope:
        return self.vertices[-1]


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    leading_side: str  # side of the index-1 block

    def on_side(self, side: str) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.side == side)

    @property
    def truncated(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.in_truncation)


def _validate_knot(p: int, q: int) -> None:
    from math import gcd

    if p <= 1 or abs(q) <= p or gcd(p, abs(q)) != 1:
        raise ValueError(
            f"({p},{q}) is not an admissible torus knot class: need |q| > p > 1 coprime"
        )


@lru_cache(maxsize=None)
def build_pair(p: int, q: int) -> PathPair:
    """Construct the canonical pair of minimal paths representing q/p."""
    _validate_knot(p, q)
    slope = make_slope(q, p)
    exp = cf_expand(slope)

    p1_vertices = [cf_value(exp.digits[:k]) for k in range(len(exp.digits), 0, -1)]
    p1 = FareyPath(tuple(p1_vertices))

    p2_vertices = [slope]
    digits = exp.digits
    if exp.regime == NEGATIVE:
        while p2_vertices[-1] != make_slope(-1, 1):
            digits = cf_step_increment(digits)
            p2_vertices.append(cf_value(digits))
    else:
        ceiling = make_slope(slope.ceil(), 1)
        while p2_vertices[-1] != ceiling:
            digits = cf_step_increment(digits)
            p2_vertices.append(cf_value(digits))
        p2_vertices.append(INFINITY)
    p2 = FareyPath(tuple(p2_vertices))

    p1.validate()
    p2.validate()
    return PathPair(p, q, p1, p2)


def p2_truncated(pair: PathPair) -> FareyPath:
    """P2 up to ceil(q/p); the whole of P2 when pq > 0 or ceil(q/p) = -1."""
    if pair.pq_positive:
        return pair.p2
    ceiling = make_slope(pair.slope.ceil(), 1)
    vertices = []
    for v in pair.p2:
        vertices.append(v)
        if v == ceiling:
            break
    return FareyPath(tuple(vertices))


def truncate_p2(pair: PathPair) -> FareyPath:
    """The truncated path P2^T from q/p to ceil(q/p); defined for pq < 0 only.

    For pq > 0 the truncation is the identity by convention and this
    operation refuses; use p2_truncated for the uniform helper.
    """
    if pair.pq_positive:
        raise ValueError("truncate_p2 applies to pq < 0 only (identity for pq > 0)")
    return p2_truncated(pair)


def _split_blocks(path: FareyPath) -> list[tuple[tuple[Slope, ...], Slope]]:
    """Split a path into maximal runs of edges with equal Farey difference."""
    out: list[tuple[tuple[Slope, ...], Slope]] = []
    verts = path.vertices
    start = 0
    pivots = [make_slope(*raw_diff(b, a)) for a, b in zip(verts, verts[1:])]
    for i in range(1, len(pivots) + 1):
        if i == len(pivots) or pivots[i] != pivots[i - 1]:
            out.append((tuple(verts[start : i + 1]), pivots[start]))
            start = i
    return out


@lru_cache(maxsize=None)
def decompose_blocks(pair: PathPair) -> BlockDecomposition:
    """Interleaved continued-fraction-block decomposition of (P1, P2).

    The length-1 leading block gets index 1; for the -(2n+1)/2 tie both
    leading blocks have length 1 and P2 goes first (fixed convention).
    The pq < 0 integer run beyond ceil(q/p) is indexed after everything else.
    """
    trunc = p2_truncated(pair)
    raw1 = _split_blocks(pair.p1)
    raw2_full = _split_blocks(pair.p2)
    n_trunc2 = len(_split_blocks(trunc))
    raw2, suffix = raw2_full[:n_trunc2], raw2_full[n_trunc2:]
    if sum(len(v) - 1 for v, _ in raw2) != trunc.edges:
        raise AssertionError("integer-run suffix merged into a truncated block")

    len1, len2 = len(raw1[0][0]) - 1, len(raw2[0][0]) - 1
    if len2 == 1:
        first, second, first_side, second_side = raw2, raw1, "P2", "P1"
    elif len1 == 1:
        first, second, first_side, second_side = raw1, raw2, "P1", "P2"
    else:
        raise AssertionError("neither leading block has length 1")
    if abs(len(first) - len(second)) > 1:
        raise AssertionError("truncated block counts differ by more than 1")

    blocks: list[Block] = []
    for k in range(len(first) + len(second)):
        source, side = (first, first_side) if k % 2 == 0 else (second, second_side)
        j = k // 2
        if j >= len(source):
            raise AssertionError("blocks do not interleave")
        verts, pivot = source[j]
        blocks.append(Block(k + 1, side, verts, pivot, True))
    for verts, pivot in suffix:
        blocks.append(Block(len(blocks) + 1, "P2", verts, pivot, False))
    return BlockDecomposition(tuple(blocks), first_side)


def block_far_slopes(pair: PathPair) -> list[tuple[int, Slope, int]]:
    """(k, s_k, n_k) per truncated block: far slope and |s_k . q/p|."""
    slope = pair.slope
    out = []
    for b in decompose_blocks(pair).truncated:
        s = b.far_slope
        out.append((b.index, s, abs(dot(s, slope))))
    return out


OVERTWISTED = "OVERTWISTED"


def shorten(vertices, signs, anchor: int = 0):
    """Shorten a signed Farey path to a minimal one, merging edge pairs.

    A vertex whose neighbors span an edge can be removed when its two edges
    carry the same sign (the merged edge keeps it).  If the only removable
    vertices have opposite-signed edges, the decorated path is not tight:
    returns OVERTWISTED.  Otherwise returns the minimal (vertices, signs).

    Removable vertices are tried in order of distance from ``anchor`` (the
    position of q/p in the concatenations this is used on, where the order
    is in fact forced).
    """
    vertices = tuple(vertices)
    signs = tuple(signs)
    if len(vertices) != len(signs) + 1:
        raise ValueError("need one sign per edge")

    def removable(verts):
        out = []
        for i in range(1, len(verts) - 1):
            if verts[i - 1] != verts[i + 1] and is_edge(verts[i - 1], verts[i + 1]):
                out.append(i)
        return out

    seen: set[tuple] = set()

    def search(verts, sgns, anch):
        candidates = removable(verts)
        if not candidates:
            return verts, sgns
        key = (verts, sgns)
        if key in seen:
            return None
        seen.add(key)
        candidates.sort(key=lambda i: (abs(i - anch), i))
        for i in candidates:
            if sgns[i - 1] != sgns[i]:
                continue
            new_verts = verts[:i] + verts[i + 1 :]
            new_sgns = sgns[: i - 1] + (sgns[i - 1],) + sgns[i + 1 :]
            got = search(new_verts, new_sgns, anch if i > anch else anch - 1)
            if got is not None:
                return got
        return None

    result = search(vertices, signs, anchor)
    return OVERTWISTED if result is None else result
