"""Sign decorations on path pairs and their combinatorics.

A decoration class is determined by the number of + signs in each
continued fraction block (shuffling signs inside a block preserves the
contact structure), so classes are stored as one plus-count per block,
in block-index order.  Canonical edge signs put the + signs first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

from .farey import Slope, make_slope, negative_cf, raw_diff
from .paths import Block, build_pair, decompose_blocks


@lru_cache(maxsize=None)
def _blocks_of(p: int, q: int) -> tuple[Block, ...]:
    return decompose_blocks(build_pair(p, q)).blocks


@dataclass(frozen=True)
class DecoratedPathPair:
    p: int
    q: int
    plus_counts: tuple[int, ...]

    @property
    def pair(self):
        return build_pair(self.p, self.q)

    @property
    def blocks(self) -> tuple[Block, ...]:
        return _blocks_of(self.p, self.q)

    def _side_signs(self, side: str) -> tuple[int, ...]:
        out = []
        for b in self.blocks:
            if b.side != side:
                continue
            c = self.plus_counts[b.index - 1]
            out.extend([+1] * c + [-1] * (b.edge_count - c))
        return tuple(out)

    @property
    def signs1(self) -> tuple[int, ...]:
        """Edge signs along P1 (from q/p outward), canonical order."""
        return self._side_signs("P1")

    @property
    def signs2(self) -> tuple[int, ...]:
        return self._side_signs("P2")

    def __str__(self) -> str:
        return decoration_string(self)


def _sign_str(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def decoration_string(d: DecoratedPathPair) -> str:
    return f"P1:{_sign_str(d.signs1)}|P2:{_sign_str(d.signs2)}"


def parse_decoration(p: int, q: int, text: str) -> DecoratedPathPair:
    """Parse "P1:<signs>|P2:<signs>" (P1 in forward path order); the class is
    canonicalized, so only per-block plus counts are retained."""
    parts = dict(
        chunk.split(":", 1) for chunk in text.replace(" ", "").split("|") if chunk
    )
    if set(parts) != {"P1", "P2"}:
        raise ValueError(f"decoration must look like 'P1:+-|P2:++-', got {text!r}")
    blocks = decompose_blocks(build_pair(p, q)).blocks
    counts = [0] * len(blocks)
    for side in ("P1", "P2"):
        signs = parts[side]
        if any(ch not in "+-" for ch in signs):
            raise ValueError(f"bad sign characters in {signs!r}")
        offset = 0
        side_blocks = [b for b in blocks if b.side == side]
        if len(signs) != sum(b.edge_count for b in side_blocks):
            raise ValueError(
                f"{side} needs {sum(b.edge_count for b in side_blocks)} signs, got {len(signs)}"
            )
        for b in side_blocks:
            chunk = signs[offset : offset + b.edge_count]
            counts[b.index - 1] = chunk.count("+")
            offset += b.edge_count
    return DecoratedPathPair(p, q, tuple(counts))


def negate(d: DecoratedPathPair) -> DecoratedPathPair:
    sizes = [b.edge_count for b in d.blocks]
    return DecoratedPathPair(
        d.p, d.q, tuple(e - c for c, e in zip(d.plus_counts, sizes))
    )


def enumerate_decorations(p: int, q: int) -> list[DecoratedPathPair]:
    """All decoration classes, lexicographic over (block index, plus count)."""
    blocks = decompose_blocks(build_pair(p, q)).blocks
    sizes = [b.edge_count for b in blocks]
    return [
        DecoratedPathPair(p, q, counts)
        for counts in itertools.product(*(range(e + 1) for e in sizes))
    ]


# ---------------------------------------------------------------------------
# consistency


@dataclass(frozen=True)
class ConsistencyClass:
    kind: str  # "totally_consistent" | "inconsistent"
    i: int | None  # inconsistency index (>= 2) when kind == "inconsistent"
    totally_2_inconsistent: bool


def _block_sign(d: DecoratedPathPair, block: Block) -> int:
    """+1 / -1 for a uniformly signed block, 0 for a mixed one."""
    c = d.plus_counts[block.index - 1]
    if c == block.edge_count:
        return +1
    if c == 0:
        return -1
    return 0


def breaking_index(d: DecoratedPathPair) -> int | None:
    """Smallest i such that blocks 1..i are not uniformly one sign."""
    current = 0
    for b in d.blocks:
        s = _block_sign(d, b)
        if s == 0 or (current != 0 and s != current):
            return b.index
        current = s
    return None


def classify_consistency(d: DecoratedPathPair) -> ConsistencyClass:
    blocks = d.blocks
    t2i = False
    if len(blocks) >= 2:
        s1, s2 = _block_sign(d, blocks[0]), _block_sign(d, blocks[1])
        t2i = s1 != 0 and s2 == -s1
    b = breaking_index(d)
    if b is None:
        return ConsistencyClass("totally_consistent", None, False)
    return ConsistencyClass("inconsistent", b, t2i)


def describes_tight(d: DecoratedPathPair) -> bool:
    """pq < 0 decorations whose truncated part is uniformly one sign describe
    the standard tight structure, whatever the integer-run suffix does."""
    if d.q > 0:
        return False
    sign = 0
    for b in d.blocks:
        if not b.in_truncation:
            continue
        s = _block_sign(d, b)
        if s == 0 or (sign != 0 and s != sign):
            return False
        sign = s
    return True


# ---------------------------------------------------------------------------
# compatibility shuffles


def _extension_ok(d: DecoratedPathPair, b: int) -> bool:
    # The edge from the second-to-last vertex of block b-1 to the first
    # vertex of block b must extend block b's continued fraction block.
    blocks = d.blocks
    prev, cur = blocks[b - 2], blocks[b - 1]
    v_first = cur.vertices[0]
    v_second_last = prev.vertices[-2]
    return make_slope(*raw_diff(v_first, v_second_last)) == cur.pivot


def shuffle_down(d: DecoratedPathPair) -> DecoratedPathPair | None:
    """The compatible (i-1)-inconsistent class of an i-inconsistent one (i >= 3).

    Returns None when no such shuffle exists (2-inconsistent input, tight
    input, or the inconsistency sits in the pq < 0 integer-run suffix).
    """
    if describes_tight(d):
        return None
    b = breaking_index(d)
    if b is None:
        # pq > 0 totally consistent: handled by shuffle_down_from_consistent.
        return shuffle_down_from_consistent(d) if d.q > 0 else None
    if b < 3 or not d.blocks[b - 1].in_truncation:
        return None
    assert _extension_ok(d, b), "shuffle invalidated by block geometry"
    blocks = d.blocks
    sigma = _block_sign(d, blocks[0])
    assert sigma != 0
    sizes = [blk.edge_count for blk in blocks]
    new = list(d.plus_counts)
    for j in range(b - 2):
        new[j] = 0 if sigma > 0 else sizes[j]
    new[b - 2] = 1 if sigma > 0 else sizes[b - 2] - 1
    new[b - 1] += 1 if sigma > 0 else -1
    assert 0 <= new[b - 1] <= sizes[b - 1]
    out = DecoratedPathPair(d.p, d.q, tuple(new))
    assert breaking_index(out) == b - 1
    return out


def shuffle_down_from_consistent(d: DecoratedPathPair) -> DecoratedPathPair:
    """pq > 0 only: the maximally inconsistent re-signing of the all-one-sign
    class (split the final solid-torus prong off P2's last edge)."""
    if d.q < 0 or breaking_index(d) is not None:
        raise ValueError("needs the pq > 0 totally consistent class")
    blocks = d.blocks
    assert blocks[-1].side == "P2", "last block should sit on P2 for pq > 0"
    sigma = _block_sign(d, blocks[0])
    sizes = [blk.edge_count for blk in blocks]
    new = [0 if sigma > 0 else sz for sz in sizes]
    new[-1] = 1 if sigma > 0 else sizes[-1] - 1
    out = DecoratedPathPair(d.p, d.q, tuple(new))
    assert breaking_index(out) == len(blocks)
    return out


def _shuffle_up(d: DecoratedPathPair) -> DecoratedPathPair | None:
    """Inverse of shuffle_down, or the totally consistent top when the input
    is the maximally inconsistent pq > 0 re-signing; None at the orbit top."""
    if describes_tight(d):
        return None
    b = breaking_index(d)
    if b is None:
        return None
    blocks = d.blocks
    sizes = [blk.edge_count for blk in blocks]
    tau = _block_sign(d, blocks[0])
    if tau == 0:
        return None
    # block b must carry exactly one edge signed opposite to tau
    plus_b = d.plus_counts[b - 1]
    one_opposite = (sizes[b - 1] - plus_b == 1) if tau > 0 else (plus_b == 1)
    if not one_opposite:
        return None
    if b == len(blocks):
        if d.q < 0 or blocks[-1].side != "P2":
            return None
        top = DecoratedPathPair(d.p, d.q, tuple(0 if tau > 0 else sz for sz in sizes))
        return top if shuffle_down_from_consistent(top) == d else None
    if not blocks[b].in_truncation:
        return None
    # the candidate parent has blocks 1..b uniformly -tau and one fewer
    # (-tau)-edge in block b+1
    new = list(d.plus_counts)
    for j in range(b):
        new[j] = 0 if tau > 0 else sizes[j]
    new[b] = d.plus_counts[b] + (1 if tau > 0 else -1)
    if not 0 <= new[b] <= sizes[b]:
        return None
    parent = DecoratedPathPair(d.p, d.q, tuple(new))
    if shuffle_down(parent) != d:
        return None
    return parent


def compatibility_orbit(d: DecoratedPathPair) -> list[DecoratedPathPair]:
    """All classes compatible with d: one k-inconsistent member per k, ordered
    by k, with the pq > 0 totally consistent top (when present) last."""
    if describes_tight(d):
        return [d]
    chain = [d]
    cur = d
    while True:
        down = shuffle_down(cur)
        if down is None:
            break
        chain.insert(0, down)
        cur = down
    cur = d
    while True:
        up = _shuffle_up(cur)
        if up is None:
            break
        chain.append(up)
        cur = up
    return chain


# ---------------------------------------------------------------------------
# counting formulas


def _ab_digits(p: int, q: int) -> tuple[list[int], list[int]]:
    s = Fraction(q, p)
    if q < 0:
        a = negative_cf(s)
    else:
        a = negative_cf(1 / (Fraction(p, q) - 1))
    ceil_s = -((-q) // p)
    b = negative_cf(1 / (s - ceil_s))
    return a, b


def count_m(p: int, q: int) -> int:
    """Number of decoration classes: |Tight(S^1xD^2;q/p)| x |Tight(S^1xD^2;p/q)|."""
    a, b = _ab_digits(p, q)
    return abs(prod(x + 1 for x in a[:-1]) * a[-1]) * abs(
        prod(x + 1 for x in b[:-1]) * b[-1]
    )


def count_n(p: int, q: int) -> int:
    """Number of tight structures on L(p,-q) # L(q,-p)."""
    a, b = _ab_digits(p, q)
    return abs(prod(x + 1 for x in a)) * abs(prod(x + 1 for x in b))


def count_totally_2_inconsistent(p: int, q: int) -> int:
    a, b = _ab_digits(p, q)
    return 2 * abs(prod(x + 1 for x in a[:-1])) * abs(prod(x + 1 for x in b[:-1]))


def tight_count_solid_torus_upper(r: Slope) -> int:
    """|Tight(S^0; r)|: solid torus with upper meridian 0, dividing slope r."""
    if r.is_infinite or abs(r.as_fraction()) <= 1:
        raise ValueError("dividing slope must be finite with |r| > 1")
    v = r.as_fraction()
    if v > 1:
        v = 1 / (1 / v - 1)
    digits = negative_cf(v)
    return abs(prod(x + 1 for x in digits[:-1]) * digits[-1])


def tight_count_solid_torus_lower(r: Slope) -> int:
    """|Tight(S_inf; r)|: solid torus with lower meridian infinity."""
    if r.is_infinite:
        raise ValueError("dividing slope must be finite")
    if r.is_integer:
        return 1
    v = r.as_fraction()
    ceil_v = -((-v.numerator) // v.denominator)
    digits = negative_cf(1 / (v - ceil_v))
    return abs(prod(x + 1 for x in digits[:-1]) * digits[-1])


def tight_count_lens(p: int, q: int) -> int:
    """Number of tight contact structures on the lens space L(p, q)."""
    if p < 0:
        p, q = -p, -q
    if p < 2:
        return 1
    if gcd(p, abs(q)) != 1:
        raise ValueError("lens space needs coprime parameters")
    q_star = q % p
    if q_star == 0:
        raise ValueError("q must be nonzero mod p")
    digits = negative_cf(Fraction(-p, q_star))
    return abs(prod(x + 1 for x in digits))
