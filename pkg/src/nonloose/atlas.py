"""Assembly of the full classification atlas.

For each overtwisted structure supporting non-loose representatives of the
(p,q)-torus knot this produces the mountain-range data: infinite X legs,
wing peaks with merge offsets, the exceptional V-with-diamonds (pq > 0) or
X-with-extra-Legendrian (pq < 0), Giroux-torsion towers on the totally
2-inconsistent families, and the transverse quotient.

Torsion is stored doubled everywhere (torsion2 = 2*tor), so half-integer
convex torsion stays integral.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .decorations import (
    DecoratedPathPair,
    classify_consistency,
    compatibility_orbit,
    count_m,
    count_n,
    count_totally_2_inconsistent,
    decoration_string,
    describes_tight,
    enumerate_decorations,
    negate,
)
from .farey import dot, farey_sum
from .invariants import half_lutz_d3, parity_ok, rotation_data
from .paths import block_far_slopes, build_pair, decompose_blocks
from .surgery import knot_surgery_context

UNBOUNDED = None


@dataclass(frozen=True)
class KnotFamilyRecord:
    id: str
    kind: str
    tb_max: int | None  # None = unbounded above
    tb_min: int | None  # None = unbounded below
    rot_at_tbmax: int | None
    rot_slope: int
    rot_intercept: int
    torsion2: int
    stab_plus: str
    stab_minus: str
    merge_offsets: tuple[tuple[int, int], ...] = ()

    def rot_at(self, tb: int) -> int:
        return self.rot_slope * tb + self.rot_intercept

    def covers(self, tb: int) -> bool:
        if self.tb_max is not None and tb > self.tb_max:
            return False
        if self.tb_min is not None and tb < self.tb_min:
            return False
        return True


@dataclass(frozen=True)
class TransverseClass:
    sl: int
    torsion2: int
    next: int | None  # index of the stabilization in the class list, None = loose
    origin: str


@dataclass(frozen=True)
class TransverseEntry:
    d3: int
    classes: tuple[TransverseClass, ...]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class Structure:
    d3: int
    exceptional: bool
    half_integer_torsion: bool
    orbits: tuple[str, ...]
    families: tuple[KnotFamilyRecord, ...]
    notes: tuple[str, ...]
    abs_r: int | None
    wing_data: tuple[tuple[int, int, int, int], ...]  # (member k, |R_k|, extent, merge)


@dataclass(frozen=True)
class Atlas:
    p: int
    q: int
    max_torsion2: int
    counts: dict
    structures: tuple[Structure, ...]
    transverse: tuple[TransverseEntry, ...]

    def structures_at(self, d3_value: int) -> tuple[Structure, ...]:
        return tuple(s for s in self.structures if s.d3 == d3_value)


def _leg(fid, kind, sign, crossing, torsion2, tb_max=UNBOUNDED, tb_min=UNBOUNDED,
         stab=None, merge=()):
    # sign +1 is the L_+ family: rot = crossing - tb; the mirror negates.
    slope = -1 if sign > 0 else +1
    intercept = crossing if sign > 0 else -crossing
    stab_plus, stab_minus = stab or (
        ("stays", "loose") if sign > 0 else ("loose", "stays")
    )
    rot_top = None if tb_max is None else slope * tb_max + intercept
    return KnotFamilyRecord(
        fid, kind, tb_max, tb_min, rot_top, slope, intercept, torsion2,
        stab_plus, stab_minus, tuple(merge),
    )


def _point(fid, kind, rot, tb, torsion2, stab_plus, stab_minus, merge=()):
    return KnotFamilyRecord(
        fid, kind, tb, tb, rot, 0, rot, torsion2, stab_plus, stab_minus, tuple(merge)
    )


def wing_extent(d: DecoratedPathPair) -> int:
    """Number of doomed-sign stabilizations that loosen a k-inconsistent
    member's peak: n_{k-1} of the truncated block ladder."""
    cc = classify_consistency(d)
    if cc.kind != "inconsistent":
        raise ValueError("wing extent is defined for k-inconsistent members")
    fars = {k: n for k, _, n in block_far_slopes(d.pair)}
    return fars[cc.i - 1]


def _merge_offset(pair, j: int) -> int:
    """2*n'_j with n'_j = |(s_j (+) s_{j-1}) . q/p|: the rot distance between
    the peaks of members j+1 and j of one compatibility chain."""
    fars = {k: s for k, s, _ in block_far_slopes(pair)}
    s_new = farey_sum(fars[j], fars[j - 1])
    return 2 * abs(dot(s_new, pair.slope))


def _uniform_side_signs(d: DecoratedPathPair):
    """(sign of P1, sign of P2) when every block is uniform and each side
    carries a single sign (suffix included); None otherwise."""
    sides = {}
    for b in d.blocks:
        c = d.plus_counts[b.index - 1]
        if c not in (0, b.edge_count):
            return None
        s = +1 if c == b.edge_count else -1
        if sides.setdefault(b.side, s) != s:
            return None
    return sides["P1"], sides["P2"]


def classify(p: int, q: int, max_torsion2: int = 4) -> Atlas:
    """The full atlas of non-loose Legendrian/transverse (p,q)-torus knots.

    Torsion towers are truncated at max_torsion2 but flagged unbounded.
    """
    if max_torsion2 < 0:
        raise ValueError("max_torsion2 must be non-negative")
    build_pair(p, q)  # validates the knot class
    return _classify_cached(p, q, max_torsion2)


@lru_cache(maxsize=None)
def _classify_cached(p: int, q: int, max_torsion2: int) -> Atlas:
    pair = build_pair(p, q)
    pq = p * q
    sgn = 1 if pq > 0 else -1
    bound = abs(pq) - p - abs(q)

    # group the non-tight classes into compatibility orbits, mirrors paired
    orbit_of: dict[tuple, list[DecoratedPathPair]] = {}
    key_of: dict[tuple, tuple] = {}
    for d in enumerate_decorations(p, q):
        if describes_tight(d) or d.plus_counts in key_of:
            continue
        orbit = compatibility_orbit(d)
        key = orbit[0].plus_counts
        for m in orbit:
            key_of[m.plus_counts] = key
        orbit_of[key] = orbit
    orbit_pairs = []
    seen = set()
    for key, orbit in orbit_of.items():
        if key in seen:
            continue
        mirror_key = key_of[negate(orbit[0]).plus_counts]
        seen.update({key, mirror_key})
        orbit_pairs.append((orbit, orbit_of[mirror_key]))

    structures: list[Structure] = []
    transverse: list[TransverseEntry] = []

    for orbit, mirror in orbit_pairs:
        key = orbit[0]
        cc_key = classify_consistency(key)
        assert cc_key.kind == "inconsistent" and cc_key.i == 2
        ctx = knot_surgery_context(p, q)
        d3_value = ctx.d3_from_rot(ctx.rotation_vector(key))
        for m in orbit + mirror:
            assert ctx.d3_from_rot(ctx.rotation_vector(m)) == d3_value, "orbit d3 drift"
        orbit_strings = tuple(decoration_string(m) for m in orbit + mirror)
        members = [m for m in orbit if classify_consistency(m).kind == "inconsistent"]
        tops = [m for m in orbit if classify_consistency(m).kind == "totally_consistent"]
        abs_r = {classify_consistency(m).i: abs(rotation_data(m).R) for m in members}
        totally2 = cc_key.totally_2_inconsistent

        if tops:
            assert pq > 0
            structures.append(
                _exceptional_positive(pair, d3_value, orbit_strings, members, tops[0])
            )
            continue

        uniform = _uniform_side_signs(key)
        exceptional_neg = pq < 0 and uniform is not None and uniform[0] == -uniform[1]
        special_pos = pq > 0 and uniform is not None and uniform[0] == -uniform[1]
        if exceptional_neg:
            assert d3_value == bound + 1
        if special_pos:
            assert d3_value == -pq + p + q
        if exceptional_neg or special_pos:
            assert totally2 and len(members) == 1

        crossing = pq - sgn * abs_r[2]
        assert abs(crossing) <= bound, "Bennequin bound violated by X crossing"
        if exceptional_neg:
            assert crossing == bound

        st, tr = _generic_structure(
            pair, d3_value, orbit_strings, members, abs_r, crossing,
            totally2, exceptional_neg, special_pos, max_torsion2,
        )
        structures.append(st)
        transverse.append(tr)

        if totally2:
            st2, tr2 = _half_lutz_structure(
                pair, key, d3_value, orbit_strings, abs_r[2], special_pos, max_torsion2
            )
            structures.append(st2)
            transverse.append(tr2)

    for st in structures:
        assert parity_ok(pq > 0, st.half_integer_torsion, st.d3)

    structures.sort(key=lambda s: (-s.d3, s.half_integer_torsion, s.orbits))
    transverse.sort(key=lambda t: (-t.d3, [ (c.sl, c.torsion2) for c in t.classes ]))

    by_d3: dict[int, int] = {}
    for st in structures:
        by_d3[st.d3] = by_d3.get(st.d3, 0) + 1
    final = []
    for st in structures:
        if by_d3[st.d3] > 1:
            note = (
                "another mountain range shares this d3; the ranges are reported "
                "separately and are conjecturally distinct structures"
            )
            st = replace(st, notes=st.notes + (note,))
        final.append(st)

    n_count = count_n(p, q)
    t2_count = count_totally_2_inconsistent(p, q)
    assert len(orbit_pairs) == n_count
    assert len(final) == n_count + t2_count // 2
    counts = {"m": count_m(p, q), "n": n_count, "totally2": t2_count}
    return Atlas(p, q, max_torsion2, counts, tuple(final), tuple(transverse))


def _exceptional_positive(pair, d3_value, orbit_strings, members, top) -> Structure:
    p, q, pq = pair.p, pair.q, pair.p * pair.q
    assert d3_value == 1, "the all-consistent pq>0 orbit must land in d3 = 1"
    vertex = pq - p - q + 2
    fams = [
        _point("vx", "v_vertex", 0, vertex, 0, "loose", "loose"),
        _leg("v+", "v_leg_plus", +1, vertex, 0, tb_min=vertex + 1),
        _leg("v-", "v_leg_minus", -1, vertex, 0, tb_min=vertex + 1),
    ]
    abs_r2 = abs(rotation_data(members[0]).R)
    assert abs_r2 == p + q - 2, "V corners sit at rot = -/+(p+q-2)"
    wing_data = []
    peaks = [(classify_consistency(m).i, m) for m in members[1:]]
    peaks.append((len(decompose_blocks(pair).blocks) + 1, top))
    prev_abs = abs_r2
    for j, member in peaks:
        r = abs(rotation_data(member).R)
        offset = _merge_offset(pair, j - 1)
        assert prev_abs - r == offset, "diamond peaks must be merge-offset apart"
        merge = ((j - 1, offset),)
        for sign, tag in ((+1, "+"), (-1, "-")):
            fams.append(
                _point(f"d{j}{tag}", "diamond_peak", -sign * r, pq, 0,
                       "stays_above_V", "stays_above_V", merge)
            )
        # the all-consistent diamond allows p - 1 doomed stabs: (p+q-|R|)/2 = n_last = p
        extent = wing_extent(member) if member is not top else (p + q - r) // 2
        wing_data.append((j, r, extent, offset))
        prev_abs = r
    notes = (
        "peak stabilizations stay non-loose exactly on or above the V; "
        "equal invariants there mean equal knots",
    )
    return Structure(
        d3_value, True, False, orbit_strings, tuple(fams), notes, abs_r2,
        tuple(wing_data),
    )


def _generic_structure(
    pair, d3_value, orbit_strings, members, abs_r, crossing,
    totally2, exceptional_neg, special_pos, max_torsion2,
):
    p, q, pq = pair.p, pair.q, pair.p * pair.q
    sgn = 1 if pq > 0 else -1
    bound = abs(pq) - p - abs(q)
    threshold = pq - p - q if special_pos else None
    fams: list[KnotFamilyRecord] = []
    notes: list[str] = []

    def add_legs(torsion2: int):
        # base legs keep the x_leg kinds; torsion copies are torsion_member
        base = torsion2 == 0
        suffix = "" if base else f"~{torsion2}"
        for sign, tag in ((+1, "+"), (-1, "-")):
            kind = ("x_leg_plus" if sign > 0 else "x_leg_minus") if base else "torsion_member"
            if threshold is None:
                fams.append(_leg(f"x{tag}{suffix}", kind, sign, crossing, torsion2))
            else:
                fams.append(
                    _leg(f"x{tag}{suffix}", kind, sign, crossing, torsion2,
                         tb_min=threshold + 1)
                )
                fams.append(
                    _leg(f"x{tag}{suffix}lo",
                         kind if torsion2 == 0 else "torsion_member",
                         sign, crossing, torsion2 + 1, tb_max=threshold)
                )

    add_legs(0)

    wing_data = []
    prev_abs = abs_r[2]
    for m in members[1:]:
        j = classify_consistency(m).i
        r = abs_r[j]
        offset = _merge_offset(pair, j - 1)
        assert abs(r - prev_abs) == offset, "wing peaks must be merge-offset apart"
        merge = ((j - 1, offset),)
        inner_plus = "x+" if j == 3 else f"w{j-1}+"
        inner_minus = "x-" if j == 3 else f"w{j-1}-"
        fams.append(
            _leg(f"w{j}+", "wing_peak", +1, pq - sgn * r, 0, tb_max=pq,
                 stab=("stays", f"becomes:{inner_plus}"), merge=merge)
        )
        fams.append(
            _leg(f"w{j}-", "wing_peak", -1, pq - sgn * r, 0, tb_max=pq,
                 stab=(f"becomes:{inner_minus}", "stays"), merge=merge)
        )
        wing_data.append((j, r, wing_extent(m), offset))
        prev_abs = r

    if wing_data:
        # audit note: the closed-form peak rotation -/+(|R| - 2(n_k - 1))
        # does not always reproduce the merge-consistent direct values
        fars = {k: n for k, _, n in block_far_slopes(pair)}
        for j, r, _, _ in wing_data:
            shortcut = abs(abs_r[2] - 2 * (fars[j - 1] - 1))
            if shortcut != r:
                notes.append(
                    f"wing {j}: direct rotation magnitude {r}; the closed-form "
                    f"shortcut |R|-2(n_k-1) would give {shortcut}"
                )

    if exceptional_neg:
        fams.append(_point("le", "extra_Le", 0, bound, 0, "becomes:x+", "becomes:x-"))
        notes.append(
            "the crossing carries three distinct knots: both legs and the extra one"
        )

    if totally2:
        assert not wing_data, "torsion towers only occur on wingless chains"
        for level in range(2, max_torsion2 + 1, 2):
            add_legs(level)
        notes.append(
            f"torsion towers continue unbounded; truncated at torsion2 = {max_torsion2}"
        )
    if special_pos:
        notes.append("torsion jumps by 1/2 at and below tb = pq - p - q on every level")

    st = Structure(
        d3_value, exceptional_neg, False, orbit_strings, tuple(fams), tuple(notes),
        abs_r[2], tuple(wing_data),
    )

    if totally2:
        classes = []
        for torsion2 in _transverse_levels(special_pos, False, max_torsion2):
            classes.append(TransverseClass(crossing, torsion2, None, "x_leg_minus"))
        tr = TransverseEntry(
            d3_value, tuple(classes),
            ("infinite family indexed by torsion; truncated in this report",),
        )
    else:
        top_abs = abs_r[max(abs_r)]
        hi, lo = sorted((pq - sgn * top_abs, crossing))[::-1]
        chain = list(range(hi, lo - 1, -2))
        classes = []
        for i, sl in enumerate(chain):
            nxt = i + 1 if i + 1 < len(chain) else None
            origin = "x_leg_minus" if sl == crossing else "wing"
            classes.append(TransverseClass(sl, 0, nxt, origin))
        tr = TransverseEntry(d3_value, tuple(classes), ())
    return st, tr


def _transverse_levels(special_pos: bool, half_side: bool, max_torsion2: int):
    """Doubled torsion levels of the infinite transverse family: the
    negative-stabilization limit picks up the below-threshold torsion of the
    pq > 0 special class."""
    if half_side:
        start = 2 if special_pos else 1
    else:
        start = 1 if special_pos else 0
    levels = list(range(start, max_torsion2 + 1, 2))
    return levels or [start]


def _half_lutz_structure(
    pair, key, d3_value, orbit_strings, abs_r2, special_pos, max_torsion2
):
    p, q, pq = pair.p, pair.q, pair.p * pair.q
    lutz_d3 = half_lutz_d3(key)
    crossing = abs_r2 - pq if pq > 0 else -pq - abs_r2
    threshold = pq - p - q if special_pos else None
    fams: list[KnotFamilyRecord] = []
    notes = [
        f"obtained from the d3 = {d3_value} structure by a half Lutz twist "
        "along its non-loose transverse representative"
    ]
    for level in range(1, max_torsion2 + 1, 2) or [1]:
        base = level == 1
        suffix = "" if base else f"~{level}"
        for sign, tag in ((+1, "+"), (-1, "-")):
            kind = ("x_leg_plus" if sign > 0 else "x_leg_minus") if base else "torsion_member"
            if threshold is None:
                fams.append(_leg(f"x{tag}{suffix}", kind, sign, crossing, level))
            else:
                fams.append(
                    _leg(f"x{tag}{suffix}", kind, sign, crossing, level,
                         tb_min=threshold + 1)
                )
                fams.append(
                    _leg(f"x{tag}{suffix}lo",
                         kind if base else "torsion_member",
                         sign, crossing, level + 1, tb_max=threshold)
                )
    notes.append(
        f"torsion towers continue unbounded; truncated at torsion2 = {max_torsion2}"
    )
    if special_pos:
        notes.append("torsion jumps by 1/2 at and below tb = pq - p - q on every level")
    st = Structure(
        lutz_d3, False, True, orbit_strings, tuple(fams), tuple(notes), abs_r2, ()
    )
    classes = [
        TransverseClass(crossing, torsion2, None, "x_leg_minus")
        for torsion2 in _transverse_levels(special_pos, True, max_torsion2)
    ]
    tr = TransverseEntry(
        lutz_d3, tuple(classes),
        ("infinite family indexed by torsion; truncated in this report",),
    )
    return st, tr


def transverse_classify(p: int, q: int, max_torsion2: int = 4):
    """Map d3 -> transverse entries (quotient by negative stabilization)."""
    atlas = classify(p, q, max_torsion2)
    out: dict[int, list[TransverseEntry]] = {}
    for entry in atlas.transverse:
        out.setdefault(entry.d3, []).append(entry)
    return out


# ---------------------------------------------------------------------------
# mountain ranges


@dataclass(frozen=True)
class PointInfo:
    count: int
    families: tuple[str, ...]
    tower: bool
    extra: bool


@dataclass(frozen=True)
class MountainRange:
    p: int
    q: int
    d3: int
    tb_range: tuple[int, int]
    rot_range: tuple[int, int]
    points: dict  # (rot, tb) -> PointInfo


def default_window(atlas: Atlas, d3_value: int) -> tuple[int, int]:
    """tb window covering all peaks, crossings, vertices and L_e, plus margin."""
    pq = atlas.p * atlas.q
    anchors = [pq]
    for st in atlas.structures_at(d3_value):
        for f in st.families:
            if f.tb_max is not None:
                anchors.append(f.tb_max)
            if f.rot_slope != 0:
                # the rot = 0 crossing of the leg line
                anchors.append(-f.rot_intercept * f.rot_slope)
    return (pq - (atlas.p + abs(atlas.q)), max(anchors) + 5)


def mountain_range(atlas: Atlas, d3_value: int, tb_window=None) -> MountainRange:
    """Realized (rot, tb) lattice points with multiplicities for one d3."""
    structs = atlas.structures_at(d3_value)
    if not structs:
        raise ValueError(f"no structure with d3 = {d3_value} in this atlas")
    if tb_window is None:
        tb_window = default_window(atlas, d3_value)
    tb_lo, tb_hi = tb_window

    cells: dict[tuple[int, int], dict] = {}

    def add(rot, tb, fid, tower=False, extra=False):
        if not (tb_lo <= tb <= tb_hi):
            return
        cell = cells.setdefault((rot, tb), {"families": set(), "tower": False, "extra": False})
        cell["families"].add(fid)
        cell["tower"] = cell["tower"] or tower
        cell["extra"] = cell["extra"] or extra

    for st in structs:
        if st.exceptional and atlas.p * atlas.q > 0:
            _fill_exceptional_positive(atlas, st, add, tb_lo, tb_hi)
        else:
            _fill_leg_structure(atlas, st, add, tb_lo, tb_hi)

    points = {
        key: PointInfo(
            len(cell["families"]), tuple(sorted(cell["families"])),
            cell["tower"], cell["extra"],
        )
        for key, cell in cells.items()
    }
    if points:
        rots = [r for r, _ in points]
        rot_range = (min(rots), max(rots))
    else:
        rot_range = (0, 0)
    return MountainRange(atlas.p, atlas.q, d3_value, (tb_lo, tb_hi), rot_range, points)


def _fill_leg_structure(atlas, st, add, tb_lo, tb_hi):
    pq = atlas.p * atlas.q
    tower = any(f.torsion2 > 0 for f in st.families)
    min_t2 = min(f.torsion2 for f in st.families)
    drawable = [f for f in st.families if f.torsion2 <= min_t2 + 1]
    for f in drawable:
        if f.kind == "extra_Le":
            add(f.rot_at_tbmax, f.tb_max, f.id, extra=True)
            continue
        if f.rot_slope == 0:
            continue
        lo = tb_lo if f.tb_min is None else max(tb_lo, f.tb_min)
        hi = tb_hi if f.tb_max is None else min(tb_hi, f.tb_max)
        for tb in range(lo, hi + 1):
            add(f.rot_at(tb), tb, f.id, tower=tower)
    plus = sorted({f.rot_intercept for f in drawable if f.rot_slope == -1})
    if len(plus) > 1:
        for c in range(plus[0] + 2, plus[-1], 2):
            if c in plus:
                continue
            for tb in range(tb_lo, min(tb_hi, pq) + 1):
                add(c - tb, tb, "wing_region+", tower=tower)
                add(tb - c, tb, "wing_region-", tower=tower)


def _fill_exceptional_positive(atlas, st, add, tb_lo, tb_hi):
    p, q = atlas.p, atlas.q
    pq = p * q
    vertex = pq - p - q + 2
    peaks = [f.rot_at_tbmax for f in st.families if f.kind == "diamond_peak"]
    for tb in range(max(tb_lo, vertex), tb_hi + 1):
        top = tb - vertex
        for rot in range(-top, top + 1):
            if (rot + tb) % 2 == 0:
                continue
            on_v = abs(rot) == top
            in_cone = tb <= pq and any(abs(rot - r0) <= pq - tb for r0 in peaks)
            if on_v:
                add(rot, tb, "v")
            elif in_cone:
                add(rot, tb, "diamond")
