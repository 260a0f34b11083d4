"""Decoration classes: enumeration, consistency, orbits, counting."""

import itertools
from math import gcd

import pytest

from nonloose.decorations import (
    classify_consistency,
    compatibility_orbit,
    count_m,
    count_n,
    count_totally_2_inconsistent,
    decoration_string,
    describes_tight,
    enumerate_decorations,
    negate,
    parse_decoration,
    tight_count_lens,
    tight_count_solid_torus_lower,
    tight_count_solid_torus_upper,
)
from nonloose.paths import build_pair, decompose_blocks
from nonloose.farey import parse_slope


def knot_range(pmax, qmax):
    for p in range(2, pmax + 1):
        for aq in range(p + 1, qmax + 1):
            if gcd(p, aq) == 1:
                yield p, aq
                yield p, -aq


def brute_force_class_count(p, q):
    """Independent oracle: all 2^edges sign tuples, grouped by per-block
    plus counts."""
    blocks = decompose_blocks(build_pair(p, q)).blocks
    sizes = [b.edge_count for b in blocks]
    total_edges = sum(sizes)
    classes = set()
    for signs in itertools.product((0, 1), repeat=total_edges):
        counts = []
        offset = 0
        for e in sizes:
            counts.append(sum(signs[offset : offset + e]))
            offset += e
        classes.add(tuple(counts))
    return len(classes)


def test_enumeration_count_oracle():
    for p, q in [(2, 3), (2, -3), (2, 5), (2, -5), (3, 4), (3, -4), (5, 8), (5, -8)]:
        assert len(enumerate_decorations(p, q)) == brute_force_class_count(p, q)


def test_count_m_golden():
    assert count_m(2, 3) == 6
    assert count_m(5, 8) == 24
    assert count_m(2, -3) == 4
    assert count_m(5, -8) == 12


def test_count_n_golden():
    assert count_n(2, 3) == 2
    assert count_n(5, 8) == 8
    assert count_n(5, -8) == 4


def test_totally_2_inconsistent_golden():
    assert count_totally_2_inconsistent(5, 8) == 8
    assert count_totally_2_inconsistent(2, 3) == 2
    for n in range(1, 8):
        assert count_totally_2_inconsistent(2, 2 * n + 1) == 2
        # every non-loose class of (2,-(2n+1)) is totally 2-inconsistent
        assert count_totally_2_inconsistent(2, -(2 * n + 1)) == 2 * n


def test_counts_exhaustive():
    for p, q in knot_range(7, 40):
        decs = enumerate_decorations(p, q)
        assert len(decs) == count_m(p, q)
        two_inc = [
            d for d in decs
            if not describes_tight(d)
            and classify_consistency(d).kind == "inconsistent"
            and classify_consistency(d).i == 2
        ]
        assert len(two_inc) == 2 * count_n(p, q)
        t2 = [d for d in decs if classify_consistency(d).totally_2_inconsistent]
        assert len(t2) == count_totally_2_inconsistent(p, q)


def test_tight_classes_count():
    # pq < 0: uniformly decorated truncations describe the tight structure
    for p, q in knot_range(7, 30):
        if q > 0:
            continue
        tight = [d for d in enumerate_decorations(p, q) if describes_tight(d)]
        assert len(tight) == 2 * abs(-((-q) // p))


def test_solid_torus_counts():
    assert tight_count_solid_torus_upper(parse_slope("-21/8")) == 12
    assert tight_count_solid_torus_lower(parse_slope("7")) == 1
    assert tight_count_solid_torus_upper(parse_slope("-3")) == 3
    assert tight_count_solid_torus_upper(parse_slope("3")) == 2
    assert tight_count_solid_torus_lower(parse_slope("-3")) == 1
    # |Tight(S_inf; q/p)| * |Tight(S^0; q/p)| counts the decoration classes
    for p, q in [(5, 8), (5, -8), (2, -5), (3, 7)]:
        s = parse_slope(f"{q}/{p}")
        assert (
            tight_count_solid_torus_lower(s) * tight_count_solid_torus_upper(s)
            == count_m(p, q)
        )


def test_lens_counts():
    for p, q in [(2, 3), (5, 8), (5, -8), (3, -7), (4, 9)]:
        assert tight_count_lens(p, -q) * tight_count_lens(q, -p) == count_n(p, q)


def test_consistency_golden_58():
    # the worked (5,8) table: consistency degree per decoration
    cases = {
        "P1:-+|P2:+--": 2,  # gives the exceptional orbit bottom
        "P1:+-|P2:++-": 3,
        "P1:--|P2:--+": 4,
        "P1:++|P2:+++": None,  # totally consistent
        "P1:-+|P2:+-+": 2,
        "P1:+-|P2:+++": 3,
        "P1:--|P2:+--": 2,
        "P1:--|P2:+-+": 2,
    }
    for text, degree in cases.items():
        d = parse_decoration(5, 8, text)
        cc = classify_consistency(d)
        if degree is None:
            assert cc.kind == "totally_consistent"
        else:
            assert (cc.kind, cc.i) == ("inconsistent", degree)


def test_totally_2_inconsistent_flag():
    flagged = {"P1:+-|P2:--+", "P1:-+|P2:++-", "P1:--|P2:++-", "P1:--|P2:+++",
               "P1:++|P2:---", "P1:++|P2:--+", "P1:-+|P2:+++", "P1:+-|P2:---"}
    got = {
        decoration_string(d)
        for d in enumerate_decorations(5, 8)
        if classify_consistency(d).totally_2_inconsistent
    }
    assert got == flagged


def test_orbits_58():
    # the exceptional orbit: 2-, 3-, 4-inconsistent members plus the
    # totally consistent top
    d = parse_decoration(5, 8, "P1:-+|P2:+--")
    orbit = compatibility_orbit(d)
    assert [decoration_string(m) for m in orbit] == [
        "P1:-+|P2:+--", "P1:+-|P2:++-", "P1:--|P2:--+", "P1:++|P2:+++",
    ]
    # the neighbor structure pairs a 2- and a 3-inconsistent member
    d = parse_decoration(5, 8, "P1:-+|P2:+-+")
    orbit = compatibility_orbit(d)
    assert [decoration_string(m) for m in orbit] == ["P1:-+|P2:+-+", "P1:+-|P2:+++"]
    # totally 2-inconsistent classes sit alone
    d = parse_decoration(5, 8, "P1:+-|P2:--+")
    assert compatibility_orbit(d) == [d]


def test_orbits_5m8():
    d = parse_decoration(5, -8, "P1:+-|P2:+-")
    orbit = compatibility_orbit(d)
    assert [decoration_string(m) for m in orbit] == ["P1:+-|P2:+-", "P1:--|P2:-+"]


def test_orbit_partition():
    for p, q in [(5, 8), (5, -8), (2, -7), (3, 5), (4, 7), (3, -8)]:
        decs = [d for d in enumerate_decorations(p, q) if not describes_tight(d)]
        seen: dict = {}
        for d in decs:
            orbit = compatibility_orbit(d)
            ks = []
            for m in orbit:
                cc = classify_consistency(m)
                ks.append(0 if cc.kind == "totally_consistent" else cc.i)
                key = tuple(orbit[0].plus_counts)
                prev = seen.setdefault(m.plus_counts, key)
                assert prev == key, "orbits must be disjoint"
            inc = sorted(k for k in ks if k)
            assert inc == list(range(2, 2 + len(inc))), "one member per degree"
        # negation maps orbits to orbits
        for d in decs:
            mirrored = [negate(m).plus_counts for m in compatibility_orbit(d)]
            assert set(mirrored) == {
                m.plus_counts for m in compatibility_orbit(negate(d))
            }


def test_decoration_parse_roundtrip():
    for p, q in [(5, 8), (5, -8), (2, -5)]:
        for d in enumerate_decorations(p, q):
            assert parse_decoration(p, q, decoration_string(d)) == d
    with pytest.raises(ValueError):
        parse_decoration(5, 8, "P1:++|P2:+")
    with pytest.raises(ValueError):
        parse_decoration(5, 8, "nonsense")


def test_nonloose_decorations_2_minus_odd():
    # 2n non-loose classes, all totally 2-inconsistent
    for n in (1, 2, 3, 4):
        q = -(2 * n + 1)
        decs = [d for d in enumerate_decorations(2, q) if not describes_tight(d)]
        assert len(decs) == 2 * n
        assert all(classify_consistency(d).totally_2_inconsistent for d in decs)
