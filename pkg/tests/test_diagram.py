import random
from fractions import Fraction

import pytest
from helpers import oracle_renumber, random_vpb_word

import outangles as ou
from outangles import Crossing, Diagram


def test_identity_diagram_tidy():
    d = ou.identity_diagram(3)
    assert ou.tidy(d) == d
    assert d.eos_keys == (1, 2, 3)
    assert ou.crossing_number(d) == 0


def test_tidy_single_crossing_rational_keys():
    d = Diagram(2, (Crossing(1, (1, Fraction(7, 10)), (2, Fraction(1, 5))),), (1, 2))
    t = ou.tidy(d)
    assert t.crossings == (Crossing(1, (1, 1), (2, 3)),)
    assert t.eos_keys == (2, 4)


def test_tidy_post_glide_diagram_matches_oracle():
    # one glide applied to: strand1 over@1 (a), strand2 under@3 (b),
    # strand3 under@5 (a) then over@6 (b)
    a = Crossing(1, (1, 1), (3, 5))
    b = Crossing(1, (3, 6), (2, 3))
    d = Diagram(3, (a, b), (2, 4, 7))
    out = ou.glide_once(d, ou.uo_intervals(d)[0])
    assert out == oracle_renumber(out)
    assert set(out.crossings) == {
        Crossing(1, (3, 9), (2, 6)),
        Crossing(1, (1, 2), (3, 10)),
        Crossing(1, (1, 1), (2, 7)),
        Crossing(-1, (1, 3), (2, 5)),
    }
    assert out.eos_keys == (4, 8, 11)


def test_tidy_matches_oracle_on_random_words():
    rng = random.Random(7)
    for _ in range(30):
        w = random_vpb_word(rng, rng.randrange(2, 5), rng.randrange(0, 6))
        d = ou.iota(w)
        assert ou.tidy(d) == oracle_renumber(d)


def test_tidy_idempotent_and_order_preserving():
    d = Diagram(
        2,
        (
            Crossing(-1, (1, Fraction(1, 3)), (2, 10)),
            Crossing(1, (2, 9), (1, Fraction(2, 3))),
        ),
        (5, 20),
    )
    t = ou.tidy(d)
    assert ou.tidy(t) == t
    # per-strand order and roles survive renumbering
    assert t.crossings[0].sign == -1 and t.crossings[0].over[0] == 1
    assert [c.sign for c in t.crossings] == [-1, 1]


def test_compose_identity_laws():
    rng = random.Random(3)
    for _ in range(10):
        w = random_vpb_word(rng, 3, rng.randrange(0, 5))
        d = ou.iota(w)
        ident = ou.identity_diagram(3)
        assert ou.compose(ident, d) == ou.tidy(d)
        assert ou.compose(d, ident) == ou.tidy(d)


def test_compose_crossing_counts_add():
    w1 = ou.parse_vpb("vpb 3: s1,2 s2,3 s3,1")
    w2 = ou.parse_vpb("vpb 3: s2,1' s1,3 s3,2")
    d = ou.compose(ou.iota(w1), ou.iota(w2))
    assert ou.crossing_number(d) == 6


def test_compose_two_twist():
    # brute force: stack the two one-crossing diagrams and tidy
    d1 = ou.iota(ou.parse_vpb("vpb 2: s1,2"))
    d2 = ou.iota(ou.parse_vpb("vpb 2: s2,1"))
    raw = Diagram(
        2,
        (
            Crossing(1, (1, 1), (2, 2)),
            Crossing(1, (2, Fraction(5, 2)), (1, Fraction(3, 2))),
        ),
        (2, 3),
    )
    expected = oracle_renumber(raw)
    assert ou.compose(d1, d2) == expected
    assert expected.crossings == (
        Crossing(1, (1, 1), (2, 4)),
        Crossing(1, (2, 5), (1, 2)),
    )


def test_compose_associative_up_to_canonical_key():
    rng = random.Random(11)
    for _ in range(10):
        a, b, c = (ou.iota(random_vpb_word(rng, 3, rng.randrange(0, 4))) for _ in range(3))
        left = ou.compose(ou.compose(a, b), c)
        right = ou.compose(a, ou.compose(b, c))
        assert ou.canonical_key(left) == ou.canonical_key(right)


def test_compose_strand_mismatch():
    with pytest.raises(ou.StrandCountMismatch):
        ou.compose(ou.identity_diagram(2), ou.identity_diagram(3))


def test_crossing_number_examples():
    assert ou.crossing_number(ou.identity_diagram(4)) == 0
    assert ou.crossing_number(ou.iota(ou.parse_vpb("vpb 2: s1,2 s2,1 s1,2"))) == 3


def test_canonical_key_examples():
    scaled = Diagram(2, (Crossing(1, (1, Fraction(1, 7)), (2, 100)),), (50, 200))
    plain = Diagram(2, (Crossing(1, (1, 1), (2, 3)),), (2, 4))
    assert ou.canonical_key(scaled) == ou.canonical_key(plain)
    flipped = Diagram(2, (Crossing(-1, (1, 1), (2, 3)),), (2, 4))
    assert ou.canonical_key(flipped) != ou.canonical_key(plain)
    assert ou.canonical_key(ou.tidy(scaled)) == ou.canonical_key(scaled)


def test_parse_trivial_and_generator():
    assert ou.parse("vd 1\neos 1\n") == ou.identity_diagram(1)
    assert ou.parse("vd 2\nx + 1 3\neos 2 4\n") == ou.iota(ou.parse_vpb("vpb 2: s1,2"))


def test_parse_serialize_roundtrips():
    rng = random.Random(23)
    for _ in range(20):
        d = ou.iota(random_vpb_word(rng, rng.randrange(2, 5), rng.randrange(0, 6)))
        text = ou.serialize(d)
        assert ou.serialize(ou.parse(text)) == text
        assert ou.parse(text) == ou.tidy(d)


def test_parse_accepts_rationals_tidies():
    d = ou.parse("vd 2\nx - 1/3 7/2\neos 2 4\n")
    assert d.crossings[0].over == (1, Fraction(1, 3))
    assert ou.serialize(d) == "vd 2\nx - 1 3\neos 2 4\n"


def test_parse_syntax_errors_carry_position():
    with pytest.raises(ou.ParseError) as exc:
        ou.parse("vd 2\nx * 1 3\neos 2 4\n")
    assert exc.value.line == 2
    with pytest.raises(ou.ParseError):
        ou.parse("")
    with pytest.raises(ou.ParseError):
        ou.parse("vd 2\neos 2 4\nx + 1 3\n")


def test_parse_semantic_errors():
    with pytest.raises(ou.InvalidDiagram):
        ou.parse("vd 2\neos 4 2\n")  # end keys must increase
    with pytest.raises(ou.InvalidDiagram):
        ou.parse("vd 2\nx + 2 3\neos 2 4\n")  # mark collides with end key
    with pytest.raises(ou.InvalidDiagram):
        ou.parse("vd 0\neos\n")


def test_invalid_diagram_construction():
    with pytest.raises(ou.InvalidDiagram):
        Diagram(2, (Crossing(1, (1, 1), (1, 1)),), (2, 3))  # coincident marks
    with pytest.raises(ou.InvalidDiagram):
        Diagram(1, (Crossing(1, (1, 1), (1, 2)),), (2,))  # end key not maximal
    with pytest.raises(ou.InvalidDiagram):
        Diagram(2, (Crossing(1, (1, 0.5), (2, 1)),), (2, 3))  # float key
    with pytest.raises(ou.InvalidDiagram):
        Diagram(2, (Crossing(2, (1, 1), (2, 2)),), (3, 4))  # bad sign
    with pytest.raises(ou.InvalidDiagram):
        Diagram(2, (Crossing(1, (3, 1), (2, 2)),), (3, 4))  # strand out of range
