"""Text format round trips and rejection paths."""

import pytest

from cylgame.ca import check_ca_axioms, full_set_ca
from cylgame.constructions import bsl_structure, maddux_E, order_rainbow_ca
from cylgame.fileformat import parse_structure, write_structure
from cylgame.ra import check_ra_axioms


def roundtrip(struct):
    text = write_structure(struct)
    back = parse_structure(text)
    assert write_structure(back) == text
    return back


def test_ra_roundtrip_maddux():
    s = maddux_E(3)
    back = roundtrip(s)
    assert back.names == s.names
    assert back.identity == s.identity
    assert back.converse == s.converse
    assert back.triples == s.triples


def test_ra_roundtrip_bsl():
    s = bsl_structure(3, 2)
    back = roundtrip(s)
    assert back.names == s.names
    assert back.triples == s.triples


def test_ca_roundtrip_full_set():
    s = full_set_ca(3, 2)
    back = roundtrip(s)
    assert back.n == 3
    assert back.names == s.names
    assert check_ca_axioms(back).ok
    # the coordinate action must survive the trip
    assert back.has_action
    sigma = (1, 0, 2)
    for a in range(len(s.names)):
        assert back.action(a, sigma) == s.action(a, sigma)


def test_ca_roundtrip_order_rainbow():
    s = order_rainbow_ca(3, 2, 2)
    back = roundtrip(s)
    assert back.names == s.names
    for i in range(3):
        assert back.class_members(i) == s.class_members(i)
        for j in range(3):
            if i != j:
                assert back.diag[(min(i, j), max(i, j))] == \
                    s.diag[(min(i, j), max(i, j))]


def test_rule_section_materializes_forbidden_triples():
    text = """\
[atoms]
id a1 a2 a3
[identity]
id
[rule]
monochromatic-forbidden
"""
    s = parse_structure(text)
    e = maddux_E(3)
    assert s.names == e.names
    assert s.triples == e.triples


def test_converse_defaults_to_self():
    text = """\
[atoms]
id s p q
[identity]
id
[converse]
p q
[triples]
"""
    s = parse_structure(text)
    assert list(s.converse) == [0, 1, 3, 2]


def test_reject_unknown_section():
    with pytest.raises(ValueError, match="unknown section"):
        parse_structure("[atoms]\na\n[frobnicate]\n")


def test_reject_rule_and_triples_together():
    text = """\
[atoms]
id a
[identity]
id
[triples]
a a a
[rule]
monochromatic-forbidden
"""
    with pytest.raises(ValueError):
        parse_structure(text)


def test_reject_duplicate_atom():
    with pytest.raises(ValueError, match="duplicate"):
        parse_structure("[atoms]\na a\n[identity]\na\n[triples]\n")


def test_reject_unknown_atom_in_triple():
    text = "[atoms]\nid a\n[identity]\nid\n[triples]\na a zz\n"
    with pytest.raises(ValueError):
        parse_structure(text)


def test_reject_incomplete_acc_cover():
    text = """\
[dim 2]
[atoms]
x y
[acc 0]
x
[acc 1]
x y
[diag 0 1]
x
"""
    with pytest.raises(ValueError):
        parse_structure(text)


def test_reject_partial_action_table():
    s = full_set_ca(2, 2)
    text = write_structure(s)
    # drop one of the two action sections
    head, _, tail = text.partition("[action 1 0]")
    assert tail
    with pytest.raises(ValueError, match="action"):
        parse_structure(head)


def test_diag_sections_mirror():
    s = full_set_ca(2, 2)
    text = write_structure(s)
    swapped = text.replace("[diag 0 1]", "[diag 1 0]")
    back = parse_structure(swapped)
    assert back.diag == s.diag


def test_ra_unicode_free_output_is_stable():
    text = write_structure(maddux_E(2))
    assert text == write_structure(parse_structure(text))
    assert text.isascii()
