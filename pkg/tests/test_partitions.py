import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockgeom.partitions import (
    EMPTY,
    Partition,
    StripStatus,
    add_border_strips,
    arm,
    border_strip,
    conjugate,
    hook_length_product,
    hook_number,
    leg,
    partitions_of,
    relative_hook,
    remove_border_strips,
)
from oracles import brute_strip_width, partitions_containing

P = Partition.of

partitions = st.integers(0, 7).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def test_partitions_are_in_descending_lexicographic_order():
    assert partitions_of(4) == [P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]


def test_trailing_zeros_are_dropped_and_order_is_checked():
    assert P(2, 1, 0, 0) == P(2, 1)
    with pytest.raises(ValueError):
        P(1, 2)


def test_parse_and_str_round_trip():
    assert str(P(3, 1, 1)) == "(3,1,1)"
    assert Partition.parse("(3,1,1)") == P(3, 1, 1)
    assert Partition.parse("()") == EMPTY
    for bad in ("3,1", "(1,a)", "(0)"):
        with pytest.raises(ValueError):
            Partition.parse(bad)


def test_conjugate_small():
    assert conjugate(P(3, 1)) == P(2, 1, 1)
    assert conjugate(EMPTY) == EMPTY


@given(partitions)
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


def test_arm_and_leg_go_negative_outside():
    lam = P(2, 1)
    assert arm(lam, (1, 1)) == 1 and leg(lam, (1, 1)) == 1
    assert arm(lam, (2, 2)) == -1 and leg(lam, (2, 2)) == -1
    assert leg(EMPTY, (1, 1)) == -1


def test_relative_hook_examples():
    # h_{(1),(1)}((1,1)) = 0 + 0 + 1; against the empty partition the leg is -1
    assert relative_hook(P(1), P(1), (1, 1)) == 1
    assert relative_hook(P(1), EMPTY, (1, 1)) == 0
    assert relative_hook(P(2), P(1, 1), (1, 1)) == 3


def test_hook_length_product_counts_standard_tableaux():
    # n! / prod hooks is the number of standard tableaux
    assert hook_length_product(P(2, 1)) == 3
    assert hook_length_product(P(3, 2)) == 24
    assert hook_number(P(2, 1), P(2, 1)) == 3


def test_hook_number_vanishes_exactly_off_the_diagonal():
    for n in range(1, 5):
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                assert (hook_number(lam, mu) != 0) == (lam == mu)


def test_border_strip_classification():
    assert border_strip(P(1), P(3)) == (StripStatus.STRIP, 0)
    assert border_strip(P(1), P(1, 1, 1)) == (StripStatus.STRIP, 1)
    assert border_strip(P(1), P(2, 1))[0] is StripStatus.NOT_STRIP
    assert border_strip(EMPTY, P(2, 2))[0] is StripStatus.NOT_STRIP
    assert border_strip(P(2), P(1, 1))[0] is StripStatus.NOT_CONTAINED
    assert border_strip(P(1), P(1))[0] is StripStatus.NOT_STRIP


def test_width_counts_changed_rows():
    # five cells over three rows
    assert border_strip(P(2, 2), P(3, 3, 3)) == (StripStatus.STRIP, 2)
    assert border_strip(P(2, 1), P(3, 2, 2))[0] is StripStatus.NOT_STRIP


@given(partitions, st.integers(1, 5))
def test_add_border_strips_matches_brute_force(lam, n):
    expected = {}
    for mu in partitions_containing(lam, n):
        w = brute_strip_width(lam, mu)
        if w is not None:
            expected[mu] = w
    assert dict(add_border_strips(lam, n)) == expected
    for mu, w in add_border_strips(lam, n):
        assert border_strip(lam, mu) == (StripStatus.STRIP, w)


@given(partitions, st.integers(1, 5))
def test_remove_is_the_inverse_of_add(lam, n):
    for mu, w in add_border_strips(lam, n):
        assert (lam, w) in remove_border_strips(mu, n)
    for nu, w in remove_border_strips(lam, n):
        assert (lam, w) in add_border_strips(nu, n)


def test_strip_lists_are_sorted_and_validated():
    out = add_border_strips(P(1), 2)
    assert [mu for mu, _ in out] == [P(3), P(1, 1, 1)]
    assert remove_border_strips(P(1), 2) == []
    with pytest.raises(ValueError):
        add_border_strips(P(1), 0)


def test_reference_values():
    assert conjugate(P(2, 2)) == P(2, 2)
    assert (arm(P(2, 1), (1, 2)), leg(P(2, 1), (1, 2))) == (0, 0)
    assert arm(EMPTY, (1, 1)) == -1
    # a zero relative hook at the end of the first differing row
    assert relative_hook(P(2, 1), P(1, 1), (1, 2)) == 0
    assert hook_number(P(2, 1), P(1, 1)) == 0
    assert hook_number(EMPTY, P(3)) == 1
    assert add_border_strips(EMPTY, 1) == [(P(1), 0)]
    assert add_border_strips(EMPTY, 2) == [(P(2), 0), (P(1, 1), 1)]
    assert remove_border_strips(P(1), 1) == [(EMPTY, 0)]
    assert remove_border_strips(P(3), 2) == [(P(1), 0)]
    assert remove_border_strips(P(2, 1), 3) == [(EMPTY, 1)]
    assert partitions_of(0) == [EMPTY]
    assert partitions_of(3) == [P(3), P(2, 1), P(1, 1, 1)]
