import pytest
from hypothesis import given

from cogrowth.automata import subgroup_dfa, transfer_cogrowth
from cogrowth.core import core_of, subgroup_rank
from cogrowth.exceptions import NotNielsenError
from cogrowth.nielsen import (
    check_nielsen,
    geodesic_spanning_tree,
    nielsen_cogrowth,
    nielsen_matrix,
    schreier_generators,
)
from cogrowth.series import Poly, RationalFunction, det
from cogrowth.words import invert, parse_word
from examples import ALL, CONJUGATE_OF_BC, INDEX_3, NORMAL_INDEX_2, SQUARE_COMMUTATOR_CUBE
from strategies import subgroups

a, b, c = 1, 2, 3
A, B, C = -1, -2, -3


def mono(k):
    """-z^k as it appears off the diagonal."""
    return Poly.monomial(k, -1)


def entry(text):
    """Parse '1-z^3', '-z', '-1', '0' into a polynomial."""
    text = text.replace(" ", "")
    if text == "0":
        return Poly()
    p = Poly()
    if text.startswith("1-"):
        p = Poly([1])
        text = text[1:]
    if text == "-1":
        return p + Poly([-1])
    k = int(text.split("^")[1]) if "^" in text else 1
    return p + mono(k)


def matrix(rows):
    return [[entry(x) for x in r.split("&")] for r in rows]


def test_spanning_tree_of_conjugate_of_bc():
    cg = core_of(3, CONJUGATE_OF_BC["generators"])
    tree = geodesic_spanning_tree(cg)
    assert tree.parent == {1: (0, a)}
    assert tree.depth == {0: 0, 1: 1}
    assert schreier_generators(cg, tree) == [parse_word("abA"), parse_word("acA")]


def test_trivial_and_single_loop():
    assert geodesic_spanning_tree(core_of(2, [])).parent == {}
    assert schreier_generators(core_of(1, [(a,)])) == [(a,)]
    assert nielsen_cogrowth([]) == RationalFunction(1)


def test_schreier_basis_of_normal_index_2():
    cg = core_of(3, NORMAL_INDEX_2["generators"])
    tree = geodesic_spanning_tree(cg)
    assert len(tree.parent) == 1
    basis = schreier_generators(cg, tree)
    assert sorted(basis) == sorted(parse_word(w) for w in ["a^2", "b", "c", "abA", "acA"])


@pytest.mark.parametrize(
    "words, expected",
    [
        (["a^2", "b", "c", "abA", "acA"], True),
        (["ab", "B"], False),
        (["a"], True),
        (["a", "b"], True),
        (["ab", "ba"], True),
        (["aba", "b"], True),
        (["a^2", "aba"], False),  # passes condition (1), fails (2)
    ],
)
def test_check_nielsen(words, expected):
    assert check_nielsen([parse_word(w) for w in words]) == expected


def test_check_nielsen_rejects_empty_or_unreduced():
    assert not check_nielsen([()])
    assert not check_nielsen([(a, A)])


def test_nielsen_refuses_non_nielsen_input():
    with pytest.raises(NotNielsenError):
        nielsen_cogrowth([parse_word("ab"), parse_word("B")])


def test_matrix_conjugate_of_bc():
    basis = [parse_word("abA"), parse_word("acA")]
    got, rhs = nielsen_matrix(basis)
    assert got == matrix([
        "1-z & 0 & -z & -z",
        "0 & 1-z & -z & -z",
        "-z & -z & 1-z & 0",
        "-z & -z & 0 & 1-z",
    ])
    assert rhs == [Poly.monomial(3)] * 4


def test_matrix_index_3():
    basis = [parse_word(w) for w in ["a^3", "ab", "aB", "Aba"]]
    got, rhs = nielsen_matrix(basis)
    assert got == matrix([
        "1-z^3 & 0 & -z^3 & -z & -z^3 & -z & -z^3 & -z^3",
        "0 & 1-z^3 & -z^3 & -z^3 & -z^3 & -z^3 & -z & -z",
        "-z^2 & -1 & 1-z^2 & 0 & -z^2 & -1 & -z^2 & -z^2",
        "-z^2 & -z^2 & 0 & 1-z^2 & -z^2 & -z^2 & -z^2 & -z^2",
        "-z^2 & -1 & -z^2 & -1 & 1-z^2 & 0 & -z^2 & -z^2",
        "-z^2 & -z^2 & -z^2 & -z^2 & 0 & 1-z^2 & -z^2 & -z^2",
        "-z & -z^3 & -z^3 & -z^3 & -z^3 & -z^3 & 1-z & 0",
        "-z & -z^3 & -z^3 & -z^3 & -z^3 & -z^3 & 0 & 1-z",
    ])
    assert [p.degree for p in rhs] == [3, 3, 2, 2, 2, 2, 3, 3]


def test_matrix_square_commutator_cube():
    basis = [parse_word(w) for w in ["b^2", "baBA", "a^3"]]
    got, _ = nielsen_matrix(basis)
    assert got == matrix([
        "1-z^2 & 0 & -z^2 & -1 & -z^2 & -z^2",
        "0 & 1-z^2 & -z^2 & -z^2 & -z^2 & -z^2",
        "-z^4 & -z^2 & 1-z^4 & 0 & -z^4 & -z^4",
        "-z^4 & -z^4 & 0 & 1-z^4 & -z^4 & -z^2",
        "-z^3 & -z^3 & -z & -z^3 & 1-z^3 & 0",
        "-z^3 & -z^3 & -z^3 & -z^3 & 0 & 1-z^3",
    ])


@pytest.mark.parametrize("key", list(ALL))
def test_examples_series(key):
    e = ALL[key]
    cg = core_of(e["rank"], e["generators"])
    h = nielsen_cogrowth(schreier_generators(cg))
    assert h.to_json() == {"num": e["num"], "den": e["den"]}


@pytest.mark.parametrize("words", [["a^3", "ab", "aB", "Aba"], ["b^2", "baBA", "a^3"]])
def test_given_nielsen_sets_match_schreier_result(words):
    basis = [parse_word(w) for w in words]
    assert check_nielsen(basis)
    cg = core_of(2, basis)
    assert nielsen_cogrowth(basis) == nielsen_cogrowth(schreier_generators(cg))


def test_rank_one():
    h = nielsen_cogrowth([(a,)])
    assert h.to_json() == {"num": [1, 1], "den": [1, -1]}


@given(subgroups(ranks=(1, 2, 3)))
def test_schreier_basis_properties(sample):
    rank, gens = sample
    cg = core_of(rank, gens)
    tree = geodesic_spanning_tree(cg)
    assert set(tree.depth) == set(range(cg.vertex_count))
    assert len(tree.parent) == cg.vertex_count - 1
    basis = schreier_generators(cg, tree)
    assert len(basis) == subgroup_rank(cg)
    assert check_nielsen(basis)
    assert core_of(rank, basis) == cg


@given(subgroups())
def test_methods_agree(sample):
    rank, gens = sample
    cg = core_of(rank, gens)
    basis = schreier_generators(cg)
    assert nielsen_cogrowth(basis) == transfer_cogrowth(subgroup_dfa(cg))


@given(subgroups(nontrivial=True))
def test_matrix_structure(sample):
    rank, gens = sample
    basis = schreier_generators(core_of(rank, gens))
    if not basis:
        return
    got, _ = nielsen_matrix(basis)
    for i in range(len(basis)):
        assert got[2 * i][2 * i + 1].is_zero() and got[2 * i + 1][2 * i].is_zero()
    assert not det(got).is_zero()
