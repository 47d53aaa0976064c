import itertools

import pytest

from permcover.groups import (
    FactorProfile,
    audit_group,
    block_anchor,
    blocks,
    code_from_descriptor,
    dihedral_reflection,
    dihedral_rotation,
    make_cyclic,
    make_dihedral,
    make_product,
    relabel,
)
from permcover.perms import compose, identity, inverse


def closure_from_generators(gens, n):
    """Independent oracle: breadth-first closure of the generated subgroup."""
    frontier = [identity(n)]
    seen = set(frontier)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = compose(g, h)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return seen


def test_factor_profile_validation():
    fp = FactorProfile((4, 3, 2))
    assert fp.n == 9 and fp.k == 3
    assert fp.block_bounds() == [(1, 4), (5, 7), (8, 9)]
    with pytest.raises(ValueError):
        FactorProfile((2, 3))
    with pytest.raises(ValueError):
        FactorProfile((3, 0))
    with pytest.raises(ValueError):
        FactorProfile(())


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_cyclic_matches_generated_closure(n):
    code = make_cyclic(n)
    assert len(code) == n
    shift = tuple(list(range(2, n + 1)) + [1])
    assert code.element_set == closure_from_generators([shift], n)
    audit_group(code)


@pytest.mark.parametrize("n", [3, 4, 7, 10])
def test_dihedral_matches_generated_closure(n):
    code = make_dihedral(n)
    assert len(code) == 2 * n
    gens = [dihedral_rotation(n, n), dihedral_reflection(n, 2)]
    assert code.element_set == closure_from_generators(gens, n)
    audit_group(code)


def test_dihedral_rows():
    # B_1 is the identity row; every A_i is an involution
    n = 6
    assert dihedral_rotation(n, 1) == identity(n)
    for i in range(1, n + 1):
        a = dihedral_reflection(n, i)
        assert compose(a, a) == identity(n)


@pytest.mark.parametrize("parts", [(3, 2), (2, 2, 2), (4, 3, 2)])
def test_product_matches_generated_closure(parts):
    code = make_product(parts)
    n = sum(parts)
    expected = 1
    for p in parts:
        expected *= p
    assert len(code) == expected
    gens = []
    start = 1
    for p in parts:
        images = list(range(1, n + 1))
        images[start - 1:start - 1 + p] = list(range(start + 1, start + p)) + [start]
        gens.append(tuple(images))
        start += p
    assert code.element_set == closure_from_generators(gens, n)
    audit_group(code)


def test_relabel_is_conjugation():
    code = make_product((3, 2))
    pi = (2, 5, 1, 3, 4)
    conj = relabel(code, pi)
    expected = {compose(compose(pi, g), inverse(pi)) for g in code}
    assert conj.element_set == expected
    assert conj.kind == "relabeled" and conj.base_kind == "product"
    # relabeling a relabeled code composes the conjugators
    pi2 = (1, 3, 2, 4, 5)
    twice = relabel(conj, pi2)
    assert twice.pi == compose(pi2, pi)
    assert twice.element_set == relabel(code, compose(pi2, pi)).element_set


def test_blocks_and_anchors():
    code = make_product((3, 2))
    assert blocks(code) == [
        (frozenset({1, 2, 3}), frozenset({1, 2, 3})),
        (frozenset({4, 5}), frozenset({4, 5})),
    ]
    assert block_anchor(code, 2) == 1
    assert block_anchor(code, 5) == 4
    pi = (4, 2, 5, 1, 3)
    conj = relabel(code, pi)
    locs = [set(b[0]) for b in blocks(conj)]
    assert locs == [{4, 2, 5}, {1, 3}]
    assert block_anchor(conj, 2) == 4
    assert block_anchor(conj, 3) == 1
    with pytest.raises(ValueError):
        blocks(make_dihedral(4))


def test_blocks_are_invariant_under_the_code():
    # every element maps each block's locations onto themselves
    code = relabel(make_product((3, 3)), (6, 1, 4, 2, 5, 3))
    for locs, _ in blocks(code):
        for g in code:
            assert {g[i - 1] for i in locs} == set(locs)


def test_descriptor_round_trip():
    for code in [
        make_cyclic(4),
        make_dihedral(5),
        make_product((3, 2)),
        relabel(make_product((3, 2)), (2, 5, 1, 3, 4)),
    ]:
        rebuilt = code_from_descriptor(code.descriptor())
        assert rebuilt.element_set == code.element_set
    with pytest.raises(ValueError):
        code_from_descriptor({"kind": "mystery"})


def test_elements_sorted_lexicographically():
    for code in [make_cyclic(6), make_dihedral(6), make_product((4, 2))]:
        assert list(code.elements) == sorted(code.elements)
