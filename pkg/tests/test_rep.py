"""Tests for explicit representations: construction by reflection
transport, Hom/Ext solving, tops, and the registry certificates."""

from __future__ import annotations

from fractions import Fraction

import pytest

from ncpq import (
    Representation,
    build_registry,
    ext_dim,
    euler_form,
    hom_dim,
    indecomposable_for_root,
    is_exceptional,
    top_simples,
)
from ncpq.errors import NonFiniteTypeError, ValidationError
from ncpq.rep import ext_dim_via_resolution, simple_representation, zero_representation

ONE = ((Fraction(1),),)


def test_simple_reps(a2):
    s1 = simple_representation(a2, 1)
    assert s1.dims == (1, 0)
    assert s1.maps == ((),)  # 0x1 matrix
    s2 = simple_representation(a2, 2)
    assert s2.dims == (0, 1)
    assert s2.maps == (((),),)  # 1x0 matrix


def test_indecomposable_simple_root(a3, a3_roots):
    rep = indecomposable_for_root(a3, (0, 1, 0), a3_roots)
    assert rep == simple_representation(a3, 2)


def test_indecomposable_a2(a2, a2_roots):
    rep = indecomposable_for_root(a2, (1, 1), a2_roots)
    assert rep.dims == (1, 1)
    assert rep.maps == (ONE,)
    assert hom_dim(rep, rep) == 1


def test_indecomposable_a3_highest(a3, a3_roots):
    rep = indecomposable_for_root(a3, (1, 1, 1), a3_roots)
    assert rep.dims == (1, 1, 1)
    assert rep.maps == (ONE, ONE)
    assert hom_dim(rep, rep) == 1


def test_indecomposable_rejects_non_root(a2, a2_roots):
    with pytest.raises(ValidationError):
        indecomposable_for_root(a2, (2, 1), a2_roots)


def test_indecomposable_rejects_nonfinite(kronecker):
    with pytest.raises(NonFiniteTypeError):
        indecomposable_for_root(kronecker, (1, 1))


def test_hom_dim_simples(a2, a2_reg):
    s1, s2 = simple_representation(a2, 1), simple_representation(a2, 2)
    assert hom_dim(s1, s1) == 1
    assert hom_dim(s1, s2) == 0
    assert hom_dim(s2, s1) == 0
    p1 = a2_reg[(1, 1)]
    assert hom_dim(p1, s1) == 1


def test_hom_dim_quiver_mismatch(a2, a3):
    with pytest.raises(ValidationError):
        hom_dim(simple_representation(a2, 1), simple_representation(a3, 1))


def test_ext_dims_a2(a2, a2_reg):
    s1, s2 = a2_reg[(1, 0)], a2_reg[(0, 1)]
    # the arrow runs 1 -> 2, so the only extension glues S1 on top of S2
    assert euler_form(a2, (1, 0), (0, 1)) == -1
    assert ext_dim(s1, s2) == 1
    assert ext_dim(s2, s1) == 0
    assert ext_dim(s1, s1) == 0


def test_registry_self_certificates(a2_reg, a3_reg, a4_reg, d4_reg):
    for reg in (a2_reg, a3_reg, a4_reg, d4_reg):
        for root in reg.roots():
            assert reg.hom(root, root) == 1
            assert reg.ext(root, root) == 0


def test_registry_sizes(a2_reg, a3_reg, a4_reg, d4_reg):
    assert len(a2_reg) == 3
    assert len(a3_reg) == 6
    assert len(a4_reg) == 10
    assert len(d4_reg) == 12


def test_is_exceptional(a2, a2_reg):
    for root in a2_reg.roots():
        assert is_exceptional(a2_reg[root])
    assert not is_exceptional(zero_representation(a2))
    double = Representation(a2, (2, 0), (_zero(0, 2),))
    assert hom_dim(double, double) == 4
    assert not is_exceptional(double)


def _zero(rows, cols):
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def test_top_simples(a2, a2_reg, a3_reg, d4_reg):
    assert top_simples(simple_representation(a2, 1)) == {1}
    assert top_simples(a2_reg[(1, 1)]) == {1}
    # projectives have simple top at their own vertex
    for reg, projectives in (
        (a3_reg, {1: (1, 1, 1), 2: (0, 1, 1), 3: (0, 0, 1)}),
        (d4_reg, {1: (1, 1, 0, 0), 2: (0, 1, 0, 0), 3: (0, 1, 1, 0), 4: (0, 1, 0, 1)}),
    ):
        for vertex, root in projectives.items():
            assert top_simples(reg[root]) == {vertex}
    assert top_simples(zero_representation(a2)) == frozenset()


def test_euler_identity_all_pairs(a2, a3, a2_reg, a3_reg):
    for q, reg in ((a2, a2_reg), (a3, a3_reg)):
        for a in reg.roots():
            for b in reg.roots():
                M, N = reg[a], reg[b]
                assert hom_dim(M, N) - ext_dim(M, N) == euler_form(q, a, b)
                assert ext_dim(M, N) == ext_dim_via_resolution(M, N)


def test_registry_build_deterministic(a3, a3_roots):
    first = build_registry(a3, a3_roots)
    second = build_registry(a3, a3_roots)
    for root in first.roots():
        assert first[root] == second[root]


def test_registry_rejects_nonfinite(kronecker):
    with pytest.raises(NonFiniteTypeError):
        build_registry(kronecker)


def test_registry_unknown_root(a2_reg):
    with pytest.raises(ValidationError):
        a2_reg[(5, 5)]


def test_injective_hom_scan(a2_reg):
    assert a2_reg.has_injective_hom((0, 1), (1, 1))  # S2 embeds into P1
    assert not a2_reg.has_injective_hom((1, 0), (1, 1))  # hom(S1, P1) = 0
    assert not a2_reg.has_injective_hom((1, 1), (1, 0))  # dims forbid it


def test_zero_representation_homs(a2):
    z = zero_representation(a2)
    s1 = simple_representation(a2, 1)
    assert hom_dim(z, z) == 0
    assert hom_dim(z, s1) == 0
    assert ext_dim(z, s1) == 0


def test_debug_json(a2_reg):
    payload = a2_reg[(1, 1)].to_debug_json()
    assert payload == {"dims": [1, 1], "denominator": 1, "maps": [[[1]]]}
