import pytest

from prufer_forge import corpus
from prufer_forge.reps import (
    Representation,
    check_theorem5,
    dual_cover_check,
    dual_rep,
    reduce_mod,
    reduction_kernel,
)
from prufer_forge.zpk import RingSpec


def test_reduce_examples():
    rep = corpus.rotation_c4(2)
    low = reduce_mod(rep, 1)
    assert [m.rows for m in low.generators] == [((0, 1), (1, 0))]
    assert low.order == 2
    assert reduce_mod(rep, 2) is rep
    inv = corpus.dihedral(3)
    low = reduce_mod(inv, 1)
    assert low.order == 1 and low.generators[0].is_identity()
    with pytest.raises(ValueError):
        reduce_mod(rep, 3)


def test_tower_coherence():
    rep = corpus.wreath_c4(2, 4)
    for j in (1, 2, 3):
        for i in range(1, j + 1):
            a = reduce_mod(reduce_mod(rep, j), i)
            b = reduce_mod(rep, i)
            assert [m.rows for m in a.group.elements] == [m.rows for m in b.group.elements]


def test_kernel_examples():
    assert reduction_kernel(corpus.rotation_c4(3), 1).order == 2
    k = reduction_kernel(corpus.wreath_c4(2, 3), 1)
    assert k.order == 4 and k.is_elementary_abelian_2
    c3 = Representation.from_generators([[[0, -1], [1, -1]]], RingSpec(3, 2))
    assert c3.order == 3
    assert reduction_kernel(c3, 1).is_trivial


def test_kernels_are_normal():
    for rep in corpus.integral_corpus(primes=(2, 3), k=2):
        for j in range(1, rep.k + 1):
            assert reduction_kernel(rep, j).kernel.is_normal()


def test_theorem5_examples():
    v = check_theorem5(corpus.rotation_c4(3))
    assert v.passed and v.kernel.order == 2 and v.kernel.exponent == 2
    v = check_theorem5(corpus.wreath_c4(3, 3))
    assert v.passed and v.kernel.order == 8
    assert check_theorem5(corpus.trivial(2, 3, 2)).passed


def test_theorem5_fails_on_non_integral_data():
    # an element of order 4 congruent to I mod 2, of the form 1 + 2X with X = [[0,1],[1,0]] (mod 8)
    g = Representation.from_generators([[[1, 2], [2, 1]]], RingSpec(2, 3))
    v = check_theorem5(g)
    assert g.order == 4 and not v.passed
    assert v.counterexample is not None
    assert "diagnostic" in v.note
    # odd p: a nontrivial element congruent to I mod 3
    h = Representation.from_generators([[[1, 3], [0, 1]]], RingSpec(3, 2))
    assert not check_theorem5(h).passed


def test_dual_examples():
    rep = corpus.rotation_c4(3)
    d = dual_rep(rep)
    assert d.generators[0] == rep.generators[0]
    dd = dual_rep(d)
    assert [m.rows for m in dd.group.elements] == [m.rows for m in rep.group.elements]
    inv = corpus.dihedral(3)
    assert dual_rep(inv).generators[0].rows == ((7,),)


def test_dual_is_multiplicative():
    rep = corpus.wreath_c4(2, 2)
    d = dual_rep(rep)
    t = rep.group.mult_table
    for i in range(0, rep.order, 3):
        for j in range(0, rep.order, 5):
            assert d.group.elements[i] @ d.group.elements[j] == d.group.elements[t[i][j]]


def test_dual_cover_check_examples():
    out = dual_cover_check(corpus.rotation_c4(4))
    assert out["agree"] and out["dual_then_reduce"] == [[[0, 1], [1, 0]]]
    assert dual_cover_check(corpus.trivial(2, 2, 2))["agree"]
    out = dual_cover_check(corpus.wreath_c4(2, 3))
    assert out["agree"] and len(out["dual_then_reduce"]) == len(corpus.wreath_c4(2, 3).generators)
    with pytest.raises(ValueError):
        dual_cover_check(corpus.rotation_c4(1))


def test_corpus_double_dual_identity():
    for rep in corpus.integral_corpus():
        dd = dual_rep(dual_rep(rep))
        assert all(a == b for a, b in zip(dd.group.elements, rep.group.elements))
