import random

import pytest

from oracles import socle_brute, span
from prufer_forge import corpus, fp
from prufer_forge.errors import CapExceeded
from prufer_forge.groups import close
from prufer_forge.loewy import (
    AlgebraModule,
    algebra_product,
    check_lemma_bound,
    composition_factors,
    direct_sum,
    ideal_power,
    loewy_series,
    radical,
    regular_module,
    socle,
)
from prufer_forge.zpk import RingSpec, ZpkMatrix

GENS = corpus.INTEGRAL_GENERATORS


def group(name, p):
    return close([ZpkMatrix(RingSpec(p, 1), g) for g in GENS[name]])


COPRIME = [
    ("order 3 companion", 2),
    ("order 3 companion", 5),
    ("order 6 companion", 5),
    ("order 6 companion", 7),
    ("swap", 3),
    ("rotation C4", 3),
]


@pytest.mark.parametrize("name,p", COPRIME)
def test_radical_vanishes_for_coprime_order(name, p):
    g = group(name, p)
    assert g.order % p
    J = radical(g, p)
    assert J.dim == 0 and J.nilpotency_index == 1
    reg = regular_module(g, p)
    assert len(socle(reg, J)) == reg.dim
    assert loewy_series(reg, J).length == 1


@pytest.mark.parametrize("name,p", [("swap", 2), ("rotation C4", 2), ("order 3 companion", 3), ("S3 permutations", 2)])
def test_radical_nonzero_when_p_divides(name, p):
    g = group(name, p)
    assert radical(g, p).dim > 0


def test_c2_examples():
    g = group("swap", 2)
    J = radical(g, 2)
    assert J.dim == 1 and J.basis == ((1, 1),)
    reg = regular_module(g, 2)
    assert socle(reg, J) == ((1, 1),)
    series = loewy_series(reg, J)
    assert series.length == 2 and series.cross_checked
    b = check_lemma_bound(reg, J)
    assert b["passed"] and (b["dim_module"], b["dim_socle"]) == (2, 1)


def test_c4_examples():
    # the rotation has order 2 mod 2, so C4 over F_2 is taken as the 4-cycle
    g = group("4-cycle", 2)
    assert g.order == 4
    J = radical(g, 2)
    assert J.dim == 3 and J.nilpotency_index == 4
    reg = regular_module(g, 2)
    series = loewy_series(reg, J)
    assert series.length == 4 and series.cross_checked
    assert [len(layer) for layer in series.layers] == [0, 1, 2, 3, 4]
    assert check_lemma_bound(reg, J)["dim_socle"] == 1


def test_radical_kills_composition_factors_and_nilpotency_matches():
    for name, p in [("S3 permutations", 2), ("S3 permutations", 3), ("dihedral of order 8", 2), ("order 6 companion", 3)]:
        g = group(name, p)
        J = radical(g, p)
        reg = regular_module(g, p)
        for f in composition_factors(reg):
            for a in J.basis:
                assert not any(any(r) for r in f.algebra_action(a))
        assert J.nilpotency_index == loewy_series(reg, J).length
        assert ideal_power(g, J.basis, J.nilpotency_index, p) == ()
        # J is a two-sided ideal
        e = fp.Echelon(p, g.order)
        for v in J.basis:
            e.add(v)
        for a in J.basis:
            for h in range(g.order):
                unit = tuple(int(i == h) for i in range(g.order))
                assert not any(e.reduce(algebra_product(g, a, unit, p)))
                assert not any(e.reduce(algebra_product(g, unit, a, p)))


def _spin_sub(module, rng, count):
    vecs = [tuple(rng.randrange(module.p) for _ in range(module.dim)) for _ in range(count)]
    return fp.spin(vecs, module.action, module.p, module.dim)


def random_modules(seed=0, count=12):
    """Submodules, quotients and sums of regular modules of small groups."""
    rng = random.Random(seed)
    pool = [("swap", 2), ("4-cycle", 2), ("S3 permutations", 2), ("S3 permutations", 3),
            ("dihedral of order 8", 2), ("order 3 companion", 3), ("order 6 companion", 2)]
    out = []
    while len(out) < count:
        name, p = rng.choice(pool)
        g = group(name, p)
        reg = regular_module(g, p)
        kind = rng.choice(["sub", "quot", "sum", "reg"])
        if kind == "reg":
            m = reg
        elif kind == "sub":
            sub = _spin_sub(reg, rng, 1)
            m = reg.submodule(sub) if 0 < len(sub) < reg.dim else reg
        elif kind == "quot":
            sub = _spin_sub(reg, rng, 1)
            m = reg.quotient(sub) if 0 < len(sub) < reg.dim else reg
        else:
            sub = _spin_sub(reg, rng, 1)
            piece = reg.submodule(sub) if 0 < len(sub) < reg.dim else reg
            m = direct_sum(piece, reg) if piece.dim + reg.dim <= 16 else piece
        if 0 < m.dim <= 16:
            out.append((p, m))
    return out


def test_lemma_bound_and_loewy_length_on_random_modules():
    mods = random_modules()
    assert len(mods) >= 10
    radicals = {}
    for p, m in mods:
        key = (id(m.group), p)
        if key not in radicals:
            radicals[key] = radical(m.group, p)
        J = radicals[key]
        assert check_lemma_bound(m, J)["passed"]
        series = loewy_series(m, J)
        assert series.cross_checked
        assert series.length <= J.nilpotency_index


def test_socle_matches_sum_of_simple_submodules():
    checked = 0
    for p, m in random_modules(seed=3, count=30):
        if p**m.dim > 256:
            continue
        J = radical(m.group, p)
        ours = span(socle(m, J), p, m.dim)
        assert ours == socle_brute(m.action, p, m.dim)
        checked += 1
    assert checked >= 5


def test_socle_is_additive():
    g = group("4-cycle", 2)
    reg = regular_module(g, 2)
    J = radical(g, 2)
    assert len(socle(direct_sum(reg, reg), J)) == 2 * len(socle(reg, J))


def test_module_json_round_trip():
    g = group("swap", 2)
    m = AlgebraModule(2, 2, [((0, 1), (1, 0))], g)
    assert AlgebraModule.from_json(m.to_json(), g).action == m.action


def test_regular_module_cap():
    g = group("S4 permutations", 5)
    assert g.order == 24
    big = close([ZpkMatrix(RingSpec(7, 1), [[1, 1], [0, 1]]), ZpkMatrix(RingSpec(7, 1), [[0, 1], [-1, 0]])])
    with pytest.raises(CapExceeded):
        regular_module(big, 7)
