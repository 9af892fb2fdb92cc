import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclobmw.admissibility import ParameterSet
from cyclobmw.bmw2 import (
    GENERATORS,
    IDENTITY,
    AlgebraElement,
    BasisWord,
    build_table,
    check_associativity,
    check_confluence,
    check_relations,
    default_instance,
    freeness_certificate,
    involution,
    left_ideal_closed,
    parse_word,
    reduce_word,
)
from cyclobmw.errors import InputError
from cyclobmw.repn import build_module
from cyclobmw.ring import MultiPoly

EXE, XXS, XX = "EXE", "XXS", "XX"


@pytest.fixture(scope="module")
def generic2():
    return build_table(2, ParameterSet.generic(2))


@pytest.fixture(scope="module")
def numeric2():
    return build_table(2, default_instance(2))


def el(*pairs):
    return AlgebraElement({BasisWord(*w): c for c, w in pairs})


def test_reduce_examples(generic2):
    p = generic2.params
    w0 = p.omega[0]
    assert generic2.reduce("e e") == el((w0, (EXE, 0, 0)))
    assert generic2.reduce("s e") == el((1, (EXE, 0, 0)))
    assert generic2.reduce("s x1 e") == el((-1, (EXE, 1, 0)), (w0 - 1, (EXE, 0, 0)))
    assert generic2.reduce("x2 e") == el((-1, (EXE, 1, 0)))


def test_reduce_word_function():
    assert reduce_word("s s", default_instance(2)) == el((1, (XX, 0, 0)))


def test_bad_token():
    with pytest.raises(InputError):
        parse_word("s x3")


def test_r1_symbolic_table():
    t = build_table(1, ParameterSet.symbolic(1))
    u, = MultiPoly.variables(1)
    assert len(t.words) == 3
    assert t.reduce("e e") == el((2 * u + 1, (EXE, 0, 0)))
    # x2 = u + s - e when x1 = u
    assert t.reduce("x2") == el((u, (XX, 0, 0)), (1, (XXS, 0, 0)), (-1, (EXE, 0, 0)))


def test_e_x_e_numeric(numeric2):
    assert numeric2.product(BasisWord(EXE, 0, 0), BasisWord(EXE, 1, 0)) == el((45, (EXE, 0, 0)))


def test_identity_is_neutral(numeric2):
    for w in numeric2.words:
        assert numeric2.product(IDENTITY, w) == el((1, w))
        assert numeric2.product(w, IDENTITY) == el((1, w))


def test_generators_on_identity(numeric2):
    t = numeric2
    assert t.apply("x1", t.one()) == el((1, (XX, 1, 0)))
    assert t.apply("x2", t.one()) == el((1, (XX, 0, 1)))
    assert t.apply("s", t.one()) == el((1, (XXS, 0, 0)))
    assert t.apply("e", t.one()) == el((1, (EXE, 0, 0)))


def test_involution_examples(numeric2):
    t = numeric2
    assert involution(t, el((1, (EXE, 1, 0)))) == el((1, (EXE, 0, 1)))
    for a in range(2):
        for b in range(2):
            assert involution(t, el((1, (XX, a, b)))) == el((1, (XX, a, b)))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_involution_is_order_two_anti_automorphism(r):
    t = build_table(r, default_instance(r))
    for w in t.words:
        assert involution(t, involution(t, t.element(w))) == t.element(w)
    for w1 in t.words:
        for w2 in t.words:
            lhs = involution(t, t.product(w1, w2))
            rhs = t.multiply(involution(t, t.element(w2)), involution(t, t.element(w1)))
            assert lhs == rhs, (w1, w2)


def test_involution_reverses_words(numeric2):
    t = numeric2
    for w in t.words:
        assert involution(t, t.element(w)) == t.reduce(list(reversed(w.letters())))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_relations_hold_numeric(r):
    rep = check_relations(build_table(r, default_instance(r)))
    assert rep.all_pass, rep.failures()


@pytest.mark.parametrize("r", [1, 2])
def test_relations_hold_symbolic(r):
    rep = check_relations(build_table(r, ParameterSet.symbolic(r)))
    assert rep.all_pass, rep.failures()


def test_relations_fail_when_perturbed():
    p = default_instance(2)
    rep = check_relations(build_table(2, p.with_omega(0, p.omega_at(0) + 1)))
    assert not rep.all_pass
    names = {c.name for c in rep.failures()}
    assert any("skein" in n or "unwrapping" in n for n in names)
    assert all(c.witness is not None for c in rep.failures())


@pytest.mark.parametrize("r, triples", [(1, 27), (2, 1728)])
def test_associativity_numeric(r, triples):
    rep = check_associativity(build_table(r, default_instance(r)))
    assert rep.holds and rep.triples == triples


def test_associativity_symbolic_r2():
    rep = check_associativity(build_table(2, ParameterSet.symbolic(2)))
    assert rep.holds


def test_associativity_fails_when_perturbed():
    p = default_instance(2)
    rep = check_associativity(build_table(2, p.with_omega(0, 11)))
    assert not rep.holds and rep.witness is not None


def test_freeness_certificates():
    assert freeness_certificate(2, default_instance(2)).free
    assert freeness_certificate(1, ParameterSet.symbolic(1)).free
    bad = freeness_certificate(2, ParameterSet.numeric((2, 3), (11, 45)))
    assert not bad.free
    assert bad.rank == 12


@pytest.mark.parametrize("r", [1, 2, 3])
def test_left_ideal_closed(r):
    assert left_ideal_closed(build_table(r, default_instance(r)))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_unwrapping_table_identities(r):
    p = default_instance(r)
    t = build_table(r, p)
    for a in range(2 * r + 1):
        assert t.reduce(["e"] + ["x1"] * a + ["e"]) == el((p.omega_at(a), (EXE, 0, 0))), a


@pytest.mark.parametrize("r", [1, 2, 3])
def test_left_ideal_matches_module_matrices(r):
    """W e acts on span{x^a e} exactly as the generators act on M."""
    p = default_instance(r)
    t = build_table(r, p)
    m = build_module(p)
    mats = {"x1": m.X1, "x2": m.X2, "s": m.S, "e": m.E}
    for g, mat in mats.items():
        for col in range(r):
            image = t.left_mult[g][BasisWord(EXE, col, 0)]
            for row in range(r):
                assert image.get(BasisWord(EXE, row, 0), 0) == mat[row][col], (g, row, col)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_confluence_smoke(numeric2, seed):
    assert check_confluence(numeric2, count=60, seed=seed).holds


words = st.lists(st.sampled_from(GENERATORS), max_size=5)


@given(words, words)
@settings(max_examples=60, deadline=None)
def test_reduce_is_multiplicative(w1, w2):
    t = _cached_table()
    assert t.reduce(w1 + w2) == t.multiply(t.reduce(w1), t.reduce(w2))


_TABLES = {}


def _cached_table():
    if "r3" not in _TABLES:
        _TABLES["r3"] = build_table(3, default_instance(3))
    return _TABLES["r3"]


def test_dump_covers_all_pairs(numeric2):
    rows = numeric2.dump()
    assert len(rows) == 4 * 12
    assert {r["generator"] for r in rows} == set(GENERATORS)
