import pytest
from hypothesis import given, settings, strategies as st

from coxbuild.buildings import FanoBuilding, ProductBuilding, RightAngledBuilding, ThinBuilding, TreeBuilding
from coxbuild.coxeter import BraidMove, affine_a2, direct_product, infinite_dihedral
from coxbuild.errors import GateIndependenceError, LiftError
from coxbuild.retraction import FoldingMap, all_minimal_galleries, enumerate_minimal_galleries, extends
from coxbuild.window import Window

DINF = infinite_dihedral()

BUILDINGS = {
    "tree2": (TreeBuilding(2), 5),
    "fano": (FanoBuilding(), 3),
    "product": (ProductBuilding(TreeBuilding(2), TreeBuilding(2)), 3),
    "rab": (RightAngledBuilding(direct_product(DINF, DINF), (2, 2, 3, 3)), 3),
    "thin_a2t": (ThinBuilding(affine_a2()), 4),
}


@pytest.mark.parametrize("name", sorted(BUILDINGS))
def test_fold_length_and_non_expansive(name):
    bld, r = BUILDINGS[name]
    fm = FoldingMap(bld)
    sys = bld.coxeter
    ch = bld.ball(r)
    for c in ch:
        assert len(fm.fold(c)) == bld.gallery_distance(bld.base, c)
    for a in ch[::2]:
        for b in ch:
            assert sys.delta_w(fm.fold(a), fm.fold(b)) <= bld.gallery_distance(a, b)


def test_fold_is_identity_on_thin():
    Th = ThinBuilding(affine_a2())
    fm = FoldingMap(Th)
    for c in Th.ball(4):
        assert fm.fold(c) == c


def test_fold_preimage():
    T = TreeBuilding(2)
    fm = FoldingMap(T)
    win = Window(T, 4)
    pre = fm.preimage([(0, 1)], win.chambers)
    assert pre == {(0, a, b) for a in range(2) for b in range(2)}


@pytest.mark.parametrize("name", sorted(BUILDINGS))
def test_minimal_gallery_enumerations_agree(name):
    bld, r = BUILDINGS[name]
    ch = bld.ball(min(r, 3))
    for c2 in ch[:: max(1, len(ch) // 25)]:
        fast = {g.chambers for g in all_minimal_galleries(bld, bld.base, c2)}
        slow = {g.chambers for g in enumerate_minimal_galleries(bld, bld.base, c2)}
        assert fast == slow


@pytest.mark.parametrize("name", sorted(BUILDINGS))
def test_lift_with_every_feasible_prefix(name):
    bld, r = BUILDINGS[name]
    fm = FoldingMap(bld)
    sys = bld.coxeter
    ch = bld.ball(min(r, 4))
    for c in ch[:: max(1, len(ch) // 30)]:
        w = fm.fold(c)
        for word in sys.reduced_words(w):
            for k in range(len(word) + 1):
                g = fm.lift_with_prefix(c, word[:k])
                assert g.chambers[0] == bld.base and g.chambers[-1] == c
                assert extends(g.type_word, word[:k])
                assert g.is_minimal(sys)
                for x, y, s in zip(g.chambers, g.chambers[1:], g.type_word):
                    assert bld.w_distance(x, y) == (s,)


def test_lift_prefix_errors():
    T = TreeBuilding(2)
    fm = FoldingMap(T)
    with pytest.raises(LiftError):
        fm.lift_with_prefix((0, 1, 0), (1,))
    with pytest.raises(LiftError):
        fm.lift_with_prefix((0, 1, 0), (0, 0))
    g = fm.lift_with_prefix((0, 1), (0,))
    assert g.type_word == (0,)


def test_lift_braid_move_in_fano():
    F = FanoBuilding()
    fm = FoldingMap(F)
    opp = next(c for c in F.flags if len(fm.fold(c)) == 3)
    g = F.minimal_gallery(F.base, opp)
    mv = BraidMove(0, g.type_word[0], g.type_word[1], 3)
    g2 = fm.lift_braid_move(g, mv)
    assert g2.type_word == mv.apply(g.type_word)
    assert g2.chambers[0] == g.chambers[0] and g2.chambers[-1] == g.chambers[-1]
    assert set(g.chambers[1:-1]).isdisjoint(g2.chambers[1:-1])
    with pytest.raises(LiftError):
        fm.lift_braid_move(g, BraidMove(0, g.type_word[1], g.type_word[0], 3))


def test_component_gate():
    T = TreeBuilding(2)
    fm = FoldingMap(T)
    V = [(0, 1, 0, 0), (0, 1, 0, 1)]
    assert fm.component_gate(V, (0, 1)) == (0, 1, 0)
    assert fm.component_gate(V, ()) == ()
    with pytest.raises(GateIndependenceError):
        fm.component_gate([(0, 0, 0), (0, 1, 0)], (0, 1))
    with pytest.raises(ValueError):
        fm.component_gate([], ())


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_lift_product_random(data):
    P = ProductBuilding(TreeBuilding(2), TreeBuilding(1))
    fm = FoldingMap(P)
    ch = P.ball(4)
    c = data.draw(st.sampled_from(ch))
    words = sorted(P.coxeter.reduced_words(fm.fold(c)))
    word = data.draw(st.sampled_from(words))
    k = data.draw(st.integers(0, len(word)))
    g = fm.lift_with_prefix(c, word[:k])
    assert g.type_word[:k] == word[:k] and g.chambers[-1] == c
