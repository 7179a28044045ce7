import pytest

from skewalg.groupoid import (CompositionUndefined, Groupoid, UnknownObject,
                              build_groupoid, validate_groupoid)


def one_object():
    return build_groupoid(["e"], [], [], [])


def bridge_groupoid():
    return build_groupoid(
        ["e1", "e2"],
        [("g", "e1", "e2"), ("ginv", "e2", "e1")],
        [("g", "ginv", "id:e2"), ("ginv", "g", "id:e1")],
        [("g", "ginv")],
    )


def flip_groupoid():
    return build_groupoid(
        ["e1", "e2"],
        [("g", "e1", "e1"), ("h", "e2", "e2"), ("x", "e1", "e2"),
         ("y", "e1", "e2"), ("xinv", "e2", "e1"), ("yinv", "e2", "e1")],
        [("g", "g", "id:e1"), ("h", "h", "id:e2"),
         ("x", "g", "y"), ("y", "g", "x"), ("h", "x", "y"), ("h", "y", "x"),
         ("xinv", "h", "yinv"), ("yinv", "h", "xinv"),
         ("g", "xinv", "yinv"), ("g", "yinv", "xinv"),
         ("x", "xinv", "id:e2"), ("x", "yinv", "h"),
         ("y", "xinv", "h"), ("y", "yinv", "id:e2"),
         ("xinv", "x", "id:e1"), ("xinv", "y", "g"),
         ("yinv", "x", "g"), ("yinv", "y", "id:e1")],
        [("g", "g"), ("h", "h"), ("x", "xinv"), ("y", "yinv")],
    )


# -- validation ------------------------------------------------------------------

def test_one_object_identity_groupoid_is_valid():
    assert validate_groupoid(one_object()).ok


def test_bridge_groupoid_is_valid():
    assert validate_groupoid(bridge_groupoid()).ok


def test_flip_groupoid_is_valid():
    assert validate_groupoid(flip_groupoid()).ok


def test_dropped_inverse_is_flagged():
    g = bridge_groupoid()
    broken = Groupoid(g.objects, g.morphisms, g.src, g.tgt, g.identity,
                      g.compose,
                      {m: v for m, v in g.inverse.items() if m != "ginv"})
    report = validate_groupoid(broken)
    assert not report.ok
    assert "MissingInverse" in report.codes()


def test_wrong_inverse_pairing_is_flagged():
    g = bridge_groupoid()
    bad_inv = dict(g.inverse)
    bad_inv["g"] = "g"  # endpoints cannot match
    report = validate_groupoid(Groupoid(g.objects, g.morphisms, g.src, g.tgt,
                                        g.identity, g.compose, bad_inv))
    assert "MissingInverse" in report.codes()


def test_missing_composition_entry_is_flagged():
    g = bridge_groupoid()
    compose = {k: v for k, v in g.compose.items() if k != ("g", "ginv")}
    report = validate_groupoid(Groupoid(g.objects, g.morphisms, g.src, g.tgt,
                                        g.identity, compose, g.inverse))
    assert "BadComposition" in report.codes()


def test_non_associative_table_is_flagged():
    g = flip_groupoid()
    compose = dict(g.compose)
    compose[("x", "g")] = "x"  # force (x*g)*g != x*(g*g)
    report = validate_groupoid(Groupoid(g.objects, g.morphisms, g.src, g.tgt,
                                        g.identity, compose, g.inverse))
    assert not report.ok
    assert report.codes() & {"NonAssociative", "MissingInverse", "BadIdentity"}


# -- hom sets and isotropy ------------------------------------------------------------

def test_hom_set_bridge():
    g = bridge_groupoid()
    assert g.hom_set("e1", "e2") == ("g",)
    assert g.hom_set("e1", "e1") == ("id:e1",)


def test_hom_set_one_object():
    g = one_object()
    assert g.hom_set("e", "e") == ("id:e",)


def test_hom_set_flip_has_two_bridge_arrows():
    assert flip_groupoid().hom_set("e1", "e2") == ("x", "y")


def test_hom_set_unknown_object():
    with pytest.raises(UnknownObject):
        bridge_groupoid().hom_set("e1", "nope")


def test_isotropy_group_of_flip_is_order_two():
    iso = flip_groupoid().isotropy_group("e1")
    assert iso.objects == ("e1",)
    assert iso.morphisms == ("id:e1", "g")
    assert iso.mul("g", "g") == "id:e1"
    assert validate_groupoid(iso).ok


def test_isotropy_group_of_bridge_is_trivial():
    iso = bridge_groupoid().isotropy_group("e1")
    assert iso.morphisms == ("id:e1",)
    assert validate_groupoid(iso).ok


def test_isotropy_group_always_validates_with_one_object():
    for g in (one_object(), bridge_groupoid(), flip_groupoid()):
        for e in g.objects:
            iso = g.isotropy_group(e)
            assert len(iso.objects) == 1
            assert validate_groupoid(iso).ok


# -- components -------------------------------------------------------------------------

def test_bridge_is_connected():
    p = bridge_groupoid().connected_components()
    assert p.classes == (("e1", "e2"),)
    assert p.transversal == ("e1",)


def test_two_isolated_objects_are_two_classes():
    g = build_groupoid(["a", "b"], [], [], [])
    p = g.connected_components()
    assert p.classes == (("a",), ("b",))
    assert p.transversal == ("a", "b")


def test_partial_reachability_classes():
    # a <-> b, c isolated: reachability closure puts {a, b} together, {c} alone
    g = build_groupoid(["a", "b", "c"],
                       [("f", "a", "b"), ("finv", "b", "a")],
                       [("f", "finv", "id:b"), ("finv", "f", "id:a")],
                       [("f", "finv")])
    assert g.connected_components().classes == (("a", "b"), ("c",))


# -- full subgroupoids ---------------------------------------------------------------------

def test_full_subgroupoid_on_all_objects_is_the_whole_thing():
    g = flip_groupoid()
    s = g.full_subgroupoid(g.objects)
    assert s.objects == g.objects
    assert s.morphisms == g.morphisms
    assert s.compose == g.compose


def test_full_subgroupoid_flip_at_one_object():
    s = flip_groupoid().full_subgroupoid(["e1"])
    assert s.morphisms == ("id:e1", "g")
    assert validate_groupoid(s).ok


def test_component_subgroupoids_partition_the_morphisms():
    g = build_groupoid(["a", "b", "c"],
                       [("f", "a", "b"), ("finv", "b", "a")],
                       [("f", "finv", "id:b"), ("finv", "f", "id:a")],
                       [("f", "finv")])
    seen = []
    for cls in g.connected_components().classes:
        sub = g.full_subgroupoid(cls)
        assert validate_groupoid(sub).ok
        assert sub.connected_components().classes == (tuple(cls),)
        seen.extend(sub.morphisms)
    assert sorted(seen) == sorted(g.morphisms)


# -- structural invariants --------------------------------------------------------------------

def test_double_inverse_and_endpoints():
    g = flip_groupoid()
    for m in g.morphisms:
        assert g.inv(g.inv(m)) == m
        assert g.src[g.inv(m)] == g.tgt[m]
        assert g.tgt[g.inv(m)] == g.src[m]


def test_hom_nonempty_iff_same_component():
    g = build_groupoid(["a", "b", "c"],
                       [("f", "a", "b"), ("finv", "b", "a")],
                       [("f", "finv", "id:b"), ("finv", "f", "id:a")],
                       [("f", "finv")])
    classes = {o: i for i, cls in enumerate(g.connected_components().classes)
               for o in cls}
    for e in g.objects:
        for f in g.objects:
            assert bool(g.hom_set(e, f)) == (classes[e] == classes[f])


def test_undefined_composition_raises():
    g = bridge_groupoid()
    with pytest.raises(CompositionUndefined):
        g.mul("g", "g")
