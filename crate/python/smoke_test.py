"""Smoke test for the `mnv` extension module. Run after building it with
`pip install --no-build-isolation crates/python`."""

import mnv

DOUBLE_EDGE = """poset v1
0 -1
1 0 0
2 0 0
3 1 2 1
4 1 2 1
"""


def check_posets():
    p = mnv.Poset.parse(DOUBLE_EDGE)
    assert len(p) == 5 and p.num_vertices == 2 and not p.is_complex()
    assert p.betti() == {1: 1}
    assert p.subdivision().betti() == {1: 1}
    l, j = p.leray(), p.j_index()
    assert (l.value, j.value) == (2, 2), (l.value, j.value)
    assert l.exact and l.witness_dim == 1
    assert l.to_text().startswith("leray v1")

    sphere = mnv.Poset.from_facets([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    assert sphere.betti() == {2: 1}
    assert sphere.leray().value == 3 == sphere.j_index().value
    assert sphere.is_isomorphic(mnv.Poset.parse(sphere.to_text()))

    many = mnv.Poset.from_facets([[v] for v in range(12)])
    try:
        many.leray(cap=10)
    except mnv.CapExceeded:
        pass
    else:
        raise AssertionError("cap not enforced")
    sampled = many.leray(sample=20, seed=1)
    assert not sampled.exact and sampled.value == 1


def check_families():
    # Four unions of intervals whose nerve is the boundary of a tetrahedron.
    f = mnv.Family.boxes(1, [
        [[(3, 9)]],
        [[(1, 3)], [(5, 9)]],
        [[(1, 5)], [(7, 9)]],
        [[(1, 7)]],
    ])
    assert len(f) == 4 and f.gamma_dim == 1
    assert f.components([1, 2]) == 2
    assert f.region_betti([]) == {}
    assert f.min_slack() == 0 and f.is_acyclic(0)
    assert f.helly_number() == (4, [0, 1, 2, 3])
    n = f.nerve()
    assert n.betti() == {2: 1}
    m = f.multinerve()
    assert m.betti() == {}
    assert all(label[0] == sorted(label[0]) for label in m.labels())
    reduced = f.multinerve(t=2)
    assert reduced.num_vertices == 4 and len(reduced) < len(m)

    helly = f.verify_helly()
    assert helly.passed and helly.measured["h"] == "4"
    assert ("helly_bound", 4, "<=", 4, True) in helly.checks
    assert f.verify_projection(t=1, s=0).passed
    assert f.verify_multinerve(0).passed
    assert mnv.Family.parse(f.to_text()).to_text() == f.to_text()

    halves = mnv.Family.boxes(1, [[[("0", "1/2")]], [[("1/4", 1)]]])
    assert halves.components([0, 1]) == 1
    try:
        mnv.Family.boxes(1, [[[("1/0", 1)]]])
    except ValueError:
        pass
    else:
        raise AssertionError("zero denominator accepted")

    # Two arcs of a 4-cycle meeting in two points.
    c4 = mnv.Family.subcomplex(
        [[0, 1], [1, 2], [2, 3], [0, 3]],
        [[[1, 2], [2, 3]], [[3, 0], [0, 1]]],
    )
    assert c4.multinerve().betti() == {1: 1}
    assert c4.nerve().betti() == {}
    assert c4.region_betti([]) == {1: 1}

    g = mnv.Family.random_subcomplex(members=3, grid=4, stars=2, rings=True, seed=5)
    report = g.verify_projection(t=2)
    assert report.passed, report.to_text()
    b = mnv.Family.random_boxes(members=4, dim=2, boxes=2, seed=3)
    assert b.verify_projection(t=1).passed


if __name__ == "__main__":
    check_posets()
    check_families()
    print("smoke test passed")
