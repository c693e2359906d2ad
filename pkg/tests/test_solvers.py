import pytest
from hypothesis import given, settings, strategies as st

from k3walls import (
    GramForm2,
    K3Config,
    classes_in_rank2,
    decomposition_solutions,
    lattice_points_in_parallelogram,
    mv,
    pairing,
    solve_square_with_pairing,
    square,
)
from k3walls.solvers import gram_of, spherical_classes

CFG = K3Config(2)
VP = mv(1, 0, -4)
VM = mv(0, 2, -1)

H1 = GramForm2(8, 2, -2)
H2 = GramForm2(8, 3, 0)
H3 = GramForm2(8, 1, -2)
H4 = GramForm2(8, 3, -2)
H5 = GramForm2(8, 0, 0)
HC = GramForm2(8, 1, 0)


def test_solve_square_examples():
    sols = solve_square_with_pairing(CFG, VP, -2, 2, 8)
    assert mv(1, -1, 2) in sols
    sols0 = solve_square_with_pairing(CFG, VP, 0, 0, 8)
    assert mv(-1, 2, -4) in sols0
    with pytest.raises(ValueError):
        solve_square_with_pairing(CFG, VP, -2, 7, 8)
    with pytest.raises(ValueError):
        solve_square_with_pairing(CFG, VP, -3, 1, 8)


def test_solve_square_verifies_equations():
    for v in (VP, VM, mv(1, 0, -1), mv(0, 1, -1)):
        vsq = square(CFG, v)
        for d in (-2, 0):
            for m in range(vsq // 2 + 1):
                for a in solve_square_with_pairing(CFG, v, d, m, 20):
                    assert square(CFG, a) == d
                    assert pairing(CFG, a, v) == m


def test_solve_square_torsion_vector_families():
    # rank-zero v: the free coordinate switches to c, with an s-free branch
    sols = solve_square_with_pairing(CFG, VM, 0, 0, 6)
    assert mv(0, 0, 1) in sols or mv(0, 0, -1) in sols


def _brute_classes(form, d, k, bound=50):
    out = set()
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) == (0, 0):
                continue
            if form.value(p, q) == d and form.q11 * p + form.q12 * q == k:
                out.add((p, q))
    return out


@pytest.mark.parametrize("form", [H1, H2, H3, H4, HC])
@pytest.mark.parametrize("d,k", [(-2, 0), (-2, 1), (-2, 2), (0, 0), (0, 1), (0, 2), (0, 3)])
def test_classes_in_rank2_matches_brute_force(form, d, k):
    exact = {pq for pq in classes_in_rank2(form, d, k) if max(abs(pq[0]), abs(pq[1])) <= 50}
    assert exact == _brute_classes(form, d, k)


def test_classes_in_rank2_examples():
    assert classes_in_rank2(H1, 0, 0) == []
    assert classes_in_rank2(H1, 0, 1) == []
    assert classes_in_rank2(H1, 0, 5) == []
    assert (0, 1) in classes_in_rank2(H1, -2, 2)
    assert (0, 1) in classes_in_rank2(H5, 0, 0)


def test_spherical_classes_brute():
    for form in (H1, H2, H3, H4, HC):
        got = set(spherical_classes(form, 20))
        want = {
            (p, q)
            for p in range(-200, 201)
            for q in range(-20, 21)
            if (p, q) != (0, 0) and form.value(p, q) == -2
        }
        assert got == want


def test_parallelogram_examples():
    # normalized wall basis: only the four vertices
    assert lattice_points_in_parallelogram(H1, (0, 1), (1, 0)) == []
    unit = GramForm2(2, 0, 2)
    assert lattice_points_in_parallelogram(unit, (1, 0), (1, 1)) == []
    double = GramForm2(2, 0, 2)
    pts = lattice_points_in_parallelogram(double, (2, 0), (2, 2))
    assert (1, 1) in pts
    assert len(pts) == 5


@settings(max_examples=150)
@given(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
)
def test_parallelogram_matches_bounding_box_scan(a, v):
    if a[0] * v[1] - a[1] * v[0] == 0:
        return
    form = GramForm2(2, 0, 2)  # irrelevant to the point set
    got = set(lattice_points_in_parallelogram(form, a, v))
    verts = [(0, 0), a, (v[0] - a[0], v[1] - a[1]), v]
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    det = a[0] * (v[1] - a[1]) - a[1] * (v[0] - a[0])
    brute = set()
    from fractions import Fraction

    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            s = Fraction(x * (v[1] - a[1]) - y * (v[0] - a[0]), det)
            t = Fraction(a[0] * y - a[1] * x, det)
            if 0 <= s <= 1 and 0 <= t <= 1 and not (s in (0, 1) and t in (0, 1)):
                brute.add((x, y))
    assert got == brute


def test_decomposition_solutions_unique_splits():
    # each interior wall of the rank-two system admits exactly one window part
    assert decomposition_solutions(CFG, VM, mv(-2, 1, -1)) == [(1, 0)]
    assert decomposition_solutions(CFG, VM, mv(-1, 1, -2)) == [(1, 0)]
    assert decomposition_solutions(CFG, VM, mv(1, 0, 1)) == [(1, 0)]
    assert decomposition_solutions(CFG, VM, mv(-1, 1, -1)) == [(1, 0)]


def test_decomposition_solutions_window_bound():
    # the trivial split u = v is always outside the pairing window
    for a in (mv(-2, 1, -1), mv(1, 0, 1)):
        for x, y in decomposition_solutions(CFG, VM, a):
            u = x * a + y * VM
            assert 0 < pairing(CFG, u, VM) <= square(CFG, VM) // 2
            assert u != VM


def test_decomposition_solutions_rejects_rank_one():
    with pytest.raises(ValueError):
        decomposition_solutions(CFG, VM, VM)


def test_gram_of():
    g = gram_of(CFG, VP, mv(1, -1, 2))
    assert (g.q11, g.q12, g.q22) == (8, 2, -2)
    assert g.disc == -20
    assert g.disc_prime == 20
