import json
from fractions import Fraction

import pytest

from conftest import rng, rand_frame
from nilmat.exactmat import RMatrix, MatrixError
from nilmat.polytope import (
    HPolytope,
    LinearInequality,
    VPolytope,
    build_h_polytope,
    enumerate_vertices,
    export_polytope,
    facet_census,
    facet_incidence,
    is_bounded,
    matrix_from_params,
    polytope_from_json_dict,
    polytope_to_json_dict,
    upper_triangle_positions,
)
from nilmat.qflag import FlagFrame, is_doubly_stochastic, iso_backward
from nilmat.reference import DATASETS, reference_frame

F = Fraction


def ineq(constant, *coeffs):
    return LinearInequality(F(constant), tuple(F(c) for c in coeffs))


def simplex(d):
    rows = [ineq(0, *(1 if j == i else 0 for j in range(d))) for i in range(d)]
    rows.append(ineq(1, *([-1] * d)))
    return HPolytope(d, rows)


def cube(d):
    rows = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        rows.append(ineq(1, *e))
        rows.append(ineq(1, *[-x for x in e]))
    return HPolytope(d, rows)


def test_canonicalization_scales_to_coprime_integers():
    a = LinearInequality(F(1, 4), (F(1, 4), F(-3, 4), F(0))).canonical()
    assert a.key() == (1, 1, -3, 0)
    b = LinearInequality(F(2, 8), (F(2, 8), F(-6, 8), F(0))).canonical()
    assert a == b
    c = LinearInequality(F(1, 4), (F(1, 2), F(0), F(0))).canonical()
    assert c.key() == (1, 2, 0, 0)


def test_hpolytope_deduplicates():
    h = HPolytope(2, [ineq(1, 2, 0), ineq(F(1, 2), 1, 0), ineq(1, 0, 1)])
    assert len(h.inequalities) == 2


def test_parameter_positions_are_row_major():
    assert upper_triangle_positions(3) == [(0, 1), (0, 2), (1, 2)]
    m = matrix_from_params(3, [F(5), F(7), F(11)])
    assert m == RMatrix([[0, 5, 7], [0, 0, 11], [0, 0, 0]])
    with pytest.raises(MatrixError):
        matrix_from_params(3, [F(1)])


def test_build_h_polytope_reproduces_reference_systems():
    for which in ("frame-a", "frame-b"):
        frame = reference_frame(which=which)
        h = build_h_polytope(frame)
        expected = DATASETS["example1"][which]["inequalities"]
        assert {iq.key() for iq in h.inequalities} == {
            tuple(F(x) for x in key) for key in expected
        }


def test_origin_is_interior():
    for which in ("frame-a", "frame-b"):
        h = build_h_polytope(reference_frame(which=which))
        origin = (F(0),) * h.d
        assert all(iq.evaluate(origin) > 0 for iq in h.inequalities)


def test_build_rejects_partial_flags_and_tiny_frames():
    with pytest.raises(MatrixError):
        build_h_polytope(FlagFrame.standard(4, dims=[2, 3]))
    with pytest.raises(MatrixError):
        build_h_polytope(FlagFrame.standard(2))


def test_segment_polytope_for_smallest_usable_frame():
    h = build_h_polytope(FlagFrame.standard(3))
    assert h.d == 1
    v = enumerate_vertices(h)
    assert len(v.vertices) == 2
    assert is_bounded(h)


def test_enumerate_vertices_simplex():
    v = enumerate_vertices(simplex(3))
    assert set(v.vertices) == {
        (F(0), F(0), F(0)),
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
    }


def test_enumerate_vertices_reproduces_reference_lists():
    for which in ("frame-a", "frame-b"):
        h = build_h_polytope(reference_frame(which=which))
        v = enumerate_vertices(h)
        assert set(v.vertices) == DATASETS["example1"][which]["vertices"]


def test_vertices_satisfy_system_with_enough_tight_rows():
    h = build_h_polytope(reference_frame())
    v = enumerate_vertices(h)
    for p in v.vertices:
        values = [iq.evaluate(p) for iq in h.inequalities]
        assert all(x >= 0 for x in values)
        assert sum(1 for x in values if x == 0) >= h.d


def test_enumeration_guards():
    with pytest.raises(MatrixError):
        enumerate_vertices(HPolytope(7, [ineq(1, *([1] * 7))]))
    many = HPolytope(2, [ineq(i + 2, 1, i + 1) for i in range(41)])
    with pytest.raises(MatrixError):
        enumerate_vertices(many)


def test_is_bounded_cases():
    assert is_bounded(build_h_polytope(reference_frame()))
    assert is_bounded(simplex(3))
    assert is_bounded(cube(3))
    # half plane
    assert not is_bounded(HPolytope(2, [ineq(1, 1, 0)]))
    # quadrant: full rank, not certified, extreme rays feasible
    assert not is_bounded(HPolytope(2, [ineq(1, 1, 0), ineq(1, 0, 1)]))
    # bounded but rows do not sum to zero: exercises the ray enumeration
    skew = HPolytope(2, [ineq(1, 1, 0), ineq(1, -2, 0), ineq(1, 0, 1), ineq(1, 0, -3)])
    assert is_bounded(skew)
    # free line: kernel direction despite three rows
    line = HPolytope(3, [ineq(1, 1, 0, 0), ineq(1, -1, 0, 0), ineq(1, 0, 1, 0)])
    assert not is_bounded(line)
    # one-dimensional cases, empty tight subsets
    assert is_bounded(HPolytope(1, [ineq(1, 1), ineq(1, -1)]))
    assert not is_bounded(HPolytope(1, [ineq(1, 1)]))
    assert not is_bounded(HPolytope(2, []))
    with pytest.raises(MatrixError):
        is_bounded(HPolytope(7, [ineq(1, *([1] * 7))]))


def test_random_frame_polytopes_are_bounded():
    r = rng(40)
    for n in (4, 5):
        for _ in range(5):
            assert is_bounded(build_h_polytope(rand_frame(r, n)))


def test_facet_census_reference_and_cube():
    for which in ("frame-a", "frame-b"):
        h = build_h_polytope(reference_frame(which=which))
        v = enumerate_vertices(h)
        assert dict(facet_census(h, v)) == DATASETS["example1"][which]["census"]
    c = cube(3)
    assert dict(facet_census(c, enumerate_vertices(c))) == {4: 6}
    with pytest.raises(MatrixError):
        facet_census(simplex(2), enumerate_vertices(simplex(2)))


def test_facets_have_enough_incident_vertices():
    h = build_h_polytope(reference_frame())
    v = enumerate_vertices(h)
    incidence = facet_incidence(h, v)
    assert len(incidence) == 7
    assert all(len(tight) >= h.d for _, tight in incidence)


def test_scaled_vertex_segments_contain_origin_strictly():
    h = build_h_polytope(reference_frame())
    v = enumerate_vertices(h)
    for w in v.vertices:
        lo, hi = None, None
        for iq in h.inequalities:
            slope = iq.evaluate(w) - iq.constant
            if slope < 0:
                bound = -iq.constant / slope
                hi = bound if hi is None else min(hi, bound)
            elif slope > 0:
                bound = -iq.constant / slope
                lo = bound if lo is None else max(lo, bound)
        assert lo is not None and hi is not None
        assert lo < 0 < hi
        assert hi >= 1  # the vertex itself is feasible


def test_feasibility_matches_double_stochasticity():
    r = rng(41)
    frame = reference_frame()
    h = build_h_polytope(frame)
    v = enumerate_vertices(h)
    points = [(F(0),) * 3]
    for w in v.vertices:
        points.append(tuple(F(1, 2) * x for x in w))
        points.append(tuple(2 * x for x in w))
    for _ in range(20):
        points.append(tuple(F(r.randint(-4, 4), 4) for _ in range(3)))
    for x in points:
        feasible = all(iq.evaluate(x) >= 0 for iq in h.inequalities)
        member = iso_backward(matrix_from_params(3, x), frame)
        assert feasible == is_doubly_stochastic(member)


def test_json_export_round_trip():
    h = build_h_polytope(reference_frame())
    v = enumerate_vertices(h)
    blob = export_polytope(v, h, "json")
    h2, v2 = polytope_from_json_dict(json.loads(blob.decode()))
    assert v2 == v
    assert h2 == h
    # byte determinism
    assert export_polytope(v, h, "json") == blob


def test_json_dict_rejects_garbage():
    with pytest.raises(MatrixError):
        polytope_from_json_dict({"d": 0, "inequalities": [], "vertices": []})
    with pytest.raises(MatrixError):
        polytope_from_json_dict(
            {"d": 1, "inequalities": [{"constant": "0.5", "coeffs": ["1"]}], "vertices": []}
        )


def test_off_export_tetrahedron():
    h = build_h_polytope(reference_frame(which="frame-b"))
    v = enumerate_vertices(h)
    text = export_polytope(v, h, "off").decode()
    lines = text.strip().splitlines()
    assert lines[0] == "OFF"
    nv, nf, ne = (int(x) for x in lines[1].split())
    assert (nv, nf, ne) == (4, 4, 6)
    coords = [line.split() for line in lines[2 : 2 + nv]]
    assert all(len(c) == 3 for c in coords)
    faces = [line.split() for line in lines[2 + nv :]]
    assert len(faces) == nf
    for face in faces:
        size = int(face[0])
        idx = [int(x) for x in face[1:]]
        assert len(idx) == size == 3
        assert all(0 <= i < nv for i in idx)


def test_off_export_has_twenty_significant_digits():
    h = build_h_polytope(reference_frame())
    v = enumerate_vertices(h)
    text = export_polytope(v, h, "off").decode()
    assert "0.66666666666666666667" in text


def test_off_export_rejects_flat_input():
    # a square squashed into the z = 0 plane has no interior
    flat = HPolytope(
        3,
        [
            ineq(1, 1, 0, 0),
            ineq(1, -1, 0, 0),
            ineq(1, 0, 1, 0),
            ineq(1, 0, -1, 0),
            ineq(0, 0, 0, 1),
            ineq(0, 0, 0, -1),
        ],
    )
    v = enumerate_vertices(flat)
    assert len(v.vertices) == 4
    with pytest.raises(MatrixError):
        export_polytope(v, flat, "off")
    with pytest.raises(MatrixError):
        export_polytope(v, flat, "obj")
