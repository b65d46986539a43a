"""Bundled reference data for the two worked 4x4 frames.

The "example1" dataset pins down, for two concrete complete flags, the
exact inequality systems, vertex lists, and facet censuses of the doubly
stochastic polytopes. The verify command recomputes everything from the
frame matrices alone and diffs against these constants.
"""

from fractions import Fraction

from .exactmat import RMatrix, format_rational
from .polytope import build_h_polytope, enumerate_vertices, facet_census
from .qflag import FlagFrame

F = Fraction

_FRAME_A = (
    (1, 1, 1, 1),
    (1, -1, 0, 0),
    (1, 0, -1, 0),
    (1, 0, 0, -1),
)

_FRAME_B = (
    (1, 0, 1, 1),
    (1, 0, 1, 0),
    (1, 1, 1, 0),
    (1, -1, -3, -1),
)

# canonical (constant, coeff_a, coeff_b, coeff_c) integer rows
_INEQS_A = {
    (1, 1, 1, 1),
    (1, -3, 1, 1),
    (1, 1, -3, -3),
    (1, -1, 3, 0),
    (1, 3, -1, 0),
    (1, -1, -1, 0),
    (1, 0, 0, 3),
    (1, 0, 0, -1),
}

_INEQS_B = {
    (1, -1, 4, 4),
    (1, 3, -4, -4),
    (1, 1, -4, -12),
    (1, -3, 4, 12),
    (1, 0, 0, 4),
    (1, 0, 0, -4),
    (1, -1, 0, 0),
    (1, 1, 0, 0),
}

_VERTICES_A = {
    (F(-5, 12), F(-1, 4), F(-1, 3)),
    (F(-1, 4), F(-5, 12), F(-1, 3)),
    (F(1, 8), F(-7, 24), F(-1, 3)),
    (F(5, 12), F(7, 12), F(-1, 3)),
    (F(1, 4), F(3, 4), F(-1, 3)),
    (F(-1, 8), F(5, 8), F(-1, 3)),
    (F(-1, 2), F(-1, 2), F(0)),
    (F(1, 2), F(1, 2), F(0)),
    (F(-1, 2), F(-1, 2), F(2, 3)),
    (F(1, 2), F(-1, 6), F(2, 3)),
}

_VERTICES_B = {
    (F(1), F(5, 4), F(-1, 4)),
    (F(1), F(-1, 4), F(1, 4)),
    (F(-1), F(-1, 4), F(-1, 4)),
    (F(-1), F(-3, 4), F(1, 4)),
}

_CENSUS_A = {6: 1, 5: 2, 4: 2, 3: 2}
_CENSUS_B = {3: 4}

DATASETS = {
    "example1": {
        "frame-a": {
            "matrix": _FRAME_A,
            "inequalities": _INEQS_A,
            "vertices": _VERTICES_A,
            "census": _CENSUS_A,
        },
        "frame-b": {
            "matrix": _FRAME_B,
            "inequalities": _INEQS_B,
            "vertices": _VERTICES_B,
            "census": _CENSUS_B,
        },
    },
}


def reference_frame(name="example1", which="frame-a"):
    entry = DATASETS[name][which]
    return FlagFrame(RMatrix(entry["matrix"]), (1, 2, 3))


def _fmt_vertex(p):
    return "(" + ", ".join(format_rational(x) for x in p) + ")"


def _fmt_ineq_key(key):
    return "(" + ", ".join(format_rational(x) for x in key) + ")"


def _diff_sets(expected, actual, fmt):
    missing = sorted(expected - actual)
    extra = sorted(actual - expected)
    parts = []
    if missing:
        parts.append("missing " + ", ".join(fmt(x) for x in missing))
    if extra:
        parts.append("unexpected " + ", ".join(fmt(x) for x in extra))
    return "; ".join(parts)


def run_checks(dataset):
    """Recompute each frame's polytope and diff against the dataset.

    Returns a list of check dicts with a name, an ok flag, a display
    detail, and a diff string when the check failed.
    """
    checks = []
    for which, entry in sorted(dataset.items()):
        frame = FlagFrame(RMatrix(entry["matrix"]), (1, 2, 3))
        h = build_h_polytope(frame)
        v = enumerate_vertices(h)
        census = facet_census(h, v)

        actual_ineqs = {iq.key() for iq in h.inequalities}
        expected_ineqs = {
            tuple(Fraction(x) for x in key) for key in entry["inequalities"]
        }
        checks.append(
            {
                "name": f"{which} inequalities",
                "ok": actual_ineqs == expected_ineqs,
                "detail": f"{len(actual_ineqs)} canonical inequalities",
                "diff": _diff_sets(expected_ineqs, actual_ineqs, _fmt_ineq_key),
            }
        )

        actual_vertices = set(v.vertices)
        expected_vertices = {
            tuple(Fraction(x) for x in p) for p in entry["vertices"]
        }
        checks.append(
            {
                "name": f"{which} vertices",
                "ok": actual_vertices == expected_vertices,
                "detail": ", ".join(_fmt_vertex(p) for p in v.vertices),
                "diff": _diff_sets(expected_vertices, actual_vertices, _fmt_vertex),
            }
        )

        actual_census = dict(census)
        expected_census = dict(entry["census"])
        checks.append(
            {
                "name": f"{which} facet census",
                "ok": actual_census == expected_census,
                "detail": _fmt_census(actual_census),
                "diff": ""
                if actual_census == expected_census
                else f"expected {_fmt_census(expected_census)}, got {_fmt_census(actual_census)}",
            }
        )
    return checks


def _fmt_census(census):
    return (
        "{"
        + ", ".join(f"{size}-gon x{count}" for size, count in sorted(census.items()))
        + "}"
    )


def verify(name="example1"):
    """Run all checks for a named dataset; (all_ok, checks)."""
    if name not in DATASETS:
        raise KeyError(f"unknown verification dataset: {name!r}")
    checks = run_checks(DATASETS[name])
    return all(c["ok"] for c in checks), checks
