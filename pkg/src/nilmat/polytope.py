"""Exact polytopes cut out by entry nonnegativity of flag members.

Identify a strictly upper triangular (n-1)-matrix with its parameter
vector (row-major upper-triangle order). Pushing it through a complete
flag frame gives an affine function per matrix entry, and requiring every
entry to be nonnegative yields an inequality system: the double stochastic
members of the flag subsemigroup form a convex polytope in parameter
space. Everything here stays in exact rational arithmetic; only the OFF
mesh export writes decimal approximations.
"""

import json
import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import combinations

from .exactmat import (
    RMatrix,
    MatrixError,
    format_rational,
    mat_vec,
    null_space,
    parse_rational,
    rank,
    solve_unique,
    ONE,
    ZERO,
)
from .qflag import iso_backward, q_zero

MAX_DIMENSION = 6
MAX_INEQUALITIES = 40


@dataclass(frozen=True)
class LinearInequality:
    """constant + coeffs . x >= 0 in canonical coprime integer form."""

    constant: Fraction
    coeffs: tuple

    def canonical(self):
        """Scale by the unique positive rational making all parts coprime
        integers."""
        values = (self.constant,) + tuple(self.coeffs)
        lcm_den = math.lcm(*(v.denominator for v in values))
        ints = [int(v * lcm_den) for v in values]
        g = math.gcd(*ints)
        if g == 0:
            return LinearInequality(ZERO, tuple(ZERO for _ in self.coeffs))
        return LinearInequality(
            Fraction(ints[0], g), tuple(Fraction(c, g) for c in ints[1:])
        )

    def evaluate(self, point):
        total = self.constant
        for c, x in zip(self.coeffs, point):
            if c and x:
                total += c * x
        return total

    def key(self):
        return (self.constant,) + tuple(self.coeffs)


class HPolytope:
    """Deduplicated canonical inequality description."""

    __slots__ = ("d", "inequalities")

    def __init__(self, d, inequalities):
        if d < 1:
            raise MatrixError("polytope dimension must be positive")
        canon = {}
        for iq in inequalities:
            if len(iq.coeffs) != d:
                raise MatrixError("inequality arity does not match the dimension")
            c = iq.canonical()
            canon[c.key()] = c
        self.d = d
        self.inequalities = tuple(canon[k] for k in sorted(canon))

    def __eq__(self, other):
        return (
            isinstance(other, HPolytope)
            and self.d == other.d
            and self.inequalities == other.inequalities
        )

    def __repr__(self):
        return f"HPolytope(d={self.d}, {len(self.inequalities)} inequalities)"


class VPolytope:
    """Vertex description, lexicographically sorted."""

    __slots__ = ("d", "vertices")

    def __init__(self, d, vertices):
        if d < 1:
            raise MatrixError("polytope dimension must be positive")
        vs = sorted(set(tuple(Fraction(x) for x in v) for v in vertices))
        if any(len(v) != d for v in vs):
            raise MatrixError("vertex arity does not match the dimension")
        self.d = d
        self.vertices = tuple(vs)

    def __eq__(self, other):
        return (
            isinstance(other, VPolytope)
            and self.d == other.d
            and self.vertices == other.vertices
        )

    def __repr__(self):
        return f"VPolytope(d={self.d}, {len(self.vertices)} vertices)"


def upper_triangle_positions(size):
    """Row-major strictly upper triangular positions of a size x size
    matrix; this fixes the parameter order."""
    return [(i, j) for i in range(size) for j in range(i + 1, size)]


def matrix_from_params(size, x):
    """Strictly upper triangular matrix with the given parameters."""
    positions = upper_triangle_positions(size)
    if len(x) != len(positions):
        raise MatrixError(f"expected {len(positions)} parameters, got {len(x)}")
    rows = [[ZERO] * size for _ in range(size)]
    for (i, j), v in zip(positions, x):
        rows[i][j] = Fraction(v)
    return RMatrix(rows)


def build_h_polytope(frame):
    """Entry-nonnegativity inequalities of the flag subsemigroup's doubly
    stochastic part, in the triangle parameters.

    Each of the n^2 matrix entries is an affine function of the
    parameters with constant term exactly 1/n (at parameters zero the
    member is the flat matrix). Coefficients come from evaluating at unit
    parameter vectors. Entries with no parameter dependence give the
    vacuous inequality 1/n >= 0 and are dropped; the rest are
    canonicalized and deduplicated.
    """
    if not frame.is_complete:
        raise MatrixError("polytope construction needs a complete flag")
    n = frame.n
    size = n - 1
    d = size * (size - 1) // 2
    if d < 1:
        raise MatrixError("no triangle parameters below size 4")
    base = iso_backward(matrix_from_params(size, [ZERO] * d), frame)
    assert base == q_zero(n)
    inv_n = Fraction(1, n)
    unit_images = []
    for t in range(d):
        x = [ZERO] * d
        x[t] = ONE
        unit_images.append(iso_backward(matrix_from_params(size, x), frame))
    inequalities = []
    for i in range(n):
        for j in range(n):
            coeffs = tuple(m[i, j] - inv_n for m in unit_images)
            if all(c == 0 for c in coeffs):
                continue
            inequalities.append(LinearInequality(inv_n, coeffs))
    return HPolytope(d, inequalities)


def enumerate_vertices(h):
    """All vertices by exhaustive tight-subset solving.

    Every d-subset of inequalities is solved exactly as a linear system;
    nonsingular subsets give a candidate which is kept when it satisfies
    all inequalities. A kept point is a genuine vertex since its defining
    subset is d linearly independent tight constraints.
    """
    d = h.d
    if d > MAX_DIMENSION or len(h.inequalities) > MAX_INEQUALITIES:
        raise MatrixError(
            f"vertex enumeration limited to d <= {MAX_DIMENSION} and "
            f"{MAX_INEQUALITIES} inequalities"
        )
    if len(h.inequalities) < d:
        return VPolytope(d, [])
    found = set()
    for subset in combinations(h.inequalities, d):
        m = RMatrix([iq.coeffs for iq in subset])
        sol = solve_unique(m, [-iq.constant for iq in subset])
        if sol is None:
            continue
        if sol in found:
            continue
        if all(iq.evaluate(sol) >= 0 for iq in h.inequalities):
            found.add(sol)
    return VPolytope(d, found)


def is_bounded(h):
    """Is the recession cone {y : coeffs . y >= 0 for all inequalities}
    trivial?

    A nonzero kernel vector of the full coefficient matrix is itself a
    recession direction, so rank below d means unbounded. With full rank,
    look for a positive-combination certificate: strictly positive weights
    w with sum of w_i * row_i = 0 force every recession direction into the
    kernel, hence to zero. A positive guess (unit weights, or reciprocal
    constants, which undo canonical rescaling of an all-constants-equal
    system like the frame polytopes) is projected exactly onto the left
    kernel of the row matrix and used whenever it stays positive. When no
    certificate applies, decide completely by enumerating candidate
    extreme rays: a pointed nontrivial cone exposes a ray as the
    nullity-one kernel of some (d-1)-subset of rows.
    """
    d = h.d
    if d > MAX_DIMENSION:
        raise MatrixError(f"boundedness test limited to d <= {MAX_DIMENSION}")
    rows = [iq.coeffs for iq in h.inequalities]
    if not rows:
        return False
    a = RMatrix(rows)
    if rank(a) < d:
        return False
    guesses = [[ONE] * len(rows)]
    if all(iq.constant > 0 for iq in h.inequalities):
        guesses.append([1 / iq.constant for iq in h.inequalities])
    for guess in guesses:
        lam = _left_kernel_projection(a, guess)
        if all(x > 0 for x in lam):
            return True
    for subset in combinations(rows, d - 1):
        if subset:
            kernel = null_space(RMatrix(subset))
            if len(kernel) != 1:
                continue
            y = kernel[0]
        else:
            # d = 1: the empty subset leaves the whole line
            y = (ONE,)
        if _feasible_direction(rows, y) or _feasible_direction(rows, _neg(y)):
            return False
    return True


def _left_kernel_projection(a, guess):
    """Orthogonal projection of a weight vector onto the left kernel of a.

    Exact via the normal equations; needs a to have full column rank.
    """
    at = a.transpose()
    gram = at * a
    z = solve_unique(gram, mat_vec(at, guess))
    assert z is not None, "projection needs full column rank"
    image = mat_vec(a, z)
    return tuple(g - x for g, x in zip(guess, image))


def _feasible_direction(rows, y):
    return all(_dot(r, y) >= 0 for r in rows)


def _dot(xs, ys):
    total = ZERO
    for x, y in zip(xs, ys):
        if x and y:
            total += x * y
    return total


def _neg(v):
    return tuple(-x for x in v)


def _affine_rank(points):
    if len(points) <= 1:
        return 0
    base = points[0]
    diff = RMatrix([[x - b for x, b in zip(p, base)] for p in points[1:]])
    return rank(diff)


def facet_incidence(h, v):
    """Facet-defining inequalities with their tight vertex index lists.

    An inequality is a facet when its tight vertices affinely span
    dimension d-1.
    """
    out = []
    for iq in h.inequalities:
        tight = [i for i, p in enumerate(v.vertices) if iq.evaluate(p) == 0]
        if len(tight) < h.d:
            continue
        if _affine_rank([v.vertices[i] for i in tight]) == h.d - 1:
            out.append((iq, tuple(tight)))
    return out


def facet_census(h, v):
    """Multiset of per-facet vertex counts, for 3-dimensional polytopes."""
    if h.d != 3:
        raise MatrixError("facet census defined for 3-dimensional polytopes only")
    return Counter(len(tight) for _, tight in facet_incidence(h, v))


# -- serialization ------------------------------------------------------------


def polytope_to_json_dict(v, h):
    if v.d != h.d:
        raise MatrixError("vertex and inequality descriptions disagree on dimension")
    return {
        "d": h.d,
        "inequalities": [
            {
                "constant": format_rational(iq.constant),
                "coeffs": [format_rational(c) for c in iq.coeffs],
            }
            for iq in h.inequalities
        ],
        "vertices": [[format_rational(x) for x in p] for p in v.vertices],
    }


def polytope_from_json_dict(obj):
    if not isinstance(obj, dict):
        raise MatrixError("polytope JSON must be an object")
    try:
        d = obj["d"]
        raw_ineqs = obj["inequalities"]
        raw_vertices = obj["vertices"]
    except (KeyError, TypeError) as exc:
        raise MatrixError(f"polytope JSON missing field: {exc}") from exc
    if not isinstance(d, int) or d < 1:
        raise MatrixError("polytope dimension must be a positive integer")
    ineqs = [
        LinearInequality(
            parse_rational(item["constant"]),
            tuple(parse_rational(c) for c in item["coeffs"]),
        )
        for item in raw_ineqs
    ]
    vertices = [tuple(parse_rational(x) for x in p) for p in raw_vertices]
    return HPolytope(d, ineqs), VPolytope(d, vertices)


def _decimal_str(value, digits=20):
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def _ordered_face(indices, vertices, inward):
    """Order a facet's vertices into a polygon, oriented outward.

    The ordering is angular around the facet centroid in float precision,
    which is safe because OFF output is approximate anyway.
    """
    pts = [tuple(float(x) for x in vertices[i]) for i in indices]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    cz = sum(p[2] for p in pts) / len(pts)
    nx, ny, nz = (float(c) for c in inward)
    norm = math.sqrt(nx * nx + ny * ny + nz * nz)
    nx, ny, nz = nx / norm, ny / norm, nz / norm
    # any unit vector off the normal axis seeds an in-plane basis
    seed = (1.0, 0.0, 0.0) if abs(nx) < 0.9 else (0.0, 1.0, 0.0)
    ux, uy, uz = _cross((nx, ny, nz), seed)
    un = math.sqrt(ux * ux + uy * uy + uz * uz)
    ux, uy, uz = ux / un, uy / un, uz / un
    wx, wy, wz = _cross((nx, ny, nz), (ux, uy, uz))
    angles = []
    for idx, p in zip(indices, pts):
        dx, dy, dz = p[0] - cx, p[1] - cy, p[2] - cz
        angles.append((math.atan2(dx * wx + dy * wy + dz * wz, dx * ux + dy * uy + dz * uz), idx))
    ordered = [idx for _, idx in sorted(angles)]
    # outward normal is the negated inequality gradient
    a = [float(x) for x in vertices[ordered[0]]]
    b = [float(x) for x in vertices[ordered[1]]]
    c = [float(x) for x in vertices[ordered[2]]]
    poly_normal = _cross(
        (b[0] - a[0], b[1] - a[1], b[2] - a[2]),
        (c[0] - b[0], c[1] - b[1], c[2] - b[2]),
    )
    if poly_normal[0] * -nx + poly_normal[1] * -ny + poly_normal[2] * -nz < 0:
        ordered.reverse()
    return ordered


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _to_off(v, h):
    if h.d != 3:
        raise MatrixError("OFF export defined for 3-dimensional polytopes only")
    if _affine_rank(list(v.vertices)) != 3:
        raise MatrixError("degenerate polytope: vertices do not span 3 dimensions")
    faces = [
        _ordered_face(tight, v.vertices, iq.coeffs)
        for iq, tight in facet_incidence(h, v)
    ]
    edge_total = sum(len(f) for f in faces)
    assert edge_total % 2 == 0, "facet polygons do not close up"
    lines = ["OFF", f"{len(v.vertices)} {len(faces)} {edge_total // 2}"]
    for p in v.vertices:
        lines.append(" ".join(_decimal_str(x) for x in p))
    for f in faces:
        lines.append(" ".join([str(len(f))] + [str(i) for i in f]))
    return "\n".join(lines) + "\n"


def export_polytope(v, h, fmt):
    """Serialize to bytes, either exact JSON or an approximate OFF mesh."""
    if fmt == "json":
        return (
            json.dumps(polytope_to_json_dict(v, h), indent=2, sort_keys=True) + "\n"
        ).encode()
    if fmt == "off":
        return _to_off(v, h).encode()
    raise MatrixError(f"unknown export format: {fmt!r}")
