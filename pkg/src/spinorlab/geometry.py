"""Geometry of the neutral space S(n,n) and its absolute quadric.

Points carry homogeneous coordinates x^0..x^{2n}; the absolute is the
quadric Q(x) = 0 of the alternating form.  An absolute point's matrix
Xi(x) squares to zero, so it kills a 2^(n-1)-dimensional space of real
spinors.  Conversely a spinor a whose coordinates satisfy the Pfaffian
relations (after renaming odd-index coordinates a^{i1..ik} to
a^{i1..ik,n+1}) cuts the plane generator {x : Xi(x) a = 0} out of the
absolute: of its 2^n linear equations only n+1 are independent, and the
solution set is a maximal isotropic subspace of projective dimension n-1.
The representing spinor is determined by the generator up to scale, and up
to sign once normalized; both directions of the correspondence live here,
together with the motion action on points and on spinors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from . import linalg
from .blades import Rational
from .errors import InvariantViolation
from .matrices import (
    build_xi,
    neutral_signature,
    point_blade_images,
    quadratic_form,
    rep_even_element,
    rep_multivector,
)
from .spin import SpinElement, is_spin_plus, pfaffian, relation_residuals

Coords = Sequence[Rational]


class PointClass(enum.Enum):
    PROPER = "proper"
    IDEAL = "ideal"
    ABSOLUTE = "absolute"


def classify_point(x: Coords, curvature: int) -> PointClass:
    """Proper/ideal/absolute relative to the curvature sign.

    Positive form value means proper for curvature +1 and ideal for
    curvature -1; signs swap for negative form values; the quadric itself
    is absolute regardless of curvature.
    """
    if curvature not in (1, -1):
        raise ValueError("curvature must be +1 or -1")
    if all(Fraction(v) == 0 for v in x):
        raise ValueError("the zero vector does not represent a point")
    q = quadratic_form(x)
    if q == 0:
        return PointClass.ABSOLUTE
    if (q > 0) == (curvature > 0):
        return PointClass.PROPER
    return PointClass.IDEAL


class SpinorCoords:
    """The 2^n real spinor coordinates a, a^1, a^2, a^12, a^3, ...

    Index sets are subsets of {1..n} encoded as masks, listed in mask
    order.  Renaming odd-size sets S to S + {n+1} turns the list into the
    even coordinates of a rank-(n+1) algebra element; the coordinate
    relations of spin elements are checked through that renaming.
    """

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Sequence[Rational]):
        if len(values) != 1 << n:
            raise ValueError(f"rank {n} spinors have {1 << n} coordinates, got {len(values)}")
        self.n = n
        self.values = [Fraction(v) for v in values]

    @classmethod
    def from_low_grade(
        cls,
        n: int,
        scalar: Rational,
        vector: Sequence[Rational],
        skew: Union[Mapping[tuple[int, int], Rational], Sequence[Sequence[Rational]]],
    ) -> "SpinorCoords":
        """Complete (a, a^i, a^{ij}) to a full relation-satisfying spinor.

        The completion is the Pfaffian one, applied after the renaming, so
        the scalar must be nonzero.
        """
        a = Fraction(scalar)
        if a == 0:
            raise ValueError("completion needs a nonzero scalar coordinate")
        if len(vector) != n:
            raise ValueError(f"expected {n} single-index coordinates")
        table = _renamed_skew(n, a, vector, skew)
        values = []
        for mask in range(1 << n):
            indices = _mask_indices(mask)
            renamed = indices if len(indices) % 2 == 0 else indices + (n + 1,)
            size = len(renamed)
            if size == 0:
                values.append(a)
            elif size == 2:
                values.append(table[renamed[0] - 1][renamed[1] - 1])
            else:
                k = size // 2
                values.append(pfaffian(table, [i - 1 for i in renamed]) / a ** (k - 1))
        return cls(n, values)

    def coefficient(self, mask: int) -> Fraction:
        return self.values[mask]

    def scalar_coord(self) -> Fraction:
        return self.values[0]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def relation_residuals(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Residuals of the renamed coordinate relations; all zero on
        generator representatives."""
        n = self.n
        scalar = self.values[0]
        vector = [self.values[1 << i] for i in range(n)]
        skew = {
            (i, j): self.values[(1 << (i - 1)) | (1 << (j - 1))]
            for i, j in combinations(range(1, n + 1), 2)
        }
        table = _renamed_skew(n, scalar, vector, skew)
        coords: dict[tuple[int, ...], Fraction] = {}
        for mask in range(1 << n):
            indices = _mask_indices(mask)
            renamed = indices if len(indices) % 2 == 0 else indices + (n + 1,)
            coords[renamed] = self.values[mask]
        return relation_residuals(scalar, table, coords, n + 1)

    def satisfies_relations(self) -> bool:
        return all(value == 0 for _, value in self.relation_residuals())

    def coordinate_name(self, mask: int) -> str:
        return "a" + "".join(str(i) for i in _mask_indices(mask))

    def to_named(self) -> dict[str, Fraction]:
        """Coordinates keyed by name, as exact rationals."""
        return {self.coordinate_name(mask): self.values[mask] for mask in range(1 << self.n)}

    def to_json(self) -> dict:
        return {self.coordinate_name(mask): str(self.values[mask]) for mask in range(1 << self.n)}

    @classmethod
    def from_json(cls, n: int, payload: Mapping[str, object]) -> "SpinorCoords":
        values = []
        for mask in range(1 << n):
            name = "a" + "".join(str(i) for i in _mask_indices(mask))
            raw = payload.get(name, 0)
            values.append(Fraction(str(raw)))
        return cls(n, values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpinorCoords):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __repr__(self) -> str:
        return f"SpinorCoords(n={self.n}, {[str(v) for v in self.values]})"


def _mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _renamed_skew(
    n: int,
    scalar: Fraction,
    vector: Sequence[Rational],
    skew: Union[Mapping[tuple[int, int], Rational], Sequence[Sequence[Rational]]],
) -> list[list[Fraction]]:
    """(n+1)x(n+1) skew table: pairs {i,j} from a^{ij}, pairs {i,n+1} from a^i."""
    table = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    if isinstance(skew, Mapping):
        entries = dict(skew)
    else:
        rows = [list(map(Fraction, row)) for row in skew]
        entries = {(i + 1, j + 1): rows[i][j] for i in range(n) for j in range(i + 1, n)}
    for (i, j), value in entries.items():
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValueError(f"bad pair index ({i},{j})")
        v = Fraction(value)
        table[i - 1][j - 1] = v
        table[j - 1][i - 1] = -v
    for i, value in enumerate(vector, start=1):
        v = Fraction(value)
        table[i - 1][n] = v
        table[n][i - 1] = -v
    return table


def kernel_spinors(x: Coords) -> list[SpinorCoords]:
    """Exact basis of the spinors killed by an absolute point's matrix.

    The basis is the reduced-echelon one (pivot columns in increasing mask
    order) and always has dimension 2^(n-1).
    """
    coords = [Fraction(v) for v in x]
    if all(v == 0 for v in coords):
        raise ValueError("the zero vector does not represent a point")
    if quadratic_form(coords) != 0:
        raise ValueError("kernel spinors exist only for absolute points")
    n = (len(coords) - 1) // 2
    xi = build_xi(coords)
    basis = linalg.null_space(xi.rows())
    if len(basis) != 1 << (n - 1):
        raise InvariantViolation("kernel dimension differs from 2^(n-1)")
    return [SpinorCoords(n, vec) for vec in basis]


@dataclass(frozen=True)
class PlaneGenerator:
    """A maximal plane generator of the absolute, as the solution set of
    n+1 independent rows of Xi(x) a = 0."""

    n: int
    row_masks: tuple[int, ...]
    equations: tuple[tuple[Fraction, ...], ...]
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def projective_dimension(self) -> int:
        return len(self.basis) - 1

    def contains(self, x: Coords) -> bool:
        point = [Fraction(v) for v in x]
        return all(
            sum(c * v for c, v in zip(row, point)) == 0 for row in self.equations
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "equations": [[str(c) for c in row] for row in self.equations],
            "basis": [[str(c) for c in row] for row in self.basis],
        }


def generator_rows(a: SpinorCoords) -> list[list[Fraction]]:
    """All 2^n rows of Xi(x) a = 0 as linear forms in x^0..x^{2n}.

    Row r, column i holds the x^i coefficient, i.e. (M_i a)[r] for the
    blade images M_i of the point element.
    """
    n = a.n
    weights = [image.apply(a.values) for image in point_blade_images(n)]
    return [[weights[i][r] for i in range(2 * n + 1)] for r in range(1 << n)]


def independent_system(a: SpinorCoords) -> PlaneGenerator:
    """Reduce the 2^n generator equations of a spinor to n+1 independent ones.

    Rows are scanned in coordinate-mask order and kept exactly when
    independent of those already kept; for spinors with nonzero scalar
    coordinate this keeps precisely the rows b, b^1, ..., b^n.  The
    coordinate relations must hold (the remaining rows are then consequences
    of the kept ones); violating spinors are rejected.
    """
    if a.is_zero():
        raise ValueError("the zero spinor does not define a generator")
    bad = [(idx, val) for idx, val in a.relation_residuals() if val != 0]
    if bad:
        raise ValueError(f"coordinate relations fail, first residual at {bad[0][0]}")
    n = a.n
    rows = generator_rows(a)
    kept_masks: list[int] = []
    kept_rows: list[list[Fraction]] = []
    pivots: list[tuple[int, list[Fraction]]] = []
    for r, row in enumerate(rows):
        reduced = list(row)
        for col, pivot_row in pivots:
            if reduced[col]:
                f = reduced[col]
                reduced = [x - f * y for x, y in zip(reduced, pivot_row)]
        lead = next((c for c, v in enumerate(reduced) if v), None)
        if lead is None:
            continue
        if len(kept_masks) == n + 1:
            raise InvariantViolation("more than n+1 independent generator equations")
        inv = Fraction(1) / reduced[lead]
        pivots.append((lead, [x * inv for x in reduced]))
        kept_masks.append(r)
        kept_rows.append(row)
    if len(kept_masks) != n + 1:
        raise InvariantViolation("generator system rank differs from n+1")
    basis = linalg.null_space(kept_rows)
    if len(basis) != n:
        raise InvariantViolation("generator solution space has wrong dimension")
    return PlaneGenerator(
        n=n,
        row_masks=tuple(kept_masks),
        equations=tuple(tuple(row) for row in kept_rows),
        basis=tuple(tuple(vec) for vec in basis),
    )


@dataclass(frozen=True)
class ReductionReport:
    """Exact residuals of the row-reduction identities.

    pair_residuals: a*b^{ij} - (a^i b^j - a^j b^i + a^{ij} b) over 2-sets;
    triple_residuals: a*b^{ijk} - (a^{ij} b^k - a^{ik} b^j + a^{jk} b^i);
    condition_residuals: a*a^{ijk} - (a^i a^{jk} - a^j a^{ik} + a^k a^{ij}),
    the conditions under which the triple identities close.
    """

    pair_residuals: tuple[tuple[tuple[int, int], Fraction], ...]
    triple_residuals: tuple[tuple[tuple[int, int, int], Fraction], ...]
    condition_residuals: tuple[tuple[tuple[int, int, int], Fraction], ...]

    @property
    def pairs_ok(self) -> bool:
        return all(v == 0 for _, v in self.pair_residuals)

    @property
    def triples_ok(self) -> bool:
        return all(v == 0 for _, v in self.triple_residuals)

    @property
    def conditions_ok(self) -> bool:
        return all(v == 0 for _, v in self.condition_residuals)


def reduction_identities(a: SpinorCoords, b: Sequence[Rational]) -> ReductionReport:
    """Evaluate the reduction identities for b = Xi(x) a (any x)."""
    n = a.n
    if len(b) != 1 << n:
        raise ValueError("residual vector length differs from 2^n")
    bv = [Fraction(v) for v in b]

    def av(indices: Iterable[int]) -> Fraction:
        mask = 0
        for i in indices:
            mask |= 1 << (i - 1)
        return a.values[mask]

    def bvx(indices: Iterable[int]) -> Fraction:
        mask = 0
        for i in indices:
            mask |= 1 << (i - 1)
        return bv[mask]

    pair = []
    for i, j in combinations(range(1, n + 1), 2):
        res = av(()) * bvx((i, j)) - (av((i,)) * bvx((j,)) - av((j,)) * bvx((i,)) + av((i, j)) * bvx(()))
        pair.append(((i, j), res))
    triple = []
    condition = []
    for i, j, k in combinations(range(1, n + 1), 3):
        res = av(()) * bvx((i, j, k)) - (
            av((i, j)) * bvx((k,)) - av((i, k)) * bvx((j,)) + av((j, k)) * bvx((i,))
        )
        triple.append(((i, j, k), res))
        cond = av(()) * av((i, j, k)) - (
            av((i,)) * av((j, k)) - av((j,)) * av((i, k)) + av((k,)) * av((i, j))
        )
        condition.append(((i, j, k), cond))
    return ReductionReport(tuple(pair), tuple(triple), tuple(condition))


def _canonical_row_masks(n: int) -> tuple[int, ...]:
    return (0,) + tuple(1 << (i - 1) for i in range(1, n + 1))


def _validate_generator_geometry(g: PlaneGenerator) -> None:
    if not g.basis:
        raise ValueError("generator has an empty solution basis")
    vectors = [list(v) for v in g.basis]
    for v in vectors:
        if quadratic_form(v) != 0:
            raise ValueError("generator basis leaves the absolute quadric")
    for u, v in combinations(vectors, 2):
        s = [a + b for a, b in zip(u, v)]
        if quadratic_form(s) != 0:
            raise ValueError("generator span is not totally isotropic")


def generator_to_spinor(g: PlaneGenerator) -> SpinorCoords:
    """Representing spinor of a plane generator, unique up to scale.

    When the stored equations are the canonical rows b, b^1..b^n with a
    nonzero scalar coordinate, the coordinates a, a^i, a^{ij} are read off
    the hyperplane rows and completed by the Pfaffian relations, which
    recovers the representative exactly.  Otherwise (generators inside the
    hyperplane x^0 = 0) the spinor is pinned by a rank solve: the joint
    kernel of Xi(x) over the solution basis is one-dimensional, and its
    primitive integer representative is returned.
    """
    _validate_generator_geometry(g)
    if g.row_masks == _canonical_row_masks(g.n):
        candidate = _read_off_spinor(g)
        if candidate is not None:
            _verify_spinor_matches(candidate, g)
            return candidate
    return _rank_solve_spinor(g)


def _read_off_spinor(g: PlaneGenerator) -> SpinorCoords | None:
    n = g.n
    sign_n = -1 if n % 2 else 1
    row0 = g.equations[0]
    scalar = sign_n * row0[0]
    if scalar == 0:
        return None
    vector = []
    for i in range(1, n + 1):
        sgn = -1 if (n - i) % 2 else 1
        if row0[2 * i - 1] != row0[2 * i]:
            return None
        vector.append(sgn * row0[2 * i])
    skew: dict[tuple[int, int], Fraction] = {}
    for i in range(1, n + 1):
        row = g.equations[i]
        sgn_x0 = -1 if (n - 1) % 2 else 1
        if row[0] != sgn_x0 * vector[i - 1]:
            return None
        sgn_vi = -1 if (n + i) % 2 else 1
        if row[2 * i] != sgn_vi * scalar or row[2 * i - 1] != -sgn_vi * scalar:
            return None
        for j in range(1, n + 1):
            if j == i:
                continue
            sgn_j = -1 if (n + j) % 2 else 1
            value = sgn_j * row[2 * j]
            if row[2 * j - 1] != row[2 * j]:
                return None
            if i < j:
                skew[(i, j)] = value
            elif skew.get((j, i)) != -value:
                return None
    try:
        return SpinorCoords.from_low_grade(n, scalar, vector, skew)
    except ValueError:
        return None


def _verify_spinor_matches(a: SpinorCoords, g: PlaneGenerator) -> None:
    for point in g.basis:
        xi = build_xi(list(point))
        image = linalg.mat_vec(xi.rows(), a.values)
        if any(v != 0 for v in image):
            raise InvariantViolation("read-off spinor does not annihilate the generator")


def _rank_solve_spinor(g: PlaneGenerator) -> SpinorCoords:
    n = g.n
    stacked: list[list[Fraction]] = []
    for point in g.basis:
        stacked.extend(build_xi(list(point)).rows())
    kernel = linalg.null_space(stacked)
    if len(kernel) != 1:
        raise ValueError("plane does not determine a unique spinor ray")
    spinor = SpinorCoords(n, _primitive(kernel[0]))
    if not spinor.satisfies_relations():
        raise ValueError("plane is not a generator of the spinor family")
    induced = independent_system(spinor)
    if not linalg.same_row_space([list(r) for r in induced.equations], [list(r) for r in g.equations]):
        raise ValueError("inconsistent system: plane differs from the spinor's generator")
    return spinor


def _primitive(vector: Sequence[Fraction]) -> list[Fraction]:
    """Clear denominators, divide by the gcd, make the first nonzero positive."""
    denominator = math.lcm(*(v.denominator for v in vector)) if vector else 1
    ints = [int(v * denominator) for v in vector]
    g = math.gcd(*ints)
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]


@dataclass(frozen=True)
class NormalizeResult:
    """Outcome of scaling a spinor to unit coordinate square-sum.

    scale_sq is the exact square-sum of the input; when it is the square
    of a rational the scaled spinor is returned and exact is True,
    otherwise the input is returned untouched (exact normalization would
    leave the rationals).
    """

    spinor: SpinorCoords
    scale_sq: Fraction
    exact: bool


def normalize(a: SpinorCoords) -> NormalizeResult:
    total = sum(v * v for v in a.values)
    if total == 0:
        raise ValueError("cannot normalize the zero spinor")
    num_root = math.isqrt(total.numerator)
    den_root = math.isqrt(total.denominator)
    if num_root * num_root == total.numerator and den_root * den_root == total.denominator:
        root = Fraction(num_root, den_root)
        scaled = SpinorCoords(a.n, [v / root for v in a.values])
        return NormalizeResult(spinor=scaled, scale_sq=total, exact=True)
    return NormalizeResult(spinor=a, scale_sq=total, exact=False)


def motion_on_points(s: SpinElement, x: Coords) -> list[Fraction]:
    """Act on a point: conjugate its matrix and read the image coordinates.

    Requires a reduced spin element of the interleaved (n,n) algebra;
    conjugation preserves the quadratic form exactly and keeps the matrix
    of point form (both are asserted).
    """
    n = _motion_rank(s)
    coords = [Fraction(v) for v in x]
    if len(coords) != 2 * n + 1:
        raise ValueError(f"expected {2 * n + 1} coordinates, got {len(coords)}")
    if not is_spin_plus(s):
        raise ValueError("motions need a spin element of norm +1")
    rep = rep_even_element(s, n)
    rep_inv = rep_multivector(s.value.inverse(), n)
    conjugated = linalg.mat_mul(linalg.mat_mul(rep, build_xi(coords).rows()), rep_inv)
    y = _extract_point_coords(n, conjugated)
    if not linalg.mat_eq(build_xi(y).rows(), conjugated):
        raise InvariantViolation("conjugate is not of point-matrix form")
    if quadratic_form(y) != quadratic_form(coords):
        raise InvariantViolation("motion changed the quadratic form")
    return y


def _motion_rank(s: SpinElement) -> int:
    sig = s.signature
    if sig != neutral_signature(sig.p):
        raise ValueError("motions live in the interleaved (n,n) algebra")
    return sig.p


def _extract_point_coords(n: int, matrix: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    sign_n = -1 if n % 2 else 1
    y = [sign_n * matrix[0][0]]
    half = Fraction(1, 2)
    for level in range(1, n + 1):
        h = 1 << (level - 1)
        sgn = -1 if (n - level) % 2 else 1
        c_plus = matrix[0][h]
        c_minus = matrix[h][0]
        y.append(sgn * (c_plus - c_minus) * half)
        y.append(sgn * (c_plus + c_minus) * half)
    return y


def motion_on_spinors(s: SpinElement, a: SpinorCoords) -> SpinorCoords:
    """Act on a spinor by the matrix image of the spin element."""
    n = _motion_rank(s)
    if a.n != n:
        raise ValueError("spinor rank differs from the element's rank")
    if not is_spin_plus(s):
        raise ValueError("motions need a spin element of norm +1")
    rep = rep_even_element(s, n)
    return SpinorCoords(n, linalg.mat_vec(rep, a.values))
