"""Recursive 2^n x 2^n real matrix representation for the neutral algebras.

The interleaved algebra on 2n generators (signs +,-,+,-,...) is isomorphic
to the full real matrix algebra of order 2^n.  The isomorphism is built by
peeling two generators at a time: with F = [[0,1],[1,0]], G = [[0,1],[-1,0]]
and W = F G = [[-1,0],[0,1]],

    e_i      -> rep(e_i) (+) rep(e_i)        (block diagonal, i <= 2n-2)
    e_{2n-1} -> [[0, V], [ V, 0]]
    e_{2n}   -> [[0, V], [-V, 0]]            V = rep(e_1 ... e_{2n-2})

Every generator image is a signed permutation matrix, so blade images stay
signed permutations and the representation is exact and cheap.

A point of the neutral space S(n,n) with homogeneous coordinates
x^0..x^{2n} is the element sum_i x^i E_i, where E_0 is the volume element
and E_i omits generator i.  Its image, the point matrix Xi, obeys the
2x2 block recursion

    Xi_n = [[-Xi_{n-1}, (x^{2n-1}+x^{2n}) I], [(-x^{2n-1}+x^{2n}) I, Xi_{n-1}]]

with base [[x^0]], and satisfies Xi^2 = Q(x) I for the alternating form
Q(x) = (x^0)^2 - (x^1)^2 + (x^2)^2 - ... + (x^{2n})^2, as a polynomial
identity.  The recursion is the source of truth for every entry sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .blades import INTERLEAVED, Multivector, Rational, Signature, blade_indices
from .errors import InvariantViolation
from .poly import Poly
from .spin import SpinElement

MAX_RANK = 8


def neutral_signature(n: int) -> Signature:
    """The interleaved algebra hosting rank-n point matrices."""
    if not 1 <= n <= MAX_RANK:
        raise ValueError(f"neutral rank must lie in 1..{MAX_RANK}, got {n}")
    return Signature(n, n, INTERLEAVED)


class SignedPerm:
    """Signed permutation matrix: column j carries sign[j] in row perm[j]."""

    __slots__ = ("perm", "signs")

    def __init__(self, perm: tuple[int, ...], signs: tuple[int, ...]):
        self.perm = perm
        self.signs = signs

    @classmethod
    def identity(cls, size: int) -> "SignedPerm":
        return cls(tuple(range(size)), (1,) * size)

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """Matrix product self @ other."""
        perm = tuple(self.perm[other.perm[j]] for j in range(len(other.perm)))
        signs = tuple(other.signs[j] * self.signs[other.perm[j]] for j in range(len(other.perm)))
        return SignedPerm(perm, signs)

    def scale_add_into(self, target: list[list[Fraction]], coeff: Fraction) -> None:
        for j, (row, sign) in enumerate(zip(self.perm, self.signs)):
            target[row][j] += coeff if sign > 0 else -coeff

    def apply(self, vector: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * len(vector)
        for j, value in enumerate(vector):
            if value:
                out[self.perm[j]] = value if self.signs[j] > 0 else -value
        return out


@lru_cache(maxsize=None)
def generator_images(n: int) -> tuple[SignedPerm, ...]:
    """Images of e_1..e_2n in the rank-n representation."""
    if n == 0:
        return ()
    prev = generator_images(n - 1)
    h = 1 << (n - 1)
    gens: list[SignedPerm] = []
    for g in prev:
        gens.append(SignedPerm(g.perm + tuple(h + r for r in g.perm), g.signs + g.signs))
    vol = SignedPerm.identity(h)
    for g in prev:
        vol = vol.compose(g)
    swap_perm = tuple(h + vol.perm[j] for j in range(h)) + tuple(vol.perm[j] for j in range(h))
    gens.append(SignedPerm(swap_perm, vol.signs + vol.signs))
    gens.append(SignedPerm(swap_perm, tuple(-s for s in vol.signs) + vol.signs))
    return tuple(gens)


@lru_cache(maxsize=None)
def blade_image(n: int, mask: int) -> SignedPerm:
    """Image of a basis blade, the product of its generator images."""
    size = 1 << n
    if mask == 0:
        return SignedPerm.identity(size)
    gens = generator_images(n)
    out = SignedPerm.identity(size)
    for i in blade_indices(mask):
        out = out.compose(gens[i - 1])
    return out


def rep_multivector(m: Multivector, n: int) -> linalg.Matrix:
    """Dense rational image of any element of the rank-n algebra."""
    if m.signature != neutral_signature(n):
        raise ValueError(f"element must live in the interleaved ({n},{n}) algebra")
    size = 1 << n
    out = linalg.zeros(size, size)
    for mask, coeff in m.items():
        blade_image(n, mask).scale_add_into(out, coeff)
    return out


def rep_even_element(s: SpinElement, n: int) -> linalg.Matrix:
    """Multiplicative, unital matrix image of an even element."""
    return rep_multivector(s.value, n)


@lru_cache(maxsize=None)
def point_blade_images(n: int) -> tuple[SignedPerm, ...]:
    """Images of E_0..E_{2n}: the volume element and its one-index omissions."""
    full = (1 << (2 * n)) - 1
    images = [blade_image(n, full)]
    for i in range(1, 2 * n + 1):
        images.append(blade_image(n, full ^ (1 << (i - 1))))
    return tuple(images)


def point_element(n: int, x: Sequence[Rational]) -> Multivector:
    """The algebra element sum_i x^i E_i behind a point matrix."""
    coords = _check_coords(n, x)
    sig = neutral_signature(n)
    full = (1 << (2 * n)) - 1
    terms = {full: coords[0]}
    for i in range(1, 2 * n + 1):
        terms[full ^ (1 << (i - 1))] = coords[i]
    return Multivector(sig, terms)


def quadratic_form(x: Sequence[Rational]) -> Fraction:
    """Alternating form (x^0)^2 - (x^1)^2 + (x^2)^2 - ... + (x^{2n})^2."""
    if len(x) % 2 == 0 or len(x) < 3:
        raise ValueError("point coordinates come as x^0..x^{2n}, an odd count >= 3")
    total = Fraction(0)
    for i, value in enumerate(x):
        v = Fraction(value)
        total += v * v if i % 2 == 0 else -v * v
    return total


@dataclass(frozen=True)
class XiMatrix:
    """Point matrix of S(n,n): symbolic (Poly entries) or evaluated (Fraction)."""

    n: int
    entries: tuple
    symbolic: bool

    @property
    def size(self) -> int:
        return 1 << self.n

    def rows(self) -> list[list]:
        return [list(row) for row in self.entries]

    def evaluate(self, x: Sequence[Rational]) -> "XiMatrix":
        if not self.symbolic:
            raise ValueError("matrix is already evaluated")
        coords = _check_coords(self.n, x)
        values = {f"x{i}": c for i, c in enumerate(coords)}
        rows = tuple(
            tuple(entry.evaluate(values) if entry.terms else Fraction(0) for entry in row)
            for row in self.entries
        )
        return XiMatrix(self.n, rows, symbolic=False)

    def verify_square_identity(self, x: Sequence[Rational] | None = None) -> None:
        """Assert Xi^2 = Q(x) I, symbolically or at a point."""
        if self.symbolic:
            _verify_symbolic_square(self)
        else:
            if x is None:
                raise ValueError("evaluated matrices need their coordinates for the check")
            square = linalg.mat_mul(self.entries, self.entries)
            q = quadratic_form(x)
            for r in range(self.size):
                for c in range(self.size):
                    expected = q if r == c else Fraction(0)
                    if square[r][c] != expected:
                        raise InvariantViolation("point-matrix square identity failed")

    def token_rows(self) -> list[list[str]]:
        """Symbolic entries as sign-prefixed tokens, e.g. ``-x1+x2``."""
        if not self.symbolic:
            raise ValueError("token form exists only for symbolic matrices")
        return [[_entry_token(entry) for entry in row] for row in self.entries]

    def to_json(self) -> dict:
        if self.symbolic:
            return {"n": self.n, "rows": self.token_rows()}
        return {
            "n": self.n,
            "rows": [
                [{"num": value.numerator, "den": value.denominator} for value in row]
                for row in self.entries
            ],
        }


def _check_coords(n: int, x: Sequence[Rational]) -> list[Fraction]:
    if len(x) != 2 * n + 1:
        raise ValueError(f"rank {n} needs 2n+1 = {2 * n + 1} coordinates, got {len(x)}")
    return [Fraction(v) for v in x]


@lru_cache(maxsize=None)
def build_xi_symbolic(n: int) -> XiMatrix:
    """Symbolic point matrix by the 2x2 block recursion."""
    if not 1 <= n <= MAX_RANK:
        raise ValueError(f"neutral rank must lie in 1..{MAX_RANK}, got {n}")
    rows: list[list[Poly]] = [[Poly.var("x0")]]
    for level in range(1, n + 1):
        h = len(rows)
        plus = Poly.var(f"x{2 * level - 1}") + Poly.var(f"x{2 * level}")
        minus = -Poly.var(f"x{2 * level - 1}") + Poly.var(f"x{2 * level}")
        zero = Poly.zero()
        new_rows: list[list[Poly]] = []
        for r in range(h):
            new_rows.append([-rows[r][c] for c in range(h)] + [plus if c == r else zero for c in range(h)])
        for r in range(h):
            new_rows.append([minus if c == r else zero for c in range(h)] + list(rows[r]))
        rows = new_rows
    return XiMatrix(n, tuple(tuple(row) for row in rows), symbolic=True)


def build_xi(x: Sequence[Rational]) -> XiMatrix:
    """Evaluated point matrix, accumulated from the blade images E_i."""
    if len(x) % 2 == 0 or len(x) < 3:
        raise ValueError("point coordinates come as x^0..x^{2n}, an odd count >= 3")
    n = (len(x) - 1) // 2
    coords = _check_coords(n, x)
    size = 1 << n
    out = linalg.zeros(size, size)
    for image, coeff in zip(point_blade_images(n), coords):
        if coeff:
            image.scale_add_into(out, coeff)
    return XiMatrix(n, tuple(tuple(row) for row in out), symbolic=False)


def xi_square_check(x: Sequence[Rational]) -> Fraction:
    """Q(x), after asserting Xi(x)^2 = Q(x) I exactly."""
    xi = build_xi(x)
    xi.verify_square_identity(x)
    return quadratic_form(x)


def _verify_symbolic_square(xi: XiMatrix) -> None:
    n, size = xi.n, xi.size
    q = Poly.var("x0") * Poly.var("x0")
    for i in range(1, 2 * n + 1):
        term = Poly.var(f"x{i}") * Poly.var(f"x{i}")
        q = q + term if i % 2 == 0 else q - term
    entries = xi.entries
    for r in range(size):
        row_products: dict[int, Poly] = {}
        for k in range(size):
            left = entries[r][k]
            if left.is_zero():
                continue
            for j in range(size):
                right = entries[k][j]
                if right.is_zero():
                    continue
                row_products[j] = row_products.get(j, Poly.zero()) + left * right
        for j in range(size):
            expected = q if j == r else Poly.zero()
            if row_products.get(j, Poly.zero()) != expected:
                raise InvariantViolation("symbolic point-matrix square identity failed")


def _entry_token(entry: Poly) -> str:
    if entry.is_zero():
        return "0"
    pieces: list[tuple[int, Fraction]] = []
    for mono, coeff in entry.terms.items():
        if len(mono) != 1 or not mono[0].startswith("x"):
            raise ValueError("entry is not a linear coordinate form")
        pieces.append((int(mono[0][1:]), coeff))
    pieces.sort()
    out = []
    for idx, coeff in pieces:
        mag = -coeff if coeff < 0 else coeff
        body = f"x{idx}" if mag == 1 else f"{mag}*x{idx}"
        if not out:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f"-{body}" if coeff < 0 else f"+{body}")
    return "".join(out)
