"""Spin group membership, norms, and the Pfaffian coordinate relations.

An even invertible element s whose conjugation x -> s x s^-1 preserves the
grade-1 space is a (special) Lipschitz element; those with spin norm +-1
form the spin group, norm +1 the reduced spin group.  The spin norm is the
scalar of s * reverse(s), which equals the signed coordinate sum
sum sigma(i1)...sigma(i2k) * (a^{i1..i2k})^2; both routes are computed and
compared, which pins the sign convention once and for all.

Coordinates of spin elements obey Pfaffian relations: for every even index
set I of size 2k >= 4,

    a^(k-1) * a^I = Pf(A restricted to I),

with A the skew matrix of grade-2 coordinates.  When the scalar a is
nonzero these determine every higher coordinate from the n(n-1)/2 grade-2
ones (:func:`reconstruct_from_low_grade`); the a = 0 case is handled on the
geometry side by a rank-based solve.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence, Union

from .blades import Multivector, Rational, Signature, blade_indices, mask_from_indices
from .errors import InvariantViolation


class SpinElement:
    """Even multivector together with coordinate access a^{i1..i2k}."""

    __slots__ = ("value",)

    def __init__(self, value: Multivector):
        if not value.is_even():
            raise ValueError("spin elements must be even")
        self.value = value

    @property
    def signature(self) -> Signature:
        return self.value.signature

    def coord(self, indices: Sequence[int]) -> Fraction:
        return self.value.coefficient(mask_from_indices(indices))

    def coords(self) -> dict[tuple[int, ...], Fraction]:
        return {blade_indices(mask): coeff for mask, coeff in self.value.items()}

    def scalar_coord(self) -> Fraction:
        return self.value.scalar_part()

    def skew_table(self) -> list[list[Fraction]]:
        """Grade-2 coordinates as a full skew matrix, 0-indexed."""
        n = self.signature.dim
        table = [[Fraction(0)] * n for _ in range(n)]
        for i, j in combinations(range(1, n + 1), 2):
            c = self.value.coefficient(mask_from_indices((i, j)))
            table[i - 1][j - 1] = c
            table[j - 1][i - 1] = -c
        return table

    def inverse_value(self) -> Multivector:
        return self.value.inverse()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpinElement):
            return NotImplemented
        return self.value == other.value

    def __repr__(self) -> str:
        return f"SpinElement({self.value.to_text()})"


def pfaffian(skew: Sequence[Sequence[Fraction]], indices: Sequence[int] | None = None) -> Fraction:
    """Pfaffian of a skew matrix restricted to the given 0-based indices."""
    idx = list(range(len(skew))) if indices is None else list(indices)
    if len(idx) % 2:
        raise ValueError("Pfaffian needs an even number of indices")
    return _pf(skew, tuple(idx))


def _pf(skew: Sequence[Sequence[Fraction]], idx: tuple[int, ...]) -> Fraction:
    if not idx:
        return Fraction(1)
    first, rest = idx[0], idx[1:]
    total = Fraction(0)
    for pos, other in enumerate(rest):
        entry = skew[first][other]
        if entry:
            remaining = rest[:pos] + rest[pos + 1:]
            term = entry * _pf(skew, remaining)
            total += -term if pos % 2 else term
    return total


def spin_norm(s: SpinElement) -> Fraction:
    """Signed coordinate sum, cross-checked against scalar(s * reverse(s))."""
    value = s.value
    sigmas = value.signature.sigmas()
    total = Fraction(0)
    for mask, coeff in value.items():
        sign = 1
        rest = mask
        i = 0
        while rest:
            if rest & 1:
                sign *= sigmas[i]
            rest >>= 1
            i += 1
        total += coeff * coeff * sign
    via_reverse = (value * value.reverse()).scalar_part()
    if via_reverse != total:
        raise InvariantViolation("spin norm routes disagree; sign convention broken")
    return total


def is_lipschitz(s: Multivector) -> bool:
    """True when s e_i s^-1 is pure grade 1 for every generator.

    Raises ValueError when s is not invertible.
    """
    inv = s.inverse()  # raises for singular input
    sig = s.signature
    for i in range(1, sig.dim + 1):
        conj = s * Multivector.generator(sig, i) * inv
        if not conj.is_grade(1):
            return False
    return True


def is_spin(s: Union[SpinElement, Multivector]) -> bool:
    """Even, Lipschitz, and of spin norm +1 or -1; False on any failure."""
    value = s.value if isinstance(s, SpinElement) else s
    if not value.is_even():
        return False
    norm = (value * value.reverse()).scalar_part()
    if norm not in (1, -1):
        return False
    try:
        return is_lipschitz(value)
    except ValueError:
        return False


def is_spin_plus(s: Union[SpinElement, Multivector]) -> bool:
    value = s.value if isinstance(s, SpinElement) else s
    return (value * value.reverse()).scalar_part() == 1 and is_spin(value)


@dataclass(frozen=True)
class RelationReport:
    """Exact residuals of every coordinate relation plus the norm verdicts."""

    norm: Fraction
    residuals: tuple[tuple[tuple[int, ...], Fraction], ...]
    spin: bool
    spin_plus: bool

    @property
    def relations_ok(self) -> bool:
        return all(value == 0 for _, value in self.residuals)

    def to_json(self) -> dict:
        return {
            "norm": str(self.norm),
            "residuals": [
                {"indices": list(indices), "value": str(value)} for indices, value in self.residuals
            ],
            "spin": self.spin,
            "spin_plus": self.spin_plus,
        }


def relation_residuals(
    scalar: Fraction, skew: Sequence[Sequence[Fraction]], coords: Mapping[tuple[int, ...], Fraction], n: int
) -> list[tuple[tuple[int, ...], Fraction]]:
    """Residual a^(k-1) * a^I - Pf(A_I) for every even index set I, |I| >= 4."""
    out: list[tuple[tuple[int, ...], Fraction]] = []
    for size in range(4, n + 1, 2):
        k = size // 2
        power = scalar ** (k - 1)
        for subset in combinations(range(1, n + 1), size):
            coord = coords.get(subset, Fraction(0))
            residual = power * coord - pfaffian(skew, [i - 1 for i in subset])
            out.append((subset, residual))
    return out


def check_relations(s: SpinElement) -> RelationReport:
    """Evaluate every coordinate relation instance and the norm condition."""
    n = s.signature.dim
    scalar = s.scalar_coord()
    skew = s.skew_table()
    coords = s.coords()
    residuals = tuple(relation_residuals(scalar, skew, coords, n))
    norm = spin_norm(s)
    ok = all(value == 0 for _, value in residuals)
    return RelationReport(
        norm=norm,
        residuals=residuals,
        spin=ok and norm in (1, -1),
        spin_plus=ok and norm == 1,
    )


def reconstruct_from_low_grade(
    scalar: Rational,
    skew: Union[Mapping[tuple[int, int], Rational], Sequence[Sequence[Rational]]],
    sig: Signature,
) -> SpinElement:
    """Even element with the given scalar and grade-2 coordinates, all higher
    coordinates filled in by the Pfaffian relations.

    The scalar must be nonzero; the division a^I = Pf(A_I) / a^(k-1) is
    meaningless otherwise.
    """
    a = Fraction(scalar)
    if a == 0:
        raise ValueError("reconstruction requires a nonzero scalar coordinate")
    n = sig.dim
    table = _skew_table(skew, n)
    terms: dict[int, Fraction] = {0: a}
    for i, j in combinations(range(1, n + 1), 2):
        if table[i - 1][j - 1]:
            terms[mask_from_indices((i, j))] = table[i - 1][j - 1]
    for size in range(4, n + 1, 2):
        k = size // 2
        power = a ** (k - 1)
        for subset in combinations(range(1, n + 1), size):
            pf = pfaffian(table, [i - 1 for i in subset])
            if pf:
                terms[mask_from_indices(subset)] = pf / power
    return SpinElement(Multivector(sig, terms))


def _skew_table(
    skew: Union[Mapping[tuple[int, int], Rational], Sequence[Sequence[Rational]]], n: int
) -> list[list[Fraction]]:
    table = [[Fraction(0)] * n for _ in range(n)]
    if isinstance(skew, Mapping):
        for (i, j), value in skew.items():
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise ValueError(f"bad grade-2 index pair ({i},{j})")
            table[i - 1][j - 1] = Fraction(value)
            table[j - 1][i - 1] = -Fraction(value)
        return table
    rows = [list(map(Fraction, row)) for row in skew]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"skew table must be {n}x{n}")
    for i in range(n):
        for j in range(n):
            if rows[i][j] != -rows[j][i]:
                raise ValueError("grade-2 table is not skew-symmetric")
    return rows


def vector_norm(x: Multivector) -> Fraction:
    """Quadratic form (x,x) of a grade-1 element."""
    if not x.is_grade(1):
        raise ValueError("not a pure vector")
    return (x * x).scalar_part()


def spin_from_vectors(vectors: Sequence[Multivector]) -> SpinElement:
    """Product of an even number of grade-1 elements."""
    if not vectors:
        raise ValueError("need at least one vector")
    if len(vectors) % 2:
        raise ValueError("need an even number of vectors")
    product = Multivector.scalar(vectors[0].signature, 1)
    for v in vectors:
        if not v.is_grade(1):
            raise ValueError("factors must be pure vectors")
        product = product * v
    return SpinElement(product)


def random_unit_vector(sig: Signature, rng: random.Random, norm_sign: int) -> Multivector:
    """Random rational vector with (v,v) = norm_sign, by exact reflection.

    Reflecting a basis vector of the wanted norm across a random hyperplane
    preserves the quadratic form exactly and stays rational.
    """
    sigmas = sig.sigmas()
    try:
        base_index = next(i for i, s in enumerate(sigmas) if s == norm_sign)
    except StopIteration:
        raise ValueError(f"no generator of square {norm_sign} in Cl({sig.p},{sig.q})")
    base = [Fraction(0)] * sig.dim
    base[base_index] = Fraction(1)
    while True:
        u = [Fraction(rng.randint(-3, 3)) for _ in range(sig.dim)]
        uu = sum(s * c * c for s, c in zip(sigmas, u))
        if uu:
            break
    # reflect: v = base - 2 B(base,u)/B(u,u) * u
    bu = sigmas[base_index] * u[base_index]
    factor = Fraction(2) * bu / uu
    coords = [b - factor * c for b, c in zip(base, u)]
    v = Multivector.vector(sig, coords)
    if vector_norm(v) != norm_sign:
        raise InvariantViolation("reflection failed to preserve the vector norm")
    return v


def random_spin_element(sig: Signature, seed: int, k: int, norm_plus: bool = False) -> SpinElement:
    """Product of 2k random unit vectors; always passes is_spin.

    The RNG state is local to the call: equal seeds give equal elements.
    With norm_plus the (v,v) = -1 factors are kept even in number, which
    forces spin norm +1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = random.Random(seed)
    signs = [s for s in (1, -1) if (s > 0 and sig.p) or (s < 0 and sig.q)]
    if not signs:
        raise ValueError("empty signature")
    chosen = [rng.choice(signs) for _ in range(2 * k)]
    if norm_plus and chosen.count(-1) % 2:
        # an odd count of negative factors implies both signs are available
        chosen[chosen.index(-1)] = 1
    vectors = [random_unit_vector(sig, rng, sign) for sign in chosen]
    element = spin_from_vectors(vectors)
    if not is_spin(element):
        raise InvariantViolation("product of unit vectors failed the spin predicate")
    if norm_plus and spin_norm(element) != 1:
        raise InvariantViolation("norm balancing failed")
    return element


def apply_rotation(s: SpinElement, x: Multivector) -> Multivector:
    """Conjugate a vector by a spin element; preserves (x,x) exactly."""
    if x.signature != s.signature:
        raise ValueError("signature mismatch")
    if not x.is_grade(1):
        raise ValueError("rotation input must be a pure vector")
    if not is_spin(s):
        raise ValueError("rotations need a spin element")
    result = s.value * x * s.value.inverse()
    if not result.is_grade(1):
        raise InvariantViolation("conjugation left the vector space")
    if (result * result).scalar_part() != (x * x).scalar_part():
        raise InvariantViolation("conjugation changed the quadratic form")
    return result
