"""Exact real Clifford algebra arithmetic over bitmask-indexed basis blades.

A basis blade e_{i1...ik} with 1 <= i1 < ... < ik <= p+q is encoded as the
integer mask with bit i-1 set for every factor e_i; the scalar blade is
mask 0.  Coefficients are ``fractions.Fraction`` throughout, so every
algebraic identity in this package is decided exactly.  Floating point
exists only as a presentation mode at the CLI layer.

Generator relations: e_i e_j = -e_j e_i for i != j and e_i**2 = sigma(i),
where sigma is fixed by the :class:`Signature` and its ordering convention
("plain": the p generators squaring to +1 come first; "interleaved": signs
alternate +,-,+,-,... while both kinds remain, then the leftover kind).

All values are immutable after construction and all operations are pure,
so everything here is safe to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rational = Union[int, Fraction]

PLAIN = "plain"
INTERLEAVED = "interleaved"

#: Largest supported number of generators.
MAX_DIM = 16


@dataclass(frozen=True)
class Signature:
    """Quadratic-space context: p generators square to +1, q to -1."""

    p: int
    q: int
    ordering: str = PLAIN

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValueError(f"signature counts must be non-negative, got ({self.p},{self.q})")
        if self.p + self.q > MAX_DIM:
            raise ValueError(f"at most {MAX_DIM} generators supported, got {self.p + self.q}")
        if self.ordering not in (PLAIN, INTERLEAVED):
            raise ValueError(f"unknown ordering {self.ordering!r}")

    @property
    def dim(self) -> int:
        """Number of generators p+q."""
        return self.p + self.q

    def sigma(self, i: int) -> int:
        """Sign of e_i**2 for a 1-based generator index."""
        if not 1 <= i <= self.dim:
            raise ValueError(f"generator index {i} outside 1..{self.dim}")
        return _sigma_tuple(self.p, self.q, self.ordering)[i - 1]

    def sigmas(self) -> tuple[int, ...]:
        """All generator squares, indexed by i-1."""
        return _sigma_tuple(self.p, self.q, self.ordering)


@lru_cache(maxsize=None)
def _sigma_tuple(p: int, q: int, ordering: str) -> tuple[int, ...]:
    if ordering == PLAIN:
        return (1,) * p + (-1,) * q
    # interleaved: alternate starting with +1 while both kinds remain,
    # then append whichever kind is left over
    m = min(p, q)
    head = (1, -1) * m
    tail = (1,) * (p - m) + (-1,) * (q - m)
    return head + tail


def blade_grade(mask: int) -> int:
    """Number of generator factors in a blade."""
    return mask.bit_count()


def blade_indices(mask: int) -> tuple[int, ...]:
    """Ascending 1-based generator indices of a blade."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_from_indices(indices: Iterable[int]) -> int:
    """Blade mask from distinct 1-based generator indices."""
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated generator index {i}")
        mask |= bit
    return mask


def blade_product(b1: int, b2: int, sig: Signature) -> tuple[int, int]:
    """Product of two basis blades: ``(sign, result_mask)``.

    The result mask is the XOR of the factor masks; the sign is (-1) to the
    number of transpositions needed to interleave the factors into canonical
    ascending order, times sigma(i) for every index present in both blades.
    """
    if b1 >> sig.dim or b2 >> sig.dim:
        raise ValueError("blade mask outside the algebra's generators")
    a = b1 >> 1
    swaps = 0
    while a:
        swaps += (a & b2).bit_count()
        a >>= 1
    sign = -1 if swaps & 1 else 1
    common = b1 & b2
    if common:
        sigmas = sig.sigmas()
        i = 0
        while common:
            if common & 1:
                sign *= sigmas[i]
            common >>= 1
            i += 1
    return sign, b1 ^ b2


def volume_element(sig: Signature) -> int:
    """Mask of the product of all generators."""
    if sig.dim == 0:
        return 0
    return (1 << sig.dim) - 1


def volume_square(sig: Signature) -> int:
    """Square of the volume element, always +1 or -1."""
    omega = volume_element(sig)
    sign, rest = blade_product(omega, omega, sig)
    assert rest == 0
    return sign


class Multivector:
    """Sparse multivector: a map from blade masks to exact coefficients.

    Instances are immutable; arithmetic returns new objects.  Zero
    coefficients are never stored.
    """

    __slots__ = ("signature", "_terms")

    def __init__(self, signature: Signature, terms: Mapping[int, Rational] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            limit = 1 << signature.dim
            for mask, coeff in terms.items():
                if not 0 <= mask < limit:
                    raise ValueError(f"blade mask {mask} outside algebra of dimension {signature.dim}")
                c = Fraction(coeff)
                if c:
                    clean[mask] = c
        self.signature = signature
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig)

    @classmethod
    def scalar(cls, sig: Signature, value: Rational) -> "Multivector":
        return cls(sig, {0: value})

    @classmethod
    def blade(cls, sig: Signature, mask: int, coefficient: Rational = 1) -> "Multivector":
        return cls(sig, {mask: coefficient})

    @classmethod
    def generator(cls, sig: Signature, i: int) -> "Multivector":
        if not 1 <= i <= sig.dim:
            raise ValueError(f"generator index {i} outside 1..{sig.dim}")
        return cls(sig, {1 << (i - 1): 1})

    @classmethod
    def vector(cls, sig: Signature, coords: Sequence[Rational]) -> "Multivector":
        if len(coords) != sig.dim:
            raise ValueError(f"expected {sig.dim} vector coordinates, got {len(coords)}")
        return cls(sig, {1 << i: c for i, c in enumerate(coords)})

    # -- inspection --------------------------------------------------------

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms.items())

    def masks(self) -> Iterator[int]:
        return iter(self._terms)

    def coefficient(self, mask: int) -> Fraction:
        return self._terms.get(mask, Fraction(0))

    def scalar_part(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> set[int]:
        return {blade_grade(m) for m in self._terms}

    def is_even(self) -> bool:
        return all(blade_grade(m) % 2 == 0 for m in self._terms)

    def is_grade(self, k: int) -> bool:
        return all(blade_grade(m) == k for m in self._terms)

    def vector_coords(self) -> list[Fraction]:
        """Coordinates of a pure grade-1 element along e_1..e_{p+q}."""
        if not self.is_grade(1):
            raise ValueError("not a pure vector")
        return [self.coefficient(1 << i) for i in range(self.signature.dim)]

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic --------------------------------------------------------

    def _check_signature(self, other: "Multivector") -> None:
        if self.signature != other.signature:
            raise ValueError(f"signature mismatch: {self.signature} vs {other.signature}")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check_signature(other)
        out = dict(self._terms)
        for mask, coeff in other._terms.items():
            out[mask] = out.get(mask, Fraction(0)) + coeff
        return Multivector(self.signature, out)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._check_signature(other)
        out = dict(self._terms)
        for mask, coeff in other._terms.items():
            out[mask] = out.get(mask, Fraction(0)) - coeff
        return Multivector(self.signature, out)

    def __neg__(self) -> "Multivector":
        return Multivector(self.signature, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other: Union["Multivector", Rational]) -> "Multivector":
        if isinstance(other, (int, Fraction)):
            return Multivector(self.signature, {m: c * other for m, c in self._terms.items()})
        self._check_signature(other)
        sig = self.signature
        out: dict[int, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                sign, mask = blade_product(m1, m2, sig)
                acc = out.get(mask, 0) + (c1 * c2 if sign > 0 else -c1 * c2)
                if acc:
                    out[mask] = acc
                elif mask in out:
                    del out[mask]
        return Multivector(sig, out)

    def __rmul__(self, other: Rational) -> "Multivector":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, scalar: Rational) -> "Multivector":
        if isinstance(scalar, (int, Fraction)):
            return self * (Fraction(1) / Fraction(scalar))
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.signature == other.signature and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.signature, tuple(sorted(self._terms.items()))))

    def __repr__(self) -> str:
        return f"Multivector({self.signature.p},{self.signature.q}: {self.to_text()})"

    # -- involutions and grade structure ------------------------------------

    def reverse(self) -> "Multivector":
        """Reversion: grade-k part scaled by (-1)^(k(k-1)/2)."""
        out = {}
        for mask, coeff in self._terms.items():
            k = blade_grade(mask)
            out[mask] = -coeff if (k * (k - 1) // 2) & 1 else coeff
        return Multivector(self.signature, out)

    def grade_involution(self) -> "Multivector":
        out = {}
        for mask, coeff in self._terms.items():
            out[mask] = -coeff if blade_grade(mask) & 1 else coeff
        return Multivector(self.signature, out)

    def grade_projection(self, k: int) -> "Multivector":
        """Grade-k part; k must lie in 0..p+q."""
        if not 0 <= k <= self.signature.dim:
            raise ValueError(f"grade {k} outside 0..{self.signature.dim}")
        return Multivector(self.signature, {m: c for m, c in self._terms.items() if blade_grade(m) == k})

    # -- inversion ----------------------------------------------------------

    def inverse(self) -> "Multivector":
        """Two-sided inverse; raises ValueError when the element is singular.

        Fast path: when m * reverse(m) is a nonzero scalar the inverse is
        reverse(m) scaled.  Otherwise the inverse is found exactly by solving
        the left-multiplication operator (the regular representation); that
        path is limited to p+q <= 10 to keep the solve size bounded.
        """
        if not self._terms:
            raise ValueError("zero multivector has no inverse")
        rev = self.reverse()
        norm = self * rev
        if len(norm) == 1 and 0 in norm._terms:
            return rev * (Fraction(1) / norm._terms[0])
        dim = self.signature.dim
        if dim > 10:
            raise ValueError("general inversion limited to p+q <= 10")
        from . import linalg

        size = 1 << dim
        cols: list[list[Fraction]] = [[Fraction(0)] * size for _ in range(size)]
        for basis_mask in range(size):
            image = self * Multivector.blade(self.signature, basis_mask)
            for mask, coeff in image._terms.items():
                cols[mask][basis_mask] = coeff
        rhs = [Fraction(0)] * size
        rhs[0] = Fraction(1)
        solution = linalg.solve_unique(cols, rhs)
        if solution is None:
            raise ValueError("multivector is not invertible")
        return Multivector(self.signature, dict(enumerate(solution)))

    # -- text form -----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form, e.g. ``1 - 2*e12 + 1/3*e134``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for mask in sorted(self._terms, key=lambda m: (blade_grade(m), m)):
            coeff = self._terms[mask]
            mag = -coeff if coeff < 0 else coeff
            if mask == 0:
                body = str(mag)
            else:
                token = _blade_token(mask)
                body = token if mag == 1 else f"{mag}*{token}"
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts)

    @classmethod
    def from_text(cls, sig: Signature, text: str) -> "Multivector":
        """Parse the canonical text form (tolerates arbitrary spacing)."""
        compact = text.replace(" ", "")
        if not compact:
            raise ValueError("empty multivector text")
        if compact == "0":
            return cls.zero(sig)
        out: dict[int, Fraction] = {}
        for piece in re.findall(r"[+-]?[^+-]+", compact):
            coeff, mask = _parse_term(piece, sig)
            out[mask] = out.get(mask, Fraction(0)) + coeff
        return cls(sig, out)

    # -- JSON form -------------------------------------------------------------

    def to_json_terms(self) -> list[dict[str, int]]:
        """List of ``{"mask", "num", "den"}`` records sorted by mask."""
        return [
            {"mask": mask, "num": self._terms[mask].numerator, "den": self._terms[mask].denominator}
            for mask in sorted(self._terms)
        ]

    @classmethod
    def from_json_terms(cls, sig: Signature, records: Iterable[Mapping[str, int]]) -> "Multivector":
        out: dict[int, Fraction] = {}
        for rec in records:
            mask = int(rec["mask"])
            coeff = Fraction(int(rec["num"]), int(rec["den"]))
            out[mask] = out.get(mask, Fraction(0)) + coeff
        return cls(sig, out)


def _blade_token(mask: int) -> str:
    indices = blade_indices(mask)
    if indices and indices[-1] > 9:
        return "e(" + ",".join(str(i) for i in indices) + ")"
    return "e" + "".join(str(i) for i in indices)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)"
    r"(?:(?P<coeff>\d+(?:/\d+)?)\*?)?"
    r"(?:e(?:(?P<digits>\d+)|\((?P<listed>\d+(?:,\d+)*)\)))?"
    r"$"
)


def _parse_term(piece: str, sig: Signature) -> tuple[Fraction, int]:
    match = _TERM_RE.match(piece)
    if not match or (match.group("coeff") is None and match.group("digits") is None and match.group("listed") is None):
        raise ValueError(f"cannot parse multivector term {piece!r}")
    coeff = Fraction(match.group("coeff")) if match.group("coeff") else Fraction(1)
    if match.group("sign") == "-":
        coeff = -coeff
    digits = match.group("digits")
    listed = match.group("listed")
    if digits is not None:
        indices = [int(ch) for ch in digits]
    elif listed is not None:
        indices = [int(tok) for tok in listed.split(",")]
    else:
        return coeff, 0
    if any(i < 1 or i > sig.dim for i in indices):
        raise ValueError(f"generator index outside 1..{sig.dim} in term {piece!r}")
    if list(indices) != sorted(set(indices)):
        raise ValueError(f"blade indices must be strictly increasing in term {piece!r}")
    return coeff, mask_from_indices(indices)
