"""Exact arithmetic in the cyclotomic field Q(ζ_r).

Elements are stored as dense rational coefficient vectors of length φ(r),
reduced modulo the r-th cyclotomic polynomial, so equal field elements have
identical coefficients.
"""
from __future__ import annotations

import threading
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from sympy import cyclotomic_poly

from reflekt.errors import DomainError, ParameterError

Scalar = Union[int, Fraction]


_phi: dict[int, tuple[int, ...]] = {}
_phi_lock = threading.Lock()


def cyclotomic_coefficients(r: int) -> tuple[int, ...]:
    """Coefficients of Φ_r, lowest degree first (Φ_r is monic). Memoized per modulus."""
    if r < 1:
        raise ParameterError(f"cyclotomic modulus must be positive, got {r}")
    with _phi_lock:
        cached = _phi.get(r)
        if cached is None:
            poly = cyclotomic_poly(r, polys=True)
            cached = _phi[r] = tuple(int(c) for c in reversed(poly.all_coeffs()))
    return cached


def field_degree(r: int) -> int:
    return len(cyclotomic_coefficients(r)) - 1


def _reduce(poly: list, r: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in ζ_r (exponents already below r) modulo Φ_r."""
    phi = cyclotomic_coefficients(r)
    deg = len(phi) - 1
    work = list(poly)
    for top in range(len(work) - 1, deg - 1, -1):
        lead = work[top]
        if lead:
            shift = top - deg
            for i in range(deg):
                work[shift + i] -= lead * phi[i]
            work[top] = 0
    work = work[:deg] + [0] * (deg - len(work))
    return tuple(Fraction(c) for c in work)


@dataclass(frozen=True, eq=False)
class CycloNumber:
    """An element of Q(ζ_modulus) in canonical form."""

    modulus: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def rational(cls, value: Scalar, modulus: int = 1) -> CycloNumber:
        deg = field_degree(modulus)
        return cls(modulus, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def from_exponents(
        cls, counts: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]], modulus: int
    ) -> CycloNumber:
        """Build Σ c_e·ζ^e from exponent/coefficient pairs (exponents taken mod r)."""
        items = counts.items() if isinstance(counts, Mapping) else counts
        poly: list = [0] * modulus
        for exponent, coefficient in items:
            poly[exponent % modulus] += coefficient
        return cls(modulus, _reduce(poly, modulus))

    # Predicates

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> Fraction:
        """
        Return the value as a rational number.

        Raises:
            DomainError: the value does not lie in Q
        """
        if not self.is_rational:
            raise DomainError(f"{self} is not rational", coeffs=self.coeffs)
        return self.coeffs[0]

    # Embeddings

    def lift(self, modulus: int) -> CycloNumber:
        """Embed into Q(ζ_modulus) via ζ_r = ζ_modulus^(modulus/r)."""
        if modulus == self.modulus:
            return self
        if self.is_rational:
            return CycloNumber.rational(self.coeffs[0], modulus)
        if modulus % self.modulus:
            raise ParameterError(
                f"Q(zeta_{self.modulus}) does not embed in Q(zeta_{modulus})"
            )
        step = modulus // self.modulus
        return CycloNumber.from_exponents(
            ((k * step, c) for k, c in enumerate(self.coeffs) if c), modulus
        )

    def _coerce(self, other: object) -> tuple[CycloNumber, CycloNumber]:
        if isinstance(other, (int, Rational)):
            return self, CycloNumber.rational(other, self.modulus)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if other.modulus == self.modulus:
            return self, other
        if other.is_rational or self.modulus % other.modulus == 0:
            return self, other.lift(self.modulus)
        if self.is_rational or other.modulus % self.modulus == 0:
            return self.lift(other.modulus), other
        raise ParameterError(
            f"modulus mismatch: Q(zeta_{self.modulus}) and Q(zeta_{other.modulus})"
        )

    # Arithmetic

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycloNumber(a.modulus, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycloNumber:
        return CycloNumber(self.modulus, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycloNumber(a.modulus, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if b.is_rational:
            scale = b.coeffs[0]
            return CycloNumber(a.modulus, tuple(c * scale for c in a.coeffs))
        if a.is_rational:
            scale = a.coeffs[0]
            return CycloNumber(b.modulus, tuple(c * scale for c in b.coeffs))
        product: list = [0] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        product[i + j] += x * y
        return CycloNumber(a.modulus, _reduce(product, a.modulus))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CycloNumber):
            other = other.as_rational()
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a cyclotomic number by zero")
        scale = Fraction(other)
        return CycloNumber(self.modulus, tuple(c / scale for c in self.coeffs))

    def conjugate(self) -> CycloNumber:
        """Apply the Galois map ζ ↦ ζ^(r−1)."""
        if self.is_rational:
            return self
        r = self.modulus
        return CycloNumber.from_exponents(
            ((-k % r, c) for k, c in enumerate(self.coeffs) if c), r
        )

    def __eq__(self, other: object) -> bool:
        try:
            pair = self._coerce(other)
        except ParameterError:
            return False
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __repr__(self) -> str:
        return f"CycloNumber({self.modulus}, {self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z{self.modulus}^{k}")
            else:
                terms.append(f"{c}*z{self.modulus}^{k}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {
            "r": self.modulus,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }


@lru_cache(maxsize=4096)
def root_of_unity(i: int, r: int) -> CycloNumber:
    """Canonical form of ζ_r^i."""
    if r < 1:
        raise ParameterError(f"root of unity order must be positive, got {r}")
    return CycloNumber.from_exponents({i % r: 1}, r)


def cyclo_sum(values: Iterable[CycloNumber], modulus: int) -> CycloNumber:
    total = CycloNumber.rational(0, modulus)
    for value in values:
        total = total + value
    return total
