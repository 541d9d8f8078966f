"""Membership functions, fuzzification and centroid defuzzification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionError, EmptyInputError, InvalidParameterError

GAUSSIAN = "gaussian"
RATIONAL = "rational"

# Degrees are kept strictly inside (0, 1) away from the center; these are the
# nearest representable values to the open bounds.
_BELOW_ONE = math.nextafter(1.0, 0.0)
_ABOVE_ZERO = math.ulp(0.0)


def _check_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise InvalidParameterError(f"{name} must be finite, got {v!r}")


def _check_positive(**values):
    for name, v in values.items():
        if not (math.isfinite(v) and v > 0):
            raise InvalidParameterError(f"{name} must be finite and > 0, got {v!r}")


def _clamp_partial(u):
    if u >= 1.0:
        return _BELOW_ONE
    if u <= 0.0:
        return _ABOVE_ZERO
    return u


def gaussian_membership(x: float, mu: float, sigma: float) -> float:
    """exp(-(x - mu)^2 / (2 sigma^2)).

    Exactly 1.0 at the center. Away from it the result is clamped into the
    open interval (0, 1) so that rounding never reports full membership for
    an off-center value, nor zero membership far in the tails.
    """
    _check_finite(x=x, mu=mu)
    _check_positive(sigma=sigma)
    d = x - mu
    if d == 0.0:
        return 1.0
    z = d / sigma
    return _clamp_partial(math.exp(-0.5 * z * z))


def rational_membership(x: float, mu: float, sigma: float, p: float = 2.0) -> float:
    """1 / (1 + (|x - mu| / sigma)^p), with the same clamping as the Gaussian."""
    _check_finite(x=x, mu=mu)
    _check_positive(sigma=sigma, p=p)
    d = abs(x - mu)
    if d == 0.0:
        return 1.0
    try:
        t = math.pow(d / sigma, p)
    except OverflowError:
        return _ABOVE_ZERO
    return _clamp_partial(1.0 / (1.0 + t))


@dataclass(frozen=True)
class FuzzyCategory:
    name: str
    mu: float
    sigma: float
    weight: float = 1.0

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise InvalidParameterError("category name must be a non-empty string")
        _check_finite(mu=self.mu)
        _check_positive(sigma=self.sigma)
        if not (math.isfinite(self.weight) and self.weight >= 0):
            raise InvalidParameterError(
                f"weight must be finite and >= 0, got {self.weight!r}"
            )


@dataclass(frozen=True)
class MembershipKind:
    variant: str = RATIONAL
    p: float = 2.0

    def __post_init__(self):
        if self.variant not in (GAUSSIAN, RATIONAL):
            raise InvalidParameterError(f"unknown membership variant {self.variant!r}")
        if self.variant == RATIONAL:
            _check_positive(p=self.p)

    def __call__(self, x: float, cat: FuzzyCategory) -> float:
        if self.variant == GAUSSIAN:
            return gaussian_membership(x, cat.mu, cat.sigma)
        return rational_membership(x, cat.mu, cat.sigma, self.p)


@dataclass(frozen=True)
class CategorySet:
    categories: tuple[FuzzyCategory, ...]
    kind: MembershipKind = field(default_factory=MembershipKind)

    def __post_init__(self):
        cats = tuple(self.categories)
        object.__setattr__(self, "categories", cats)
        if not cats:
            raise InvalidParameterError("a category set needs at least one category")
        names = [c.name for c in cats]
        if len(set(names)) != len(names):
            raise InvalidParameterError(f"duplicate category names in {names}")

    def __len__(self):
        return len(self.categories)

    def __iter__(self):
        return iter(self.categories)

    def __getitem__(self, j):
        return self.categories[j]

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.categories]

    @property
    def mus(self) -> np.ndarray:
        return np.array([c.mu for c in self.categories], dtype=np.float64)

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.categories], dtype=np.float64)

    def membership(self, x: float, j: int) -> float:
        return self.kind(x, self.categories[j])


@dataclass(frozen=True)
class MembershipMatrix:
    """Membership degrees for n features (rows) over m categories (columns)."""

    values: np.ndarray
    names: tuple[str, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != len(self.names):
            raise DimensionError(
                f"matrix shape {values.shape} does not match {len(self.names)} categories"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    def __getitem__(self, idx):
        return self.values[idx]

    @classmethod
    def empty(cls, cats: CategorySet) -> "MembershipMatrix":
        return cls(np.empty((0, len(cats))), tuple(cats.names))


def fuzzify(values: Sequence[float], cats: CategorySet) -> MembershipMatrix:
    """Evaluate every crisp value against every category.

    Each entry is exactly the scalar membership function's result; repeated
    crisp values (common for character streams) are evaluated once.
    """
    values = [float(v) for v in values]
    if not values:
        raise EmptyInputError("cannot fuzzify an empty value list")
    m = len(cats)
    cache: dict[float, list[float]] = {}
    out = np.empty((len(values), m), dtype=np.float64)
    for i, x in enumerate(values):
        row = cache.get(x)
        if row is None:
            row = [cats.membership(x, j) for j in range(m)]
            cache[x] = row
        out[i] = row
    return MembershipMatrix(out, tuple(cats.names))


def defuzzify(row: Sequence[float], cats: CategorySet) -> float:
    """Weighted centroid of the category means.

    Lossy: distinct crisp values can share a centroid. The result is clamped to
    [min mu, max mu], where the exact centroid always lies, so rounding cannot
    push it outside.
    """
    row = np.asarray(row, dtype=np.float64)
    if row.ndim != 1 or row.shape[0] != len(cats):
        raise DimensionError(
            f"membership row of shape {row.shape} does not match {len(cats)} categories"
        )
    if not np.all(np.isfinite(row)) or np.any(row < 0) or np.any(row > 1):
        raise InvalidParameterError("membership degrees must lie in [0, 1]")
    total = math.fsum(row)
    if total <= 0:
        raise InvalidParameterError("membership row has no positive degree")
    mus = cats.mus
    centroid = math.fsum((row / total) * mus)
    return float(min(max(centroid, mus.min()), mus.max()))
