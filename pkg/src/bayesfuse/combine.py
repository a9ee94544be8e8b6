"""Rules for combining a prior and a likelihood into a single posterior.

The product rule (``bayes_posterior``) and its weighted generalization
(``weighted_posterior``) are the distinguished combiners: they are the ones
whose optimality the :mod:`bayesfuse.information`, :mod:`bayesfuse.ratios`
and :mod:`bayesfuse.search` modules measure and verify.  ``linear_pool``
and ``averaged_data_pool`` are the naive baselines they are compared
against.

Discrete combiners operate on the *joint support* -- atoms whose keys
appear in both inputs with a strictly positive mass product.  Posterior
atoms outside the joint support would carry mass zero and are omitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

from .dists import DiscreteDist, Distribution, GridDensity, canonical_key, normalize
from .errors import (
    DegenerateProductError,
    IncompatibleError,
    RepresentationMismatchError,
)


@dataclass(frozen=True)
class WeightedPair:
    """A prior and a likelihood with strictly positive importance weights."""

    prior: Distribution
    likelihood: Distribution
    w0: float
    wL: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.w0) and self.w0 > 0.0):
            raise ValueError(f"prior weight must be positive, got {self.w0!r}")
        if not (math.isfinite(self.wL) and self.wL > 0.0):
            raise ValueError(f"likelihood weight must be positive, got {self.wL!r}")
        require_same_representation(self.prior, self.likelihood)

    @property
    def exponents(self) -> tuple[float, float]:
        """Normalized exponents (w0/max, wL/max); only relative weights matter."""
        top = max(self.w0, self.wL)
        return self.w0 / top, self.wL / top


@dataclass(frozen=True)
class CompatibilityReport:
    """Outcome of the overlap test between a prior and a likelihood."""

    compatible: bool
    overlap_mass: float

    def __post_init__(self) -> None:
        if self.overlap_mass < 0.0:
            raise ValueError("overlap mass cannot be negative")
        if self.compatible != (0.0 < self.overlap_mass < math.inf):
            raise ValueError("compatible flag contradicts the overlap mass")


def require_same_representation(a: Distribution, b: Distribution) -> None:
    if isinstance(a, DiscreteDist) != isinstance(b, DiscreteDist):
        raise RepresentationMismatchError(
            "cannot mix a discrete distribution with a grid density"
        )
    if isinstance(a, GridDensity) and not a.same_grid(b):
        raise RepresentationMismatchError(
            "grid densities must share origin, cell width and cell count"
        )


def joint_support(p0: DiscreteDist, like: DiscreteDist) -> tuple[str, ...]:
    """Atom keys where both the prior and the likelihood are positive."""
    like_masses = like.as_dict()
    return tuple(
        key
        for key, mass in p0.atoms
        if mass > 0.0 and like_masses.get(key, 0.0) > 0.0
    )


def check_compatible(p0: Distribution, like: Distribution) -> CompatibilityReport:
    """Overlap mass of the pair: sum of mass products or the density-product integral.

    The pair is compatible exactly when the overlap is positive and finite;
    conflation is only defined for compatible pairs.
    """
    require_same_representation(p0, like)
    if isinstance(p0, DiscreteDist):
        like_masses = like.as_dict()
        overlap = math.fsum(
            mass * like_masses.get(key, 0.0) for key, mass in p0.atoms
        )
    else:
        overlap = p0.delta * math.fsum(
            f0 * fl for f0, fl in zip(p0.densities, like.densities)
        )
    return CompatibilityReport(
        compatible=0.0 < overlap < math.inf, overlap_mass=overlap
    )


def bayes_posterior(p0: Distribution, like: Distribution) -> Distribution:
    """Posterior proportional to the pointwise prior-likelihood product."""
    report = check_compatible(p0, like)
    if not report.compatible:
        raise IncompatibleError(
            f"prior and likelihood are not compatible (overlap mass {report.overlap_mass!r})"
        )
    if isinstance(p0, DiscreteDist):
        like_masses = like.as_dict()
        raw = [
            (key, mass * like_masses[key])
            for key, mass in p0.atoms
            if mass > 0.0 and like_masses.get(key, 0.0) > 0.0
        ]
        return normalize(raw)
    products = [f0 * fl for f0, fl in zip(p0.densities, like.densities)]
    return GridDensity.from_values(p0.origin, p0.delta, products)


def weighted_posterior(pair: WeightedPair) -> Distribution:
    """Posterior proportional to ``p0**a * pL**b`` with normalized exponents.

    With equal weights the exponents are both 1 and the result coincides
    with :func:`bayes_posterior`.  Raises :class:`DegenerateProductError`
    when the weighted product has zero or infinite total mass.
    """
    a, b = pair.exponents
    p0, like = pair.prior, pair.likelihood
    if isinstance(p0, DiscreteDist):
        like_masses = like.as_dict()
        raw = []
        for key, mass in p0.atoms:
            other = like_masses.get(key, 0.0)
            if mass > 0.0 and other > 0.0:
                raw.append((key, mass**a * other**b))
        total = math.fsum(value for _, value in raw)
        if not raw or total == 0.0 or not math.isfinite(total):
            raise DegenerateProductError(
                f"weighted product has total mass {total if raw else 0.0!r}"
            )
        return normalize(raw)
    values = [
        f0**a * fl**b if f0 > 0.0 and fl > 0.0 else 0.0
        for f0, fl in zip(p0.densities, like.densities)
    ]
    total = p0.delta * math.fsum(values)
    if total == 0.0 or not math.isfinite(total):
        raise DegenerateProductError(f"weighted product has total mass {total!r}")
    return GridDensity(p0.origin, p0.delta, tuple(v / total for v in values))


def linear_pool(p0: Distribution, like: Distribution) -> Distribution:
    """Plain average ``(p0 + pL) / 2`` over the union of the supports."""
    require_same_representation(p0, like)
    if isinstance(p0, DiscreteDist):
        p0_masses = p0.as_dict()
        like_masses = like.as_dict()
        keys = set(p0_masses) | set(like_masses)
        raw = []
        for key in keys:
            mass = (p0_masses.get(key, 0.0) + like_masses.get(key, 0.0)) / 2.0
            if mass > 0.0:
                raw.append((key, mass))
        return DiscreteDist.from_pairs(raw)
    averaged = [(f0 + fl) / 2.0 for f0, fl in zip(p0.densities, like.densities)]
    return GridDensity(p0.origin, p0.delta, tuple(averaged))


def averaged_data_pool(p0: DiscreteDist, like: DiscreteDist) -> DiscreteDist:
    """Distribution of ``(X0 + XL) / 2`` for independent draws from each input.

    The atom at ``(a + b) / 2`` collects the product mass of every input
    pair mapping there; midpoints are computed in decimal arithmetic so
    exact collisions land on one key.
    """
    if not isinstance(p0, DiscreteDist) or not isinstance(like, DiscreteDist):
        raise RepresentationMismatchError("averaged-data pooling is defined for discrete inputs")
    raw: dict[str, list[float]] = {}
    with localcontext() as ctx:
        ctx.prec = 50
        for key0, mass0 in p0.atoms:
            if mass0 == 0.0:
                continue
            for key1, mass1 in like.atoms:
                if mass1 == 0.0:
                    continue
                midpoint = (Decimal(key0) + Decimal(key1)) / 2
                raw.setdefault(canonical_key(midpoint), []).append(mass0 * mass1)
    return normalize((key, math.fsum(masses)) for key, masses in raw.items())


def proportionality_check(
    pstar: Distribution, p0: Distribution, like: Distribution, tol: float
) -> bool:
    """Does ``pstar`` reproduce the pairwise mass ratios of the product ``p0*pL``?

    Tested in cross-multiplied form, ``|p*(a) w(b) - p*(b) w(a)| <= tol``
    with ``w = p0 * pL``, over all pairs drawn from the joint support.
    """
    require_same_representation(pstar, p0)
    report = check_compatible(p0, like)
    if not report.compatible:
        raise IncompatibleError("prior and likelihood are not compatible")
    if isinstance(p0, DiscreteDist):
        star_masses = pstar.as_dict()
        like_masses = like.as_dict()
        entries = [
            (star_masses.get(key, 0.0), mass * like_masses[key])
            for key, mass in p0.atoms
            if mass > 0.0 and like_masses.get(key, 0.0) > 0.0
        ]
    else:
        entries = [
            (f1, f0 * fl)
            for f1, f0, fl in zip(pstar.densities, p0.densities, like.densities)
            if f0 * fl > 0.0
        ]
    for i, (star_a, w_a) in enumerate(entries):
        for star_b, w_b in entries[i + 1 :]:
            if abs(star_a * w_b - star_b * w_a) > tol:
                return False
    return True
