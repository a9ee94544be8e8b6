"""Likelihood-ratio profiles and the minimax-likelihood-ratio (MLR) spread.

For a candidate posterior ``P`` the profile lists, over the joint support
of prior and likelihood, the ratio ``p(x) / (p0(x) * pL(x))`` between the
candidate and the prior-likelihood product.  Its spread (max minus min) is
the MLR objective: the product-rule posterior makes every ratio equal to
the reciprocal overlap mass, so only it reaches spread zero.

The evaluation universe is deliberately the joint support.  Candidates
carrying mass where the product vanishes are rejected rather than given
infinite ratios, which keeps every profile finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .combine import check_compatible, require_same_representation
from .dists import DiscreteDist, Distribution
from .errors import IncompatibleError, UnsupportedMassError


@dataclass(frozen=True)
class RatioProfile:
    """Candidate-to-product ratios over the joint support, plus their spread."""

    entries: tuple[tuple[str, float], ...]
    spread: float

    def __post_init__(self) -> None:
        ratios = [r for _, r in self.entries]
        if any(not math.isfinite(r) or r < 0.0 for r in ratios):
            raise ValueError("ratios must be finite and nonnegative")
        if self.spread != max(ratios) - min(ratios):
            raise ValueError("spread must equal max(ratios) - min(ratios)")


def ratio_profile(
    candidate: Distribution, p0: Distribution, like: Distribution
) -> RatioProfile:
    """Per-atom (or per-cell) ratios of the candidate to the prior-likelihood product.

    Raises :class:`UnsupportedMassError` when the candidate puts mass where
    the product is zero, and :class:`IncompatibleError` when the pair has
    no overlap at all.
    """
    require_same_representation(p0, like)
    require_same_representation(candidate, p0)
    if not check_compatible(p0, like).compatible:
        raise IncompatibleError("prior and likelihood are not compatible")
    entries: list[tuple[str, float]] = []
    if isinstance(p0, DiscreteDist):
        p0_m, like_m, cand_m = p0.as_dict(), like.as_dict(), candidate.as_dict()
        joint = {
            k for k, m in p0.atoms if m > 0.0 and like_m.get(k, 0.0) > 0.0
        }
        strays = sorted(k for k, m in candidate.atoms if m > 0.0 and k not in joint)
        if strays:
            raise UnsupportedMassError(
                f"candidate has mass off the joint support at {strays!r}"
            )
        for key in p0.keys:
            if key in joint:
                entries.append((key, cand_m.get(key, 0.0) / (p0_m[key] * like_m[key])))
    else:
        joint = {
            i
            for i in range(p0.n_cells)
            if p0.densities[i] > 0.0 and like.densities[i] > 0.0
        }
        strays = sorted(
            i
            for i in range(candidate.n_cells)
            if candidate.densities[i] > 0.0 and i not in joint
        )
        if strays:
            raise UnsupportedMassError(
                f"candidate has density off the joint support in cells {strays!r}"
            )
        for i in sorted(joint):
            ratio = candidate.densities[i] / (p0.densities[i] * like.densities[i])
            entries.append((str(i), ratio))
    ratios = [r for _, r in entries]
    return RatioProfile(tuple(entries), max(ratios) - min(ratios))


def mlr_spread(candidate: Distribution, p0: Distribution, like: Distribution) -> float:
    """Spread of the ratio profile; zero exactly for the product-rule posterior."""
    return ratio_profile(candidate, p0, like).spread
