"""Distribution construction, canonical keys, discretization, and smoothing."""

import math

import numpy as np
import pytest

from bayesfuse import (
    AllZeroMassError,
    BadResolutionError,
    DiscreteDist,
    DistFamily,
    GridDensity,
    InsufficientCoverageError,
    NonFiniteError,
    canonical_key,
    check_compatible,
    discretize,
    normalize,
    smooth_uniform,
)


class TestCanonicalKeys:
    def test_trailing_zeros_stripped(self):
        assert canonical_key("0.50") == "0.5"
        assert canonical_key("2.000") == "2"
        assert canonical_key(100.0) == "100"

    def test_negative_zero_forbidden(self):
        assert canonical_key(-0.0) == "0"
        assert canonical_key("-0") == "0"

    def test_no_exponent_notation(self):
        assert canonical_key(1e-7) == "0.0000001"
        assert canonical_key(1e20) == "100000000000000000000"

    def test_float_and_string_agree(self):
        assert canonical_key(0.5) == canonical_key("0.5")
        assert canonical_key(0.1) == "0.1"

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteError):
            canonical_key(math.nan)
        with pytest.raises(NonFiniteError):
            canonical_key(math.inf)


class TestDiscreteDist:
    def test_atoms_sorted_numerically(self):
        d = DiscreteDist.from_pairs([(10, 0.2), (2, 0.3), (-1, 0.5)])
        assert d.keys == ("-1", "2", "10")

    def test_rejects_non_canonical_keys(self):
        with pytest.raises(ValueError):
            DiscreteDist((("0.50", 1.0),))

    def test_rejects_unsorted_or_duplicate(self):
        with pytest.raises(ValueError):
            DiscreteDist((("1", 0.5), ("0", 0.5)))
        with pytest.raises(ValueError):
            DiscreteDist((("1", 0.5), ("1", 0.5)))

    def test_rejects_bad_total(self):
        with pytest.raises(ValueError):
            DiscreteDist((("0", 0.5), ("1", 0.4)))

    def test_zero_masses_are_kept(self):
        d = DiscreteDist((("0", 1.0), ("1", 0.0)))
        assert d.mass("1") == 0.0
        assert d.support == ("0",)

    def test_from_pairs_merges_duplicate_positions(self):
        d = DiscreteDist.from_pairs([("0.5", 0.25), (0.5, 0.25), (1, 0.5)])
        assert d.atoms == (("0.5", 0.5), ("1", 0.5))


class TestNormalize:
    def test_scales_by_reciprocal_total(self):
        d = normalize([("0", 0.4), ("1", 0.1)])
        assert d.masses == (0.8, 0.2)

    def test_single_atom_identity(self):
        assert normalize([("0", 1.0)]).masses == (1.0,)

    def test_all_zero_mass(self):
        with pytest.raises(AllZeroMassError):
            normalize([("0", 0.0), ("1", 0.0)])

    def test_non_finite(self):
        with pytest.raises(NonFiniteError):
            normalize([("0", math.nan)])
        with pytest.raises(NonFiniteError):
            normalize([("0", math.inf)])

    def test_exactly_idempotent(self, rng):
        """normalize(normalize(x)) returns the identical value, not merely a close one."""
        for _ in range(200):
            n = int(rng.integers(1, 30))
            raw = list(zip(range(n), rng.uniform(0.0, 5.0, n) + 1e-9))
            once = normalize(raw)
            twice = normalize(once.atoms)
            assert once == twice
            assert math.fsum(once.masses) == 1.0

    def test_zero_masses_survive_scaling(self):
        d = normalize([("0", 0.0), ("1", 2.0)])
        assert d.atoms == (("0", 0.0), ("1", 1.0))


class TestGridDensity:
    def test_validates_unit_integral(self):
        with pytest.raises(ValueError):
            GridDensity(0.0, 0.5, (1.0, 1.0, 1.0))

    def test_from_values_renormalizes(self):
        g = GridDensity.from_values(0.0, 0.5, [3.0, 1.0])
        assert g.total_mass() == pytest.approx(1.0, abs=1e-15)
        assert g.densities == (1.5, 0.5)

    def test_midpoints_and_masses(self):
        g = GridDensity(0.0, 0.25, (1.0, 1.0, 1.0, 1.0))
        assert g.cell_midpoint(0) == 0.125
        assert g.cell_mass(2) == 0.25
        assert g.prob([0, 2]) == 0.5
        assert g.end == 1.0

    def test_same_grid_requires_exact_match(self):
        a = GridDensity(0.0, 0.25, (1.0, 1.0, 1.0, 1.0))
        b = GridDensity(0.0, 0.25, (1.0, 1.0, 1.0, 1.0))
        c = GridDensity(0.125, 0.25, (1.0, 1.0, 1.0, 1.0))
        assert a.same_grid(b)
        assert not a.same_grid(c)


class TestDistFamily:
    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            DistFamily.geometric(0.0)
        with pytest.raises(ValueError):
            DistFamily.geometric(1.5)
        with pytest.raises(ValueError):
            DistFamily.normal(0.0, 0.0)
        with pytest.raises(ValueError):
            DistFamily.exponential(-1.0)
        with pytest.raises(ValueError):
            DistFamily.uniform(2.0, 2.0)

    def test_exponential_density_formula(self):
        fam = DistFamily.exponential(1.0)
        assert fam.pdf(0.005) == pytest.approx(math.exp(-0.005), rel=1e-15)
        assert fam.pdf(-0.1) == 0.0

    def test_geometric_decay_profile(self):
        fam = DistFamily.geometric(0.25)
        assert fam.pdf(0.5) == 0.0
        assert fam.pdf(1.0) == 0.25
        assert fam.pdf(2.0) == pytest.approx(0.25 * 0.75, rel=1e-15)


class TestDiscretize:
    def test_uniform_is_flat(self):
        g = discretize(DistFamily.uniform(0.0, 1.0), (0.0, 0.25, 4))
        assert g.densities == (1.0, 1.0, 1.0, 1.0)

    def test_normal_renormalization_is_tight(self):
        g = discretize(DistFamily.normal(0.0, 1.0), (-8.0, 0.01, 1600))
        assert abs(g.total_mass() - 1.0) <= 1e-9

    def test_exponential_midpoint_value(self):
        g = discretize(DistFamily.exponential(1.0), (0.0, 0.01, 4000))
        # First cell midpoint is 0.005; the pre-normalization value is exactly
        # exp(-0.005) and renormalization shifts it only by the quadrature
        # factor, about delta**2 / 24.
        assert g.densities[0] == pytest.approx(math.exp(-0.005), rel=1e-5)
        renorm = math.exp(-0.005) / g.densities[0]
        assert abs(renorm - 1.0) < 1e-5

    def test_insufficient_coverage(self):
        with pytest.raises(InsufficientCoverageError):
            discretize(DistFamily.normal(0.0, 1.0), (-1.0, 0.01, 200))

    @pytest.mark.parametrize(
        "family,grid",
        [
            (DistFamily.uniform(0.0, 1.0), (0.0, 0.01, 100)),
            (DistFamily.normal(0.0, 1.0), (-8.0, 0.02, 800)),
            (DistFamily.exponential(0.5), (0.0, 0.02, 4000)),
            (DistFamily.geometric(0.4), (1.0, 0.02, 3000)),
        ],
    )
    def test_cell_sums_track_the_cdf(self, family, grid, rng):
        """Integrating any run of cells agrees with the family CDF difference
        within 2 * delta * sup(density)."""
        g = discretize(family, grid)
        sup_density = max(g.densities)
        tol = 2.0 * g.delta * sup_density
        for _ in range(50):
            i, j = sorted(rng.integers(0, g.n_cells + 1, size=2))
            if i == j:
                continue
            x1 = g.origin + i * g.delta
            x2 = g.origin + j * g.delta
            integral = g.delta * math.fsum(g.densities[i:j])
            expected = family.cdf(x2) - family.cdf(x1)
            assert abs(integral - expected) <= tol


class TestSmoothUniform:
    def test_point_mass_becomes_flat_bump(self):
        sm = smooth_uniform(DiscreteDist((("0", 1.0),)), 0.5, 0.25)
        assert sm.origin == -0.5
        assert sm.densities == (1.0, 1.0, 1.0, 1.0)

    def test_two_point_masses_two_bumps(self):
        d = DiscreteDist((("0", 0.5), ("10", 0.5)))
        sm = smooth_uniform(d, 0.5, 0.25)
        assert sm.total_mass() == pytest.approx(1.0, abs=1e-12)
        # Bumps of density 0.5 on (-0.5, 0.5) and (9.5, 10.5), zero between.
        mid = [sm.densities[i] for i in range(sm.n_cells) if 1.0 < sm.cell_midpoint(i) < 9.0]
        assert all(v == 0.0 for v in mid)
        assert sm.densities[0] == pytest.approx(0.5, abs=1e-12)

    def test_resolution_must_divide_window(self):
        with pytest.raises(BadResolutionError):
            smooth_uniform(DiscreteDist((("0", 1.0),)), 0.3, 0.25)

    def test_mass_preserved_for_random_discrete_inputs(self, corpus):
        for prior, _ in corpus[:10]:
            sm = smooth_uniform(prior, 0.5, 0.125)
            assert abs(sm.total_mass() - 1.0) <= 1e-6

    def test_grid_input_matches_numeric_convolution(self):
        """Cell averages agree with a fine Riemann sum of the true convolution."""
        g = GridDensity(0.0, 0.5, (0.5, 1.0, 0.5))
        eps = 0.375
        sm = smooth_uniform(g, eps, 0.25)

        def input_density(x):
            if 0.0 <= x < 1.5:
                return g.densities[min(int(x / 0.5), 2)]
            return 0.0

        for j in range(sm.n_cells):
            a = sm.origin + j * sm.delta
            samples = np.linspace(a, a + sm.delta, 201)
            kernel_avg = []
            for x in samples:
                ts = np.linspace(x - eps, x + eps, 401)
                kernel_avg.append(np.trapezoid([input_density(t) for t in ts], ts) / (2 * eps))
            expected = np.trapezoid(kernel_avg, samples) / sm.delta
            assert sm.densities[j] == pytest.approx(expected, abs=5e-4)

    def test_shared_extent_makes_disjoint_pair_compatible(self):
        a = DiscreteDist((("0", 1.0),))
        b = DiscreteDist((("3", 1.0),))
        assert not check_compatible(a, b).compatible
        sa = smooth_uniform(a, 2.0, 0.25, origin=-2.0, cells=28)
        sb = smooth_uniform(b, 2.0, 0.25, origin=-2.0, cells=28)
        report = check_compatible(sa, sb)
        assert report.compatible and report.overlap_mass > 0.0

    def test_forced_extent_must_cover_the_mass(self):
        a = DiscreteDist((("0", 1.0),))
        with pytest.raises(ValueError):
            smooth_uniform(a, 2.0, 0.25, origin=-2.0, cells=4)
