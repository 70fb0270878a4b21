"""Tests for Hilbert–Mumford weights, section heights and the height harness."""

import random
from fractions import Fraction
from unittest.mock import patch

import pytest

from config import Config
from src.models.torus import (
    FamilySection,
    InvalidTorusDataError,
    ProjectivePoint,
    TorusProblem,
)
from src.services.hm_weights import (
    TorusWeightError,
    _support_semistable,
    bounded_lattice_verdict,
    ch0_harness,
    fiber_profile,
    has_semistable_fiber,
    is_semistable,
    one_ps_weight,
    random_instance,
    reduce_section,
    section_height,
    twist_weights,
)


def _section(cocycle, polynomials, degree) -> FamilySection:
    return FamilySection(
        cocycle=tuple(cocycle),
        polynomials=tuple(tuple(Fraction(c) for c in f) for f in polynomials),
        degree=degree,
    )


def _balanced_problem(rng: random.Random) -> TorusProblem:
    """Characters in {−1,0,1}^t summing to zero, so they are already normalized."""
    rank = rng.randint(1, 3)
    size = rng.randint(2, 7)
    while True:
        chars = [
            tuple(rng.randint(-1, 1) for _ in range(rank)) for _ in range(size - 1)
        ]
        last = tuple(-sum(chi[j] for chi in chars) for j in range(rank))
        if all(-1 <= value <= 1 for value in last):
            return TorusProblem((*chars, last))


def _separating_radius(problem: TorusProblem) -> int:
    """Radius of a lattice box holding a destabilizing λ whenever one exists."""
    return 2 * max(abs(value) for chi in problem.characters for value in chi)


@pytest.fixture
def line_problem():
    """Rank one torus acting with weights −1 and 1 on P^1."""
    return TorusProblem.of(-1, 1)


class TestWeights:
    """Test cases for one-parameter subgroup weights."""

    def test_weight_of_coordinate_point(self, line_problem):
        """Test w_z(1) = 1 at the point supported on χ = −1."""
        z = ProjectivePoint.from_support(2, [0])

        assert one_ps_weight(line_problem, z, [1]) == 1
        assert one_ps_weight(line_problem, z, [-1]) == -1

    def test_normalization(self):
        """Test that characters are shifted to sum zero and scaled to integers."""
        assert TorusProblem.of(0, 2).characters == ((-1,), (1,))
        assert TorusProblem.of(0, 1).characters == ((-1,), (1,))
        assert TorusProblem.of(0, 1).scale == 2

    def test_lambda_length_checked(self, line_problem):
        """Test that λ must match the torus rank."""
        with pytest.raises(TorusWeightError):
            one_ps_weight(line_problem, ProjectivePoint.from_support(2, [0]), [1, 0])

    def test_point_length_checked(self, line_problem):
        """Test that the point must match the number of characters."""
        with pytest.raises(TorusWeightError):
            is_semistable(line_problem, ProjectivePoint.from_support(3, [0]))

    def test_opposite_weights_sum_nonnegative(self):
        """Test w(λ) + w(−λ) ≥ 0, zero iff λ pairs equally with the support."""
        rng = random.Random(31)
        for _ in range(200):
            problem = _balanced_problem(rng)
            support = [i for i in range(problem.size) if rng.random() < 0.6] or [0]
            z = ProjectivePoint.from_support(problem.size, support)
            lam = tuple(rng.randint(-3, 3) for _ in range(problem.rank))
            opposite = tuple(-value for value in lam)

            total = one_ps_weight(problem, z, lam) + one_ps_weight(problem, z, opposite)
            pairings = {
                sum(a * b for a, b in zip(lam, problem.characters[i]))
                for i in support
            }
            assert total >= 0
            assert (total == 0) == (len(pairings) == 1)

    def test_weight_is_homogeneous(self):
        """Test w(tλ) = t·w(λ) for positive integers t."""
        rng = random.Random(37)
        for _ in range(100):
            problem = _balanced_problem(rng)
            z = ProjectivePoint.from_support(problem.size, range(problem.size))
            lam = [rng.randint(-3, 3) for _ in range(problem.rank)]
            weight = one_ps_weight(problem, z, lam)
            for t in (2, 3, 7):
                assert one_ps_weight(problem, z, [t * value for value in lam]) == (
                    t * weight
                )

    def test_weight_ignores_coordinate_values(self):
        """Test that rescaling nonzero coordinates leaves the weight unchanged."""
        problem = TorusProblem.of((1, 0), (0, 1), (-1, -1))
        scaled = ProjectivePoint((Fraction(3), Fraction(0), Fraction(-5)))
        plain = ProjectivePoint.from_support(3, [0, 2])

        for lam in [(1, 0), (0, 1), (-2, 1), (1, 1)]:
            assert one_ps_weight(problem, scaled, lam) == one_ps_weight(
                problem, plain, lam
            )
        assert is_semistable(problem, scaled) == is_semistable(problem, plain)


class TestSemistability:
    """Test cases for hull membership."""

    def test_full_support_semistable(self, line_problem):
        """Test that 0 lies between −1 and 1."""
        point = ProjectivePoint((Fraction(1), Fraction(1)))
        result = is_semistable(line_problem, point)

        assert result.semistable
        assert result.destabilizing is None

    def test_single_character_unstable(self, line_problem):
        """Test that a lone character is destabilized with a verified λ."""
        result = is_semistable(line_problem, ProjectivePoint.from_support(2, [0]))

        assert not result.semistable
        assert result.destabilizing == (-1,)
        assert result.weight == -1

    def test_rank_two(self):
        """Test the standard action of a rank-two torus on P^2."""
        problem = TorusProblem.of((1, 0), (0, 1), (-1, -1))

        full = ProjectivePoint.from_support(3, [0, 1, 2])
        assert is_semistable(problem, full).semistable
        result = is_semistable(problem, ProjectivePoint.from_support(3, [0, 1]))
        assert not result.semistable
        assert one_ps_weight(
            problem, ProjectivePoint.from_support(3, [0, 1]), result.destabilizing
        ) < 0

    def test_zero_character_semistable(self):
        """Test that a support containing the zero character is semistable."""
        problem = TorusProblem.of((1, 0), (0, 0), (-1, 0))

        assert is_semistable(problem, ProjectivePoint.from_support(3, [1])).semistable

    def test_lattice_radius_defaults_to_config(self, line_problem):
        """Test that the lattice radius comes from Config."""
        z = ProjectivePoint.from_support(2, [0])

        with patch.object(Config, "HM_LATTICE_RADIUS", 0):
            assert bounded_lattice_verdict(line_problem, z)
        assert not bounded_lattice_verdict(line_problem, z)

    @pytest.mark.slow
    def test_duality_with_bounded_lattice(self):
        """Test hull membership against min over λ ∈ [−5,5]^t of w_z(λ)."""
        rng = random.Random(2024)
        for _ in range(300):
            problem = _balanced_problem(rng)
            support = [i for i in range(problem.size) if rng.random() < 0.6] or [0]
            z = ProjectivePoint.from_support(problem.size, support)

            result = is_semistable(problem, z)
            assert result.semistable == bounded_lattice_verdict(problem, z, 5)
            if not result.semistable:
                assert one_ps_weight(problem, z, result.destabilizing) < 0

    def test_unbalanced_characters(self):
        """Test hull membership after normalizing the characters 0, 1, 1."""
        problem = TorusProblem.of(0, 1, 1)

        assert problem.scale == 3
        assert problem.characters == ((-2,), (1,), (1,))
        mixed = ProjectivePoint.from_support(3, [0, 1])
        assert is_semistable(problem, mixed).semistable
        result = is_semistable(problem, ProjectivePoint.from_support(3, [1, 2]))
        assert not result.semistable
        assert result.destabilizing == (1,)
        assert result.weight == -1

    @pytest.mark.slow
    def test_duality_with_raw_characters(self):
        """Test hull membership against the lattice on unnormalized characters."""
        rng = random.Random(404)
        for _ in range(60):
            rank = rng.randint(1, 2)
            size = rng.randint(2, 3) if rank == 2 else rng.randint(2, 4)
            problem = TorusProblem(
                tuple(
                    tuple(rng.randint(-2, 2) for _ in range(rank)) for _ in range(size)
                )
            )
            support = [i for i in range(size) if rng.random() < 0.6] or [0]
            z = ProjectivePoint.from_support(size, support)

            result = is_semistable(problem, z)
            radius = _separating_radius(problem)
            assert result.semistable == bounded_lattice_verdict(problem, z, radius)
            if not result.semistable:
                assert one_ps_weight(problem, z, result.destabilizing) < 0

    def test_rank_one_skips_the_lp(self):
        """Test that rank one verdicts are exact and never build an LP."""
        rng = random.Random(9)
        with patch("src.services.hm_weights.lpmax") as lp:
            for _ in range(100):
                size = rng.randint(2, 5)
                problem = TorusProblem(
                    tuple((rng.randint(-3, 3),) for _ in range(size))
                )
                support = [i for i in range(size) if rng.random() < 0.5] or [0]
                z = ProjectivePoint.from_support(size, support)

                result = is_semistable(problem, z)
                radius = _separating_radius(problem)
                assert result.semistable == bounded_lattice_verdict(problem, z, radius)
                if not result.semistable:
                    assert result.weight == one_ps_weight(
                        problem, z, result.destabilizing
                    )
                    assert result.weight < 0
        lp.assert_not_called()


class TestSections:
    """Test cases for section heights and fiber profiles."""

    def test_twist_weights_use_raw_characters(self, line_problem):
        """Test e_i = ⟨γ, χ_i⟩."""
        section = _section([1], [[1], [1]], 1)

        assert twist_weights(line_problem, section) == [-1, 1]

    def test_orbit_line_height(self, line_problem):
        """Test height 2 for the section (u : 1) of degree 1."""
        assert section_height(line_problem, _section([0], [[0, 1], [1]], 1)) == 2

    def test_replacement_lowers_height(self, line_problem):
        """Test that the constant semistable section has height 0 < 2."""
        before = section_height(line_problem, _section([0], [[0, 1], [1]], 1))
        after = section_height(line_problem, _section([0], [[1], [1]], 0))

        assert after == 0
        assert after < before

    def test_common_factor_removed(self, line_problem):
        """Test that (u : u²) of degree 2 reduces to (1 : u) of degree 1."""
        section = _section([0], [[0, 1], [0, 0, 1]], 2)
        reduced = reduce_section(line_problem, section)

        assert reduced.removed_degree == 1
        assert reduced.degree == 1
        assert section_height(line_problem, section) == 2

    def test_degree_bound_enforced(self, line_problem):
        """Test that deg f_i ≤ c − e_i is required."""
        with pytest.raises(TorusWeightError):
            section_height(line_problem, _section([1], [[1], [0, 1]], 1))

    def test_zero_section_rejected(self):
        """Test that the all-zero section is invalid."""
        with pytest.raises(InvalidTorusDataError):
            _section([0], [[0], [0]], 1)

    def test_orbit_line_profile(self, line_problem):
        """Test generic, u = 0 and infinity fibers of (u : 1)."""
        profile = fiber_profile(line_problem, _section([0], [[0, 1], [1]], 1))

        assert [fiber.to_json() for fiber in profile] == [
            {
                "kind": "generic",
                "location": "generic",
                "support": [0, 1],
                "semistable": True,
            },
            {
                "kind": "rational",
                "location": "0/1",
                "support": [1],
                "semistable": False,
            },
            {
                "kind": "infinity",
                "location": "infinity",
                "support": [0],
                "semistable": False,
            },
        ]

    def test_irrational_fiber(self, line_problem):
        """Test that u² − 2 is reported by its equation."""
        profile = fiber_profile(line_problem, _section([0], [[-2, 0, 1], [1]], 2))

        kinds = [fiber.kind for fiber in profile]
        assert kinds == ["generic", "irrational", "infinity"]
        assert profile[1].support == (1,)
        assert "u**2 - 2" in profile[1].location

    def test_constant_section_has_only_generic_fiber(self, line_problem):
        """Test that a constant section has no special fibers."""
        profile = fiber_profile(line_problem, _section([0], [[1], [1]], 0))

        assert len(profile) == 1
        assert profile[0].semistable

    @pytest.mark.slow
    def test_generic_fiber_decides(self):
        """Test that has_semistable_fiber agrees with the full fiber profile."""
        rng = random.Random(11)
        for _ in range(40):
            problem, section = random_instance(rng)
            profile = fiber_profile(problem, section)

            assert has_semistable_fiber(problem, section) == any(
                fiber.semistable for fiber in profile
            )

    def test_repeated_supports_solved_once(self, line_problem):
        """Test that fibers sharing a support reuse one verdict."""
        _support_semistable.cache_clear()
        section = _section([0], [[0, -1, 1], [1]], 2)

        with patch(
            "src.services.hm_weights.is_semistable", wraps=is_semistable
        ) as solver:
            profile = fiber_profile(line_problem, section)

        assert [fiber.support for fiber in profile] == [(0, 1), (1,), (1,), (0,)]
        assert solver.call_count == 3

    def test_from_json(self):
        """Test reading a torus problem with its section."""
        problem, section = FamilySection.from_json(
            {
                "characters": [[-1], [1]],
                "cocycle": [0],
                "polynomials": [["0", "1"], ["1"]],
                "degree": 1,
            }
        )

        assert problem.size == 2
        assert section.polynomials[0] == (0, 1)


class TestHarness:
    """Test cases for the random height harness."""

    def test_random_instance_is_deterministic(self):
        """Test that a seeded generator reproduces the instance."""
        assert random_instance(random.Random(5)) == random_instance(random.Random(5))

    def test_harness_small(self):
        """Test a short harness run without violations."""
        report = ch0_harness(seed=7, trials=20)

        assert report.passed
        assert report.trials == 20
        assert report.to_json()["violations"] == []

    def test_harness_parallel_matches_serial(self):
        """Test that workers do not change the report."""
        parallel = ch0_harness(seed=3, trials=10, workers=2)
        assert parallel == ch0_harness(seed=3, trials=10)

    @pytest.mark.slow
    def test_harness_full(self):
        """Test 200 trials: every section with a semistable fiber has height ≥ 0."""
        report = ch0_harness(seed=7, trials=200)

        assert report.passed
        assert report.with_semistable_fiber > 0
        assert report.min_height >= 0

    def test_harness_needs_trials(self):
        """Test that zero trials are rejected."""
        with pytest.raises(TorusWeightError):
            ch0_harness(seed=1, trials=0)
