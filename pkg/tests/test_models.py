"""Tests for data models."""

from fractions import Fraction

import pytest

from src.models.corpus import CorpusCase, InvalidCorpusError
from src.models.curve import (
    Component,
    InvalidCurveError,
    MarkedPoint,
    Multidegree,
    NodalCurve,
    Subcurve,
)
from src.models.family import (
    FamilyIntersections,
    HeightPolynomial,
    InvalidFamilyError,
)
from src.models.rational import (
    RationalFormatError,
    format_rational,
    parse_int_list,
    parse_rational,
    parse_rational_list,
)
from src.models.singularity import ChainData, TDecomposition
from src.models.torus import InvalidTorusDataError, ProjectivePoint, TorusProblem
from src.models.verdict import StabilityStatus, StabilityVerdict, Witness

CURVE_JSON = {
    "components": [{"id": "X1", "genus": 2}, {"id": "X2", "genus": 1}],
    "nodes": [["X1", "X2"]],
    "points": [
        {"on": "X2", "label": "p", "weight": "1/2"},
        {"on": "X2", "label": "q", "weight": "0"},
    ],
}


class TestRational:
    """Test cases for the "p/q" wire format."""

    def test_parse_forms(self):
        """Test ints, fractions and strings."""
        assert parse_rational(3) == 3
        assert parse_rational(Fraction(1, 2)) == Fraction(1, 2)
        assert parse_rational(" 7/2 ") == Fraction(7, 2)
        assert parse_rational("−3/4") == Fraction(-3, 4)

    def test_format_is_canonical(self):
        """Test lowest terms with a positive denominator, integers as p/1."""
        assert format_rational(Fraction(2, -4)) == "-1/2"
        assert format_rational(3) == "3/1"
        assert format_rational(0) == "0/1"

    def test_reparse_is_identity(self):
        """Test that formatting then parsing returns the same value."""
        for value in [Fraction(-7, 3), Fraction(0), Fraction(22, 1)]:
            text = format_rational(value)
            assert parse_rational(text) == value
            assert format_rational(parse_rational(text)) == text

    def test_rejects_garbage(self):
        """Test malformed input."""
        with pytest.raises(RationalFormatError):
            parse_rational("1/0")
        with pytest.raises(RationalFormatError):
            parse_rational("abc")
        with pytest.raises(RationalFormatError):
            parse_rational(True)

    def test_lists(self):
        """Test comma separated lists."""
        assert parse_rational_list("3, 1/2") == [3, Fraction(1, 2)]
        assert parse_int_list("4,5,−8") == [4, 5, -8]
        with pytest.raises(RationalFormatError):
            parse_int_list("1,x")
        with pytest.raises(RationalFormatError):
            parse_rational_list(" , ")


class TestNodalCurve:
    """Test cases for the curve model."""

    def test_from_json_drops_zero_weights(self):
        """Test parsing with a zero-weight point removed."""
        curve = NodalCurve.from_json(CURVE_JSON)

        assert curve.component_ids == ["X1", "X2"]
        assert len(curve.points) == 1
        assert curve.total_weight == Fraction(1, 2)

    def test_round_trip(self):
        """Test that to_json keeps the parsed content."""
        curve = NodalCurve.from_json(CURVE_JSON)

        assert NodalCurve.from_json(curve.to_json()) == curve
        assert curve.to_json()["points"][0]["weight"] == "1/2"

    def test_graph(self):
        """Test the dual multigraph with a self-node."""
        curve = NodalCurve(
            components=(Component("A", 0), Component("B", 1)),
            nodes=(("A", "B"), ("A", "B"), ("A", "A")),
        )

        assert curve.node_count("A", "B") == 2
        assert curve.node_count("A", "A") == 1

    def test_disconnected_rejected(self):
        """Test that the dual graph must be connected."""
        with pytest.raises(InvalidCurveError, match="not connected"):
            NodalCurve(components=(Component("A", 1), Component("B", 1)))

    def test_weight_out_of_range(self):
        """Test that weights must lie in (0,1]."""
        with pytest.raises(InvalidCurveError):
            NodalCurve(
                components=(Component("A", 2),),
                points=(MarkedPoint("A", "p", Fraction(3, 2)),),
            )

    def test_coincident_points_total_weight(self):
        """Test that coincident points carry total weight at most 1."""
        with pytest.raises(InvalidCurveError):
            NodalCurve(
                components=(Component("A", 2),),
                points=(
                    MarkedPoint("A", "p", Fraction(2, 3), group="g"),
                    MarkedPoint("A", "q", Fraction(1, 2), group="g"),
                ),
            )

    def test_point_on_node_rejected(self):
        """Test that a point given on a node pair is rejected."""
        data = dict(CURVE_JSON, points=[{"on": ["X1", "X2"], "weight": "1/2"}])

        with pytest.raises(InvalidCurveError):
            NodalCurve.from_json(data)

    def test_unknown_node_id(self):
        """Test that nodes must name known components."""
        with pytest.raises(InvalidCurveError):
            NodalCurve(components=(Component("A", 1),), nodes=(("A", "Z"),))

    def test_duplicate_ids(self):
        """Test that component ids are unique."""
        with pytest.raises(InvalidCurveError):
            NodalCurve(components=(Component("A", 1), Component("A", 2)))

    def test_missing_key(self):
        """Test that malformed JSON raises InvalidCurveError."""
        with pytest.raises(InvalidCurveError):
            NodalCurve.from_json({"nodes": []})

    def test_sorted_members(self):
        """Test declaration order of subcurve members."""
        curve = NodalCurve.from_json(CURVE_JSON)

        assert curve.sorted_members(Subcurve.of("X2", "X1")) == ["X1", "X2"]


class TestMultidegree:
    """Test cases for multidegrees."""

    def test_from_list_and_json(self):
        """Test construction in component order."""
        curve = NodalCurve.from_json(CURVE_JSON)
        degrees = Multidegree.from_list(curve, ["7/2", 1])

        assert degrees.total == Fraction(9, 2)
        assert not degrees.is_integral
        assert degrees.to_json(curve) == {"X1": "7/2", "X2": "1/1"}

    def test_wrong_length(self):
        """Test that one degree per component is required."""
        curve = NodalCurve.from_json(CURVE_JSON)

        with pytest.raises(InvalidCurveError):
            Multidegree.from_list(curve, [3])

    def test_arithmetic(self):
        """Test addition, scaling and restriction."""
        left = Multidegree({"A": Fraction(1), "B": Fraction(2)})
        right = Multidegree({"A": Fraction(-1), "B": Fraction(1)})

        assert (left + right).degrees == {"A": 0, "B": 3}
        assert left.scaled(Fraction(2)).on(Subcurve.of("B")) == 4


class TestVerdict:
    """Test cases for stability verdicts."""

    def test_status_from_margins(self):
        """Test that the worst margin decides the status."""
        y = Subcurve.of("A")
        positive = Witness(y, Fraction(1, 2), Fraction(0), 1)
        zero = Witness(y, Fraction(0), Fraction(1, 2), 1)
        negative = Witness(y, Fraction(-1), Fraction(3, 2), 1)

        stable = StabilityVerdict.from_witnesses([positive])
        assert stable.status is StabilityStatus.STABLE
        assert (
            StabilityVerdict.from_witnesses([zero, positive]).status
            is StabilityStatus.STRICTLY_SEMISTABLE
        )
        verdict = StabilityVerdict.from_witnesses([negative, zero])
        assert verdict.status is StabilityStatus.UNSTABLE
        assert verdict.worst_margin == Fraction(-1)

    def test_semistable_flags(self):
        """Test is_semistable on each status."""
        assert StabilityStatus.STABLE.is_semistable
        assert StabilityStatus.STRICTLY_SEMISTABLE.is_semistable
        assert not StabilityStatus.UNSTABLE.is_semistable

    def test_empty_witnesses(self):
        """Test the vacuous verdict."""
        verdict = StabilityVerdict.from_witnesses([])

        assert verdict.status is StabilityStatus.STABLE
        assert verdict.worst_margin is None


class TestSingularityModels:
    """Test cases for quotient types and chains."""

    def test_chain_str_and_du_val(self):
        """Test chain helpers."""
        chain = ChainData.of(2, 5)

        assert str(chain) == "(2,5)"
        assert not chain.is_du_val

    def test_decomposition_type(self):
        """Test 1/(dn²)(1, dna − 1)."""
        t = TDecomposition(d=5, n=6, a=1).quotient_type

        assert (t.m, t.q) == (180, 29)
        assert str(t) == "1/180(1,29)"


class TestFamilyModels:
    """Test cases for family intersection data."""

    def test_from_json_defaults(self):
        """Test n = 1 and fiber_di = 1 defaults."""
        family = FamilyIntersections.from_json(
            {
                "Lnp1": "5",
                "LnK": "4",
                "fiber_Ln": "3",
                "fiber_Ln1K": "5/2",
                "boundary": [{"a": "1/2", "LDi_n": "2"}],
            }
        )

        assert family.n == 1
        assert family.boundary[0].fiber_di == 1
        assert family.boundary_weight == Fraction(1, 2)
        assert family.to_json()["fiber_Ln1K"] == "5/2"

    def test_scaled(self):
        """Test the degrees of tL."""
        family = FamilyIntersections.from_json(
            {"Lnp1": "5", "LnK": "4", "fiber_Ln": "3", "fiber_Ln1K": "2"}
        ).scaled(2)

        assert (family.Lnp1, family.LnK, family.fiber_Ln, family.fiber_Ln1K) == (
            20,
            8,
            6,
            2,
        )

    def test_invalid_coefficient(self):
        """Test that boundary coefficients lie in (0,1]."""
        with pytest.raises(InvalidFamilyError):
            FamilyIntersections.from_json(
                {
                    "Lnp1": "1",
                    "LnK": "1",
                    "fiber_Ln": "1",
                    "fiber_Ln1K": "1",
                    "boundary": [{"a": "2", "LDi_n": "1"}],
                }
            )

    def test_missing_key(self):
        """Test malformed family data."""
        with pytest.raises(InvalidFamilyError):
            FamilyIntersections.from_json({"Lnp1": "1"})

    def test_polynomial_helpers(self):
        """Test degree, coefficients and evaluation."""
        h = HeightPolynomial(
            (Fraction(0), Fraction(-1, 4), Fraction(23, 4), Fraction(0))
        )

        assert h.degree == 2
        assert h.coefficient(5) == 0
        assert h.evaluate(2) == Fraction(45, 2)
        assert h.to_json() == ["0/1", "-1/4", "23/4", "0/1"]


class TestTorusModels:
    """Test cases for torus problems and points."""

    def test_mixed_ranks_rejected(self):
        """Test that characters share one rank."""
        with pytest.raises(InvalidTorusDataError):
            TorusProblem(((1, 0), (1,)))

    def test_zero_point_rejected(self):
        """Test that a projective point needs a nonzero coordinate."""
        with pytest.raises(InvalidTorusDataError):
            ProjectivePoint((Fraction(0), Fraction(0)))

    def test_support(self):
        """Test supports from coordinates and from indices."""
        assert ProjectivePoint((Fraction(0), Fraction(3))).support == (1,)
        assert ProjectivePoint.from_support(3, [2, 0]).support == (0, 2)
        with pytest.raises(InvalidTorusDataError):
            ProjectivePoint.from_support(2, [5])


class TestCorpusCase:
    """Test cases for corpus case parsing."""

    def test_from_json(self):
        """Test a PAPER case with citation and exit code."""
        case = CorpusCase.from_json(
            {
                "id": "mumford",
                "command": ["sing", "mumford", "--dim", "2", "--mults", "8"],
                "expected": {"violators": [0]},
                "exit_code": 3,
                "provenance": {"kind": "PAPER", "citation": "multiplicity bound"},
            }
        )

        assert case.command[0] == "sing"
        assert case.exit_code == 3

    def test_paper_case_needs_citation(self):
        """Test that PAPER provenance requires a citation."""
        with pytest.raises(InvalidCorpusError):
            CorpusCase.from_json(
                {
                    "id": "x",
                    "command": ["sing", "lee-park"],
                    "expected": {},
                    "provenance": {"kind": "PAPER"},
                }
            )

    def test_unknown_provenance(self):
        """Test that provenance kinds are restricted."""
        with pytest.raises(InvalidCorpusError):
            CorpusCase.from_json(
                {
                    "id": "x",
                    "command": [],
                    "expected": {},
                    "provenance": {"kind": "GUESS", "citation": "c"},
                }
            )
