"""Tests for display service."""

from unittest.mock import Mock, patch

from rich.console import Console
from rich.table import Table

from src.models.corpus import CaseResult, CorpusCase
from src.ui.display import DisplayService, canonical_json, create_display_service

VERDICT = {
    "status": "unstable",
    "worst_margin": "-1/2",
    "caveat_low_degree": True,
    "witnesses": [
        {"subcurve": ["X2"], "margin": "-1/2", "phi": "1/1", "boundary": 1},
        {"subcurve": ["X1"], "margin": "1/2", "phi": "0/1", "boundary": 1},
    ],
}


def _case(case_id: str) -> CorpusCase:
    return CorpusCase(
        id=case_id,
        command=("sing", "hj", "--m", "4", "--q", "1"),
        expected={"chain": [4]},
        provenance="TRIVIAL",
        citation="",
    )


class TestCanonicalJson:
    """Test cases for canonical JSON output."""

    def test_sorted_keys(self):
        """Test that keys are sorted regardless of insertion order."""
        assert canonical_json({"b": 1, "a": [2]}) == '{"a": [2], "b": 1}'

    def test_unicode_kept(self):
        """Test that non-ASCII text is not escaped."""
        assert canonical_json({"chars": "−1"}) == '{"chars": "−1"}'


class TestDisplayService:
    """Test cases for the DisplayService class."""

    def test_display_service_creation(self):
        """Test that DisplayService can be created."""
        display = DisplayService()

        assert isinstance(display, DisplayService)
        assert isinstance(display.console, Console)

    def test_create_display_service_factory(self):
        """Test the factory function creates a DisplayService."""
        display = create_display_service()
        errors = create_display_service(stderr=True)

        assert isinstance(display, DisplayService)
        assert errors.console.stderr

    @patch("src.ui.display.Console")
    def test_emit_json(self, mock_console_class):
        """Test that JSON goes through console.out without highlighting."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.emit_json({"z": 1, "a": "1/2"})

        mock_console.out.assert_called_once_with(
            '{"a": "1/2", "z": 1}', highlight=False
        )
        mock_console.print.assert_not_called()

    @patch("src.ui.display.Console")
    def test_display_verdict(self, mock_console_class):
        """Test displaying a verdict with caveat and witnesses."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_verdict("Stability", VERDICT)

        # Status line, low-degree caveat, then the table
        assert mock_console.print.call_count == 3
        assert "unstable" in mock_console.print.call_args_list[0][0][0]

        table_arg = mock_console.print.call_args[0][0]
        assert isinstance(table_arg, Table)
        assert table_arg.title == "Stability"
        assert table_arg.row_count == 2

    @patch("src.ui.display.Console")
    def test_display_verdict_without_caveat(self, mock_console_class):
        """Test that no caveat line is printed above the threshold."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_verdict("Stability", dict(VERDICT, caveat_low_degree=False))

        assert mock_console.print.call_count == 2

    @patch("src.ui.display.Console")
    def test_display_payload_dict(self, mock_console_class):
        """Test displaying a dict payload as a key/value table."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_payload("Chain", {"m": 4, "q": 1, "chain": [4]})

        mock_console.print.assert_called_once()
        table_arg = mock_console.print.call_args[0][0]
        assert isinstance(table_arg, Table)
        assert table_arg.title == "Chain"
        assert table_arg.row_count == 3

    @patch("src.ui.display.Console")
    def test_display_payload_scalar(self, mock_console_class):
        """Test that a non-dict payload is printed on one line."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_payload("Multiplicity", [1, 2])

        mock_console.print.assert_called_once()
        assert "[1, 2]" in mock_console.print.call_args[0][0]

    @patch("src.ui.display.Console")
    def test_display_corpus_all_passed(self, mock_console_class):
        """Test the corpus table with a success summary."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_corpus(
            [CaseResult(_case("a"), True), CaseResult(_case("b"), True)]
        )

        table_arg = mock_console.print.call_args_list[0][0][0]
        assert isinstance(table_arg, Table)
        assert table_arg.row_count == 2
        assert "All 2 corpus cases passed" in mock_console.print.call_args[0][0]

    @patch("src.ui.display.Console")
    def test_display_corpus_with_failure(self, mock_console_class):
        """Test that failures are summarized as an error."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_corpus(
            [
                CaseResult(_case("a"), True),
                CaseResult(_case("b"), False, ("$.chain: expected [4], got [2, 2]",)),
            ]
        )

        summary = mock_console.print.call_args[0][0]
        assert "Error:" in summary
        assert "1 of 2 corpus cases failed" in summary

    @patch("src.ui.display.Console")
    def test_display_error(self, mock_console_class):
        """Test displaying error message."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_error("Test error message")

        mock_console.print.assert_called_once()
        call_args = mock_console.print.call_args[0][0]
        assert "❌" in call_args
        assert "Test error message" in call_args

    @patch("src.ui.display.Console")
    def test_display_success(self, mock_console_class):
        """Test displaying success message."""
        mock_console = Mock()
        mock_console_class.return_value = mock_console

        display = DisplayService()
        display.display_success("Test success message")

        mock_console.print.assert_called_once()
        call_args = mock_console.print.call_args[0][0]
        assert "✅" in call_args
        assert "Test success message" in call_args
