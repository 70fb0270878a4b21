"""Display and user interface logic."""

import json
from typing import Any, List

from rich.console import Console
from rich.table import Table

from src.models.corpus import CaseResult

STATUS_STYLES = {
    "stable": "bold green",
    "strictly_semistable": "bold yellow",
    "unstable": "bold red",
}


def canonical_json(payload: Any) -> str:
    """Byte-stable JSON: sorted keys, no ASCII escaping."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


class DisplayService:
    """Service for rendering command results to the user."""

    def __init__(self, console: Console = None):
        self.console = console or Console()

    def emit_json(self, payload: Any) -> None:
        """Write canonical JSON without markup or wrapping."""
        self.console.out(canonical_json(payload), highlight=False)

    def display_verdict(self, title: str, verdict: dict) -> None:
        """Display a stability verdict with its witnesses."""
        status = verdict["status"]
        style = STATUS_STYLES.get(status, "bold")
        self.console.print(
            f"[{style}]{status}[/{style}]  worst margin: {verdict['worst_margin']}"
        )
        if verdict.get("caveat_low_degree"):
            self.console.print(
                "[yellow]Degree below the low-degree threshold; "
                "the criterion is only necessary here.[/yellow]"
            )

        table = Table(title=title)
        table.add_column("Subcurve", style="cyan", no_wrap=True)
        table.add_column("ℓ_Y", justify="right")
        table.add_column("Φ(Y)", justify="right")
        table.add_column("Margin", justify="right", style="green")

        for witness in verdict["witnesses"]:
            margin_style = "red" if witness["margin"].startswith("-") else "green"
            table.add_row(
                ",".join(witness["subcurve"]),
                str(witness["boundary"]),
                witness["phi"],
                f"[{margin_style}]{witness['margin']}[/{margin_style}]",
            )

        self.console.print(table)

    def display_payload(self, title: str, payload: Any) -> None:
        """Display a generic result as a key/value table."""
        if not isinstance(payload, dict):
            self.console.print(f"[bold]{title}[/bold]: {canonical_json(payload)}")
            return
        table = Table(title=title)
        table.add_column("Key", style="cyan", no_wrap=True)
        table.add_column("Value")
        for key in sorted(payload):
            value = payload[key]
            text = value if isinstance(value, str) else canonical_json(value)
            table.add_row(key, text)
        self.console.print(table)

    def display_corpus(self, results: List[CaseResult]) -> None:
        """Display pass/fail per corpus case."""
        table = Table(title="Corpus")
        table.add_column("Case", style="cyan", no_wrap=True)
        table.add_column("Provenance")
        table.add_column("Result", justify="center")
        table.add_column("Details")

        for result in results:
            mark = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
            table.add_row(
                result.case.id,
                result.case.provenance,
                mark,
                "; ".join(result.mismatches),
            )

        self.console.print(table)
        failed = sum(1 for result in results if not result.passed)
        if failed:
            self.display_error(f"{failed} of {len(results)} corpus cases failed")
        else:
            self.display_success(f"All {len(results)} corpus cases passed")

    def display_error(self, message: str) -> None:
        """Display an error message."""
        self.console.print(f"❌ [bold red]Error:[/bold red] {message}")

    def display_success(self, message: str) -> None:
        """Display a success message."""
        self.console.print(f"✅ [bold green]{message}[/bold green]")


def create_display_service(stderr: bool = False) -> DisplayService:
    """Factory function to create display service."""
    return DisplayService(Console(stderr=stderr))
