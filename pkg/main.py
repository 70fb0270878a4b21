"""chowstab - Main application entry point."""

import logging
import sys
from typing import Optional, Sequence

from config import Config, ConfigError
from src.services.corpus import CorpusError
from src.ui.cli import (
    EXIT_CORPUS,
    EXIT_FAILURE,
    EXIT_INPUT,
    INPUT_ERRORS,
    CommandResult,
    build_parser,
    dispatch,
)
from src.ui.display import DisplayService, create_display_service


def show(display: DisplayService, result: CommandResult, as_json: bool) -> None:
    """Render a command result as JSON or as rich tables."""
    if as_json:
        display.emit_json(result.payload)
    elif result.kind == "verdict":
        display.display_verdict(result.title, result.payload)
    elif result.kind == "corpus":
        display.display_corpus(list(result.cases))
    else:
        display.display_payload(result.title, result.payload)


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main application entry point."""
    # Setup logging
    Config.setup_logging()
    logger = logging.getLogger(__name__)

    # Results go to stdout, errors to stderr
    display = create_display_service()
    errors = create_display_service(stderr=True)

    args = build_parser().parse_args(argv)

    try:
        # Validate configuration
        Config.validate()

        result = dispatch(args)

    except ConfigError as e:
        errors.display_error(f"Invalid configuration: {e}")
        sys.exit(EXIT_FAILURE)
    except CorpusError as e:
        errors.display_error(f"Corpus error: {e}")
        sys.exit(EXIT_CORPUS)
    except INPUT_ERRORS as e:
        errors.display_error(f"Invalid input: {e}")
        sys.exit(EXIT_INPUT)
    except Exception as e:
        logger.exception("Unexpected error occurred")
        errors.display_error(f"Unexpected error: {e}")
        sys.exit(EXIT_FAILURE)

    show(display, result, args.json_output)
    if result.exit_code:
        sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
