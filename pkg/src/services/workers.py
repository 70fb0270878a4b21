"""Optional process pool for embarrassingly parallel evaluations."""

import logging
import multiprocessing
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], workers: int = 1
) -> list[R]:
    """Map func over items, in input order, on up to ``workers`` processes."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    processes = min(workers, len(items))
    logger.debug(f"Evaluating {len(items)} items on {processes} processes")
    with multiprocessing.Pool(processes=processes) as pool:
        return pool.map(func, items)
