"""
Order-preserving parallel map for independent instances
"""
import logging
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)


def ordered_map(fn, items, threads=1):
    """
    Apply fn to every item, returning results in input order

    Args:
        fn: Callable of one argument
        items: Iterable of inputs
        threads: Worker count; 1 runs inline

    Returns:
        List of results
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    logger.debug(f"Mapping {len(items)} items over {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, items))
