"""Wall-clock caps for long enumerations.

A cap is installed with :func:`deadline` and polled from hot loops with
:func:`check_budget`. Operations never truncate their output when the cap is hit;
they raise :class:`~pgl.errors.BudgetExceeded` instead.
"""

import contextlib
import contextvars
import logging
import time
from typing import Iterator

from pgl.errors import BudgetExceeded

logger = logging.getLogger(__name__)

_deadline: contextvars.ContextVar[tuple[float, int] | None] = contextvars.ContextVar(
    "pgl_deadline", default=None
)


@contextlib.contextmanager
def deadline(budget_ms: int | None) -> Iterator[None]:
    """Install a wall-clock budget for the enclosed block.

    :param budget_ms: Budget in milliseconds, ``None`` for no cap.
    :type budget_ms: int | None
    """
    if budget_ms is None:
        yield
        return
    token = _deadline.set((time.monotonic() + budget_ms / 1000.0, budget_ms))
    try:
        yield
    finally:
        _deadline.reset(token)


def check_budget() -> None:
    """Raise :class:`BudgetExceeded` if the installed deadline has passed."""
    current = _deadline.get()
    if current is None:
        return
    until, budget_ms = current
    now = time.monotonic()
    if now > until:
        elapsed = int(budget_ms + (now - until) * 1000)
        logger.warning("time budget of %d ms exhausted", budget_ms)
        raise BudgetExceeded("budget-ms", budget_ms, elapsed)


def require(cap: str, limit: int, requested: int) -> None:
    """Refuse up front when a size cap would be violated.

    :param cap: Name of the cap, reported back to the user.
    :param limit: The largest admissible size.
    :param requested: The size the caller asks for.
    :raises BudgetExceeded: If ``requested > limit``.
    """
    if requested > limit:
        raise BudgetExceeded(cap, limit, requested)
