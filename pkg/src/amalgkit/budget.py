"""Iteration guardrail for exhaustive checks.

Every exhaustive sweep estimates its primitive loop count up front and is
refused when the estimate exceeds the active budget. Pass ``budget=math.inf``
(or use :func:`budget_limit`) to force a run.
"""
import math
from contextlib import contextmanager

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**8

_active = DEFAULT_BUDGET


def get_budget():
    return _active


def set_budget(value):
    global _active
    _active = math.inf if value is None else value


@contextmanager
def budget_limit(value):
    """Temporarily replace the active budget (``None`` means unlimited)."""
    global _active
    saved = _active
    set_budget(value)
    try:
        yield
    finally:
        _active = saved


def charge(loops, budget=None, what=""):
    """Raise BudgetExceeded if ``loops`` is over budget; return ``loops``."""
    limit = _active if budget is None else budget
    if loops > limit:
        raise BudgetExceeded(int(loops), limit, what)
    return int(loops)
