"""Exact integer boundary search for monotone predicates."""

from __future__ import annotations

from typing import Callable


def first_true(pred: Callable[[int], bool], guess: int) -> int:
    """Least n with pred(n), for pred monotone False...True.

    The guess only affects speed: the search gallops away from it until
    the boundary is bracketed, then bisects.
    """
    step = 1
    if pred(guess):
        hi, lo = guess, guess - 1
        while pred(lo):
            hi = lo
            lo = hi - step
            step *= 2
    else:
        lo, hi = guess, guess + 1
        while not pred(hi):
            lo = hi
            hi = lo + step
            step *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def last_true(pred: Callable[[int], bool], guess: int) -> int:
    """Greatest n with pred(n), for pred monotone True...False."""
    return -first_true(lambda m: pred(-m), -guess)
