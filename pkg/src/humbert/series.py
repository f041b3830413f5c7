"""Term-sequence summation shared by the single and double series evaluators."""

from __future__ import annotations

from typing import Callable, Iterator

import mpmath as mp

from .errors import NoConvergence

_GUARD_BITS = 24
_MAX_PREC = 40_000


def accumulate(terms: Iterator, tol, max_terms: int, ratio_floor=0):
    """Sum an iterator of terms with the three-small-terms plus geometric-tail rule.

    ``ratio_floor`` is a lower bound for the asymptotic term ratio used in the
    tail estimate (|x| for a power series in x).  Returns
    ``(sum, tail_bound, terms_used, max_abs_term)``.
    """
    s = mp.mpf(0)
    maxabs = mp.mpf(0)
    prev = None
    small = 0
    n = 0
    eps = mp.mp.eps
    for t in terms:
        n += 1
        s += t
        at = abs(t)
        if at > maxabs:
            maxabs = at
        scale = max(abs(s), eps * maxabs)
        if n > 1 and at <= tol * scale:
            small += 1
        else:
            small = 0
        if small >= 3:
            r = ratio_floor
            if prev is not None and prev != 0:
                r = max(r, at / prev)
            if r < 1:
                tail = at * r / (1 - r)
                if tail <= tol * scale:
                    return s, tail, n, maxabs
        if at == 0 and prev == 0:
            # two exact zeros from a ratio recurrence: the series has terminated
            return s, mp.mpf(0), n, maxabs
        prev = at
        if n >= max_terms:
            break
    else:
        return s, mp.mpf(0), n, maxabs
    raise NoConvergence(f"series not converged after {max_terms} terms")


def escalating(compute: Callable, target_prec: int | None = None):
    """Run ``compute(loss)`` with guard bits, re-running at higher precision on cancellation.

    ``compute`` returns ``(value, abs_err, terms, max_abs_term)`` at the ambient
    precision.  ``loss`` is the number of bits the previous pass lost to
    cancellation (0 on the first pass); sums nested inside the computation
    must tighten their own truncation by ``2**-loss`` since their errors are
    measured against the final, smaller value.  The result is
    ``(value, abs_err, terms)`` with the rounding floor added to the error.
    """
    if target_prec is None:
        target_prec = mp.mp.prec
    prec = target_prec + _GUARD_BITS
    loss = 0
    while True:
        with mp.workprec(prec):
            val, err, n, maxabs = compute(loss)
            mag = abs(val)
            if mag == 0:
                lost = prec if maxabs != 0 else 0
            else:
                lost = max(0, int(mp.log(maxabs / mag, 2)) + 1) if maxabs > mag else 0
            rounding = maxabs * mp.mpf(2) ** (-prec + 6)
        if (lost <= loss + 4 and lost + target_prec + 8 <= prec) or prec >= _MAX_PREC:
            break
        loss = max(lost, loss + 8)
        prec = min(_MAX_PREC, target_prec + loss + _GUARD_BITS)
    return val, err + rounding, n


def double_sum(row_start, row_ratio: Callable, inner_ratio: Callable, tol, max_terms: int,
               outer_floor=0, inner_floor=0):
    """Sum t[m, n] over m, n >= 0 given ratio recurrences.

    ``row_start`` is t[0, 0], t[m+1, 0] = t[m, 0] * row_ratio(m), t[m, n+1] = t[m, n] * inner_ratio(m, n).
    Returns ``(value, abs_err, terms_used, max_abs_term)``.
    """
    budget = [0]
    inner_max = [mp.mpf(0)]
    inner_err = [mp.mpf(0)]

    def row(m, lead):
        def gen():
            t = lead
            n = 0
            while True:
                yield t
                if t == 0:
                    while True:
                        yield t
                t = t * inner_ratio(m, n)
                n += 1

        if lead == 0:
            return mp.mpf(0)
        s, tail, n, mx = accumulate(gen(), tol, max_terms, inner_floor)
        budget[0] += n
        inner_err[0] += tail
        if mx > inner_max[0]:
            inner_max[0] = mx
        if budget[0] > 50 * max_terms:
            raise NoConvergence("double series exceeded its term budget")
        return s

    def rows():
        lead = row_start
        m = 0
        while True:
            yield row(m, lead)
            lead = lead * row_ratio(m)
            m += 1

    s, tail, n, mx = accumulate(rows(), tol, max_terms, outer_floor)
    return s, tail + inner_err[0], budget[0], max(mx, inner_max[0])
