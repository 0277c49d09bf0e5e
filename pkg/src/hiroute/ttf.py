"""Periodic piecewise-linear travel time functions and live/predicted blending."""

from __future__ import annotations

from bisect import bisect_right

PERIOD_MS = 86_400_000  # one day

DEFAULT_TAU_SOON_MS = 3_600_000  # switch to predictions one hour out


class FifoViolationError(ValueError):
    """A travel time function would let a later departure arrive earlier."""


class TravelTimeFunction:
    """Maps edge entry time (ms of day, periodic) to traversal time (ms).

    Breakpoint times are strictly increasing within [0, PERIOD_MS);
    evaluation interpolates linearly, wrapping across midnight. All
    evaluations floor to integer milliseconds, which preserves the FIFO
    property for integer arguments.
    """

    __slots__ = ("times", "values")

    def __init__(self, times: list[int], values: list[int], *, validate: bool = True):
        if not times or len(times) != len(values):
            raise ValueError("need matching, non-empty breakpoint arrays")
        self.times = list(times)
        self.values = list(values)
        if validate:
            self.validate()

    @classmethod
    def constant(cls, w: int) -> "TravelTimeFunction":
        return cls([0], [w], validate=False)

    def validate(self):
        ts, vs = self.times, self.values
        prev = -1
        for t, v in zip(ts, vs):
            if not (0 <= t < PERIOD_MS):
                raise ValueError(f"breakpoint time {t} outside [0, {PERIOD_MS})")
            if t <= prev:
                raise ValueError(f"breakpoint times not strictly increasing at {t}")
            if v < 0:
                raise ValueError(f"negative travel time {v}")
            prev = t
        # FIFO holds for a periodic PWL function iff every segment,
        # including the wrap-around one, has slope >= -1.
        k = len(ts)
        for i in range(k):
            t0, v0 = ts[i], vs[i]
            if i + 1 < k:
                t1, v1 = ts[i + 1], vs[i + 1]
            else:
                t1, v1 = ts[0] + PERIOD_MS, vs[0]
            if v1 - v0 < -(t1 - t0):
                raise FifoViolationError(
                    f"segment starting at t={t0} has slope below -1"
                )

    def eval(self, tau: int) -> int:
        ts, vs = self.times, self.values
        if len(ts) == 1:
            return vs[0]
        tm = tau % PERIOD_MS
        i = bisect_right(ts, tm) - 1
        if i < 0:  # before the first breakpoint: wrap segment from the last
            t0, v0 = ts[-1] - PERIOD_MS, vs[-1]
            t1, v1 = ts[0], vs[0]
        elif i + 1 < len(ts):
            t0, v0 = ts[i], vs[i]
            t1, v1 = ts[i + 1], vs[i + 1]
        else:
            t0, v0 = ts[-1], vs[-1]
            t1, v1 = ts[0] + PERIOD_MS, vs[0]
        return v0 + (v1 - v0) * (tm - t0) // (t1 - t0)

    def minimum(self) -> int:
        """Minimum over the whole period; attained at a breakpoint."""
        return min(self.values)

    def is_constant(self) -> bool:
        return len(self.values) == 1 or min(self.values) == max(self.values)


def blend_live_predicted(
    w_c: int, w_p: TravelTimeFunction, tau_soon: int, tau: int
) -> int:
    """Travel time blending a live snapshot into a prediction.

    Up to ``tau_soon`` the live value applies; afterwards the result
    converges to the prediction with unit slope, which keeps the blended
    function FIFO. ``tau`` and ``tau_soon`` are absolute times sharing
    the query's departure epoch.
    """
    if tau <= tau_soon:
        return w_c
    if w_p.eval(tau_soon) < w_c:
        return max(w_c + (tau_soon - tau), w_p.eval(tau))
    return min(w_c - (tau_soon - tau), w_p.eval(tau))
