from dataclasses import dataclass, field

import numpy as np

from modules.utils import DomainError


@dataclass(frozen=True)
class SamplePath:
    """One simulated renewal trajectory.

    Attributes:
        event_times (numpy.ndarray): Arrival epochs T_1 < T_2 < ...
        horizon (float | None): Time the run was stopped at, if it was
            stopped by time; every event then lies in (0, horizon].
        max_events (int | None): Event cap, if the run was stopped by count.
        stream (dict): Metadata of the random stream that produced the path.
    """

    event_times: np.ndarray
    horizon: float | None = None
    max_events: int | None = None
    stream: dict = field(default_factory=dict)

    def __post_init__(self):
        times = np.asarray(self.event_times, dtype=float)
        if times.ndim != 1:
            raise DomainError("event_times must be one-dimensional")
        if times.size and (times[0] <= 0.0 or np.any(np.diff(times) <= 0.0)):
            raise DomainError("event_times must be positive and strictly increasing")
        object.__setattr__(self, "event_times", times)

    def __len__(self):
        return self.event_times.size

    def count(self, t):
        """N(t) = #{m : T_m <= t}, right-continuous with N(0) = 0.

        Args:
            t (float | array_like): Time(s), >= 0.

        Returns:
            int | numpy.ndarray: The count(s).
        """
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0.0):
            raise DomainError("t must be nonnegative")
        if self.horizon is not None and np.any(t_arr > self.horizon):
            raise DomainError(f"the path is only known up to its horizon {self.horizon:g}")
        counts = np.searchsorted(self.event_times, t_arr, side="right")
        return int(counts) if counts.ndim == 0 else counts

    def inter_event_times(self):
        """Waiting times T_1, T_2 - T_1, ... between consecutive events."""
        return np.diff(self.event_times, prepend=0.0)
