from abc import ABC, abstractmethod

import numpy as np

from modules.dist import GenIIParams, GenIParams, RngStream, genml_sample, ssml_sample
from modules.utils import DomainError, get_logger

from .path import SamplePath

logger = get_logger("process")


def separate_ties(times):
    """Lift arrival epochs that rounding merged with their predecessor, or with 0.

    A waiting time below half an ulp of the elapsed time vanishes in the
    cumulative sum; each such epoch is moved up to the next representable
    float, which keeps the epochs strictly increasing.

    Args:
        times (numpy.ndarray): Nondecreasing epochs, modified in place.

    Returns:
        numpy.ndarray: The same array.
    """
    previous = np.concatenate(([0.0], times[:-1]))
    ties = np.flatnonzero(times <= previous)
    while ties.size:
        times[ties] = np.nextafter(previous[ties], np.inf)
        previous = np.concatenate(([0.0], times[:-1]))
        ties = np.flatnonzero(times <= previous)
    return times


class RenewalProcess(ABC):
    """Abstract base class for a renewal counting process.

    A renewal process adds one event after every i.i.d. waiting time. Concrete
    processes only say how waiting times are drawn; the run loop, the stop
    rules and the bookkeeping live here.

    Attributes:
        params: Waiting-time parameters of the concrete process.
        block (int): Waiting times drawn per vectorised step.
    """

    def __init__(self, params, block=256):
        """Initializes a RenewalProcess.

        Args:
            params: Waiting-time parameters.
            block (int, optional): Initial number of waiting times drawn per
                step; doubled while a horizon run is still short of its end.
        """
        self.params = params
        self.block = int(block)

    @abstractmethod
    def waiting_times(self, rng, size):
        """Draw ``size`` i.i.d. waiting times.

        Args:
            rng (RngStream): Random stream.
            size (int): Number of draws.

        Raises:
            NotImplementedError: This method must be implemented by a subclass.
        """
        raise NotImplementedError("Waiting-time sampler not implemented.")

    def run(self, rng, horizon=None, max_events=None):
        """Run the process until the horizon is passed or max_events occurred.

        Args:
            rng (RngStream): Random stream owned by this run.
            horizon (float, optional): Stop time t_max.
            max_events (int, optional): Number of events m.

        Returns:
            SamplePath: The simulated trajectory.

        Raises:
            DomainError: Unless exactly one stop rule is positive.
        """
        if (horizon is None) == (max_events is None):
            raise DomainError("give exactly one of horizon and max_events")

        if max_events is not None:
            if int(max_events) != max_events or max_events < 1:
                raise DomainError(f"max_events must be a positive integer, got {max_events!r}")
            times = separate_ties(np.cumsum(self.waiting_times(rng, int(max_events))))
            return SamplePath(times, max_events=int(max_events), stream=rng.metadata())

        horizon = float(horizon)
        if not horizon > 0.0:
            raise DomainError(f"horizon must be positive, got {horizon}")
        chunks, elapsed, size = [], 0.0, self.block
        while elapsed <= horizon:
            times = elapsed + np.cumsum(self.waiting_times(rng, size))
            chunks.append(times)
            elapsed = times[-1]
            size *= 2
        times = separate_ties(np.concatenate(chunks))
        times = times[times <= horizon]
        logger.debug("renewal run to t=%g: %d events", horizon, times.size)
        return SamplePath(times, horizon=horizon, stream=rng.metadata())

    def counts_at(self, rng, t, n_paths):
        """N(t) for ``n_paths`` independent runs sharing one stream.

        All runs advance together, so the cost is one vectorised draw per
        event of the longest run.

        Args:
            rng (RngStream): Random stream.
            t (float): Observation time, >= 0.
            n_paths (int): Number of runs.

        Returns:
            numpy.ndarray: Integer counts.
        """
        if n_paths < 1:
            raise DomainError(f"n_paths must be at least 1, got {n_paths}")
        counts = np.zeros(n_paths, dtype=np.int64)
        elapsed = np.zeros(n_paths)
        active = np.arange(n_paths)
        while active.size:
            elapsed[active] += self.waiting_times(rng, active.size)
            arrived = elapsed[active] <= t
            counts[active[arrived]] += 1
            active = active[arrived]
        return counts


class GenIRenewal(RenewalProcess):
    """Renewal process with generalized Mittag-Leffler waiting times."""

    def waiting_times(self, rng, size):
        return genml_sample(self.params, rng, size)


class GenIIRenewal(RenewalProcess):
    """Renewal process with stretched-squashed Mittag-Leffler waiting times."""

    def waiting_times(self, rng, size):
        return ssml_sample(self.params, rng, size)


def renewal_for(model):
    """The renewal process driven by ``model`` (GenIParams or GenIIParams)."""
    if isinstance(model, GenIParams):
        return GenIRenewal(model)
    if isinstance(model, GenIIParams):
        return GenIIRenewal(model)
    raise DomainError(f"unknown waiting-time model {type(model).__name__}")


def simulate_path(model, rng, horizon=None, max_events=None):
    """Simulate one renewal path of ``model``.

    Args:
        model (GenIParams | GenIIParams): Waiting-time law.
        rng (RngStream): Random stream.
        horizon (float, optional): Stop time.
        max_events (int, optional): Event count.

    Returns:
        SamplePath: The trajectory.
    """
    return renewal_for(model).run(rng, horizon=horizon, max_events=max_events)


def simulate_paths(model, n_paths, seed, horizon=None, max_events=None):
    """Simulate independent paths, path i on the stream (seed, i).

    The result does not depend on how the paths are later split across
    workers.

    Returns:
        list[SamplePath]: The trajectories in path order.
    """
    process = renewal_for(model)
    return [
        process.run(RngStream(seed, i), horizon=horizon, max_events=max_events)
        for i in range(int(n_paths))
    ]
