#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Signal recovery from a pulse train by linear regression.

Every pulse certifies that the leak-weighted integral of the input over
its interval equals p_k theta. Writing the input as a combination of basis
functions turns the constraints into the linear system S a = theta, which
is solved in the least-squares sense.
"""

import json
import logging
import numpy as np
import pandas as pd

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

from scipy import linalg, sparse

from pulsal.core.error import ConfigError, GridMismatchError, \
    PreconditionError
from pulsal.core.utils import ProgressTimer
from pulsal.reconstruction.basis import CubicSplineBasis

logger = logging.getLogger(__name__)

__all__ = ("build_system", "solve_system", "reconstruct", "Reconstructor",
           "ReconstructionResult", "WindowSolution", "sup_error",
           "uniform_grid")

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(8)

# relative rank tolerance of the least-squares solve
RANK_TOLERANCE = 1e-10

# relative weight of the bending penalty of spline reconstructions
SMOOTHING = 1e-6

WindowSolution = namedtuple("WindowSolution", [
    "start", "end", "basis", "coefficients", "residual_norm", "rank",
    "rank_deficient", "constraints"])


def uniform_grid(start, end, rate):
    """Uniform grid start + k / rate covering [start, end]."""
    if not rate > 0:
        raise ConfigError("Grid rate must be positive, got %s" % rate)
    n = int(np.floor((end - start) * rate + 1e-9)) + 1
    return start + np.arange(max(n, 1)) / rate


def _interval_bounds(train, params):
    """Constraint intervals: from the origin, then tau after each pulse."""
    ends = np.asarray(train.seconds, dtype=float)
    starts = np.empty_like(ends)
    if len(ends):
        starts[0] = 0.0
        starts[1:] = ends[:-1] + float(params.tau)
    return starts, ends


def _assemble(starts, ends, polarities, basis, params):
    """
    Gauss-Legendre assembly of the system rows of the given intervals.
    Each interval is split at the basis breakpoints it contains.
    """
    breaks = np.asarray(basis.breakpoints, dtype=float)
    lo = []
    hi = []
    rows = []
    for k, (a, b) in enumerate(zip(starts, ends)):
        inner = breaks[np.searchsorted(breaks, a, side="right"):
                       np.searchsorted(breaks, b, side="left")]
        edges = np.concatenate(([a], inner, [b]))
        lo.append(edges[:-1])
        hi.append(edges[1:])
        rows.append(np.full(len(edges) - 1, k))
    lo = np.concatenate(lo)
    hi = np.concatenate(hi)
    rows = np.concatenate(rows)

    half = (hi - lo) / 2
    nodes = ((lo + hi) / 2)[:, None] + half[:, None] * _NODES[None, :]
    t_ref = ends[rows][:, None]
    weights = half[:, None] * _WEIGHTS[None, :] * \
        np.exp(params.alpha * (nodes - t_ref))

    n_points = nodes.size
    quadrature = sparse.csr_array(
        (weights.ravel(), (np.repeat(rows, len(_NODES)),
                           np.arange(n_points))),
        shape=(len(ends), n_points))
    system = quadrature @ basis.design_matrix(nodes.ravel())
    if sparse.issparse(system):
        system = system.toarray()
    target = params.theta * np.asarray(polarities, dtype=float)
    return np.asarray(system), target


def build_system(train, basis, params):
    """
    Build the regression system of a train.

    S[k, j] is the integral of phi_j(s) e^{alpha (s - t_k)} over the k-th
    constraint interval and target[k] = p_k theta.

    :param train: the pulse train
    :type train: :class:`pulsal.pulse.PulseTrain`
    :param basis: reconstruction basis
    :type basis: :class:`Basis`
    :param params: converter parameters of the train
    :return: tuple (S, target) of dense arrays
    :raises PreconditionError: if the train has no pulse or an interval
    leaves the basis window
    """
    if len(train) < 1:
        raise PreconditionError("Train has no inter-pulse interval")
    starts, ends = _interval_bounds(train, params)
    slack = 1e-12 * max(1.0, basis.end)
    outside = (starts < basis.start - slack) | (ends > basis.end + slack)
    if np.any(outside):
        k = int(np.flatnonzero(outside)[0])
        raise PreconditionError(
            "Interval {} [{}, {}] is outside the basis window [{}, {}]".format(
                k, starts[k], ends[k], basis.start, basis.end))
    return _assemble(starts, ends, train.polarities, basis, params)


def solve_system(system, target, roughness=None, smoothing=SMOOTHING):
    """
    Least-squares solution of system @ a = target.

    Without a roughness operator this is the minimum-norm solution of a
    rank-revealing QR solve. With one, the bending |D a|^2 is added to the
    misfit with weight smoothing * trace(S^T S) / M: basis functions that
    the pulses barely constrain, such as splines inside long silent gaps,
    follow their neighbours instead of absorbing the round-off of the
    solve. Constants and straight lines bend nothing and stay unbiased.
    The reported rank is the numerical rank of the system alone.

    :param system: (N, M) system matrix
    :param target: (N,) right-hand side
    :param roughness: optional (K, M) difference operator
    :param smoothing: relative weight of the bending term
    :return: tuple (coefficients, residual_norm, rank)
    """
    system = np.asarray(system, dtype=float)
    target = np.asarray(target, dtype=float)
    if roughness is None or not len(roughness) or not smoothing > 0:
        coefficients, _, rank, _ = linalg.lstsq(
            system, target, cond=RANK_TOLERANCE, lapack_driver="gelsy")
    else:
        scale = np.sum(system ** 2) / system.shape[1]
        weight = np.sqrt(smoothing * scale) if scale > 0 else 1.0
        stacked = np.vstack((system, weight * np.asarray(roughness)))
        padded = np.concatenate((target, np.zeros(len(roughness))))
        coefficients = linalg.lstsq(stacked, padded, cond=RANK_TOLERANCE,
                                    lapack_driver="gelsy")[0]
        rank = _numerical_rank(system)
    residual = float(np.linalg.norm(system @ coefficients - target))
    return coefficients, residual, int(rank)


def _numerical_rank(system):
    if not system.size:
        return 0
    values = linalg.svdvals(system)
    if not values[0] > 0:
        return 0
    return int(np.sum(values > RANK_TOLERANCE * values[0]))


class ReconstructionResult:
    """
    Recovered signal and solve diagnostics.

    :param times: uniform grid of the reconstruction
    :param samples: reconstructed values on the grid
    :param windows: list of :class:`WindowSolution`
    :param reference: optional reference values on the same grid
    """

    def __init__(self, times, samples, windows, reference=None):
        self.times = np.asarray(times, dtype=float)
        self.samples = np.asarray(samples, dtype=float)
        self.windows = list(windows)

        self.sup_error = None
        """Max absolute error against the reference, if one was given."""

        if reference is not None:
            self.sup_error = sup_error(reference, self.samples)

    @property
    def coefficients(self):
        """Basis coefficients of all the windows, in window order."""
        if not self.windows:
            return np.zeros(0)
        return np.concatenate([w.coefficients for w in self.windows])

    @property
    def residual_norm(self):
        return float(np.sqrt(sum(w.residual_norm ** 2
                                 for w in self.windows)))

    @property
    def rank(self):
        return sum(w.rank for w in self.windows)

    @property
    def rank_deficient(self):
        return any(w.rank_deficient for w in self.windows)

    def diagnostics(self):
        return {
            "residual_norm": self.residual_norm,
            "rank": self.rank,
            "rank_deficient": self.rank_deficient,
            "coefficients": len(self.coefficients),
            "windows": len(self.windows),
            "sup_error": self.sup_error,
            "samples": len(self.samples),
        }

    def to_frame(self):
        return pd.DataFrame({"time": self.times, "value": self.samples})

    def write_csv(self, path):
        """Write the reconstructed samples as time,value rows."""
        self.to_frame().to_csv(path, index=False)

    def write_diagnostics(self, path):
        with open(path, "w") as fd:
            json.dump(self.diagnostics(), fd, indent=2)
            fd.write("\n")

    def __repr__(self):
        return "<ReconstructionResult {} samples, {} windows, rank {}>".format(
            len(self.samples), len(self.windows), self.rank)


class Reconstructor:
    """
    Windowed regression recovery.

    Long trains are split in windows of window_pulses median inter-pulse
    intervals overlapping by half; each window is solved with its own
    cubic spline basis and the window outputs are blended with triangular
    weights. The windows are independent and run on a thread pool.

    :param basis_factor: knot spacing in median inter-pulse intervals
    :param window_pulses: window length in median inter-pulse intervals
    :param workers: number of solver threads
    :param smoothing: relative weight of the spline bending penalty, 0
    gives the plain minimum-norm solve
    """

    def __init__(self, basis_factor=2, window_pulses=1024, workers=1,
                 smoothing=SMOOTHING):
        if not basis_factor > 0:
            raise ConfigError("basis_factor must be positive")
        if int(window_pulses) != window_pulses or window_pulses < 4:
            raise ConfigError("window_pulses must be an integer >= 4")
        if int(workers) != workers or workers < 1:
            raise ConfigError("workers must be an integer >= 1")
        if smoothing < 0:
            raise ConfigError("smoothing must be non-negative")
        self.basis_factor = basis_factor
        self.window_pulses = int(window_pulses)
        self.workers = int(workers)
        self.smoothing = float(smoothing)

    def _solve_window(self, bounds, starts, ends, polarities, spacing,
                      params):
        w_start, w_end = bounds
        basis = CubicSplineBasis(w_start, w_end, spacing)
        inside = (starts >= w_start) & (ends <= w_end)
        if not np.any(inside):
            logger.info("No pulse in window [%g, %g], using the zero signal",
                        w_start, w_end)
            return WindowSolution(w_start, w_end, basis,
                                  np.zeros(basis.count), 0.0, 0, True, 0)
        system, target = _assemble(starts[inside], ends[inside],
                                   polarities[inside], basis, params)
        coefficients, residual, rank = solve_system(
            system, target, basis.roughness(), self.smoothing)
        deficient = rank < basis.count
        if deficient:
            logger.debug("Window [%g, %g] rank %d < %d", w_start, w_end,
                         rank, basis.count)
        return WindowSolution(w_start, w_end, basis, coefficients, residual,
                              rank, deficient, int(np.sum(inside)))

    def windows(self, train, end):
        """Window bounds (start, end) covering [0, end]."""
        times = np.asarray(train.seconds)
        median = float(np.median(np.diff(np.concatenate(([0.0], times)))))
        length = self.window_pulses * median
        if len(times) <= self.window_pulses or length >= end:
            return [(0.0, end)]
        hop = length / 2
        count = int(np.ceil((end - length) / hop)) + 1
        bounds = [(i * hop, min(i * hop + length, end))
                  for i in range(count)]
        return bounds

    def _blend(self, solutions, grid):
        if len(solutions) == 1:
            w = solutions[0]
            return w.basis.evaluate(w.coefficients, grid)
        total = np.zeros_like(grid)
        weight_sum = np.zeros_like(grid)
        last = len(solutions) - 1
        for i, w in enumerate(solutions):
            mask = (grid >= w.start) & (grid <= w.end)
            x = grid[mask]
            center = (w.start + w.end) / 2
            weight = 1 - np.abs(x - center) / ((w.end - w.start) / 2)
            if i == 0:
                weight[x <= center] = 1
            if i == last:
                weight[x >= center] = 1
            weight = np.maximum(weight, 1e-12)
            total[mask] += weight * w.basis.evaluate(w.coefficients, x)
            weight_sum[mask] += weight
        return total / weight_sum

    def run(self, train, params, rate, end=None, reference=None):
        """
        Reconstruct a train on a uniform grid over [0, end].

        :param train: the pulse train
        :param params: converter parameters of the train
        :param rate: sample rate of the output grid (Hz)
        :param end: end of the reconstruction window, defaults to the last
        pulse
        :param reference: optional reference signal, a
        :class:`pulsal.encoder.SignalSource` or values on the output grid
        :return: :class:`ReconstructionResult`
        """
        if end is None:
            end = float(train.last_time)
        grid = uniform_grid(0.0, end, rate)
        ref_values = _reference_values(reference, grid)
        if len(train) == 0 or end <= 0:
            return ReconstructionResult(grid, np.zeros_like(grid), [],
                                        ref_values)
        starts, ends = _interval_bounds(train, params)
        polarities = np.asarray(train.polarities, dtype=float)
        median = float(np.median(ends - np.concatenate(([0.0], ends[:-1]))))
        spacing = min(self.basis_factor * median, end)
        bounds = self.windows(train, end)

        def solve(window):
            return self._solve_window(window, starts, ends, polarities,
                                      spacing, params)

        with ProgressTimer("Reconstruct %d pulses in %d windows" % (
                len(train), len(bounds)), logger):
            if self.workers > 1 and len(bounds) > 1:
                with ThreadPoolExecutor(max_workers=self.workers) as pool:
                    solutions = list(pool.map(solve, bounds))
            else:
                solutions = [solve(b) for b in bounds]
        samples = self._blend(solutions, grid)
        result = ReconstructionResult(grid, samples, solutions, ref_values)
        if result.rank_deficient:
            logger.warning("Rank-deficient reconstruction of %d pulses "
                           "(rank %d of %d)", len(train), result.rank,
                           len(result.coefficients))
        return result


def _reference_values(reference, grid):
    if reference is None:
        return None
    if hasattr(reference, "evaluate"):
        return reference.evaluate(grid)
    return np.asarray(reference, dtype=float)


def reconstruct(train, basis, params, rate, end=None, reference=None,
                reconstructor=None):
    """
    Reconstruct the signal encoded by a pulse train.

    With an explicit basis the whole train is solved at once on the basis
    window, otherwise the default windowed cubic spline recovery of
    :class:`Reconstructor` is used.

    :param train: the pulse train
    :param basis: a :class:`Basis` or None
    :param params: converter parameters of the train
    :param rate: sample rate of the output grid (Hz)
    :param end: end of the output grid, defaults to the basis window end
    or the last pulse
    :param reference: optional reference signal or values for the sup
    error
    :return: :class:`ReconstructionResult`
    """
    if basis is None:
        reconstructor = reconstructor or Reconstructor()
        return reconstructor.run(train, params, rate, end=end,
                                 reference=reference)
    if end is None:
        end = basis.end
    grid = uniform_grid(basis.start, end, rate)
    ref_values = _reference_values(reference, grid)
    if len(train) == 0:
        solution = WindowSolution(basis.start, basis.end, basis,
                                  np.zeros(basis.count), 0.0, 0, True, 0)
        return ReconstructionResult(grid, np.zeros_like(grid), [solution],
                                    ref_values)
    system, target = build_system(train, basis, params)
    coefficients, residual, rank = solve_system(system, target,
                                                basis.roughness())
    deficient = rank < basis.count
    if deficient:
        logger.warning("Rank-deficient system: rank %d for %d basis "
                       "functions and %d constraints", rank, basis.count,
                       len(target))
    solution = WindowSolution(basis.start, basis.end, basis, coefficients,
                              residual, rank, deficient, len(target))
    samples = basis.evaluate(coefficients, grid)
    return ReconstructionResult(grid, samples, [solution], ref_values)


def sup_error(reference, reconstructed):
    """
    Largest absolute difference between two sampled signals.

    :raises GridMismatchError: if the sample arrays differ in shape
    """
    reference = np.asarray(reference, dtype=float)
    reconstructed = np.asarray(reconstructed, dtype=float)
    if reference.shape != reconstructed.shape:
        raise GridMismatchError("Grid mismatch: {} vs {} samples".format(
            reference.shape, reconstructed.shape))
    if reference.size == 0:
        return 0.0
    return float(np.max(np.abs(reference - reconstructed)))
