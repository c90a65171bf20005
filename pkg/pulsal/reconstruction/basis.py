#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

import logging
import numpy as np

from scipy.interpolate import BSpline

from pulsal.core.error import ConfigError

logger = logging.getLogger(__name__)

__all__ = ("Basis", "CubicSplineBasis", "FunctionBasis")


class Basis:
    """
    Finite set of functions phi_j spanning signals on [start, end].

    :param start: window start (s)
    :param end: window end (s)
    """

    def __init__(self, start, end):
        start = float(start)
        end = float(end)
        if not end > start:
            raise ConfigError("Empty basis window [{}, {}]".format(start, end))
        self.start = start
        self.end = end

    @property
    def count(self):
        """Number M of basis functions."""
        raise NotImplementedError("Abstract method")

    @property
    def breakpoints(self):
        """
        Points inside the window where the basis functions lose
        smoothness, quadrature panels are split there.
        """
        return np.empty(0)

    def roughness(self):
        """
        Difference operator D whose norm |D a| measures the bending of
        the expansion with coefficients a, or None when the basis has no
        natural smoothness penalty.
        """
        return None

    def design_matrix(self, x):
        """
        Values of every basis function at the points x.

        :return: (len(x), M) dense array or sparse matrix
        """
        raise NotImplementedError("Abstract method")

    def evaluate(self, coefficients, x):
        """Evaluate sum_j a_j phi_j at the points x."""
        x = np.asarray(x, dtype=float)
        if len(coefficients) != self.count:
            raise ConfigError("Expected {} coefficients, got {}".format(
                self.count, len(coefficients)))
        return np.asarray(self.design_matrix(x) @ coefficients).ravel()


class CubicSplineBasis(Basis):
    """
    Uniform cubic B-splines.

    The knot spacing is adjusted so that a whole number n of spans covers
    the window, with three extra knots on each side: M = n + 3 splines,
    all of them non-zero inside the window.

    :param spacing: requested knot spacing (s)
    """

    degree = 3

    def __init__(self, start, end, spacing):
        super().__init__(start, end)
        if not spacing > 0:
            raise ConfigError("Knot spacing must be positive")
        spans = max(1, int(round((self.end - self.start) / spacing)))
        self.spacing = (self.end - self.start) / spans
        """Knot spacing after adjustment to the window."""

        k = self.degree
        self.knots = self.start + self.spacing * np.arange(-k, spans + k + 1)
        self.knots[k] = self.start
        self.knots[-k - 1] = self.end

    @classmethod
    def for_train(cls, train, start, end, factor=2):
        """
        Default basis of a train: knot spacing is factor times the median
        inter-pulse interval, at most the window length.
        """
        times = np.asarray(train.seconds)
        times = times[(times > start) & (times <= end)]
        if len(times) > 1:
            spacing = factor * float(np.median(np.diff(times)))
        elif len(times) == 1:
            spacing = factor * (times[0] - start)
        else:
            spacing = end - start
        spacing = min(spacing, end - start) if spacing > 0 else end - start
        return cls(start, end, spacing)

    @property
    def count(self):
        return len(self.knots) - self.degree - 1

    @property
    def breakpoints(self):
        k = self.degree
        return self.knots[k + 1:-k - 1]

    def roughness(self):
        # second differences of the coefficients of uniform splines
        return np.diff(np.eye(self.count), 2, axis=0)

    def design_matrix(self, x):
        x = np.clip(np.asarray(x, dtype=float), self.start, self.end)
        return BSpline.design_matrix(x, self.knots, self.degree)

    def __repr__(self):
        return "<CubicSplineBasis [{}, {}] spacing={} M={}>".format(
            self.start, self.end, self.spacing, self.count)


class FunctionBasis(Basis):
    """
    Basis made of arbitrary vectorized callables.

    :param functions: list of callables phi_j(x)
    """

    def __init__(self, functions, start, end):
        super().__init__(start, end)
        self.functions = list(functions)
        if not self.functions:
            raise ConfigError("Empty function basis")

    @property
    def count(self):
        return len(self.functions)

    def design_matrix(self, x):
        x = np.asarray(x, dtype=float)
        columns = [np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
                   for f in self.functions]
        return np.column_stack(columns)

    def __repr__(self):
        return "<FunctionBasis [{}, {}] M={}>".format(self.start, self.end,
                                                      self.count)
