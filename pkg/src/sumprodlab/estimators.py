"""scikit-learn compatible wrappers.

These let the lab's pieces sit inside ordinary sklearn tooling
(``Pipeline``, ``clone``, ``get_params``/``set_params``):

* :class:`SetStatistics` turns a collection of sets into a feature matrix of
  registered statistics;
* :class:`PowerLawRegressor` fits ``value ~ C * n**slope`` in log2-log2 space;
* :class:`ExtremalSetSearch` runs the annealing search from ``fit``.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import statistics
from .harness import _log2, loglog_fit
from .search import SearchConfig, score, search_extremal
from .validation import check_collection


class SetStatistics(TransformerMixin, BaseEstimator):
    """Map each input set to a row of statistic values.

    Parameters
    ----------
    statistics : sequence of str
        Registered statistic names or aliases.
    scale : {"raw", "exponent"}
        ``"exponent"`` reports ``log2(value) / log2(|A|)``.
    """

    def __init__(self, statistics=("sumset", "product"), scale="raw"):
        self.statistics = statistics
        self.scale = scale

    def fit(self, X, y=None):
        self.names_ = [statistics.resolve(s).name for s in self.statistics]
        if self.scale not in ("raw", "exponent"):
            raise ValueError("scale must be 'raw' or 'exponent'")
        check_collection(X)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "names_")
        sets = check_collection(X, min_size=2 if self.scale == "exponent" else 1)
        out = np.empty((len(sets), len(self.names_)), dtype=float)
        for i, A in enumerate(sets):
            d = statistics.Derived(A)
            for j, name in enumerate(self.names_):
                v = statistics.compute(name, A, cache=d)
                out[i, j] = float(v) if self.scale == "raw" else _log2(v) / math.log2(len(A))
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "names_")
        return np.array(self.names_, dtype=object)


class PowerLawRegressor(RegressorMixin, BaseEstimator):
    """Least-squares power law through ``(log2 n, log2 value)``.

    ``fit(X, y)`` takes sizes ``X`` (shape ``(m,)`` or ``(m, 1)``) and positive
    values ``y``.  Fitted attributes: ``slope_``, ``intercept_`` (log2 scale)
    and ``r_squared_``.
    """

    def fit(self, X, y):
        n = np.asarray(X, dtype=float).reshape(-1)
        y = list(y)
        if n.size != len(y):
            raise ValueError("X and y have different lengths")
        if n.size < 2:
            raise ValueError("need at least two points")
        if np.any(n <= 0) or any(v <= 0 for v in y):
            raise ValueError("sizes and values must be positive")
        self.slope_, self.intercept_, self.r_squared_ = loglog_fit(n.tolist(), y)
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "slope_")
        n = np.asarray(X, dtype=float).reshape(-1)
        return 2.0 ** (self.intercept_ + self.slope_ * np.log2(n))


class ExtremalSetSearch(BaseEstimator):
    """Annealing search as an estimator; ``fit()`` ignores ``X``.

    After fitting: ``best_set_``, ``best_score_``, ``trace_`` and ``result_``.
    Parameters mirror :class:`~sumprodlab.search.SearchConfig`.
    """

    def __init__(self, n=4, universe_bound=10, objective="sumset", objective_scale="exponent",
                 constraint=None, penalty_weight=10.0, iterations=10_000,
                 initial_temperature=1.0, cooling=0.999, seed=0):
        self.n = n
        self.universe_bound = universe_bound
        self.objective = objective
        self.objective_scale = objective_scale
        self.constraint = constraint
        self.penalty_weight = penalty_weight
        self.iterations = iterations
        self.initial_temperature = initial_temperature
        self.cooling = cooling
        self.seed = seed

    def _config(self) -> SearchConfig:
        return SearchConfig(**self.get_params())

    def fit(self, X=None, y=None):
        result = search_extremal(self._config())
        self.result_ = result
        self.best_set_ = result.best_set
        self.best_score_ = result.best_score
        self.trace_ = result.trace
        return self

    def score_set(self, A):
        """Search objective of an arbitrary candidate set (lower is better)."""
        return score(check_collection([A])[0], self._config())
