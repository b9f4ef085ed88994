import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from sumprodlab import FamilySpec, InputError, build_set, generate
from sumprodlab.estimators import ExtremalSetSearch, PowerLawRegressor, SetStatistics
from sumprodlab.validation import check_numset


def test_set_statistics_matrix():
    X = [[1, 2, 3], build_set([1, 2, 4, 8]), {"elements": ["1/2", 1]}]
    est = SetStatistics(statistics=("|A+A|", "E+", "size"))
    out = est.fit_transform(X)
    assert out.shape == (3, 3)
    assert out[0].tolist() == [5, 19, 3]
    assert out[1].tolist() == [10, 28, 4]
    assert list(est.get_feature_names_out()) == ["sumset", "energy", "size"]


def test_set_statistics_exponent_scale():
    out = SetStatistics(statistics=["sumset"], scale="exponent").fit_transform([range(1, 17)])
    assert out[0, 0] == pytest.approx(math.log2(31) / 4)


def test_params_and_clone():
    est = SetStatistics(statistics=("product",), scale="exponent")
    assert est.get_params() == {"statistics": ("product",), "scale": "exponent"}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est
    with pytest.raises(NotFittedError):
        twin.transform([[1, 2]])


def test_bad_inputs():
    with pytest.raises(InputError):
        SetStatistics(statistics=["nope"]).fit([[1, 2]])
    with pytest.raises(InputError):
        SetStatistics().fit([])
    with pytest.raises(InputError):
        check_numset(np.array([0.5, 1.0]))
    with pytest.raises(InputError):
        check_numset([1, 2], allow_zero=False, min_size=3)
    assert check_numset(np.array([3.0, 1.0])) == build_set([1, 3])


def test_power_law_regressor():
    sizes = np.array([64, 128, 256, 512])
    y = [(2 * n**3 + n) // 3 for n in sizes]
    reg = PowerLawRegressor().fit(sizes.reshape(-1, 1), y)
    assert reg.slope_ == pytest.approx(3.0, abs=0.01)
    assert reg.predict([1024])[0] == pytest.approx((2 * 1024**3 + 1024) / 3, rel=0.01)
    assert reg.score(sizes.reshape(-1, 1), y) > 0.999
    with pytest.raises(ValueError):
        PowerLawRegressor().fit([1, 2], [1, -1])


def test_pipeline_of_features():
    sets = [generate(FamilySpec("ap"), n) for n in (16, 32, 64)]
    feats = Pipeline([("stats", SetStatistics(statistics=["sumset"]))]).fit_transform(sets)
    assert feats[:, 0].tolist() == [31, 63, 127]


def test_search_estimator():
    est = ExtremalSetSearch(objective_scale="raw", penalty_weight=0, iterations=20_000, seed=3)
    est.fit()
    assert est.best_score_ == 7
    assert est.score_set([2, 4, 6, 8]) == 7
    assert clone(est).get_params()["seed"] == 3
