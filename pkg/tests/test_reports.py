import csv
import io
import json
import sys
from fractions import Fraction

from ramexp.classifier import classify
from ramexp.coefficients import CoefficientSpec, odd_cubes_two_ones
from ramexp.expansions import direct_partial_sum, factored_eval, infinite_euler_product_eval
from ramexp.reports import dumps, loads, record, to_csv


def test_exact_round_trip_with_huge_denominators():
    r = factored_eval(CoefficientSpec.power(2), {2, 3}, 6, 10_000, mode="exact")
    before = sys.get_int_max_str_digits() if hasattr(sys, "get_int_max_str_digits") else None
    back = loads(dumps(record(r, CoefficientSpec.power(2))))
    if before is not None:
        assert sys.get_int_max_str_digits() == before
    rep = back["report"]
    assert rep["direct_truncated"] == r.direct_truncated
    assert rep["product"] == r.product
    assert rep["difference"] == r.difference
    assert rep["within_bound"] is True
    assert back["kind"] == "FactorizationResult" and len(back["spec_digest"]) == 16


def test_float_round_trip_is_bitwise():
    s = direct_partial_sum(CoefficientSpec.power(2), 1, 100_000, [10, 1000])
    back = loads(dumps(s))
    assert [tuple(x) for x in back["checkpoints"]] == s.checkpoints


def test_rationals_always_have_denominator():
    text = dumps({"x": Fraction(3), "y": Fraction(-1, 2)})
    assert json.loads(text) == {"x": "3/1", "y": "-1/2"}


def test_csv_tables():
    s = direct_partial_sum(CoefficientSpec.power(2), 1, 1000, [10, 100])
    rows = list(csv.reader(io.StringIO(to_csv(s))))
    assert rows[0] == ["Q", "value"] and [r[0] for r in rows[1:]] == ["10", "100", "1000"]
    t = infinite_euler_product_eval(CoefficientSpec.power(2), 1, 30, mode="float")
    rows = list(csv.reader(io.StringIO(to_csv(t))))
    assert rows[0] == ["p", "partial_product"] and len(rows) == 11
    c = classify(odd_cubes_two_ones())
    assert to_csv(c).startswith("description,Q,value")


def test_classification_json_has_sets_as_lists():
    rec = loads(dumps(record(classify(odd_cubes_two_ones()), odd_cubes_two_ones())))
    assert rec["report"]["fixed_points"]["F0_of_G"] == [2]
    assert rec["spec"] == {"family": "power", "s": 3, "overrides": [{"p": 2, "mode": "all_ones"}]}
