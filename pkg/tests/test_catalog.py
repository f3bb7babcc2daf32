import json

import numpy as np
import pytest

from agewise import (
    ParameterError,
    PreconditionError,
    SupportError,
    UnknownNameError,
    catalog_hazard,
    catalog_model,
    catalog_names,
    catalog_reference,
    classify_shape,
    expected_shapes,
)
from agewise.catalog import audit_nonnegativity, write_reference_docs

# printed forms that are negative for some in-range parameters
KNOWN_NEGATIVE = {"bakouch-extended-lindley", "log-gl-weibull", "x-exponential"}


def test_names_partition():
    with_formula = set(catalog_names(True))
    without = set(catalog_names(False))
    assert with_formula and without
    assert not with_formula & without
    assert set(catalog_names()) == with_formula | without


@pytest.mark.parametrize("name", catalog_names(True))
def test_nonnegativity_audit(name):
    result = audit_nonnegativity(name)
    assert result.ok == (name not in KNOWN_NEGATIVE)


def test_corrected_log_gl_weibull_is_nonnegative():
    assert audit_nonnegativity("log-gl-weibull", variant="corrected").ok


def test_reference_record_is_json_ready():
    rec = catalog_reference("dus-lomax")
    assert rec["params"] == ["alpha", "beta"]
    assert rec["source"]
    assert set(rec["expected_shapes"]) == set(expected_shapes("dus-lomax"))
    json.dumps(rec)


def test_no_formula_entry_is_flagged():
    name = catalog_names(False)[0]
    assert catalog_reference(name)["flags"] == ["no-formula"]
    with pytest.raises(UnknownNameError):
        catalog_hazard(name, {}, 1.0)


def test_dus_exponential_closed_form():
    t = np.linspace(0.01, 5.0, 20)
    expected = 2.0 * np.exp(-2.0 * t) / (np.exp(np.exp(-2.0 * t)) - 1.0)
    np.testing.assert_allclose(catalog_hazard("dus-exponential", {"theta": 2.0}, t), expected, rtol=1e-10)


def test_parameter_errors_name_the_parameter():
    with pytest.raises(ParameterError) as info:
        catalog_hazard("dus-lomax", {"alpha": 1.0}, 1.0)
    assert info.value.name == "beta"
    with pytest.raises(ParameterError):
        catalog_hazard("dus-lomax", {"alpha": 1.0, "beta": 1.0, "gamma": 2.0}, 1.0)
    with pytest.raises(ParameterError):
        catalog_hazard("dus-lomax", {"alpha": -1.0, "beta": 1.0}, 1.0)


def test_unknown_name_and_variant():
    with pytest.raises(UnknownNameError):
        catalog_hazard("no-such-entry", {}, 1.0)
    with pytest.raises(UnknownNameError):
        catalog_hazard("dus-lomax", {"alpha": 1.0, "beta": 1.0}, 1.0, variant="bogus")


def test_domain_check():
    with pytest.raises(SupportError):
        catalog_hazard("dus-lomax", {"alpha": 1.0, "beta": 1.0}, -1.0)


def test_catalog_model_integrates_the_rate():
    m = catalog_model("dus-exponential", {"theta": 1.0})
    from agewise import Exponential, dus

    x = np.array([0.1, 1.0, 3.0])
    np.testing.assert_allclose(m.sf(x), dus(Exponential(1.0)).sf(x), rtol=1e-9)


@pytest.mark.parametrize("name,params", [
    ("dus-lomax", {"alpha": 0.5, "beta": 1.0}),
    ("dus-lomax", {"alpha": 3.0, "beta": 1.0}),
])
def test_shapes_within_expected_set(name, params):
    assert classify_shape(catalog_model(name, params)).label in expected_shapes(name)


def test_inverse_weibull_printed_form_is_not_a_lifetime_law():
    # the printed rate integrates to a finite cumulative hazard
    params = {"alpha": 2.0, "beta": 1.0}
    with pytest.raises(PreconditionError):
        catalog_model("dus-inverse-weibull", params)
    m = catalog_model("dus-inverse-weibull", params, variant="corrected")
    assert classify_shape(m).label in expected_shapes("dus-inverse-weibull")


def test_write_reference_docs(tmp_path):
    paths = write_reference_docs(tmp_path)
    assert len(paths) == len(catalog_names()) + 1
    assert (tmp_path / "index.md").exists()
    assert all(p.exists() for p in paths)
