import json

import numpy as np
import pytest

from puregauss import statefile
from puregauss.errors import StateFileError
from puregauss.states import (
    make_bisymmetric_three_mode,
    make_random_pure,
    make_schmidt_state,
    make_two_mode_squeezed,
    make_vacuum,
)

FACTORIES = [
    lambda: make_vacuum(2),
    lambda: make_two_mode_squeezed(1.0),
    lambda: make_schmidt_state(2.7, 4),
    lambda: make_bisymmetric_three_mode(0.3),
    lambda: make_random_pure(5, 9),
]


@pytest.mark.parametrize("factory", FACTORIES)
def test_round_trip_is_exact(factory, tmp_path):
    cm = factory()
    path = tmp_path / "state.json"
    statefile.write_state(path, cm)
    back = statefile.read_state(path)
    assert back.n_modes == cm.n_modes
    np.testing.assert_array_equal(back.matrix, cm.matrix)


def test_writer_uses_seventeen_digits():
    doc = json.loads(statefile.dumps(make_vacuum(1)))
    assert doc["ordering"] == "xpxp"
    text = statefile.dumps(make_two_mode_squeezed(0.4))
    entry = text.split("[\n    [")[1].split(",")[0]
    mantissa = entry.split("e")[0].replace("-", "").replace(".", "")
    assert len(mantissa) == 17


def _doc(**overrides):
    doc = {"n_modes": 1, "ordering": "xpxp", "matrix": [[1.0, 0.0], [0.0, 1.0]]}
    doc.update(overrides)
    return json.dumps(doc)


@pytest.mark.parametrize(
    "text, field",
    [
        ("not json", "document"),
        ("[1, 2]", "document"),
        (_doc(ordering="xxpp"), "ordering"),
        (_doc(n_modes=0), "n_modes"),
        (_doc(n_modes=True), "n_modes"),
        (_doc(n_modes=2), "matrix"),
        (_doc(matrix=[[1.0, 0.0], [0.0]]), "matrix"),
        (_doc(matrix=[[1.0, "x"], [0.0, 1.0]]), "matrix"),
        (_doc(matrix=[[1.0, 0.5], [0.0, 1.0]]), "matrix"),
        (json.dumps({"n_modes": 1, "ordering": "xpxp"}), "matrix"),
    ],
)
def test_parser_names_offending_field(text, field):
    with pytest.raises(StateFileError) as info:
        statefile.loads(text)
    assert info.value.field == field


def test_missing_file(tmp_path):
    with pytest.raises(StateFileError) as info:
        statefile.read_state(tmp_path / "nope.json")
    assert info.value.field == "path"
