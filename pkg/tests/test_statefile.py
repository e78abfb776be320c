import numpy as np
import pytest

from tristate.family import rho2_b
from tristate.hilbert import Operator
from tristate.statefile import StateFileError, load_state, save_state, state_from_dict, state_to_dict
from tristate.upb import rho3_8


@pytest.mark.parametrize("op", [rho2_b(0.9), rho3_8()])
def test_roundtrip_is_bit_exact(tmp_path, op):
    path = tmp_path / "s.json"
    save_state(op, path)
    back = load_state(path)
    assert tuple(back.dims) == tuple(op.dims)
    assert np.max(np.abs(back.matrix - op.matrix)) == 0


def test_complex_roundtrip(tmp_path):
    rng = np.random.default_rng(2)
    X = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    op = Operator((2, 2, 2), X + X.conj().T)
    path = tmp_path / "c.json"
    save_state(op, path)
    np.testing.assert_array_equal(load_state(path).matrix, op.matrix)


def test_layout():
    d = state_to_dict(Operator((2, 1, 1), np.array([[1, 2j], [-2j, 3]])))
    assert d == {"dims": [2, 1, 1], "matrix": [[1.0, 0.0], [0.0, 2.0], [0.0, -2.0], [3.0, 0.0]]}


def test_truncated_file(tmp_path):
    path = tmp_path / "t.json"
    save_state(rho2_b(0.9), path)
    text = path.read_text()
    path.write_text(text[:100])
    with pytest.raises(StateFileError, match="parse error at byte"):
        load_state(path)


def test_parse_error_offset_counts_bytes(tmp_path):
    path = tmp_path / "u.json"
    path.write_text('{"dims": "é", x}', encoding="utf-8")
    with pytest.raises(StateFileError, match="byte 15"):
        load_state(path)


def test_dimension_mismatch():
    data = {"dims": [2, 2, 3], "matrix": [[0.0, 0.0]] * 64}
    with pytest.raises(StateFileError, match="dimension mismatch"):
        state_from_dict(data)


def test_non_hermitian_rejected():
    M = np.eye(8, dtype=complex)
    M[0, 1] = 1e-6
    data = state_to_dict(Operator((2, 2, 2), M))
    with pytest.raises(StateFileError, match="not Hermitian"):
        state_from_dict(data)


def test_small_asymmetry_accepted():
    M = np.eye(8, dtype=complex)
    M[0, 1] = 1e-12
    state_from_dict(state_to_dict(Operator((2, 2, 2), M)))


@pytest.mark.parametrize("data", [
    [],
    {"dims": [2, 2]},
    {"dims": [2, 2, 0], "matrix": []},
    {"dims": [1, 1, 1], "matrix": [[1.0]]},
    {"dims": [1, 1, 1], "matrix": [["a", 0]]},
    {"dims": [1, 1, 1], "matrix": [[float("nan"), 0.0]]},
])
def test_malformed(data):
    with pytest.raises(StateFileError):
        state_from_dict(data)
