import json

import numpy as np
import pytest

from xtele.core.states import (
    DenseState,
    EnsembleSpec,
    XBatch,
    XState,
    bell,
    bell_basis,
    extremal_gap_state,
    hadamard_rotated_bell,
    maximally_mixed,
    rng_stream,
    sample_x_batch,
    sample_x_state,
    validate,
    werner,
)
from xtele.core.utils import parse_state, read_state_file, write_state_file
from xtele.errors_logs.errors import (
    CoherenceBoundViolated,
    InvalidDensity,
    InvalidType,
    NegativePopulation,
    NonUnitTrace,
    NotXState,
    ParamOutOfRange,
    StateFileError,
)
from xtele.example.examples import available_data, download_example, load_data


def test_x_state_dense_form():
    state = XState(0.1, 0.2, 0.3, 0.4, 0.1 + 0.1j, 0.2j)
    rho = state.to_dense()
    assert rho[0, 3] == 0.1 + 0.1j
    assert rho[3, 0] == 0.1 - 0.1j
    assert rho[1, 2] == 0.2j
    assert rho[2, 1] == -0.2j
    assert DenseState(rho).is_x_form()
    assert DenseState(rho).to_x_state() == state


def test_x_state_phases():
    state = XState(0.25, 0.25, 0.25, 0.25, 0.2j, -0.1)
    assert state.alpha == pytest.approx(np.pi / 2)
    assert state.beta == pytest.approx(np.pi)
    assert maximally_mixed().alpha == 0.0


def test_x_state_validation_order():
    with pytest.raises(NegativePopulation):
        XState(-0.1, 0.5, 0.3, 0.3)
    with pytest.raises(NonUnitTrace):
        XState(0.3, 0.3, 0.3, 0.3)
    with pytest.raises(CoherenceBoundViolated, match=r"\|w\|\^2<=ad"):
        XState(0.5, 0.0, 0.0, 0.5, 0.6)
    with pytest.raises(CoherenceBoundViolated, match=r"\|z\|\^2<=bc"):
        XState(0.0, 0.5, 0.5, 0.0, 0.0, 0.51)
    # every X-state validation error is a density error
    with pytest.raises(InvalidDensity):
        XState(0.5, 0.0, 0.0, 0.5, 0.6)


@pytest.mark.parametrize("w, z", [(np.nan, 0.0), (0.0, complex(0.0, np.inf)), (complex(np.nan, np.nan), 0.1)])
def test_x_state_rejects_non_finite_coherences(w, z):
    with pytest.raises(CoherenceBoundViolated):
        XState(0.25, 0.25, 0.25, 0.25, w, z)


def test_x_state_tolerances():
    # populations within 1e-12 below zero are clamped
    state = XState(-1e-13, 0.5, 0.5, 1e-13)
    assert state.a == 0.0
    # the coherence bound is checked with a 1e-12 slack
    XState(0.5, 0.0, 0.0, 0.5, np.sqrt(0.25 + 5e-13))


def test_validate_raw_tuple():
    assert validate((0.25, 0.25, 0.25, 0.25, 0, 0)) == maximally_mixed()
    with pytest.raises(InvalidType):
        validate((0.5, 0.5))


def test_dense_state_checks():
    with pytest.raises(InvalidDensity):
        DenseState(np.eye(4))
    rho = np.eye(4, dtype=complex) / 4
    rho[0, 3] = rho[3, 0] = np.nan
    with pytest.raises(InvalidDensity):
        DenseState(rho)
    with pytest.raises(InvalidDensity):
        DenseState(np.eye(2) / 2)
    with pytest.raises(NotXState):
        hadamard_rotated_bell().to_x_state()
    assert not hadamard_rotated_bell().is_x_form()


def test_werner_family():
    state = werner(0.8)
    assert (state.a, state.b, state.c, state.d) == pytest.approx((0.05, 0.45, 0.45, 0.05))
    assert state.z == pytest.approx(-0.4)
    assert state.beta == pytest.approx(np.pi)
    with pytest.raises(ParamOutOfRange):
        werner(1.1)


@pytest.mark.parametrize("index", [0, 1, 2, 3])
def test_bell_states_are_pure(index):
    rho = bell(index, alpha=0.3, beta=1.1).to_dense()
    np.testing.assert_allclose(rho @ rho, rho, atol=1e-15)


def test_bell_basis_is_orthonormal():
    basis = bell_basis(0.7, -1.3)
    np.testing.assert_allclose(basis.conj() @ basis.T, np.eye(4), atol=1e-15)


def test_extremal_gap_state():
    state = extremal_gap_state("w-side")
    assert state.abs_w == pytest.approx(1 / 6)
    assert extremal_gap_state("z-side").abs_z == pytest.approx(1 / 6)
    with pytest.raises(ParamOutOfRange):
        extremal_gap_state("x-side")


def test_ensemble_spec():
    spec = EnsembleSpec(1000, seed=3)
    assert spec.measure_id == "dirichlet-disk"
    with pytest.raises(InvalidType):
        EnsembleSpec(10.0)
    with pytest.raises(InvalidType):
        EnsembleSpec(True)
    with pytest.raises(ParamOutOfRange):
        EnsembleSpec(0)
    with pytest.raises(ParamOutOfRange):
        EnsembleSpec(10, seed=-1)
    with pytest.raises(ParamOutOfRange):
        EnsembleSpec(10, measure_id="haar")


def test_rng_streams_are_reproducible_and_distinct():
    first = rng_stream(5, 2, 1).random(4)
    np.testing.assert_array_equal(first, rng_stream(5, 2, 1).random(4))
    assert not np.array_equal(first, rng_stream(5, 3, 1).random(4))
    assert not np.array_equal(first, rng_stream(5, 2, 0).random(4))


@pytest.mark.parametrize("stratum", ["uniform", "saturated", "faces", "entangled"])
def test_samples_are_valid_x_states(stratum):
    batch = sample_x_batch(rng_stream(11, 0, 0), 500, stratum)
    assert len(batch) == 500
    np.testing.assert_allclose(batch.a + batch.b + batch.c + batch.d, 1.0, atol=1e-12)
    assert np.all(np.abs(batch.w) ** 2 <= batch.a * batch.d + 1e-15)
    assert np.all(np.abs(batch.z) ** 2 <= batch.b * batch.c + 1e-15)
    for i in (0, 17, 499):
        assert isinstance(batch.state(i), XState)


def test_saturated_stratum_sits_near_the_bound():
    batch = sample_x_batch(rng_stream(4), 200, "saturated")
    ratio = np.abs(batch.w) / np.sqrt(batch.a * batch.d)
    assert np.all(ratio >= 0.95 - 1e-12)


def test_sample_x_state_is_first_batch_entry():
    state = sample_x_state(rng_stream(9))
    assert state == sample_x_batch(rng_stream(9), 1).state(0)


def test_seed_42_first_sample_is_reproducible():
    first = json.dumps(sample_x_state(rng_stream(42)).to_dict(), sort_keys=True)
    assert json.dumps(sample_x_state(rng_stream(42)).to_dict(), sort_keys=True) == first
    assert first != json.dumps(sample_x_state(rng_stream(43)).to_dict(), sort_keys=True)


def test_population_mean_is_a_quarter():
    n = 10 ** 6
    batch = sample_x_batch(rng_stream(2024), n)
    # Dirichlet(1, 1, 1, 1) marginals have variance 3/80
    assert batch.a.mean() == pytest.approx(0.25, abs=3 * np.sqrt(3 / 80 / n))


def test_batch_from_states():
    batch = XBatch.from_states([werner(0.2), werner(0.6)])
    assert batch.state(1) == werner(0.6)
    assert batch.take([1]).state(0) == werner(0.6)


def test_state_file_roundtrip(tmp_path):
    fname = str(tmp_path / "state.json")
    write_state_file(hadamard_rotated_bell(), fname)
    state = read_state_file(fname)
    np.testing.assert_allclose(state.rho, hadamard_rotated_bell().rho, atol=1e-15)


@pytest.mark.parametrize(
    "data",
    [
        [1, 2, 3],
        {"type": "y"},
        {"type": "x", "a": 0.5},
        {"type": "x", "a": "half", "b": 0, "c": 0, "d": 0.5, "w": {"re": 0, "im": 0}, "z": {"re": 0, "im": 0}},
        {"type": "dense", "re": [[1.0]], "im": [[0.0]]},
    ],
)
def test_malformed_state_objects(data):
    with pytest.raises(StateFileError):
        parse_state(data)


def test_unphysical_state_object_keeps_its_reason():
    data = {"type": "x", "a": 0.5, "b": 0, "c": 0, "d": 0.5, "w": {"re": 0.6, "im": 0}, "z": {"re": 0, "im": 0}}
    with pytest.raises(CoherenceBoundViolated):
        parse_state(data)


def test_packaged_examples(tmp_path):
    assert load_data("werner_0.8").as_tuple() == pytest.approx(werner(0.8).as_tuple(), abs=1e-15)
    assert isinstance(load_data("hadamard_rotated_bell"), DenseState)
    with pytest.raises(CoherenceBoundViolated):
        load_data("invalid_coherence")
    download_example(str(tmp_path))
    for fname in available_data.values():
        assert (tmp_path / fname).exists()
