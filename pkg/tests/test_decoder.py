import dataclasses
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smallqec import channel, decoder
from smallqec.channel import PauliChannel, extrapolate_convex, iid, iid_biased, identity_channel
from smallqec.code import (
    cyclic7,
    five_qubit,
    from_generators,
    phase_flip3,
    steane,
    trivial,
)
from smallqec.decoder import (
    DecoderError,
    class_columns,
    coset_probabilities,
    density_matrix_oracle,
    logical_error_rate,
    optimal_decoder,
    pauli_matrix,
    save_table,
    table_records,
)
from smallqec.pauli import cyclic_shift, from_index, from_string, multiply, permute


def dephasing(q, n=1):
    single = PauliChannel(1, np.array([1.0 - q, 0.0, q, 0.0]))
    return iid(single, n) if n > 1 else single


def random_channel(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.random(4**n)
    return PauliChannel(n, v / v.sum())


def zz_heavy_convex():
    probs = np.zeros(16)
    probs[from_string("II").index] = 0.92
    probs[from_string("ZI").index] = 0.02
    probs[from_string("IZ").index] = 0.02
    probs[from_string("ZZ").index] = 0.04
    return extrapolate_convex(PauliChannel(2, probs))


# ----------------------------------------------------------- coset structure


def test_identity_channel_concentrates_all_mass():
    probs = coset_probabilities(steane(), identity_channel(7))
    assert probs[0, 0] == 1.0
    assert np.count_nonzero(probs) == 1


def test_phase_flip3_cell_values():
    q = 0.1
    probs = coset_probabilities(phase_flip3(), dephasing(q, 3))
    # columns are I, X, Y, Z; syndrome 1 means only the first generator trips
    assert probs[1, 0] == pytest.approx(q * (1 - q) ** 2, abs=1e-15)
    assert probs[1, 3] == pytest.approx(q**2 * (1 - q), abs=1e-15)
    assert probs[1, 1] == 0.0
    assert probs[1, 2] == 0.0


@pytest.mark.parametrize("factory", [steane, cyclic7])
def test_each_cell_holds_one_stabilizer_orbit(factory):
    code = factory()
    cells = code.syndromes_all().astype(np.int64) * 4 + class_columns(code)
    counts = np.bincount(cells, minlength=code.num_syndromes * 4)
    # every (syndrome, class) cell collects exactly |S| = 64 errors,
    # so each syndrome row covers 256
    assert (counts == 64).all()


def test_coset_probabilities_total_mass():
    probs = coset_probabilities(cyclic7(), iid_biased(7, 0.03, 7.0))
    assert math.fsum(probs.reshape(-1).tolist()) == pytest.approx(1.0, abs=1e-9)


def test_class_columns_match_scalar_classifier():
    code = five_qubit()
    cols = class_columns(code)
    names = {0: "I", 1: "X", 2: "Y", 3: "Z"}
    for idx in range(0, 4**5, 13):
        assert names[int(cols[idx])] == code.logical_class(from_index(5, idx))


def test_check_inputs():
    with pytest.raises(DecoderError, match="k=1"):
        coset_probabilities(trivial(3), identity_channel(3))
    with pytest.raises(DecoderError, match="mismatch"):
        coset_probabilities(steane(), identity_channel(5))


# ----------------------------------------------------------------- decoding


def test_optimal_decoder_identity_channel():
    table = optimal_decoder(steane(), identity_channel(7))
    assert str(table.recovery[0]) == "IIIIIII"
    assert table.chosen_class[0] == "I"


def test_majority_vote_recovery():
    table = optimal_decoder(phase_flip3(), dephasing(0.1, 3))
    # syndrome (1,0): flipping generator 1 only; the most likely cause is a
    # single Z on the shared qubit, so recovery acts as Z1 up to a stabilizer
    rec = table.recovery[1]
    code = phase_flip3()
    assert code.syndrome_int(rec) == 1
    assert code.logical_class(multiply(rec, from_string("ZII"))) == "I"


def test_tie_breaks_prefer_earlier_class():
    # top tie between X and Z mass; the fixed class order picks X
    ch = PauliChannel(1, np.array([0.1, 0.4, 0.4, 0.1]))
    table = optimal_decoder(trivial(), ch)
    assert table.chosen_class[0] == "X"


@pytest.mark.parametrize("factory", [phase_flip3, five_qubit, steane])
def test_recovery_contract(factory):
    code = factory()
    table = optimal_decoder(code, iid_biased(code.n, 0.05, 3.0))
    for s in range(code.num_syndromes):
        rec = table.recovery[s]
        assert code.syndrome_int(rec) == s
        net = multiply(rec, code.pure_error(s))
        assert code.logical_class(net) == table.chosen_class[s]
        assert table.coset_probs[s].max() == table.coset_probs[s][
            ("I", "X", "Y", "Z").index(table.chosen_class[s])
        ]


def test_table_is_frozen():
    table = optimal_decoder(phase_flip3(), dephasing(0.1, 3))
    with pytest.raises(ValueError):
        table.coset_probs[0, 0] = 1.0


# -------------------------------------------------------------------- rates


@pytest.mark.parametrize("q", [0.01, 0.1, 0.3])
def test_phase_flip3_closed_form(q):
    rate = logical_error_rate(phase_flip3(), dephasing(q, 3))
    assert rate == pytest.approx(3 * q**2 - 2 * q**3, abs=1e-12)


def test_identity_channel_rate_zero():
    assert logical_error_rate(steane(), identity_channel(7)) == 0.0


def test_trivial_code_rate_is_p():
    ch = channel.biased_single_qubit(channel.BiasedParams(0.05, 0.02))
    expected = 1.0 - ch.probs[0]
    assert logical_error_rate(trivial(), ch) == pytest.approx(expected, abs=1e-15)


def test_headline_ordering_at_unbiased_point():
    ch = iid_biased(7, 0.01, 1.0)
    assert logical_error_rate(cyclic7(), ch) < logical_error_rate(steane(), ch)


def test_rate_regression_pins():
    # frozen outputs, cross-checked once against the dense-matrix oracle
    ch = iid_biased(7, 0.01, 1.0)
    assert logical_error_rate(steane(), ch) == pytest.approx(
        0.001030595794757172, abs=1e-12
    )
    assert logical_error_rate(cyclic7(), ch) == pytest.approx(
        0.0008659129053145698, abs=1e-12
    )


@given(st.integers(0, 2**31))
@settings(max_examples=20, deadline=None)
def test_rate_bounds(seed):
    rate = logical_error_rate(five_qubit(), random_channel(5, seed))
    assert 0.0 <= rate <= 0.75


def test_success_probability_complements_rate():
    code = five_qubit()
    ch = iid_biased(5, 0.07, 2.0)
    table = optimal_decoder(code, ch)
    assert table.success_probability == pytest.approx(
        1.0 - logical_error_rate(code, ch), abs=1e-12
    )


# ------------------------------------------------- representation invariance


def test_rate_invariant_under_representative_changes():
    code = five_qubit()
    ch = random_channel(5, 11)
    base = logical_error_rate(code, ch)
    g = code.generators[2]
    shifted = dataclasses.replace(
        code,
        logical_x=multiply(code.logical_x, g),
        logical_z=multiply(code.logical_z, code.generators[0]),
        destabilizers=tuple(multiply(d, g) for d in code.destabilizers),
    )
    shifted.validate()
    assert logical_error_rate(shifted, ch) == pytest.approx(base, abs=1e-12)


def test_rate_invariant_under_generator_basis_change():
    code = five_qubit()
    ch = random_channel(5, 23)
    base = logical_error_rate(code, ch)
    g = list(code.generators)
    g[0] = multiply(g[0], g[1])
    g[3] = multiply(g[3], g[0])
    changed = from_generators(g)
    assert logical_error_rate(changed, ch) == pytest.approx(base, abs=1e-12)


def test_rate_covariant_under_qubit_permutation():
    code = five_qubit()
    ch = random_channel(5, 5)
    perm = [3, 0, 4, 1, 2]
    permuted_code = from_generators([permute(g, perm) for g in code.generators])
    permuted = np.zeros_like(ch.probs)
    for idx in range(4**5):
        permuted[permute(from_index(5, idx), perm).index] = ch.probs[idx]
    assert logical_error_rate(permuted_code, PauliChannel(5, permuted)) == pytest.approx(
        logical_error_rate(code, ch), abs=1e-12
    )


def test_cyclic7_rate_invariant_under_cyclic_shift():
    ch = iid_biased(7, 0.02, 30.0)
    base = logical_error_rate(cyclic7(), ch)
    shifted = from_generators(
        [cyclic_shift(g, 1) for g in cyclic7().generators]
    )
    assert logical_error_rate(shifted, ch) == pytest.approx(base, abs=1e-12)


# -------------------------------------------------------------- file export


def test_table_records_format():
    code = phase_flip3()
    table = optimal_decoder(code, dephasing(0.1, 3))
    records = table_records(table)
    assert len(records) == 4
    assert records[1]["syndrome"] == "10"
    assert records[2]["syndrome"] == "01"
    assert records[1]["class_probs"] == pytest.approx([0.081, 0.0, 0.0, 0.009])
    assert records[1]["recovery"] in {"ZII", "ZXX", "IYX", "IXY"}


def test_save_table_round_trip(tmp_path):
    path = tmp_path / "table.json"
    code = five_qubit()
    table = optimal_decoder(code, iid_biased(5, 0.03, 5.0))
    save_table(table, str(path))
    data = json.loads(path.read_text())
    assert len(data) == 16
    for s, record in enumerate(data):
        assert set(record) == {"syndrome", "recovery", "class_probs"}
        assert code.syndrome_int(from_string(record["recovery"])) == s
        assert record["class_probs"] == pytest.approx(
            table.coset_probs[s].tolist(), abs=0
        )


# -------------------------------------------------------------------- oracle


def test_pauli_matrix_pins():
    assert np.allclose(pauli_matrix(from_string("X")), [[0, 1], [1, 0]])
    zz = pauli_matrix(from_string("ZZ"))
    assert np.allclose(np.diag(zz), [1, -1, -1, 1])


def test_oracle_identity_channel():
    assert density_matrix_oracle(phase_flip3(), identity_channel(3)) == pytest.approx(
        0.0, abs=1e-12
    )


def test_oracle_phase_flip3_closed_form():
    rate = density_matrix_oracle(phase_flip3(), dephasing(0.1, 3))
    assert rate == pytest.approx(0.028, abs=1e-9)


def test_oracle_matches_coset_path_five_qubit():
    ch = iid_biased(5, 0.1, 10.0)
    a = logical_error_rate(five_qubit(), ch)
    b = density_matrix_oracle(five_qubit(), ch)
    assert a == pytest.approx(b, abs=1e-9)


def test_oracle_matches_coset_path_sparse_steane():
    ch = zz_heavy_convex()
    a = logical_error_rate(steane(), ch)
    b = density_matrix_oracle(steane(), ch)
    assert a == pytest.approx(b, abs=1e-9)


def test_oracle_rejects_large_codes():
    gens = [s + "I" for s in ("XIXIXIX", "IXXIIXX", "IIIXXXX", "ZIZIZIZ", "IZZIIZZ", "IIIZZZZ")]
    gens.append("IIIIIIIX")
    big = from_generators(gens)
    with pytest.raises(DecoderError, match="n <= 7"):
        density_matrix_oracle(big, identity_channel(8))
