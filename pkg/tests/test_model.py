import math

import numpy as np
import pytest

from pseudochain.errors import DegenerateBond
from pseudochain.model import (
    ChainModel,
    bond_weights,
    coupling_state,
    diagonal,
    find_parity_signature,
    materialize,
    xi,
)


@pytest.mark.parametrize("J, expected", [
    (1, [-1, 1]),
    (2, [-3, -1, 1, 3]),
    (3, [-5, -3, -1, 1, 3, 5]),
])
def test_diagonal(J, expected):
    assert diagonal(J) == expected
    assert sum(diagonal(J)) == 0


def test_diagonal_rejects_zero():
    with pytest.raises(ValueError):
        diagonal(0)


def test_model_validation():
    with pytest.raises(ValueError):
        ChainModel(0, ())
    with pytest.raises(ValueError):
        ChainModel(2, (1.0,))
    m = ChainModel(3, [1, 5, 3])
    assert m.G == (1.0, 5.0, 3.0)
    assert m.N == 6
    assert [m.g_max(n) for n in (1, 2, 3)] == [5, 8, 9]


def test_bond_coupling_is_mirrored():
    m = ChainModel.uniform(3)
    assert [m.bond_coupling(k) for k in range(1, 6)] == [1, 2, 3, 2, 1]


def test_xi_values():
    assert xi(ChainModel(1, [1]), 1, 0.36) == pytest.approx(0.36)
    assert xi(ChainModel(2, [1, 1]), 1, 0.5) == pytest.approx(0.75)
    assert xi(ChainModel.uniform(3), 2, 0.5436890127) == pytest.approx(1.0, abs=1e-9)


def test_coupling_state_examples():
    assert coupling_state(ChainModel.uniform(3), 1, 0.0).w_signed == 5
    t_gm = (math.sqrt(5) - 1) / 2
    assert coupling_state(ChainModel(2, [1, 1]), 2, t_gm).w_signed == pytest.approx(0.0, abs=1e-12)
    st = coupling_state(ChainModel(1, [1]), 1, 2.0)
    assert st.w_signed == -1
    assert st.hermitian


def test_coupling_index_checked():
    with pytest.raises(ValueError):
        xi(ChainModel(2, [1, 1]), 3, 0.1)


def test_materialize_two_state():
    H = materialize(ChainModel(1, [1]), 0.36)
    np.testing.assert_allclose(H, [[-1, 0.8], [-0.8, 1]], atol=1e-15)


def test_materialize_four_state_at_origin():
    H = materialize(ChainModel(2, [1, 1]), 0.0)
    r3 = math.sqrt(3)
    expected = [[-3, r3, 0, 0], [-r3, -1, 2, 0], [0, -2, 1, r3], [0, 0, -r3, 3]]
    np.testing.assert_allclose(H, expected, atol=1e-15)


def test_materialize_hermitian_regime():
    H = materialize(ChainModel(1, [1]), 2.0)
    np.testing.assert_allclose(H, [[-1, 1j], [-1j, 1]], atol=1e-15)
    np.testing.assert_allclose(H, H.conj().T)


def test_parity_standard():
    m = ChainModel(2, [1, 2])
    P = find_parity_signature(m, 0.2)
    assert P.signs == (1, -1, 1, -1)
    assert P.verify(materialize(m, 0.2))


def test_parity_anomalous():
    # central coupling beyond its switch-off point, outer one below
    m = ChainModel(2, [1, 2])
    t = 0.55
    assert xi(m, 1, t) < 1 < xi(m, 2, t)
    P = find_parity_signature(m, t)
    assert P.signs == (1, -1, -1, 1)
    assert P.verify(materialize(m, t))


def test_parity_trivial_when_hermitian():
    m = ChainModel(1, [1])
    P = find_parity_signature(m, 2.0)
    assert P.signs == (1, 1)
    assert P.verify(materialize(m, 2.0))


def test_parity_degenerate_bond():
    with pytest.raises(DegenerateBond):
        find_parity_signature(ChainModel(1, [1]), 1.0)


def test_bond_weights_symmetric():
    w = bond_weights(ChainModel(3, [1, 5, 3]), 0.3)
    assert w == w[::-1]
    assert len(w) == 5
