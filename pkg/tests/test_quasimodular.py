from fractions import Fraction as F

import pytest

from qmacmahon.macmahon import family, validate
from qmacmahon.quasimodular import (
    ReconstructionMismatch,
    WrongCase,
    _combine,
    arcsin_half_coeffs,
    arcsin_power_coeffs,
    b_decompose_recursive,
    kappa,
    reconstruct,
    reconstruct_B,
    sqrt_coeffs,
    two_path_check,
    weight_part_A,
    weight_part_B,
)
from qmacmahon.series import BiSeries


def arcsin_oracle(degree):
    """Series reversion of sin(y) = u, solving for y term by term."""
    # sin(y) = sum (-1)^j y^(2j+1)/(2j+1)!; find y = sum b_i u^i with sin(y(u)) = u
    b = [F(0)] * (degree + 1)
    b[1] = F(1)

    def compose(b):
        # sin(y(u)) truncated
        out = [F(0)] * (degree + 1)
        power = b[:]
        fact = 1
        j = 0
        while 2 * j + 1 <= degree:
            if j:
                for _ in range(2):
                    power = [sum(power[i] * b[d - i] for i in range(d + 1)) for d in range(degree + 1)]
            sign = (-1) ** j
            for d in range(degree + 1):
                out[d] += sign * power[d] / fact
            fact *= (2 * j + 2) * (2 * j + 3)
            j += 1
        return out

    for d in range(2, degree + 1):
        err = compose(b)[d]
        b[d] -= err
    return b


def test_arcsin_half_against_reversion():
    plain = arcsin_oracle(11)
    half = arcsin_half_coeffs(11)
    assert half == [c / 2 ** d for d, c in enumerate(plain)]


def test_arcsin_power_coeffs_examples():
    c = arcsin_power_coeffs(5, 5)
    for k in range(6):
        assert c[k][k] == F(1, 4 ** k)
        assert all(c[k][w] == 0 for w in range(k + 1, 6))
    assert c[2][1] == F(1, 48)
    assert c[0][0] == 1
    odd = arcsin_power_coeffs(3, 3, "odd")
    assert odd[1][0] == F(1, 48)
    assert odd[0][0] == F(1, 2)


def test_sqrt_coeffs():
    a = sqrt_coeffs(5)
    assert a[:3] == [1, F(1, 8), F(-1, 128)]
    # square of the series is 1 + x^2/4
    sq = [sum(a[i] * a[m - i] for i in range(m + 1)) for m in range(6)]
    assert sq == [1, F(1, 4), 0, 0, 0, 0]


def test_kappa():
    assert [kappa(w, False) for w in range(3)] == [1, -2, F(16, 24)]
    assert [kappa(w, True) for w in range(3)] == [2, F(-8, 6), F(32, 120)]


@pytest.mark.parametrize("n,S", [(3, [1, 2]), (5, [2, 3]), (4, [2])])
def test_weight_zero_is_one(n, S):
    one = weight_part_A(validate(n, S), 0, 15)
    assert dict(one.items()) == {(0, 0): 1}
    assert dict(weight_part_A(validate(1, [1]), 0, 15).items()) == {(0, 0): 1}
    assert dict(weight_part_B(validate(3, [1, 2]), 0, 15).items()) == {(0, 0): 1}


def test_weight_part_b_wrong_case():
    with pytest.raises(WrongCase):
        weight_part_B(validate(2, [1, 2]), 1, 10)
    with pytest.raises(WrongCase):
        b_decompose_recursive(validate(3, [1, 2]), 1, 10)


@pytest.mark.parametrize("n,S", [(3, [1, 2]), (4, [1, 3]), (1, [1]), (2, [1, 2]), (3, [1, 2, 3]), (6, [1, 5])])
@pytest.mark.parametrize("w", [0, 1, 2])
def test_two_path(n, S, w):
    assert two_path_check(validate(n, S), "A", w, 14).passed


def test_divisor_sum_weight_two():
    # A_1 = sum sigma(m) q^m is recovered from the weight-2 piece alone
    spec = validate(1, [1])
    dec = reconstruct(spec, 1, 20)
    c = dec.recon_matrix
    assert c[0][1] == 0 and c[1][0] == F(1, 48)
    assert dec.passed


@pytest.mark.parametrize("n,S,kmax", [(3, [1, 2], 3), (5, [1, 4], 3), (4, [2], 3), (3, [3], 3), (4, [1, 3, 4], 2)])
def test_reconstruct(n, S, kmax):
    dec = reconstruct(validate(n, S), kmax, 16)
    assert dec.passed and len(dec.parts) == kmax + 1


def test_reconstruct_trivial():
    assert reconstruct(validate(5, [2, 3]), 0, 10).passed


def test_pure_weight_parts_shared_across_k():
    spec = validate(3, [1, 2])
    dec = reconstruct(spec, 3, 14)
    small = reconstruct(spec, 1, 14)
    assert small.parts == dec.parts[:2]


def test_wrong_kappa_is_detected():
    spec = validate(3, [1, 2])
    dec = reconstruct(spec, 2, 12)
    bad = [1, 2, F(2, 3)]  # sign of the weight-2 scalar flipped
    got = _combine(dec.parts, bad, dec.recon_matrix, 1, 1, dec.order)
    assert got != family(spec, "A", 2, 12).entries[1]


def test_mismatch_raises(monkeypatch):
    import qmacmahon.quasimodular as qm
    monkeypatch.setattr(qm, "kappa", lambda w, odd: F(1))
    with pytest.raises(ReconstructionMismatch) as exc:
        qm.reconstruct(validate(3, [1, 2]), 2, 10)
    assert exc.value.report.first_mismatch is not None


@pytest.mark.parametrize("n,S", [(3, [1, 2]), (2, [1]), (5, [2, 3])])
def test_reconstruct_B(n, S):
    assert reconstruct_B(validate(n, S), 3, 16).passed


@pytest.mark.parametrize("n,S", [(2, [1, 2]), (1, [1]), (3, [1, 2, 3])])
def test_b_decompose_recursive(n, S):
    assert b_decompose_recursive(validate(n, S), 2, 16).passed


def test_b_recursive_trivial():
    dec = b_decompose_recursive(validate(2, [1, 2]), 0, 10)
    assert dec.passed and dec.reports[-1].identity.endswith("k0")


def test_decomposition_json():
    d = reconstruct(validate(3, [1, 2]), 1, 5).to_dict()
    assert d["recon"] == "PASS"
    assert d["kappa"] == ["1/1", "-2/1"]
    assert [p["w"] for p in d["parts"]] == [0, 1]
    assert BiSeries.from_dict(d["parts"][0]["series"]) == BiSeries.one(5)


def test_b_reconstruction_needs_alternating_sign():
    from qmacmahon.quasimodular import _combine, arcsin_power_coeffs, kappa, weight_part_B
    spec, order = validate(3, [1, 2]), 15
    parts = [(w, weight_part_B(spec, w, order)) for w in range(4)]
    kap = [kappa(w, False) for w in range(4)]
    c = arcsin_power_coeffs(3, 3, "even")
    direct = family(spec, "B", 3, order).entries
    for k in (1, 3):
        assert _combine(parts, kap, c, k, (-1) ** k, order) == direct[k]
        assert _combine(parts, kap, c, k, 1, order) != direct[k]
