import math

import pytest

from pseudochain.errors import DegenerateEvent, NoRootInRange, PredicateNotBracketed
from pseudochain.model import ChainModel
from pseudochain.polynomial import all_roots, char_poly, is_quasi_hermitian
from pseudochain.spectral import (
    NotQuasiHermitian,
    ThresholdKind,
    bisect_predicate,
    classify_mergers,
    closed_form_4,
    domain4_contains,
    four_state_poly,
    qh_threshold,
    scan,
    spectrum_at,
    xi_root,
    zero_crossing,
)


def test_spectrum_two_state_negative_t():
    sample = spectrum_at(ChainModel(1, [1]), -0.25)
    E = sorted(sample.roots.energies, key=lambda e: e.imag)
    assert E[0] == pytest.approx(-0.5j)
    assert E[1] == pytest.approx(0.5j)
    assert not sample.roots.all_real


def test_spectrum_degenerate_origin():
    sample = spectrum_at(ChainModel(2, [1, 1]), 0.0)
    assert max(abs(e) for e in sample.roots.energies) == 0.0


def test_spectrum_matches_closed_form_at_t1():
    sample = spectrum_at(ChainModel(2, [1, 1]), 1.0)
    expected = sorted(s.real for s in closed_form_4(2.0, 2.0))
    assert [s.real for s in sample.roots.s_roots] == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("alpha, beta, expected", [
    (1.0, 1.0, {9.0, 1.0}),
    (0.0, 0.0, {0.0}),
])
def test_closed_form_examples(alpha, beta, expected):
    s = closed_form_4(alpha, beta)
    assert {round(x.real, 12) for x in s} == expected


def test_closed_form_complexification_bound():
    sp, sm = closed_form_4(0.96, 2.4)
    assert abs(sm) < 1e-12


def test_domain_examples():
    assert domain4_contains(1.0, 2 / 3).inside
    pt = domain4_contains(0.5032502, 0.4068594)
    beta_min = (9 * pt.alpha - pt.alpha ** 2) / (9 + 3 * pt.alpha)
    assert abs(pt.beta - beta_min) < 1e-6
    assert not domain4_contains(0.0, 0.1).inside


def test_domain_matches_closed_form_reality():
    for a, b in [(0.5, 0.9), (0.2, 0.1), (1.5, 1.2)]:
        inside = domain4_contains(a, b).inside
        assert inside == all(abs(s.imag) < 1e-12 and s.real >= -1e-12 for s in closed_form_4(a, b))


def test_four_state_poly_against_closed_form():
    r = all_roots(four_state_poly(0.7, 1.1))
    expected = sorted(closed_form_4(0.7, 1.1), key=lambda s: (s.real, s.imag))
    for got, want in zip(r.s_roots, expected):
        assert abs(got - want) < 1e-10


def test_bisect_predicate():
    lo, hi = bisect_predicate(lambda t: t < math.pi, 0.0, 4.0, 1e-12)
    assert abs(hi - lo) <= 1e-12
    assert lo <= math.pi <= hi
    with pytest.raises(PredicateNotBracketed):
        bisect_predicate(lambda t: True, 0.0, 1.0)


@pytest.mark.parametrize("J, G, n, expected", [
    (2, [1, 1], 1, 0.6180339887),
    (2, [1, 1.5], 2, 0.5485837704),
    (3, [1, 5, 3], 3, 0.4693964246),
])
def test_xi_root(J, G, n, expected):
    rep = xi_root(ChainModel(J, G), n)
    assert rep.kind is ThresholdKind.XI_ROOT
    assert rep.t == pytest.approx(expected, abs=1e-9)
    assert rep.coupling_index == n


def test_xi_root_missing():
    with pytest.raises(NoRootInRange):
        xi_root(ChainModel(1, [1]), 1, search_max=0.5)


@pytest.mark.parametrize("G, hi, lo, expected", [
    ([1, 2], 0.6, 0.1, 0.3104686356),
    ([1.5, 1], 0.5, 0.1, 0.2761423749),
    ([5, 1], 0.9, 0.3, 0.6),
])
def test_qh_threshold(G, hi, lo, expected):
    rep = qh_threshold(ChainModel(2, G), hi, lo)
    assert rep.kind is ThresholdKind.QH_LOSS
    assert rep.t == pytest.approx(expected, abs=1e-8)
    assert rep.bracket[1] - rep.bracket[0] <= 1e-12


def test_qh_threshold_reports_real_side():
    m = ChainModel(2, [1, 2])
    rep = qh_threshold(m, 0.6, 0.1)
    assert is_quasi_hermitian(char_poly(m, rep.t))


def test_qh_threshold_unbracketed():
    with pytest.raises(PredicateNotBracketed):
        qh_threshold(ChainModel(2, [1, 2]), 0.2, 0.1)


def test_zero_crossing_two_state():
    rep = zero_crossing(ChainModel(1, [1]), 0.5, -0.5)
    assert abs(rep.t) < 1e-10


def test_scan_two_state_shape():
    samples = scan(ChainModel(1, [1]), 1.5, -0.5, 201)
    assert len(samples) == 201
    for s in samples:
        E = dict(s.energies_by_label())
        if s.t > 0:
            assert E[1].real == pytest.approx(math.sqrt(s.t), abs=1e-12)
            assert E[-1].real == pytest.approx(-math.sqrt(s.t), abs=1e-12)
        else:
            assert abs(E[1].real) < 1e-12


@pytest.mark.parametrize("J", [2, 3])
def test_scan_meets_at_origin(J):
    samples = scan(ChainModel.uniform(J), 1.0, 0.0, 101)
    for s in samples:
        assert s.roots.all_real
    assert max(abs(e) for e in samples[-1].roots.energies) < 1e-5


def test_scan_labels_persist():
    samples = scan(ChainModel(2, [1, 2]), 0.9, 0.5, 50)
    assert all(sorted(s.labels) == [1, 3] for s in samples)


def test_scan_validates_steps():
    with pytest.raises(ValueError):
        scan(ChainModel(1, [1]), 0.0, 1.0, 1)


def test_classify_two_mergers():
    res = classify_mergers(ChainModel(2, [1, 2]), 0.6, 0.05)
    assert res.pattern.shorthand() == "{[-3,-1],[1,3]}"
    assert res.pattern.complete


def test_classify_central_pair_first():
    res = classify_mergers(ChainModel(2, [1.5, 1]), 0.5, 0.05)
    assert res.events[0].pairs == ((-1, 1),)
    assert res.events[0].t == pytest.approx(0.2761423749, abs=1e-8)


def test_classify_two_state():
    res = classify_mergers(ChainModel(1, [1]), 0.5, -0.5)
    assert res.pattern.shorthand() == "{[-1,1]}"
    assert abs(res.events[0].t) <= 1e-10


def test_classify_degenerate_end():
    res = classify_mergers(ChainModel(2, [1, 1]), 1.0, 0.0, steps=400)
    assert res.pattern.degenerate
    assert not res.pattern.complete
    with pytest.raises(DegenerateEvent):
        classify_mergers(ChainModel(2, [1, 1]), 1.0, 0.0, steps=400, strict=True)


def test_classify_needs_real_start():
    with pytest.raises(NotQuasiHermitian):
        classify_mergers(ChainModel(2, [1, 2]), 0.2, 0.05)
