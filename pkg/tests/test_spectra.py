import pytest

from pnbundles.spectra import (Spectrum, c3_from_spectrum, enumerate_spectra,
                               genus_from_c3, h1_from_spectrum,
                               h2_from_spectrum, is_symmetric,
                               satisfies_occurrence_rules,
                               satisfies_strict_tail_rule)


def test_c2_2_with_c3_filter():
    specs = enumerate_spectra(2, -2, 1, c3_nonneg=True)
    assert {s.k for s in specs} == {(0, 0), (0, -1), (-1, -1)}


def test_c2_4_strict_tail_exclusion():
    base = {s.k for s in enumerate_spectra(4, -3, 1)}
    sharp = {s.k for s in enumerate_spectra(4, -3, 1, spectrum2=True)}
    assert (0, -1, -2, -2) in base
    assert (0, -1, -2, -2) not in sharp
    assert (0, -1, -2, -3) in sharp  # strictly decreasing tail is fine


def test_length_one():
    specs = enumerate_spectra(1, -3, 3)
    assert [s.k for s in specs] == [(0,)]


def test_occurrence_rule_mutations_rejected():
    ok = (0, -1, -2)
    assert satisfies_occurrence_rules(ok)
    assert not satisfies_occurrence_rules((0, -2, -2))   # gap below
    assert not satisfies_occurrence_rules((2, 0, 0))     # gap above
    assert not satisfies_occurrence_rules((-1, -1, -2, -9))
    assert not satisfies_occurrence_rules((-1, -2, -2))  # no 0, single -1


def test_enumerator_output_revalidates():
    for s in enumerate_spectra(4, -3, 2, spectrum2=True):
        assert satisfies_occurrence_rules(s.k)
        assert satisfies_strict_tail_rule(s.k)


def test_symmetric_filter():
    specs = enumerate_spectra(3, -2, 2, symmetric=True)
    assert all(is_symmetric(s.k) for s in specs)
    assert (1, 0, -1) in {s.k for s in specs}
    assert all(sorted(-v for v in s.k) == sorted(s.k) for s in specs)


def test_h1_values_from_classification():
    assert h1_from_spectrum(Spectrum.make((0, 0, -1)), -1) == 2
    assert h1_from_spectrum(Spectrum.make((0, -1, -1, -1)), -1) == 1
    assert h1_from_spectrum(Spectrum.make((0, -1)), -1) == 1
    assert h1_from_spectrum(Spectrum.make((0, 0, 0, -1)), -1) == 3
    assert h1_from_spectrum(Spectrum.make((1, 0)), -5) == 0


def test_h2_values_from_classification():
    assert h2_from_spectrum(Spectrum.make((0, -1, -2)), -1) == 1
    assert h2_from_spectrum(Spectrum.make((0, 0, 0, 0)), -2) == 0
    assert h2_from_spectrum(Spectrum.make((0, -1, -2, -3)), 0) == 1


def test_evaluator_domains():
    s = Spectrum.make((0, -1))
    with pytest.raises(ValueError):
        h1_from_spectrum(s, 0)
    with pytest.raises(ValueError):
        h2_from_spectrum(s, -4)


def test_twisted_vanishing_filter():
    # h1 at l = -2 vanishes exactly when no entry is >= 1
    for s in enumerate_spectra(3, -2, 2):
        vanish = h1_from_spectrum(s, -2) == 0
        assert vanish == all(k < 1 for k in s)
    filtered = enumerate_spectra(3, -2, 2, exclude_ge_1=True)
    assert all(h1_from_spectrum(s, -2) == 0 for s in filtered)


def test_c3_and_genus():
    assert c3_from_spectrum(Spectrum.make((-1, -1, -2, -2))) == 12
    assert c3_from_spectrum(Spectrum.make((0, 0, 0))) == 0
    assert genus_from_c3(0) == 1
    assert c3_from_spectrum(Spectrum.make((0, 0, -1))) == 2
    assert genus_from_c3(2) == 2
    with pytest.raises(ValueError):
        genus_from_c3(3)


def test_spectrum_validation():
    with pytest.raises(ValueError):
        Spectrum.make((0, 1))
    with pytest.raises(ValueError):
        Spectrum.make(())
