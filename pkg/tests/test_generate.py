import pytest

from dsmseq import InputError, generate_instance


def _nonzero_count(dsm):
    return sum(1 for row in dsm.d for v in row if v != 0.0)


def test_determinism():
    a = generate_instance(12, 0.4, 77)
    b = generate_instance(12, 0.4, 77)
    assert a.d == b.d
    c = generate_instance(12, 0.4, 78)
    assert c.d != a.d


def test_exact_nonzero_counts():
    assert _nonzero_count(generate_instance(10, 0.4, 1)) == 36  # round(0.4 * 90)
    assert _nonzero_count(generate_instance(15, 0.4, 7)) == 84  # round(0.4 * 210)
    assert _nonzero_count(generate_instance(6, 0.0, 3)) == 0
    assert _nonzero_count(generate_instance(6, 1.0, 3)) == 30  # all off-diagonal cells


def test_values_in_half_open_unit_interval():
    dsm = generate_instance(9, 1.0, 1234)
    for i, row in enumerate(dsm.d):
        assert row[i] == 0.0
        for j, v in enumerate(row):
            if i != j:
                assert 0.0 < v <= 1.0


def test_input_validation():
    with pytest.raises(InputError):
        generate_instance(1, 0.5, 0)
    with pytest.raises(InputError):
        generate_instance(5, -0.1, 0)
    with pytest.raises(InputError):
        generate_instance(5, 1.2, 0)
