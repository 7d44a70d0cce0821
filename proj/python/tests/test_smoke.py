import pytest

import cmdir


def test_gross_p7():
    doc = cmdir.run("gross", 7)
    assert doc["schema_version"] == cmdir.SCHEMA_VERSION
    r = doc["results"]
    assert (r["c4"], r["c6"], r["disc"]) == (105, 1323, -343)


def test_canonical_p7():
    assert cmdir.canonical_integers(7, 11) == [1, 1, 0, -1, 0, 0, 0, -3, -3, 0, 4]


def test_matches_point_count_p11():
    a = cmdir.canonical_integers(11, 60)
    # zero at primes inert in Q(sqrt(-11))
    for l in (2, 7, 13, 17, 19, 29, 41, 43):
        assert a[l - 1] == 0


def test_twisted_witness():
    doc = cmdir.run("qexp", 7, order=3, terms=20)
    assert doc["results"]["twist_witness"]["u"]["coeffs"] == ["0", "-1", "1", "0", "0", "0"]


def test_class_number():
    assert [cmdir.class_number(p) for p in (7, 23, 31, 47)] == [1, 3, 3, 5]


@pytest.mark.parametrize("p", [13, 49, 3])
def test_bad_prime(p):
    with pytest.raises(ValueError):
        cmdir.run("chars", p)


def test_h3_canonical_integers_rejected():
    with pytest.raises(ValueError):
        cmdir.canonical_integers(23, 10)
