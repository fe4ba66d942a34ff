from fractions import Fraction

import pytest

from galext.scalars import (
    Cyclo,
    conj_scalar,
    root_of_unity,
    scalar_is_zero,
    scalar_to_complex,
    scalar_to_json,
    scalars_close,
)


def test_roots_of_unity_small_orders():
    assert root_of_unity(1) == Fraction(1)
    assert root_of_unity(2) == Fraction(-1)
    i = root_of_unity(4)
    assert isinstance(i, Cyclo)
    assert i * i == Fraction(-1)
    assert i**4 == 1


def test_cyclo_third_roots():
    w = Cyclo.root(3)
    assert w**3 == 1
    assert w * w + w + 1 == 0
    assert (w**2).conjugate() == w


def test_mixed_order_arithmetic():
    i = Cyclo.root(4)
    w = Cyclo.root(3)
    z = i * w  # primitive 12th root
    assert z.order == 12
    assert z**12 == 1
    assert z**6 == -1


def test_division_and_inverse():
    w = Cyclo.root(5)
    x = 1 + w + w**2
    assert x * x.inverse() == 1
    assert (x / x) == 1
    y = x / 3
    assert y * 3 == x
    with pytest.raises(ZeroDivisionError):
        (w - w).inverse()


def test_rational_detection():
    i = Cyclo.root(4)
    assert (i**2).as_fraction() == Fraction(-1)
    assert (i + 1 - i).as_fraction() == 1
    assert i.as_fraction() is None


def test_numeric_agreement():
    for order in (3, 4, 5, 6, 8, 12):
        z = Cyclo.root(order)
        num = scalar_to_complex(z)
        assert abs(num**order - 1) < 1e-12
        assert abs(num - root_of_unity(order, exact=False)) < 1e-12


def test_conjugation_and_zero():
    w = Cyclo.root(8)
    x = w + 2
    assert conj_scalar(x) == 2 + w**7
    assert scalar_is_zero(x - x)
    assert scalar_is_zero(0)
    assert not scalar_is_zero(Fraction(1, 7))


def test_int_interop_with_sums():
    # builtin sum starts from int 0; numpy object matmul does the same trick
    w = Cyclo.root(3)
    total = sum([w, w**2, 1])
    assert scalar_is_zero(total)


def test_json_forms():
    assert scalar_to_json(Fraction(3, 4)) == "3/4"
    assert scalar_to_json(5) == "5"
    i = Cyclo.root(4)
    blob = scalar_to_json(i)
    assert blob["cyclotomic_order"] == 4
    assert blob["coeffs"] == ["0", "1"]
    assert scalar_to_json(1.5 + 0.5j) == [1.5, 0.5]


def test_scalars_close_modes():
    assert scalars_close(Fraction(1, 3), Fraction(1, 3), 0.0)
    assert not scalars_close(Fraction(1, 3), Fraction(1, 2), 0.0)
    assert scalars_close(1.0 + 1e-12j, 1.0, 1e-9)
    w = Cyclo.root(3)
    assert scalars_close(w + 1, 1 + w, 0.0)
