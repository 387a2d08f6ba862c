import numpy as np
import pytest

from noisysimon.gf2 import BitVec, DimensionError
from noisysimon.simon import SimonFunction, is_simon_function


def test_eval_examples():
    f = SimonFunction.default(3)
    assert str(f.eval(BitVec.from_string("111"))) == "100"
    assert str(f.eval(BitVec.from_string("110"))) == "110"
    with pytest.raises(DimensionError):
        f.eval(BitVec.from_string("1111"))


def test_periodicity_example():
    f = SimonFunction.default(4)
    for xv in range(16):
        x = BitVec(4, xv)
        assert f.eval(x ^ f.s) == f.eval(x)


def test_verify_period():
    f = SimonFunction.default(4)
    assert f.verify_period(f.s)
    assert f.verify_period(BitVec.zeros(4))
    for n in range(2, 11):
        g = SimonFunction.default(n)
        for xv in range(1 << n):
            expected = xv in (0, g.s.value)
            assert g.verify_period(BitVec(n, xv)) == expected


def test_constructor_validation():
    with pytest.raises(ValueError):
        SimonFunction(3, BitVec.zeros(3), 0)
    with pytest.raises(ValueError):
        SimonFunction(3, BitVec.from_string("010"), 0)  # s_0 = 0


def test_classical_leak():
    assert str(SimonFunction.default(3).classical_leak()) == "011"
    assert str(SimonFunction.default(2).classical_leak()) == "11"
    rng = np.random.default_rng(7)
    for _ in range(50):
        sv = int(rng.integers(1, 1 << 7)) | 1  # force s_0 = 1
        f = SimonFunction(7, BitVec(7, sv), 0)
        assert f.classical_leak() == f.s


def test_is_simon_function():
    f = SimonFunction.default(5)
    ok, s = is_simon_function(f.table())
    assert ok and s == f.s
    assert is_simon_function(list(range(8))) == (False, None)  # injective
    assert is_simon_function([0] * 8) == (False, None)  # constant


def test_two_to_one_exhaustive():
    for n in range(1, 11):
        xs = np.arange(1 << n, dtype=np.int64)
        for sv in range(1, 1 << n):
            i = (sv & -sv).bit_length() - 1
            f = SimonFunction(n, BitVec(n, sv), i)
            vals = np.where((xs >> i) & 1, xs ^ sv, xs)
            order = np.argsort(vals, kind="stable")
            sv_sorted = vals[order]
            # exactly two preimages per value, differing by s
            assert np.all(sv_sorted[0::2] == sv_sorted[1::2])
            assert np.all((xs[order][0::2] ^ xs[order][1::2]) == sv)
            # and the numpy table is the same function as eval_int
            if n <= 6:
                assert [f.eval_int(x) for x in range(1 << n)] == vals.tolist()
