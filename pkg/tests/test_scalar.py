from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slnspider.scalar import LaurentScalar, ONE, ZERO, q_sign, quantum_integer


def scal(d):
    return LaurentScalar({e: Fraction(c) for e, c in d.items()})


# doubled exponents with small rational coefficients
scalars = st.dictionaries(
    st.integers(min_value=-40, max_value=40),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=6,
).map(scal)


class TestQuantumIntegers:
    def test_two(self):
        assert quantum_integer(2) == scal({-2: 1, 2: 1})  # q^-1 + q

    def test_one(self):
        assert quantum_integer(1) == ONE

    def test_zero(self):
        assert quantum_integer(0) == ZERO

    def test_four(self):
        assert quantum_integer(4) == scal({-6: 1, -2: 1, 2: 1, 6: 1})

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            quantum_integer(-1)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_shape(self, k):
        triples = quantum_integer(k).to_triples()
        assert len(triples) == k
        assert all(num == 1 and den == 1 for _, num, den in triples)
        exps = [e for e, _, _ in triples]
        assert exps == [-e for e in reversed(exps)]  # symmetric about 0


class TestRingOps:
    def test_inverse_monomials(self):
        q = LaurentScalar.q_power(1)
        qinv = LaurentScalar.q_power(-1)
        assert q * qinv == ONE

    def test_square_of_two(self):
        # (q^-1 + q)^2 expanded by hand
        two = quantum_integer(2)
        assert two * two == scal({-4: 1, 0: 2, 4: 1})

    def test_cancellation(self):
        two = quantum_integer(2)
        assert two + (-two) == ZERO

    def test_divide_by_unit(self):
        v = quantum_integer(3) * LaurentScalar.q_power(2)
        assert v.divide_by_unit(LaurentScalar.q_power(2)) == quantum_integer(3)
        with pytest.raises(ValueError):
            v.divide_by_unit(quantum_integer(2))

    def test_monomial_sign_checked(self):
        with pytest.raises(ValueError):
            LaurentScalar.monomial(2, 0)

    def test_q_sign(self):
        assert q_sign(3) == LaurentScalar.q_power(1)
        assert q_sign(-1) == LaurentScalar.q_power(-1)
        with pytest.raises(ValueError):
            q_sign(0)

    @given(scalars, scalars)
    def test_mul_commutative(self, a, b):
        assert a * b == b * a

    @given(scalars, scalars, scalars)
    def test_mul_distributes(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(scalars, scalars, scalars)
    def test_add_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(scalars, scalars)
    def test_mul_against_dense_oracle(self, a, b):
        # independent dense-array convolution over a shifted window
        lo = -90
        size = 181
        da = [Fraction(0)] * size
        db = [Fraction(0)] * size
        for e, num, den in a.to_triples():
            da[e - lo] = Fraction(num, den)
        for e, num, den in b.to_triples():
            db[e - lo] = Fraction(num, den)
        prod = {}
        for i, x in enumerate(da):
            if not x:
                continue
            for j, y in enumerate(db):
                if not y:
                    continue
                e = (i + lo) + (j + lo)
                prod[e] = prod.get(e, Fraction(0)) + x * y
        assert a * b == LaurentScalar(prod)


class TestBar:
    def test_bar_q(self):
        assert LaurentScalar.q_power(1).bar() == LaurentScalar.q_power(-1)

    def test_bar_half_power(self):
        assert LaurentScalar.monomial(1, 1).bar() == LaurentScalar.monomial(1, -1)

    @pytest.mark.parametrize("k", range(7))
    def test_quantum_integers_fixed(self, k):
        assert quantum_integer(k).bar() == quantum_integer(k)

    @given(scalars, scalars)
    def test_bar_ring_homomorphism(self, a, b):
        assert (a * b).bar() == a.bar() * b.bar()
        assert (a + b).bar() == a.bar() + b.bar()

    @given(scalars)
    def test_bar_involutive(self, a):
        assert a.bar().bar() == a


class TestSerialization:
    @given(scalars)
    def test_triples_round_trip(self, a):
        assert LaurentScalar.from_triples(a.to_triples()) == a

    def test_triples_sorted(self):
        t = (quantum_integer(4) * LaurentScalar.monomial(-1, 3)).to_triples()
        assert [e for e, _, _ in t] == sorted(e for e, _, _ in t)

    def test_str_half_exponents(self):
        assert str(LaurentScalar.monomial(1, 1)) == "q^{1/2}"
        assert str(LaurentScalar.monomial(-1, -3)) == "-q^{-3/2}"
        assert str(ZERO) == "0"
