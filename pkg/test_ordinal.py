import pytest
from hypothesis import given, strategies as st

from ordinal import (
    Ordinal, OrdinalError, OrdinalKind, Comparison, ZERO, ONE, OMEGA,
    from_int, is_finite, finite_value, compare, classify, predecessor, successor,
    fund_seq, least_index, parse_ordinal, format_ordinal,
)


def _from_pairs(pairs):
    merged = {}
    for exponent, coefficient in pairs:
        merged[exponent] = max(coefficient, merged.get(exponent, 0))
    return Ordinal(tuple(sorted(merged.items(), key=lambda item: item[0], reverse=True)))


ordinals = st.recursive(
    st.integers(0, 6).map(from_int),
    lambda inner: st.lists(st.tuples(inner, st.integers(1, 4)), min_size=1, max_size=3).map(_from_pairs),
    max_leaves=8,
)
limits = ordinals.filter(lambda a: classify(a) is OrdinalKind.LIMIT)


class TestNotation:
    @pytest.mark.parametrize('text', ['0', '7', 'w', 'w+1', 'w*2+1', 'w^2*3+w+5', 'w^w', 'w^w^w',
                                      'w^(w+1)', 'w^(w*2)+w^w*3', 'w^w^2'])
    def test_canonical_text_round_trips(self, text):
        assert format_ordinal(parse_ordinal(text)) == text

    def test_exponent_towers_associate_to_the_right(self):
        omega_omega = Ordinal(((OMEGA, 1),))
        assert parse_ordinal('w^w^w') == Ordinal(((omega_omega, 1),))

    def test_whitespace_is_ignored(self):
        assert parse_ordinal(' w ^ 2 + 1 ') == parse_ordinal('w^2+1')

    @pytest.mark.parametrize('text', ['', 'w+w^2', '1+w', 'w*0', 'w+0', 'w^', 'x', 'w**2', '(w', 'w+1)', '2+2',
                                      'w^0', 'w^0*3', 'w^(0)', 'w^w^0'])
    def test_malformed_notation_is_rejected(self, text):
        with pytest.raises(OrdinalError):
            parse_ordinal(text)

    def test_constructor_rejects_non_canonical_terms(self):
        with pytest.raises(OrdinalError):
            Ordinal(((ZERO, 1), (ONE, 1)))
        with pytest.raises(OrdinalError):
            Ordinal(((ONE, 0),))

    def test_ordinals_are_immutable(self):
        with pytest.raises(AttributeError):
            OMEGA.terms = ()

    @given(ordinals)
    def test_parse_inverts_format(self, a):
        assert parse_ordinal(format_ordinal(a)) == a


class TestComparison:
    @pytest.mark.parametrize('smaller,larger', [
        ('0', '1'), ('5', 'w'), ('w', 'w+1'), ('w+100', 'w*2'), ('w^5*100', 'w^w'),
        ('w^w', 'w^(w+1)'), ('w^2+w', 'w^2+w+1'), ('w^w^2', 'w^w^w'),
    ])
    def test_known_orderings(self, smaller, larger):
        a, b = parse_ordinal(smaller), parse_ordinal(larger)
        assert compare(a, b) is Comparison.LESS
        assert compare(b, a) is Comparison.GREATER
        assert a < b

    @given(ordinals, ordinals)
    def test_antisymmetric(self, a, b):
        assert compare(a, b).value == -compare(b, a).value
        assert (compare(a, b) is Comparison.EQUAL) == (a == b)

    @given(ordinals, ordinals, ordinals)
    def test_transitive(self, a, b, c):
        low, mid, high = sorted([a, b, c])
        assert low <= mid <= high
        assert low <= high

    @given(ordinals)
    def test_hash_agrees_with_equality(self, a):
        assert hash(a) == hash(parse_ordinal(format_ordinal(a)))


class TestArithmetic:
    def test_finite_values(self):
        assert finite_value(from_int(0)) == 0
        assert finite_value(from_int(9)) == 9
        assert finite_value(OMEGA) is None
        assert is_finite(from_int(3)) and not is_finite(OMEGA)

    def test_classify(self):
        assert classify(ZERO) is OrdinalKind.ZERO
        assert classify(parse_ordinal('w*2+3')) is OrdinalKind.SUCCESSOR
        assert classify(parse_ordinal('w^2+w')) is OrdinalKind.LIMIT

    def test_predecessor(self):
        assert predecessor(parse_ordinal('w+1')) == OMEGA
        assert predecessor(parse_ordinal('w^2+3')) == parse_ordinal('w^2+2')
        assert predecessor(ONE) == ZERO
        with pytest.raises(OrdinalError):
            predecessor(OMEGA)
        with pytest.raises(OrdinalError):
            predecessor(ZERO)

    def test_successor(self):
        assert successor(parse_ordinal('w+2')) == parse_ordinal('w+3')
        assert successor(OMEGA) == parse_ordinal('w+1')
        assert successor(ZERO) == ONE

    @given(ordinals)
    def test_successor_then_predecessor_is_identity(self, a):
        assert predecessor(successor(a)) == a
        assert a < successor(a)

    @pytest.mark.parametrize('limit,i,expected', [
        ('w', 3, '3'), ('w*2', 3, 'w+3'), ('w^2', 3, 'w*3'), ('w^w', 3, 'w^3'),
        ('w^(w+1)', 2, 'w^w*2'), ('w^w^w', 2, 'w^w^2'), ('w^2+w', 4, 'w^2+4'),
        ('w^2*2', 1, 'w^2+w'),
    ])
    def test_fundamental_sequences(self, limit, i, expected):
        assert format_ordinal(fund_seq(parse_ordinal(limit), i)) == expected

    def test_fund_seq_rejects_non_limits_and_bad_indices(self):
        with pytest.raises(OrdinalError):
            fund_seq(parse_ordinal('w+1'), 1)
        with pytest.raises(OrdinalError):
            fund_seq(ZERO, 1)
        with pytest.raises(OrdinalError):
            fund_seq(OMEGA, 0)

    @given(limits, st.integers(1, 6))
    def test_fund_seq_increases_below_its_limit(self, b, i):
        assert fund_seq(b, i) < fund_seq(b, i + 1) < b

    @given(limits)
    def test_fund_seq_is_strictly_increasing_over_the_first_64_indices(self, b):
        sequence = [fund_seq(b, i) for i in range(1, 65)]
        assert all(earlier < later for earlier, later in zip(sequence, sequence[1:]))
        assert sequence[-1] < b


class TestLeastIndex:
    @pytest.mark.parametrize('limit,alpha,strict,expected', [
        ('w', '3', True, 4), ('w', '3', False, 3), ('w', '0', True, 1),
        ('w^2', 'w*5+2', True, 6), ('w^2', 'w*5', False, 5),
        ('w^w', 'w^3', True, 4), ('w*2', 'w+1', True, 2),
    ])
    def test_known_indices(self, limit, alpha, strict, expected):
        assert least_index(parse_ordinal(limit), parse_ordinal(alpha), strict) == expected

    def test_large_finite_target(self):
        assert least_index(OMEGA, from_int(10 ** 12)) == 10 ** 12 + 1
        assert least_index(parse_ordinal('w^2'), parse_ordinal('w*1000000000+7')) == 10 ** 9 + 1

    @given(limits, st.integers(1, 10 ** 6))
    def test_agrees_with_the_sequence(self, b, k):
        element = fund_seq(b, k)
        assert least_index(b, element, strict=False) == k
        assert least_index(b, element) == k + 1

    def test_target_must_lie_below_the_limit(self):
        with pytest.raises(OrdinalError):
            least_index(OMEGA, OMEGA)
        with pytest.raises(OrdinalError):
            least_index(parse_ordinal('w+1'), ONE)

    def test_pickle_round_trip(self):
        import pickle
        a = parse_ordinal('w^w+w*2+1')
        assert pickle.loads(pickle.dumps(a)) == a
