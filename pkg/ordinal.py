"""
Countable ordinals below epsilon_0 in Cantor normal form
"""

import re
import logging
from enum import Enum
from functools import total_ordering
from typing import List, Optional, Tuple

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(r'\s*(?:(\d+)|(.))')


class OrdinalError(ValueError):
    """Raised for malformed ordinal notation or an operation on the wrong kind of ordinal"""


class Comparison(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class OrdinalKind(Enum):
    ZERO = 'zero'
    SUCCESSOR = 'successor'
    LIMIT = 'limit'


@total_ordering
class Ordinal:
    """
    Ordinal written as a sum of w^exponent * coefficient terms.

    Terms are kept with strictly decreasing exponents and positive
    coefficients; the empty sum is 0. Instances are immutable and hashable.
    """

    __slots__ = ('terms', '_hash')

    def __init__(self, terms: Tuple[Tuple['Ordinal', int], ...] = ()):
        terms = tuple(terms)
        for index, (exponent, coefficient) in enumerate(terms):
            if not isinstance(exponent, Ordinal):
                raise OrdinalError(f"Exponent must be an Ordinal, got {exponent!r}")
            if coefficient < 1:
                raise OrdinalError(f"Zero coefficient in term {index + 1}")
            if index > 0 and compare(terms[index - 1][0], exponent) is not Comparison.GREATER:
                raise OrdinalError("Exponents must be strictly decreasing (non-canonical order)")
        object.__setattr__(self, 'terms', terms)
        object.__setattr__(self, '_hash', hash(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) is Comparison.LESS

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return Ordinal, (self.terms,)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def from_int(n: int) -> Ordinal:
    """Finite ordinal n"""
    if n < 0:
        raise OrdinalError(f"Ordinals are non-negative, got {n}")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


def is_finite(a: Ordinal) -> bool:
    return not a.terms or (len(a.terms) == 1 and not a.terms[0][0])


def finite_value(a: Ordinal) -> Optional[int]:
    """Python int for a finite ordinal, None otherwise"""
    if not a.terms:
        return 0
    if is_finite(a):
        return a.terms[0][1]
    return None


def compare(a: Ordinal, b: Ordinal) -> Comparison:
    """Lexicographic comparison of CNF term lists, exponent first then coefficient"""
    for (exp_a, coef_a), (exp_b, coef_b) in zip(a.terms, b.terms):
        by_exponent = compare(exp_a, exp_b)
        if by_exponent is not Comparison.EQUAL:
            return by_exponent
        if coef_a != coef_b:
            return Comparison.LESS if coef_a < coef_b else Comparison.GREATER
    if len(a.terms) == len(b.terms):
        return Comparison.EQUAL
    return Comparison.LESS if len(a.terms) < len(b.terms) else Comparison.GREATER


def classify(a: Ordinal) -> OrdinalKind:
    if not a.terms:
        return OrdinalKind.ZERO
    if not a.terms[-1][0]:
        return OrdinalKind.SUCCESSOR
    return OrdinalKind.LIMIT


def predecessor(a: Ordinal) -> Ordinal:
    """The ordinal b with b + 1 = a"""
    kind = classify(a)
    if kind is not OrdinalKind.SUCCESSOR:
        raise OrdinalError(f"predecessor needs a successor ordinal, got {kind.value} {format_ordinal(a)}")
    head, (_, coefficient) = a.terms[:-1], a.terms[-1]
    if coefficient == 1:
        return Ordinal(head)
    return Ordinal(head + ((ZERO, coefficient - 1),))


def successor(a: Ordinal) -> Ordinal:
    """a + 1"""
    if classify(a) is OrdinalKind.SUCCESSOR:
        head, (_, coefficient) = a.terms[:-1], a.terms[-1]
        return Ordinal(head + ((ZERO, coefficient + 1),))
    return Ordinal(a.terms + ((ZERO, 1),))


def fund_seq(b: Ordinal, i: int) -> Ordinal:
    """
    i-th element (i >= 1) of the canonical fundamental sequence of a limit ordinal.

    Writing b = g + w^e * c with e > 0, the sequence runs through
    g' + w^d * i when e = d + 1 and g' + w^(e[i]) when e is a limit,
    where g' = g + w^e * (c - 1).
    """
    if i < 1:
        raise OrdinalError(f"Fundamental sequence index must be >= 1, got {i}")
    kind = classify(b)
    if kind is not OrdinalKind.LIMIT:
        raise OrdinalError(f"fund_seq needs a limit ordinal, got {kind.value} {format_ordinal(b)}")

    exponent, coefficient = b.terms[-1]
    head = b.terms[:-1]
    if coefficient > 1:
        head = head + ((exponent, coefficient - 1),)

    if classify(exponent) is OrdinalKind.SUCCESSOR:
        return Ordinal(head + ((predecessor(exponent), i),))
    return Ordinal(head + ((fund_seq(exponent, i), 1),))


def least_index(b: Ordinal, alpha: Ordinal, strict: bool = True) -> int:
    """
    Smallest i >= 1 with alpha < b[i] (alpha <= b[i] when strict is False).

    b[i] increases strictly towards b, so the search doubles i until the
    condition holds and then bisects.
    """
    if not alpha < b:
        raise OrdinalError(f"No element of the sequence for {format_ordinal(b)} reaches {format_ordinal(alpha)}")

    def reaches(i: int) -> bool:
        element = fund_seq(b, i)
        return alpha < element if strict else not element < alpha

    low, high = 0, 1
    while not reaches(high):
        low, high = high, high * 2
    while high - low > 1:
        middle = (low + high) // 2
        if reaches(middle):
            high = middle
        else:
            low = middle
    return high


# Notation

def format_ordinal(a: Ordinal) -> str:
    """Render in the w-notation accepted by parse_ordinal"""
    if not a.terms:
        return '0'
    return '+'.join(_format_term(exponent, coefficient) for exponent, coefficient in a.terms)


def _format_term(exponent: Ordinal, coefficient: int) -> str:
    if not exponent:
        return str(coefficient)
    text = 'w' if exponent == ONE else f"w^{_format_exponent(exponent)}"
    if coefficient != 1:
        text += f"*{coefficient}"
    return text


def _format_exponent(exponent: Ordinal) -> str:
    if is_finite(exponent):
        return str(finite_value(exponent))
    if len(exponent.terms) == 1 and exponent.terms[0][1] == 1:
        inner = exponent.terms[0][0]
        return 'w' if inner == ONE else f"w^{_format_exponent(inner)}"
    return f"({format_ordinal(exponent)})"


def _tokenize(text: str) -> List[str]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN_PATTERN.match(stripped, position)
        number, symbol = match.groups()
        if number is not None:
            tokens.append(number)
        elif symbol in ('w', '^', '*', '+', '(', ')'):
            tokens.append(symbol)
        else:
            raise OrdinalError(f"Unexpected character {symbol!r} at position {match.start(2)}")
        position = match.end()
    return tokens


class _OrdinalParser:
    """Recursive-descent reader for the w-notation"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0

    def peek(self) -> Optional[str]:
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None:
            raise OrdinalError(f"Unexpected end of input in {self.text!r}")
        if expected is not None and token != expected:
            raise OrdinalError(f"Expected {expected!r} but found {token!r} in {self.text!r}")
        self.position += 1
        return token

    def parse(self) -> Ordinal:
        if not self.tokens:
            raise OrdinalError("Empty ordinal notation")
        result = self.expr()
        if self.peek() is not None:
            raise OrdinalError(f"Trailing input {self.peek()!r} in {self.text!r}")
        return result

    def expr(self) -> Ordinal:
        terms = [self.term()]
        while self.peek() == '+':
            self.take('+')
            terms.append(self.term())

        if len(terms) == 1 and terms[0] == (ZERO, 0):
            return ZERO
        for exponent, coefficient in terms:
            if coefficient == 0:
                raise OrdinalError(f"Zero coefficient in {self.text!r}")
        return Ordinal(tuple(terms))

    def term(self) -> Tuple[Ordinal, int]:
        token = self.peek()
        if token is not None and token.isdigit():
            return ZERO, int(self.take())
        self.take('w')
        exponent = ONE
        if self.peek() == '^':
            self.take('^')
            exponent = self._exponent()
        coefficient = 1
        if self.peek() == '*':
            self.take('*')
            token = self.take()
            if not token.isdigit():
                raise OrdinalError(f"Coefficient must be a natural number, got {token!r}")
            coefficient = int(token)
        return exponent, coefficient

    def atom(self) -> Ordinal:
        token = self.peek()
        if token is not None and token.isdigit():
            return from_int(int(self.take()))
        if token == '(':
            self.take('(')
            inner = self.expr()
            self.take(')')
            return inner
        self.take('w')
        if self.peek() == '^':
            self.take('^')
            return Ordinal(((self._exponent(), 1),))
        return OMEGA

    def _exponent(self) -> Ordinal:
        exponent = self.atom()
        if not exponent:
            raise OrdinalError(f"Zero exponent is not canonical; write 1 for w^0 in {self.text!r}")
        return exponent


def parse_ordinal(text: str) -> Ordinal:
    """Parse canonical w-notation such as 'w^2*3+w+5'"""
    if text is None:
        raise OrdinalError("Empty ordinal notation")
    result = _OrdinalParser(str(text)).parse()
    logger.debug(f"Parsed ordinal {text!r} as {format_ordinal(result)}")
    return result
