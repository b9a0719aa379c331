"""Finite words over a small alphabet and their self-overlap structure.

A word w = w_1 ... w_k over {0, ..., m-1} self-overlaps at shift l when its
length-(k-l) prefix equals its length-(k-l) suffix, i.e. w_i = w_{i+l} for
all 1 <= i <= k-l.  The autocorrelation of w records these shifts as a bit
vector [b_1 ... b_k] with b_{l+1} = 1 iff w overlaps itself at shift l (so
b_1 = 1 always).  Two derived objects drive everything downstream:

* the correlation number, the bits read as a binary integer
  sum_i b_i * 2^(k-i), which totally orders correlation vectors, and
* the correlation polynomial f_w(z) = sum_i b_i * z^(k-i), whose value
  f_w(2) is the correlation number.

The recurrence time of w is the first shift at which w can overlap itself:
tau(w) = min{ l in [1, k-1] : b_{l+1} = 1 }, and tau(w) = k when no proper
self-overlap exists.  For the cylinder of w under the full shift on m
symbols this equals the first n with T^n(cylinder) meeting the cylinder.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass(frozen=True)
class Word:
    """An immutable word over {0, ..., alphabet-1}."""

    symbols: tuple[int, ...]
    alphabet: int = 2

    def __post_init__(self):
        if self.alphabet < 2:
            raise ValueError("alphabet size must be at least 2")
        if len(self.symbols) == 0:
            raise ValueError("empty word")
        if any(not (0 <= s < self.alphabet) for s in self.symbols):
            raise ValueError(f"symbols out of range for alphabet {self.alphabet}")

    @classmethod
    def from_string(cls, text: str, alphabet: int = 2) -> "Word":
        """Parse a word from digit characters, e.g. '0010' or '21' (m=3)."""
        if not text or not text.isdigit():
            raise ValueError(f"not a word of digits: {text!r}")
        syms = tuple(int(ch) for ch in text)
        m = max(alphabet, max(syms) + 1)
        return cls(syms, m)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def complement(self) -> "Word":
        """Swap 0 <-> 1; defined for binary words only."""
        if self.alphabet != 2:
            raise ValueError("complement is a binary-word operation")
        return Word(tuple(1 - s for s in self.symbols), 2)

    def prefix(self, n: int) -> "Word":
        return Word(self.symbols[:n], self.alphabet)


@dataclass(frozen=True)
class Correlation:
    """Autocorrelation bit vector [b_1 ... b_k] of a word."""

    bits: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + "".join(str(b) for b in self.bits) + "]"

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def number(self) -> int:
        """Bits read as a binary integer (MSB = b_1)."""
        n = 0
        for b in self.bits:
            n = (n << 1) | b
        return n


@dataclass(frozen=True)
class CorrelationPolynomial:
    """f_w(z) = b_1 z^(k-1) + b_2 z^(k-2) + ... + b_k."""

    bits: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.bits) - 1

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Descending powers: (b_1, ..., b_k)."""
        return self.bits

    @property
    def ascending(self) -> tuple[int, ...]:
        """Ascending powers, the polyroots convention."""
        return tuple(reversed(self.bits))

    def __call__(self, z):
        acc = 0
        for b in self.bits:
            acc = acc * z + b
        return acc

    def __str__(self) -> str:
        k = len(self.bits)
        terms = [f"z^{k - 1 - i}" if k - 1 - i > 1 else ("z" if k - 1 - i == 1 else "1")
                 for i, b in enumerate(self.bits) if b]
        return " + ".join(terms) if terms else "0"


def autocorrelation(word: Word | str) -> Correlation:
    """Self-overlap bit vector of a word.

    b_{l+1} = 1 iff the word matches itself shifted by l places.
    """
    w = word.symbols if isinstance(word, Word) else tuple(int(c) for c in str(word))
    k = len(w)
    bits = []
    for shift in range(k):
        n = k - shift
        bits.append(1 if w[:n] == w[shift:shift + n] else 0)
    return Correlation(tuple(bits))


def correlation_number(word: Word | str) -> int:
    return autocorrelation(word).number


def correlation_polynomial(word: Word | str) -> CorrelationPolynomial:
    return CorrelationPolynomial(autocorrelation(word).bits)


def recurrence_time(word: Word | str) -> int:
    """First shift l >= 1 at which the word self-overlaps; len(word) if none.

    This is the symbolic return time of the word's cylinder set under the
    full shift: the n-step image of the cylinder meets the cylinder in
    positive measure exactly when b_{n+1} = 1 (or n >= len(word)).
    """
    bits = autocorrelation(word).bits
    for l in range(1, len(bits)):
        if bits[l]:
            return l
    return len(bits)


def all_words(length: int, alphabet: int = 2):
    """Yield all words of a given length in lexicographic order."""
    if length < 1:
        raise ValueError("length must be positive")
    for n in range(alphabet ** length):
        syms = []
        x = n
        for _ in range(length):
            syms.append(x % alphabet)
            x //= alphabet
        yield Word(tuple(reversed(syms)), alphabet)


def word_from_index(index: int, length: int, alphabet: int = 2) -> Word:
    """Word of the index-th cylinder at a given level, 1-based from the left.

    For the binary doubling map this is just the (index-1) in binary,
    MSB first: cylinder [ (i-1)/m^N, i/m^N ) carries the base-m digits of
    i-1 padded to length N.
    """
    if not (1 <= index <= alphabet ** length):
        raise ValueError(f"index {index} out of range at level {length}")
    x = index - 1
    syms = []
    for _ in range(length):
        syms.append(x % alphabet)
        x //= alphabet
    return Word(tuple(reversed(syms)), alphabet)


def cylinder_interval(word: Word | str) -> tuple[Fraction, Fraction]:
    """[a, b) interval of the word's cylinder under the base-m expansion."""
    w = word if isinstance(word, Word) else Word.from_string(str(word))
    m = w.alphabet
    num = 0
    for s in w.symbols:
        num = num * m + s
    den = m ** len(w)
    return Fraction(num, den), Fraction(num + 1, den)


def word_of_point(x, length: int, alphabet: int = 2, side: str = "right") -> Word:
    """First `length` base-m digits of a point in [0, 1].

    Accepted point forms: Fraction/int/float, fraction or decimal strings
    ('1/3', '0.625'), the token 'sqrt2-1' (digits streamed exactly via
    integer square roots, no rounding), or 'digits:0110...' giving the
    expansion outright.  When x sits on a cell boundary at this depth the
    two adjacent cylinders differ; side 'right' returns the cell with x on
    its left edge, side 'left' the one with x on its right edge (the only
    choice at x = 1).
    """
    m = alphabet
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if isinstance(x, str):
        t = x.strip()
        if t == "sqrt2-1":
            # floor((sqrt(2)-1) m^N) for m=2: isqrt(2*4^N) - 2^N
            if m != 2:
                raise ValueError("sqrt2-1 digits are defined for base 2")
            k = isqrt(2 * 4 ** length) - 2 ** length
            return Word(_digits(k, length, m), m)
        if t.startswith("digits:"):
            body = t[len("digits:"):]
            if len(body) < length:
                raise ValueError(f"need {length} digits, got {len(body)}")
            return Word.from_string(body[:length], m)
        x = Fraction(t)
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("point must lie in [0, 1]")
    scaled = x * m ** length
    k = scaled.numerator // scaled.denominator
    if scaled.denominator == 1 and (side == "left" or k == m ** length):
        k -= 1
    if not 0 <= k < m ** length:
        raise ValueError(f"no level-{length} cell on the {side} of {x}")
    return Word(_digits(k, length, m), m)


def _digits(k: int, length: int, m: int) -> tuple[int, ...]:
    syms = []
    for _ in range(length):
        syms.append(k % m)
        k //= m
    return tuple(reversed(syms))
