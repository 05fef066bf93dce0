"""Finite and periodic binary words.

Words are plain ``str`` objects over the letters ``a`` and ``b``; the empty
string plays the role of the empty word.  All scans here are brute-force
window scans over a few copies of the period, which is the reference
behaviour at the sizes this package targets (periods of a few dozen letters).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

ALPHABET = "ab"
EMPTY = ""

_SWAP = str.maketrans("ab", "ba")


class WordError(ValueError):
    """Raised for malformed words or invalid periods."""


def parse_word(text: str) -> str:
    if any(ch not in ALPHABET for ch in text):
        raise WordError(f"word {text!r} has letters outside {{a,b}}")
    return text


def swap_letters(w: str) -> str:
    return w.translate(_SWAP)


def rotations(w: str) -> list[str]:
    return [w[i:] + w[:i] for i in range(len(w))] or [w]


def least_rotation(w: str) -> str:
    return min(rotations(w))


def is_primitive(u: str) -> bool:
    """True iff ``u`` is not ``v**k`` for a shorter word ``v``."""
    if not u:
        raise WordError("empty period")
    n = len(u)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and u[:d] * (n // d) == u:
            return False
    return True


def primitive_root(u: str) -> str:
    if not u:
        raise WordError("empty period")
    n = len(u)
    for d in range(1, n + 1):
        if n % d == 0 and u[:d] * (n // d) == u:
            return u[:d]
    return u  # unreachable


def is_factor_of(v: str, w: str) -> bool:
    return v in w


@dataclass(frozen=True)
class PeriodicWord:
    """The bi-infinite word ``...uuu...`` with a primitive period ``u``.

    Two instances with periods that are rotations of each other describe the
    same bi-infinite word up to shift; compare :meth:`normalized` for that.
    """

    period: str

    def __post_init__(self) -> None:
        parse_word(self.period)
        if not self.period:
            raise WordError("empty period")
        if not is_primitive(self.period):
            raise WordError("period is a proper power")

    def __len__(self) -> int:
        return len(self.period)

    def __str__(self) -> str:
        return f"({self.period})^inf"

    def normalized(self) -> "PeriodicWord":
        return PeriodicWord(least_rotation(self.period))

    def same_word(self, other: "PeriodicWord") -> bool:
        return least_rotation(self.period) == least_rotation(other.period)

    def unrolled(self, length: int) -> str:
        """A finite stretch of the word containing every factor of ``length``."""
        u = self.period
        return u * (-(-length // len(u)) + 1)


def is_factor(W: PeriodicWord, v: str) -> bool:
    return v in W.unrolled(len(v))


def significance(W: PeriodicWord, v: str) -> int:
    """Number of cyclic occurrences of ``v`` within one period of ``W``."""
    u = W.period
    d = len(u)
    if not v:
        return d
    s = W.unrolled(len(v))
    t = len(v)
    return sum(1 for i in range(d) if s[i : i + t] == v)


def cyclic_windows(W: PeriodicWord, length: int) -> set[str]:
    """Factors of ``W`` of exactly ``length`` letters."""
    s = W.unrolled(length)
    return {s[i : i + length] for i in range(len(W.period))}


def factors_up_to(W: PeriodicWord, max_len: int) -> set[str]:
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    out = {EMPTY}
    for k in range(1, max_len + 1):
        out |= cyclic_windows(W, k)
    return out


@lru_cache(maxsize=None)
def _fib_nonneg(k: int) -> int:
    a, b = 1, 1  # F(0), F(1)
    for _ in range(k):
        a, b = b, a + b
    return a


def fibonacci(k: int) -> int:
    """Fibonacci numbers with F(0) = F(1) = 1, extended to all integers.

    Negative indices follow F(k-1) = F(k+1) - F(k), so F(-1) = 0, F(-2) = 1.
    """
    if k >= 0:
        return _fib_nonneg(k)
    # F(-m) = (-1)**m * F(m-2) for m >= 2
    m = -k
    if m == 1:
        return 0
    return (-1) ** m * _fib_nonneg(m - 2)
