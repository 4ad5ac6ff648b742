"""Braidwords, strictness, inhomogeneity, and rewriting.

A braidword is a finite sequence of signed Artin generators s_i^(+-1) of
the braid group on ``strands`` strings.  A word is *strict* when every
generator index 1..n-1 occurs at least once; closures of non-strict words
are split links and most surface-level computations refuse them.

The *inhomogeneity* of a strict word is

    I(word) = sum_i min(#occurrences of s_i, #occurrences of s_i^-1),

the per-column unavoidable sign mixing.  A word with I = 0 is homogeneous;
homogeneous closures are fibered, and in general twice the inhomogeneity
bounds the Morse-Novikov number of the closure from above.
``minimize_inhomogeneity`` searches over rewriting moves that preserve the
closure for a representative word of smaller inhomogeneity.
"""

from __future__ import annotations

import json
import random
import re
from collections import Counter, deque
from dataclasses import dataclass

Letter = tuple[int, int]  # (generator index, sign)

_TOKEN = re.compile(r"^(-?)s?(\d+)$")


class BraidInputError(ValueError):
    """Malformed braidword text or out-of-range generator index."""


class NonStrictWordError(ValueError):
    """The operation needs every generator index to occur (the closure of a
    non-strict word is a split link)."""


@dataclass(frozen=True)
class Braidword:
    """A word in the Artin generators of the braid group on ``strands`` strings."""

    strands: int
    letters: tuple[Letter, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise BraidInputError(f"strand count must be >= 1, got {self.strands}")
        for idx, sign in self.letters:
            if not 1 <= idx <= self.strands - 1:
                raise BraidInputError(
                    f"generator index {idx} out of range [1, {self.strands - 1}]"
                )
            if sign not in (-1, 1):
                raise BraidInputError(f"letter sign must be -1 or +1, got {sign}")

    def __len__(self) -> int:
        return len(self.letters)

    @staticmethod
    def from_ints(strands: int, word: list[int] | tuple[int, ...]) -> "Braidword":
        """Build from signed integers, e.g. [1, -2, 1] for s1 s2^-1 s1."""
        letters = []
        for v in word:
            if v == 0:
                raise BraidInputError("0 is not a valid signed generator")
            letters.append((abs(v), 1 if v > 0 else -1))
        return Braidword(strands, tuple(letters))

    def to_ints(self) -> list[int]:
        return [idx * sign for idx, sign in self.letters]

    def to_json(self) -> str:
        return json.dumps({"strands": self.strands, "word": self.to_ints()})

    @staticmethod
    def from_json(text: str) -> "Braidword":
        try:
            data = json.loads(text)
            return Braidword.from_ints(int(data["strands"]), list(data["word"]))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise BraidInputError(f"bad braidword JSON: {exc}") from exc

    def __str__(self) -> str:
        return " ".join(("" if s > 0 else "-") + f"s{i}" for i, s in self.letters)


def parse_braidword(text: str, strands: int) -> Braidword:
    """Parse whitespace/comma-separated tokens like ``s3``, ``-s3``, ``3``, ``-3``."""
    letters: list[Letter] = []
    for token in text.replace(",", " ").split():
        m = _TOKEN.match(token)
        if m is None:
            raise BraidInputError(f"malformed braid letter {token!r}")
        sign = -1 if m.group(1) == "-" else 1
        letters.append((int(m.group(2)), sign))
    return Braidword(strands, tuple(letters))


def is_strict(b: Braidword) -> bool:
    """True iff every generator index 1..n-1 occurs in the word."""
    needed = set(range(1, b.strands))
    return needed.issubset(idx for idx, _ in b.letters)


def exponent_table(b: Braidword) -> Counter[tuple[int, int]]:
    """Occurrence counts v(i, sign); values sum to the word length."""
    return Counter(b.letters)


def inhomogeneity(b: Braidword) -> int:
    """sum_i min(v(i,-1), v(i,+1)) for a strict word; 0 iff homogeneous."""
    if not is_strict(b):
        raise NonStrictWordError(
            "inhomogeneity is defined for strict words only (split closure)"
        )
    v = exponent_table(b)
    return sum(min(v[(i, -1)], v[(i, 1)]) for i in range(1, b.strands))


def mn_upper_bound(b: Braidword) -> int:
    """Upper bound 2*I(word) for the Morse-Novikov number of the closure."""
    return 2 * inhomogeneity(b)


def rewrite_neighbors(b: Braidword) -> set[Braidword]:
    """All words one move away from ``b``.

    Moves: free reduction of an adjacent cancelling pair, cyclic permutation
    by one position (conjugation; same closure), swap of adjacent letters
    with distant indices, and the braid relation
    s_i^e s_j^e s_i^e <-> s_j^e s_i^e s_j^e for |i-j| = 1.
    """
    out: set[Braidword] = set()
    L = b.letters
    k = len(L)
    n = b.strands
    for t in range(k - 1):
        (i, e), (j, f) = L[t], L[t + 1]
        if i == j and e == -f:
            out.add(Braidword(n, L[:t] + L[t + 2 :]))
        if abs(i - j) >= 2:
            out.add(Braidword(n, L[:t] + (L[t + 1], L[t]) + L[t + 2 :]))
    if k >= 2:
        out.add(Braidword(n, L[1:] + L[:1]))
        out.add(Braidword(n, L[-1:] + L[:-1]))
    for t in range(k - 2):
        (i, e1), (j, e2), (l, e3) = L[t], L[t + 1], L[t + 2]
        if i == l and abs(i - j) == 1 and e1 == e2 == e3:
            out.add(Braidword(n, L[:t] + ((j, e1), (i, e1), (j, e1)) + L[t + 3 :]))
    return out


def _word_key(b: Braidword) -> tuple[int, tuple[Letter, ...]]:
    return (len(b.letters), b.letters)


def minimize_inhomogeneity(b: Braidword, budget: int) -> tuple[Braidword, int]:
    """Breadth-first search over rewriting moves for a low-inhomogeneity word.

    Visits at most ``budget`` distinct words (the input included).  Returns
    the strict visited word of least inhomogeneity, tie-broken by length and
    then lexicographically, together with its inhomogeneity.  Non-strict
    words stay in the frontier as intermediates but never win.  The returned
    value is >= the true minimum over all representing words and <= I(b).
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    if not is_strict(b):
        raise NonStrictWordError("minimize_inhomogeneity needs a strict word")
    best_word = b
    best = (inhomogeneity(b), len(b.letters), b.letters)
    seen = {b}
    queue = deque([b])
    while queue:
        w = queue.popleft()
        if is_strict(w):
            key = (inhomogeneity(w), len(w.letters), w.letters)
            if key < best:
                best, best_word = key, w
            if best[0] == 0:
                break
        for nb in sorted(rewrite_neighbors(w), key=_word_key):
            if nb not in seen and len(seen) < budget:
                seen.add(nb)
                queue.append(nb)
    return best_word, best[0]


def random_strict_braidword(rng: random.Random, strands: int, length: int) -> Braidword:
    """A uniform-ish random strict word: each column once, padded, then shuffled."""
    if length < strands - 1:
        raise ValueError("length must be at least strands - 1 for strictness")
    if strands == 1:
        return Braidword(1, ())
    letters = [(i, rng.choice((-1, 1))) for i in range(1, strands)]
    while len(letters) < length:
        letters.append((rng.randint(1, strands - 1), rng.choice((-1, 1))))
    rng.shuffle(letters)
    return Braidword(strands, tuple(letters))
