"""Braid words on n strands and the Artin action on the free group F_n.

Letters are nonzero integers: g > 0 is the Artin generator sigma_g, g < 0 is
sigma_{|g|}^{-1}.  Words compose left to right everywhere in this package: the
word [1, 2] means "apply sigma_1, then sigma_2", both for free-group
automorphisms and for representation matrices.

Essentiality (omitting at least one generator index) is judged on the raw
letter sequence, never after rewriting; `free_reduce` is available separately
for callers that want adjacent-inverse cancellation first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import IndexOutOfRange, ParseError

_TOKEN_S = re.compile(r"s(\d+)(?:\^(-?\d+))?\Z")
_TOKEN_INT = re.compile(r"[+-]?\d+\Z")


def _check_letter(g: int, strands: int) -> None:
    if g == 0:
        raise IndexOutOfRange("generator index 0 is not allowed")
    if not 1 <= abs(g) <= strands - 1:
        raise IndexOutOfRange(
            f"generator index {abs(g)} outside [1, {strands - 1}] for {strands} strands"
        )


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_strands, as a raw letter sequence."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise IndexOutOfRange(f"braid group needs >= 2 strands, got {self.strands}")
        letters = tuple(int(g) for g in self.letters)
        object.__setattr__(self, "letters", letters)
        for g in letters:
            _check_letter(g, self.strands)

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        """Parse whitespace-separated tokens: `s<k>`, `s<k>^<p>`, or signed ints.

        Powers expand in place (s2^4 -> 2,2,2,2; s2^-3 -> -2,-2,-2).
        """
        letters: list[int] = []
        for token in text.split():
            m = _TOKEN_S.match(token)
            if m:
                k = int(m.group(1))
                p = int(m.group(2)) if m.group(2) is not None else 1
                if k == 0:
                    raise IndexOutOfRange("generator index 0 is not allowed")
                g = k if p >= 0 else -k
                letters.extend([g] * abs(p))
                continue
            if _TOKEN_INT.match(token):
                letters.append(int(token))
                continue
            raise ParseError(f"bad braid token {token!r}")
        return cls(strands, tuple(letters))

    def to_text(self) -> str:
        """Serialize in `s` form, collapsing runs of a repeated letter."""
        parts: list[str] = []
        i = 0
        letters = self.letters
        while i < len(letters):
            g = letters[i]
            j = i
            while j < len(letters) and letters[j] == g:
                j += 1
            run = j - i
            power = run if g > 0 else -run
            if power == 1:
                parts.append(f"s{g}")
            else:
                parts.append(f"s{abs(g)}^{power}")
            i = j
        return " ".join(parts)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if not isinstance(other, BraidWord):
            return NotImplemented
        if self.strands != other.strands:
            raise IndexOutOfRange("cannot concatenate words in different braid groups")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.strands, self.letters * k)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def free_reduce(self) -> "BraidWord":
        """Cancel adjacent sigma_i sigma_i^{-1} pairs only (no braid relations)."""
        stack: list[int] = []
        for g in self.letters:
            if stack and stack[-1] == -g:
                stack.pop()
            else:
                stack.append(g)
        return BraidWord(self.strands, tuple(stack))

    def generator_support(self) -> set[int]:
        return {abs(g) for g in self.letters}

    def missing_generators(self) -> list[int]:
        support = self.generator_support()
        return [k for k in range(1, self.strands) if k not in support]

    def is_essential(self) -> bool:
        """True iff some generator index in [1, n-1] never appears (raw word)."""
        return len(self.generator_support()) < self.strands - 1

    def act_on_free_group(self) -> list["FreeGroupWord"]:
        """Images of alpha_1..alpha_n under the word's automorphism of F_n.

        Letters apply left to right: the image of alpha_j under [g1, g2] is
        phi_{g2}(phi_{g1}(alpha_j)).
        """
        images = [(j,) for j in range(1, self.strands + 1)]
        for g in self.letters:
            images = [_apply_letter(g, w) for w in images]
        return [FreeGroupWord(w) for w in images]

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": self.to_text()}


def _apply_letter(g: int, word: tuple[int, ...]) -> tuple[int, ...]:
    """Substitute each free-group letter by its image under sigma_g, reducing."""
    i = abs(g)
    if g > 0:
        # alpha_i -> alpha_i alpha_{i+1} alpha_i^{-1}; alpha_{i+1} -> alpha_i
        images = {i: (i, i + 1, -i), i + 1: (i,)}
    else:
        # alpha_i -> alpha_{i+1}; alpha_{i+1} -> alpha_{i+1}^{-1} alpha_i alpha_{i+1}
        images = {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
    out: list[int] = []
    for a in word:
        chunk = images.get(abs(a), (abs(a),))
        if a < 0:
            chunk = tuple(-x for x in reversed(chunk))
        for x in chunk:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class FreeGroupWord:
    """A freely reduced word in F_n; letters are signed generator indices."""

    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0:
                raise IndexOutOfRange("free-group generator index 0 is not allowed")
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def generator(cls, j: int) -> "FreeGroupWord":
        return cls((j,))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "FreeGroupWord") -> "FreeGroupWord":
        if not isinstance(other, FreeGroupWord):
            return NotImplemented
        return FreeGroupWord(self.letters + other.letters)

    def inverse(self) -> "FreeGroupWord":
        return FreeGroupWord(tuple(-a for a in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def is_conjugate_of_generator(self) -> bool:
        """True iff the reduced form is u alpha_j u^{-1} for some j >= 1."""
        ls = self.letters
        n = len(ls)
        if n % 2 == 0:
            return False
        if ls[n // 2] <= 0:
            return False
        return all(ls[i] == -ls[n - 1 - i] for i in range(n // 2))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for a in self.letters:
            parts.append(f"a{a}" if a > 0 else f"a{-a}^-1")
        return " ".join(parts)


def _reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


# Module-level aliases matching the operation names of the public API.


def parse(text: str, strands: int) -> BraidWord:
    return BraidWord.parse(text, strands)


def free_reduce(w: BraidWord) -> BraidWord:
    return w.free_reduce()


def generator_support(w: BraidWord) -> set[int]:
    return w.generator_support()


def is_essential(w: BraidWord) -> bool:
    return w.is_essential()


def act_on_free_group(w: BraidWord) -> list[FreeGroupWord]:
    return w.act_on_free_group()


def rho(n: int) -> FreeGroupWord:
    """The product alpha_1 ... alpha_n, fixed by every braid automorphism."""
    return FreeGroupWord(tuple(range(1, n + 1)))
