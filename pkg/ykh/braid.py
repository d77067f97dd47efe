"""Braid words and the combinatorial operations the invariants consume.

Three word types share one grammar:

* ``BraidWord``: classical words in σ_1..σ_{n-1} (tokens ``s<i>^<e>``)
* ``FramedBraidWord``: framings t_1^{k_1}..t_n^{k_n} followed by a classical word
* ``SingularBraidWord``: classical letters mixed with singular letters ``tau<i>^<e>``

All words are immutable and canonical on construction: adjacent letters with
the same generator are merged and framed words are kept in split form with
the framings leftmost.

Permutations are tuples of 1-based images and compose as functions, so the
permutation of σ_a σ_b is s_a ∘ s_b and ``w t_j = t_{perm(w)(j)} w``.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .utils.exceptions import BraidSyntaxError, IndexOutOfRangeError, InvalidParameterError, SingularExponentError

Letter = Tuple[int, int]
Permutation = Tuple[int, ...]

BRAIDING = "s"
SINGULAR = "tau"

_HEADER = re.compile(r"\s*n\s*=\s*(\d+)\s*;")
_TOKEN = re.compile(r"(tau|s|t)(\d+)(?:\^(-?\d+))?")


def _merge_letters(letters: Iterable[Tuple]) -> Tuple:
    """Merge adjacent letters sharing every field but the last (the exponent)."""
    stack: List[Tuple] = []
    for letter in letters:
        if not letter[-1]:
            continue
        if stack and stack[-1][:-1] == letter[:-1]:
            total = stack[-1][-1] + letter[-1]
            stack.pop()
            if total:
                stack.append(letter[:-1] + (total,))
        else:
            stack.append(tuple(letter))
    return tuple(stack)


def _check_index(index: int, strands: int) -> None:
    if not 1 <= index <= strands - 1:
        raise IndexOutOfRangeError(f"generator index {index} outside 1..{strands - 1}")


def _power_token(name: str, index: int, exponent: int) -> str:
    return f"{name}{index}" if exponent == 1 else f"{name}{index}^{exponent}"


@dataclass(frozen=True)
class BraidWord:
    """A classical braid word on ``strands`` strands."""

    strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise InvalidParameterError(f"a braid needs at least one strand, got {self.strands}")
        for index, _ in self.letters:
            _check_index(index, self.strands)
        object.__setattr__(self, "letters", _merge_letters(self.letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        strands = max(self.strands, other.strands)
        return BraidWord(strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def widen(self, strands: int) -> "BraidWord":
        if strands < self.strands:
            raise InvalidParameterError(f"cannot narrow a {self.strands}-strand word to {strands}")
        return BraidWord(strands, self.letters)

    def shift(self, offset: int, strands: Optional[int] = None) -> "BraidWord":
        """Relabel σ_i as σ_{i+offset}."""
        return BraidWord(strands or self.strands + offset, tuple((i + offset, e) for i, e in self.letters))

    def serialize(self) -> str:
        body = " ".join(_power_token("s", i, e) for i, e in self.letters)
        return f"n={self.strands}; {body}".rstrip()

    __str__ = serialize


@dataclass(frozen=True)
class FramedBraidWord:
    """A framed braid t_1^{k_1}..t_n^{k_n}·σ in split form."""

    framings: Tuple[int, ...]
    word: BraidWord

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(self.framings))
        if len(self.framings) != self.word.strands:
            raise InvalidParameterError(f"{len(self.framings)} framings given for {self.word.strands} strands")

    @property
    def strands(self) -> int:
        return self.word.strands

    @classmethod
    def unframed(cls, word: BraidWord) -> "FramedBraidWord":
        return cls((0,) * word.strands, word)

    @classmethod
    def from_sequence(cls, strands: int, items: Iterable[Tuple[str, int, int]]) -> "FramedBraidWord":
        """Build the split form of a mixed sequence of ("t", j, k) and ("s", i, e) items.

        Each framing met after braid letters is transported to the left through
        ``w t_j = t_{perm(w)(j)} w``.
        """
        framings = [0] * strands
        letters: List[Letter] = []
        perm = list(range(1, strands + 1))
        for kind, index, exponent in items:
            if kind == "t":
                if not 1 <= index <= strands:
                    raise IndexOutOfRangeError(f"framing index {index} outside 1..{strands}")
                framings[perm[index - 1] - 1] += exponent
            else:
                _check_index(index, strands)
                letters.append((index, exponent))
                if exponent % 2:
                    perm[index - 1], perm[index] = perm[index], perm[index - 1]
        return cls(tuple(framings), BraidWord(strands, tuple(letters)))

    def items(self) -> List[Tuple[str, int, int]]:
        out = [("t", j + 1, k) for j, k in enumerate(self.framings) if k]
        return out + [("s", i, e) for i, e in self.word.letters]

    def __mul__(self, other: "FramedBraidWord") -> "FramedBraidWord":
        strands = max(self.strands, other.strands)
        return FramedBraidWord.from_sequence(strands, self.items() + other.items())

    def serialize(self) -> str:
        framing = " ".join(_power_token("t", j + 1, k) for j, k in enumerate(self.framings) if k)
        braid = " ".join(_power_token("s", i, e) for i, e in self.word.letters)
        body = f"{framing} ; {braid}" if framing else braid
        return f"n={self.strands}; {body}".rstrip()

    __str__ = serialize


@dataclass(frozen=True)
class SingularBraidWord:
    """A word in σ_i^{±1} and the non-invertible singular generators τ_i.

    Letters are (kind, index, exponent) with kind ``"s"`` or ``"tau"``.
    """

    strands: int
    letters: Tuple[Tuple[str, int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise InvalidParameterError(f"a braid needs at least one strand, got {self.strands}")
        for kind, index, exponent in self.letters:
            _check_index(index, self.strands)
            if kind == SINGULAR and exponent < 1:
                raise SingularExponentError(f"singular letter tau{index} needs a positive exponent, got {exponent}")
            if kind not in (BRAIDING, SINGULAR):
                raise InvalidParameterError(f"unknown letter kind {kind!r}")
        object.__setattr__(self, "letters", _merge_letters(self.letters))

    @classmethod
    def from_classical(cls, word: BraidWord) -> "SingularBraidWord":
        return cls(word.strands, tuple((BRAIDING, i, e) for i, e in word.letters))

    @property
    def singular_count(self) -> int:
        return sum(e for kind, _, e in self.letters if kind == SINGULAR)

    def __mul__(self, other: "SingularBraidWord") -> "SingularBraidWord":
        return SingularBraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def serialize(self) -> str:
        body = " ".join(_power_token(kind, i, e) for kind, i, e in self.letters)
        return f"n={self.strands}; {body}".rstrip()

    __str__ = serialize


AnyWord = Union[BraidWord, FramedBraidWord, SingularBraidWord]


@dataclass(frozen=True)
class ComponentStructure:
    """Closure components of a braid word.

    Component ids are 0-based and ordered by their lowest strand.
    """

    count: int
    strand_to_component: Tuple[int, ...]
    per_component_exponent: Tuple[int, ...]
    inter_component_exponent: int = 0
    strands_per_component: Tuple[int, ...] = field(default=())

    def lowest_strand(self, component: int) -> int:
        return self.strand_to_component.index(component) + 1


# --------------------------------------------------------------------- parsing


def parse_word(text: str, kind: str = "classical") -> AnyWord:
    """Parse braid text into a canonical word.

    Args:
        text (str): Text in the braid grammar, e.g. ``"n=3; t1^2 ; s1 s2^-1"``.
        kind (str): One of ``classical``, ``framed`` or ``singular``.

    Returns:
        The canonical word of the requested type.

    Raises:
        BraidSyntaxError: If the text does not follow the grammar.
        IndexOutOfRangeError: If an index exceeds the declared strand count.
        SingularExponentError: If a singular letter has a non-positive exponent.
        InvalidParameterError: If a braid or framing letter has exponent zero.
    """
    if kind not in ("classical", "framed", "singular"):
        raise InvalidParameterError(f"unknown word kind {kind!r}")
    declared: Optional[int] = None
    pos = 0
    header = _HEADER.match(text)
    if header:
        declared = int(header.group(1))
        if declared < 1:
            raise BraidSyntaxError("strand count must be positive", header.start(1))
        pos = header.end()

    items: List[Tuple[str, int, int]] = []
    seen_separator = False
    seen_braid = False
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] == ";":
            if seen_separator or seen_braid:
                raise BraidSyntaxError("unexpected ';'", pos)
            seen_separator = True
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match or (match.end() < len(text) and not (text[match.end()].isspace() or text[match.end()] == ";")):
            raise BraidSyntaxError("unexpected character", pos if not match else match.end())
        name, index, exponent = match.group(1), int(match.group(2)), match.group(3)
        exponent = 1 if exponent is None else int(exponent)
        if exponent == 0 and name != SINGULAR:
            raise InvalidParameterError(f"{name}{index}^0 at position {pos}: exponents must be nonzero")
        if name == "t":
            if kind != "framed":
                raise BraidSyntaxError(f"framing token not allowed in a {kind} word", pos)
            if seen_braid:
                raise BraidSyntaxError("framing tokens must precede braid letters", pos)
        else:
            if kind == "framed" and items and not seen_separator and not seen_braid and any(it[0] == "t" for it in items):
                raise BraidSyntaxError("framing prefix must end with ';'", pos)
            if name == SINGULAR:
                if kind != "singular":
                    raise BraidSyntaxError(f"singular token not allowed in a {kind} word", pos)
                if exponent < 1:
                    raise SingularExponentError(f"singular letter tau{index} needs a positive exponent, got {exponent}")
            seen_braid = True
        if index < 1:
            raise IndexOutOfRangeError(f"index {index} must be at least 1 (at position {pos})")
        items.append((name, index, exponent))
        pos = match.end()

    needed = 1
    for name, index, _ in items:
        needed = max(needed, index if name == "t" else index + 1)
    strands = declared if declared is not None else needed
    if needed > strands:
        raise IndexOutOfRangeError(f"index requires {needed} strands but n={strands} was declared")

    if kind == "classical":
        return BraidWord(strands, tuple((i, e) for _, i, e in items))
    if kind == "framed":
        return FramedBraidWord.from_sequence(strands, items)
    return SingularBraidWord(strands, tuple(items))


def format_word(word: AnyWord) -> str:
    return word.serialize()


# ------------------------------------------------------------------ operations


def _classical_part(word: AnyWord) -> BraidWord:
    if isinstance(word, FramedBraidWord):
        return word.word
    if isinstance(word, SingularBraidWord):
        # a singular crossing connects strands like an ordinary crossing
        return BraidWord(word.strands, tuple((i, e) for _, i, e in word.letters))
    return word


def permutation(word: AnyWord) -> Permutation:
    """Image of the word in the symmetric group, as 1-based images.

    >>> permutation(parse_word("s1 s2^-1 s1 s2^-1"))
    (3, 1, 2)
    """
    word = _classical_part(word)
    perm = list(range(1, word.strands + 1))
    for index, exponent in word.letters:
        if exponent % 2:
            perm[index - 1], perm[index] = perm[index], perm[index - 1]
    return tuple(perm)


def invert_permutation(perm: Permutation) -> Permutation:
    inverse = [0] * len(perm)
    for j, image in enumerate(perm, start=1):
        inverse[image - 1] = j
    return tuple(inverse)


def cycles(perm: Permutation) -> List[Tuple[int, ...]]:
    """Cycle decomposition, each cycle starting at its smallest element."""
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt - 1]
        out.append(tuple(cycle))
    return out


def closure_components(word: AnyWord) -> ComponentStructure:
    """Components of the closure and the exponent bookkeeping per component."""
    classical = _classical_part(word)
    perm = permutation(classical)
    strand_to_component = [0] * classical.strands
    for cid, cycle in enumerate(cycles(perm)):
        for strand in cycle:
            strand_to_component[strand - 1] = cid
    count = max(strand_to_component) + 1
    per_component = [0] * count
    inter = 0
    # position -> component of the strand currently there
    at_position = list(strand_to_component)
    for index, exponent in classical.letters:
        left, right = at_position[index - 1], at_position[index]
        if left == right:
            per_component[left] += exponent
        else:
            inter += exponent
        if exponent % 2:
            at_position[index - 1], at_position[index] = right, left
    sizes = tuple(strand_to_component.count(c) for c in range(count))
    return ComponentStructure(count, tuple(strand_to_component), tuple(per_component), inter, sizes)


def exponent_sum(word: AnyWord) -> int:
    """ε: the algebraic sum of exponents (singular letters included)."""
    if isinstance(word, FramedBraidWord):
        word = word.word
    if isinstance(word, SingularBraidWord):
        return sum(e for _, _, e in word.letters)
    return sum(e for _, e in word.letters)


def self_linking(word: BraidWord) -> Tuple[int, Dict[int, int]]:
    """Self-linking number, total and per component.

    A component's value is the exponent sum of its own crossings minus its
    strand count; the total is the sum over components, which is ε - n for
    knots.
    """
    structure = closure_components(word)
    per_component = {c: structure.per_component_exponent[c] - structure.strands_per_component[c] for c in range(structure.count)}
    return sum(per_component.values()), per_component


def to_transverse_framed(word: BraidWord) -> FramedBraidWord:
    """t^{sl} α: each component's self-linking placed on its lowest strand."""
    structure = closure_components(word)
    _, per_component = self_linking(word)
    framings = [0] * word.strands
    for component, value in per_component.items():
        framings[structure.lowest_strand(component) - 1] = value
    return FramedBraidWord(tuple(framings), word)


def reverse(word: AnyWord) -> AnyWord:
    """The word read from right to left (framed words are re-split)."""
    if isinstance(word, FramedBraidWord):
        items = [("s", i, e) for i, e in reversed(word.word.letters)]
        items += [("t", j + 1, k) for j, k in enumerate(word.framings) if k]
        return FramedBraidWord.from_sequence(word.strands, items)
    if isinstance(word, SingularBraidWord):
        return SingularBraidWord(word.strands, tuple(reversed(word.letters)))
    return BraidWord(word.strands, tuple(reversed(word.letters)))


def mirror(word: AnyWord) -> AnyWord:
    """σ_i ↦ σ_i^{-1}; framings change sign for framed words."""
    if isinstance(word, FramedBraidWord):
        return FramedBraidWord(tuple(-k for k in word.framings), mirror(word.word))
    if isinstance(word, SingularBraidWord):
        return SingularBraidWord(word.strands, tuple((kind, i, -e if kind == BRAIDING else e) for kind, i, e in word.letters))
    return BraidWord(word.strands, tuple((i, -e) for i, e in word.letters))


def connected_sum(a: FramedBraidWord, b: FramedBraidWord) -> FramedBraidWord:
    """a # b on n + m - 1 strands: b is shifted by n - 1 and shares strand n."""
    if isinstance(a, BraidWord):
        a = FramedBraidWord.unframed(a)
    if isinstance(b, BraidWord):
        b = FramedBraidWord.unframed(b)
    n, m = a.strands, b.strands
    strands = n + m - 1
    offset = n - 1
    items = [("t", j + 1, k) for j, k in enumerate(a.framings) if k]
    items += [("s", i, e) for i, e in a.word.letters]
    items += [("t", j + 1 + offset, k) for j, k in enumerate(b.framings) if k]
    items += [("s", i + offset, e) for i, e in b.word.letters]
    return FramedBraidWord.from_sequence(strands, items)


def disjoint_union(a: AnyWord, b: AnyWord) -> AnyWord:
    """a ⊔ b side by side: b moves to strands n+1..n+m with no connecting letter."""
    n = a.strands
    if isinstance(a, FramedBraidWord) or isinstance(b, FramedBraidWord):
        a = a if isinstance(a, FramedBraidWord) else FramedBraidWord.unframed(a)
        b = b if isinstance(b, FramedBraidWord) else FramedBraidWord.unframed(b)
        return FramedBraidWord(a.framings + b.framings, BraidWord(n + b.strands, a.word.letters + b.word.shift(n).letters))
    if isinstance(a, SingularBraidWord) or isinstance(b, SingularBraidWord):
        a = a if isinstance(a, SingularBraidWord) else SingularBraidWord.from_classical(a)
        b = b if isinstance(b, SingularBraidWord) else SingularBraidWord.from_classical(b)
        return SingularBraidWord(n + b.strands, a.letters + tuple((kind, i + n, e) for kind, i, e in b.letters))
    return BraidWord(n + b.strands, a.letters + b.shift(n).letters)


def stabilize(word: AnyWord, sign: int) -> AnyWord:
    """Markov stabilization: append σ_n^{±1} on n + 1 strands."""
    if sign not in (1, -1):
        raise InvalidParameterError(f"stabilization sign must be +1 or -1, got {sign}")
    n = word.strands
    if isinstance(word, FramedBraidWord):
        return FramedBraidWord(word.framings + (0,), BraidWord(n + 1, word.word.letters + ((n, sign),)))
    if isinstance(word, SingularBraidWord):
        return SingularBraidWord(n + 1, word.letters + ((BRAIDING, n, sign),))
    return BraidWord(n + 1, word.letters + ((n, sign),))


def conjugate(word: AnyWord, by: BraidWord) -> AnyWord:
    """u w u^{-1} for a classical conjugator u on at most as many strands."""
    if by.strands > word.strands:
        raise InvalidParameterError("conjugator has more strands than the word")
    u = by.widen(word.strands)
    if isinstance(word, FramedBraidWord):
        items = [("s", i, e) for i, e in u.letters] + word.items() + [("s", i, e) for i, e in u.inverse().letters]
        return FramedBraidWord.from_sequence(word.strands, items)
    if isinstance(word, SingularBraidWord):
        wrap = SingularBraidWord.from_classical
        return wrap(u) * word * wrap(u.inverse())
    return u * word * u.inverse()


def letter_count(word: AnyWord) -> int:
    return len(_classical_part(word).letters)


def strand_support(word: AnyWord) -> Sequence[int]:
    return sorted({i for i, _ in _classical_part(word).letters})
