"""Group presentations over involution-aware generator alphabets.

A presentation is written ``<a,b | b^2, (ab)^3>``: a comma-separated list of
generators, a bar, and a list of relators.  Inverses are written ``x^-1``,
powers ``x^k`` or ``(word)^k``; whitespace is insignificant.  Juxtaposition
of declared generator names is allowed inside relators (``ab`` means ``a``
then ``b``), with longest-match resolution so multi-character names work.

A generator is flagged as an involution exactly when the relator ``g^2`` is
literally present.  Involution letters are sign-normalised to +1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import EmptyRelator, ParseError, UnknownGenerator

Letter = Tuple[str, int]  # (generator name, sign in {+1, -1})


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    involution: bool = False


@dataclass(frozen=True)
class Word:
    letters: Tuple[Letter, ...]

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def rotations(self) -> Iterable["Word"]:
        n = len(self.letters)
        for i in range(n):
            yield Word(self.letters[i:] + self.letters[:i])

    def pretty(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, s in self.letters:
            parts.append(g if s > 0 else f"{g}^-1")
        if all(len(g) == 1 for g, _ in self.letters):
            return "".join(parts)
        return " ".join(parts)

    def __str__(self):
        return self.pretty()


def free_reduce(word: Word, involutions: frozenset = frozenset()) -> Word:
    """Freely reduce, treating letters in ``involutions`` as self-inverse.

    Idempotent and length-nonincreasing.
    """
    stack = []
    for g, s in word.letters:
        if g in involutions:
            s = 1
        if stack:
            tg, ts = stack[-1]
            if tg == g and (ts == -s or (g in involutions and ts == s)):
                stack.pop()
                continue
        stack.append((g, s))
    return Word(tuple(stack))


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[GeneratorSymbol, ...]
    relators: Tuple[Word, ...]

    @property
    def generator_names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def involutions(self) -> frozenset:
        return frozenset(g.name for g in self.generators if g.involution)

    @property
    def cubic_eligible(self) -> bool:
        """Two generators of which exactly one is an involution, or three
        generators all involutions."""
        invs = sum(1 for g in self.generators if g.involution)
        n = len(self.generators)
        return (n == 2 and invs == 1) or (n == 3 and invs == 3)

    def pretty(self) -> str:
        gens = ",".join(self.generator_names)
        rels = ",".join(_pretty_relator(w) for w in self.relators)
        return f"<{gens}|{rels}>"

    def __str__(self):
        return self.pretty()


def _pretty_relator(w: Word) -> str:
    # g^2 relators print as g^2 to survive a parse round trip
    if len(w) == 2 and w.letters[0] == w.letters[1] and w.letters[0][1] > 0:
        return f"{w.letters[0][0]}^2"
    return w.pretty()


_TOKEN_RE = re.compile(r"\s*(<|>|\||,|\(|\)|\^|-?\d+|[A-Za-z_][A-Za-z0-9_]*)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.pos)

    def peek(self):
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m:
            if self.text[self.pos:].strip():
                self.error(f"unexpected character {self.text[self.pos:].lstrip()[0]!r}")
            return None
        return m.group(1)

    def take(self, expected=None):
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m:
            self.error(f"expected {expected or 'token'}, found end of input"
                       if not self.text[self.pos:].strip()
                       else f"unexpected character {self.text[self.pos:].lstrip()[0]!r}")
        tok = m.group(1)
        if expected is not None and tok != expected:
            self.error(f"expected {expected!r}, found {tok!r}")
        self.pos = m.end()
        return tok

    def parse(self) -> Presentation:
        self.take("<")
        names = [self.take_ident()]
        while self.peek() == ",":
            self.take(",")
            names.append(self.take_ident())
        if len(set(names)) != len(names):
            self.error("duplicate generator name")
        self.take("|")
        raw_relators = [self.parse_relator(names)]
        while self.peek() == ",":
            self.take(",")
            raw_relators.append(self.parse_relator(names))
        self.take(">")
        if self.peek() is not None:
            self.error(f"trailing input after '>'")
        return _assemble(names, raw_relators)

    def take_ident(self):
        tok = self.peek()
        if tok is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            self.error(f"expected generator name, found {tok!r}")
        return self.take()

    def parse_relator(self, names) -> list:
        letters = self.parse_factor(names)
        while self.peek() not in (",", ">", ")", None):
            letters += self.parse_factor(names)
        return letters

    def parse_factor(self, names) -> list:
        tok = self.peek()
        if tok == "(":
            self.take("(")
            letters = self.parse_relator(names)
            if self.peek() != ")":
                self.error("unclosed parenthesis")
            self.take(")")
        elif tok is None:
            self.error("unexpected end of relator")
        elif re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            letters = self.take_letters(names)
        else:
            self.error(f"unexpected token {tok!r} in relator")
        if self.peek() == "^":
            self.take("^")
            exp = self.peek()
            if exp is None or not re.fullmatch(r"-?\d+", exp):
                self.error("expected integer exponent after '^'")
            self.take()
            k = int(exp)
            if k == 0:
                self.error("exponent must be nonzero")
            if k < 0:
                letters = [(g, -s) for g, s in reversed(letters)]
                k = -k
            letters = letters * k
        return letters

    def take_letters(self, names) -> list:
        """Split a run of letters into declared generator names, longest first."""
        run = self.take()
        start = self.pos - len(run)
        letters = []
        i = 0
        by_length = sorted(names, key=len, reverse=True)
        while i < len(run):
            for name in by_length:
                if run.startswith(name, i):
                    letters.append((name, 1))
                    i += len(name)
                    break
            else:
                raise UnknownGenerator(
                    f"relator uses undeclared generator starting at {run[i:]!r}",
                    start + i)
        # a trailing ^exp binds to the last letter only: "ba^-1" = b, a^-1
        if self.peek() == "^":
            self.take("^")
            exp = self.peek()
            if exp is None or not re.fullmatch(r"-?\d+", exp):
                self.error("expected integer exponent after '^'")
            self.take()
            k = int(exp)
            if k == 0:
                self.error("exponent must be nonzero")
            g, s = letters.pop()
            if k < 0:
                s, k = -s, -k
            letters.extend([(g, s)] * k)
        return letters


def _assemble(names, raw_relators) -> Presentation:
    # involution flags come from literal g^2 relators
    involutions = set()
    for letters in raw_relators:
        if len(letters) == 2:
            (g1, s1), (g2, s2) = letters
            if g1 == g2 and s1 == s2:
                involutions.add(g1)
    gens = tuple(GeneratorSymbol(n, n in involutions) for n in names)
    inv = frozenset(involutions)
    relators = []
    for letters in raw_relators:
        word = Word(tuple((g, 1 if g in inv else s) for g, s in letters))
        if len(word) == 2 and word.letters[0] == word.letters[1] \
                and word.letters[0][0] in inv:
            relators.append(word)  # keep g^2 verbatim; it carries the flag
            continue
        reduced = free_reduce(word, inv)
        if not reduced.letters:
            raise EmptyRelator(f"relator {word.pretty()!r} reduces to the empty word")
        relators.append(reduced)
    return Presentation(gens, tuple(relators))


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse()


def subword_in_closure(w: Word, relator: Word) -> bool:
    """True iff ``w`` occurs contiguously in some rotation of ``relator``
    or of its inverse."""
    if len(w) > len(relator):
        return False
    if len(w) == 0:
        return True
    for candidate in (relator, relator.inverse()):
        doubled = candidate.letters + candidate.letters
        n = len(candidate)
        for i in range(n):
            if doubled[i:i + len(w)] == w.letters:
                return True
    return False


def _canonical_cyclic(w: Word, inv: frozenset = frozenset()) -> Tuple[Letter, ...]:
    def flatten(word: Word) -> Word:
        # involutions are self-inverse: their sign is not meaningful
        return Word(tuple((g, 1 if g in inv else s) for g, s in word))

    best = None
    for candidate in (flatten(w), flatten(w.inverse())):
        for rot in candidate.rotations():
            if best is None or rot.letters < best:
                best = rot.letters
    return best if best is not None else ()


def relator_multiset_normal_form(p: Presentation) -> str:
    """Canonical key, invariant under relator reordering, rotation and
    inversion (generator names are preserved)."""
    gens = ";".join(f"{g.name}{'!' if g.involution else ''}" for g in p.generators)
    keys = sorted(
        "".join(g if s > 0 else f"{g}^-1"
                for g, s in _canonical_cyclic(w, p.involutions))
        for w in p.relators)
    return gens + "|" + ",".join(keys)
