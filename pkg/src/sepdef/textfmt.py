"""A tiny cursor used by the recursive-descent parsers for t-, g- and x-polynomials."""

from __future__ import annotations

from .errors import ParseError


class Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def skip_ws(self) -> None:
        text, pos = self.text, self.pos
        while pos < len(text) and text[pos].isspace():
            pos += 1
        self.pos = pos

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.accept(ch):
            found = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, found {found!r}")

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an integer")
        return int(self.text[start:self.pos])

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect_end(self) -> None:
        if not self.at_end():
            self.fail(f"unexpected {self.peek()!r}")

    def fail(self, message: str) -> None:
        raise ParseError(message, self.text, self.pos)


def format_terms(terms: list[tuple[str, int]], var: str) -> str:
    """Join (coefficient text, exponent) pairs, highest exponent first.

    A coefficient text of "1" is dropped in front of a power of the variable.
    """
    if not terms:
        return "0"
    out = []
    for coeff, exp in terms:
        if exp == 0:
            out.append(coeff)
            continue
        mono = var if exp == 1 else f"{var}^{exp}"
        out.append(mono if coeff == "1" else f"{coeff}*{mono}")
    return "+".join(out)
