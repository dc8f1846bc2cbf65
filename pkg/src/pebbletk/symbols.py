"""Letters, marks and word encodings.

A symbol is a string: a one-character base letter optionally suffixed with
``!`` (most recent mark) or ``!!`` (second most recent mark, last-last
machines only).  Words are tuples of symbols.
"""

from .errors import AlphabetError

NO_MARK = ""
RECENT = "!"
OLDER = "!!"

LEFT_END = "^"
RIGHT_END = "$"
ENDMARKERS = (LEFT_END, RIGHT_END)


def base(sym: str) -> str:
    return sym[0]


def mark_of(sym: str) -> str:
    return sym[1:]


def with_mark(letter: str, mark: str) -> str:
    return letter + mark


def strip_marks(word):
    return tuple(base(s) for s in word)


def marked_variants(letter: str, lastlast: bool = False):
    out = [letter, letter + RECENT]
    if lastlast:
        out.append(letter + OLDER)
    return tuple(out)


def parse_word(text: str):
    """Parse a contiguous word like ``ab!c`` into ``('a', 'b!', 'c')``."""
    syms = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "!":
            raise AlphabetError(f"stray mark at offset {i} in {text!r}")
        j = i + 1
        while j < len(text) and text[j] == "!":
            j += 1
        if j - i - 1 > 2:
            raise AlphabetError(f"too many marks on {ch!r} in {text!r}")
        syms.append(text[i:j])
        i = j
    return tuple(syms)


def render_word(word) -> str:
    return "".join(word)
