"""
Plain-text matroid documents.

    matroid U24
    elements a b c d
    bases ab ac ad bc bd cd

or a GF(2) block with optional relaxed sets:

    matroid W3
    elements a b c d e f
    gf2 3 6
    110100
    ...
    relax abd

Subset words concatenate labels, or join them with "." when some label is
longer than one character. "-" is the empty word.
"""
import sys
from pathlib import Path

from .catalog import named
from .core import GroundSet, Matroid, lex_key, validate
from .exceptions import InvalidLabel, LabelCollision, MatroidSyntaxError
from .gf2 import BinaryMatrix
from .relaxed import RelaxedBinaryMatroid, relax, relax_lazy

BASES_PER_LINE = 16


def render_word(ground, word):
    return ground.render(word) or "-"


def parse_word(ground, token, line=None):
    if token == "-":
        return 0
    if "." in token:
        parts = token.split(".")
    elif token in ground:
        parts = [token]
    else:
        parts = _segment(ground, token)
        if parts is None:
            raise MatroidSyntaxError(f"cannot read {token!r} as a set of elements", line)
    word = 0
    for part in parts:
        if part not in ground:
            raise MatroidSyntaxError(f"unknown element {part!r} in {token!r}", line)
        bit = 1 << ground.index(part)
        if word & bit:
            raise MatroidSyntaxError(f"element {part!r} repeated in {token!r}", line)
        word |= bit
    return word


def _segment(ground, token):
    """Split a dot-free word into labels, or None."""
    ways = {0: []}
    for end in range(1, len(token) + 1):
        for start in range(end):
            if start in ways and token[start:end] in ground:
                ways[end] = ways[start] + [token[start:end]]
                break
    return ways.get(len(token))


def parse(text):
    lines = [(number, raw.split()) for number, raw in enumerate(text.splitlines(), 1) if raw.strip()]
    if not lines or lines[0][1][0] != "matroid":
        raise MatroidSyntaxError("document must start with 'matroid NAME'", lines[0][0] if lines else 1)
    number, header = lines[0]
    name = " ".join(header[1:]) or None
    if len(lines) < 2 or lines[1][1][0] != "elements":
        raise MatroidSyntaxError("expected 'elements ...'", lines[1][0] if len(lines) > 1 else number)
    number, tokens = lines[1]
    try:
        ground = GroundSet(tuple(tokens[1:]))
    except (InvalidLabel, LabelCollision) as exc:
        raise MatroidSyntaxError(str(exc), number) from exc

    rest = lines[2:]
    if not rest:
        raise MatroidSyntaxError("missing 'bases' or 'gf2' section", number)
    keyword = rest[0][1][0]
    if keyword == "bases":
        bases = set()
        while rest and rest[0][1][0] == "bases":
            number, tokens = rest.pop(0)
            bases.update(parse_word(ground, token, number) for token in tokens[1:])
        value = validate(bases, ground, name)
    elif keyword == "gf2":
        number, tokens = rest.pop(0)
        try:
            height, width = int(tokens[1]), int(tokens[2])
        except (IndexError, ValueError):
            raise MatroidSyntaxError("expected 'gf2 ROWS COLUMNS'", number) from None
        if width != ground.size:
            raise MatroidSyntaxError(f"gf2 block has {width} columns for {ground.size} elements", number)
        rows = []
        for _ in range(height):
            if not rest:
                raise MatroidSyntaxError("gf2 block ends early", number)
            number, tokens = rest.pop(0)
            row = "".join(tokens)
            if len(row) != width or set(row) - {"0", "1"}:
                raise MatroidSyntaxError(f"bad matrix row {row!r}", number)
            rows.append(row)
        value = RelaxedBinaryMatroid(BinaryMatrix.from_text(rows, ground), (), name)
    else:
        raise MatroidSyntaxError(f"unexpected {keyword!r}", rest[0][0])

    for number, tokens in rest:
        if tokens[0] != "relax" or len(tokens) != 2:
            raise MatroidSyntaxError(f"unexpected {' '.join(tokens)!r}", number)
        H = parse_word(ground, tokens[1], number)
        if isinstance(value, Matroid):
            value = relax(value, H).renamed(name)
        else:
            value = relax_lazy(value, H)
    return value


def emit(value, name=None):
    name = name or getattr(value, "name", None) or "unnamed"
    ground = value.ground
    lines = [f"matroid {name}", "elements " + " ".join(ground.labels)]
    if isinstance(value, Matroid):
        words = [render_word(ground, basis) for basis in sorted(value.bases, key=lex_key)]
        for start in range(0, len(words), BASES_PER_LINE):
            lines.append("bases " + " ".join(words[start:start + BASES_PER_LINE]))
        return "\n".join(lines) + "\n"
    matrix = value.base if isinstance(value, RelaxedBinaryMatroid) else value
    lines.append(f"gf2 {matrix.height} {matrix.width}")
    lines.extend(matrix.text_rows())
    for X in getattr(value, "relaxed_sets", ()):
        lines.append(f"relax {render_word(ground, X)}")
    return "\n".join(lines) + "\n"


def load(source):
    """A matroid from "catalog:NAME", "-" (stdin) or a file path."""
    if source.startswith("catalog:"):
        return named(source[len("catalog:"):])
    if source == "-":
        return parse(sys.stdin.read())
    return parse(Path(source).read_text())
