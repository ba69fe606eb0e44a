"""Text format for Hamiltonian cycles.

::

    hamcycle v1
    group d=3 e=1 n=2
    # comment lines may follow the header
    t*2 r1 t*2 r1 ...

The walk always starts at the identity.  Body tokens are ``t``, ``t-``, ``s``
and ``r1`` .. ``r{n-1}``, separated by whitespace; ``x*k`` stands for ``k``
copies of ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import groupby
from typing import Sequence

from .group_core import (
    DEFAULT_MAX_ORDER,
    EdgeLabel,
    GroupParams,
    ParameterError,
    label_from_token,
)

MAGIC = "hamcycle v1"
TOKENS_PER_LINE = 64

_GROUP_RE = re.compile(r"group d=([1-9][0-9]*) e=([1-9][0-9]*) n=([1-9][0-9]*)")
_ITEM_RE = re.compile(r"(t-|t|s|r[1-9][0-9]*)(?:\*([1-9][0-9]*))?")


class CycleFileError(ValueError):
    """Malformed cycle file.  ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


@dataclass
class CycleFile:
    params: GroupParams
    word: list
    comments: list = field(default_factory=list)


def emit(
    params: GroupParams,
    word: Sequence[EdgeLabel],
    rle: bool = False,
    comments: Sequence[str] = (),
    width: int = TOKENS_PER_LINE,
) -> str:
    """Render a cycle file.  ``width`` is the number of items per body line."""
    lines = [MAGIC, f"group d={params.d} e={params.e} n={params.n}"]
    for c in comments:
        for part in str(c).splitlines() or [""]:
            lines.append("# " + part if part else "#")
    if rle:
        items = []
        for lab, run in groupby(word):
            k = sum(1 for _ in run)
            items.append(lab.token if k == 1 else f"{lab.token}*{k}")
    else:
        items = [lab.token for lab in word]
    for i in range(0, len(items), width):
        lines.append(" ".join(items[i : i + width]))
    return "\n".join(lines) + "\n"


def _split_lines(data: str | bytes) -> list[str]:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = data.count(b"\n", 0, exc.start) + 1
            col = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
            raise CycleFileError("not valid UTF-8", line, col) from None
    lines = data.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def parse(data: str | bytes, max_order: int = DEFAULT_MAX_ORDER) -> CycleFile:
    """Parse a cycle file, raising :class:`CycleFileError` on any defect.

    The body may not expand to more than twice the group order (plus a little
    slack) so a tiny file cannot request an enormous word.
    """
    lines = _split_lines(data)
    if not lines or lines[0] != MAGIC:
        raise CycleFileError(f"first line must be exactly {MAGIC!r}", 1)
    if len(lines) < 2:
        raise CycleFileError("missing group line", 2)
    m = _GROUP_RE.fullmatch(lines[1])
    if not m:
        raise CycleFileError("expected 'group d=<d> e=<e> n=<n>'", 2)
    try:
        params = GroupParams(*(int(g) for g in m.groups()), max_order=max_order)
    except ParameterError as exc:
        raise CycleFileError(str(exc), 2) from None

    limit = 2 * params.order + 1024
    word: list[EdgeLabel] = []
    comments: list[str] = []
    for lineno, text in enumerate(lines[2:], start=3):
        if text.startswith("#"):
            comments.append(text[1:].strip())
            continue
        for tok in re.finditer(r"\S+", text):
            col = tok.start() + 1
            item = _ITEM_RE.fullmatch(tok.group())
            if not item:
                raise CycleFileError(f"bad token {tok.group()!r}", lineno, col)
            label = label_from_token(item.group(1))
            if not params.has_label(label):
                raise CycleFileError(
                    f"{item.group(1)!r} is not a generator of {params.name}", lineno, col
                )
            k = int(item.group(2) or 1)
            if len(word) + k > limit:
                raise CycleFileError("body is far longer than the group order", lineno, col)
            word.extend([params.normalize(label)] * k)
    return CycleFile(params, word, comments)


def read(path, max_order: int = DEFAULT_MAX_ORDER) -> CycleFile:
    with open(path, "rb") as fh:
        return parse(fh.read(), max_order)


def write(path, params: GroupParams, word: Sequence[EdgeLabel], **kw) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit(params, word, **kw))
