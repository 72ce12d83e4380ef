"""Plain-text sequence files.

Format::

    edpseq v1 N=<n> kind=<pm1|complex|character> [key=value ...]
    <value>
    ...

One value per line: ``+1``/``-1`` for ``pm1``; ``re,im`` for ``complex``;
``0``, ``+1``, ``-1`` or ``re,im`` for ``character``.  Extra header fields
(such as the seed) are kept in :attr:`SeqFile.meta`.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .numtheory import DomainError
from .sequence import SeqWindow

MAGIC = "edpseq"
VERSION = "v1"
KINDS = ("pm1", "complex", "character")


class SeqFileError(DomainError):
    """Malformed sequence file."""


@dataclass
class SeqFile:
    window: SeqWindow
    kind: str
    meta: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.window.N


def _fmt_real(x: float) -> str:
    return repr(float(x) + 0.0)  # + 0.0 folds -0.0 into 0.0


def format_value(z: complex, kind: str) -> str:
    if kind == "pm1" or (kind == "character" and z.imag == 0 and z.real in (0, 1, -1)):
        r = int(z.real)
        return "0" if r == 0 else f"{r:+d}"
    return f"{_fmt_real(z.real)},{_fmt_real(z.imag)}"


def guess_kind(window: SeqWindow) -> str:
    if window.is_pm1():
        return "pm1"
    if np.all((window.values == 0) | (np.abs(np.abs(window.values) - 1) < 1e-9)):
        return "character"
    return "complex"


def dumps(window: SeqWindow, kind: str | None = None, **meta) -> str:
    kind = kind or guess_kind(window)
    if kind not in KINDS:
        raise SeqFileError(f"unknown kind {kind!r}")
    if kind == "pm1" and not window.is_pm1():
        raise SeqFileError("values are not all +-1")
    head = [MAGIC, VERSION, f"N={window.N}", f"kind={kind}"]
    head += [f"{k}={v}" for k, v in meta.items()]
    lines = [" ".join(head)]
    lines += [format_value(complex(z), kind) for z in window.values]
    return "\n".join(lines) + "\n"


def _parse_value(tok: str, kind: str, lineno: int) -> complex:
    if kind == "pm1":
        if tok not in ("+1", "-1"):
            raise SeqFileError(f"line {lineno}: expected +1 or -1, got {tok!r}")
        return 1.0 if tok == "+1" else -1.0
    if kind == "character" and tok in ("0", "+1", "-1"):
        return float(tok)
    parts = tok.split(",")
    if len(parts) != 2:
        raise SeqFileError(f"line {lineno}: expected re,im, got {tok!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise SeqFileError(f"line {lineno}: bad number in {tok!r}") from None


def loads(text: str) -> SeqFile:
    lines = text.splitlines()
    if not lines:
        raise SeqFileError("empty file")
    head = lines[0].split()
    if head[:2] != [MAGIC, VERSION]:
        raise SeqFileError(f"header must start with '{MAGIC} {VERSION}'")
    fields = {}
    for tok in head[2:]:
        key, sep, val = tok.partition("=")
        if not sep:
            raise SeqFileError(f"bad header field {tok!r}")
        fields[key] = val
    try:
        N = int(fields.pop("N"))
        kind = fields.pop("kind")
    except (KeyError, ValueError):
        raise SeqFileError("header needs N=<n> and kind=<kind>") from None
    if kind not in KINDS:
        raise SeqFileError(f"unknown kind {kind!r}")
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != N:
        raise SeqFileError(f"header declares N={N} but body has {len(body)} lines")
    vals = [_parse_value(tok.strip(), kind, i + 2) for i, tok in enumerate(body)]
    try:
        window = SeqWindow(np.array(vals, dtype=complex))
    except ValueError as e:
        raise SeqFileError(str(e)) from None
    return SeqFile(window, kind, fields)


def read_seqfile(path) -> SeqFile:
    return loads(Path(path).read_text())


def write_seqfile(path, window: SeqWindow, kind: str | None = None, **meta) -> None:
    Path(path).write_text(dumps(window, kind, **meta))


def dump_to(stream: io.TextIOBase, window: SeqWindow, kind: str | None = None, **meta) -> None:
    stream.write(dumps(window, kind, **meta))
