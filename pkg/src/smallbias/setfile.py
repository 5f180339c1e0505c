"""Line-oriented text format for candidate sets.

Header lines are ``# key: <json value>``; the first is the format tag.  The
body has one element per line as lowercase hex of ceil(n/4) digits, with
coordinate 1 in the least significant bit.  Line count equals |S| and order
and multiplicity are preserved.
"""

from __future__ import annotations

import json
from pathlib import Path

from .bias import CandidateSet
from .gf2 import BitVector

FORMAT_TAG = "smallbias-set/1"
_LEAD = ("n", "method", "epsilon", "delta", "seed", "random_bits", "generator")
_RESERVED = {"format", "n", "method", "random_bits", "size"}


class SetFileError(ValueError):
    pass


def serialize(S: CandidateSet) -> str:
    header = {"format": FORMAT_TAG, "n": S.n, "method": S.method}
    for key in _LEAD[2:]:
        if key == "random_bits":
            header[key] = S.random_bits
        elif key in S.params:
            header[key] = S.params[key]
    for key in sorted(S.params):
        if key in _RESERVED:
            raise SetFileError(f"parameter name {key!r} is reserved")
        header.setdefault(key, S.params[key])
    header["size"] = len(S)
    width = -(-S.n // 4)
    lines = [f"# {k}: {json.dumps(v)}" for k, v in header.items()]
    lines += [format(x.bits, f"0{width}x") for x in S.elements]
    return "\n".join(lines) + "\n"


def parse(text: str) -> CandidateSet:
    header: dict = {}
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if body:
                raise SetFileError(f"line {lineno}: header line after body")
            key, sep, value = line[1:].partition(":")
            if not sep:
                raise SetFileError(f"line {lineno}: expected '# key: value'")
            try:
                header[key.strip()] = json.loads(value)
            except json.JSONDecodeError as e:
                raise SetFileError(f"line {lineno}: bad header value: {e}") from None
        else:
            body.append((lineno, line))
    if header.get("format") != FORMAT_TAG:
        raise SetFileError(f"missing or unknown format tag (expected {FORMAT_TAG!r})")
    try:
        n = int(header["n"])
    except (KeyError, TypeError, ValueError):
        raise SetFileError("header lacks a valid 'n'") from None
    width = -(-n // 4)
    elements = []
    for lineno, line in body:
        if len(line) != width:
            raise SetFileError(f"line {lineno}: expected {width} hex digits, got {line!r}")
        try:
            bits = int(line, 16)
        except ValueError:
            raise SetFileError(f"line {lineno}: not hex: {line!r}") from None
        if bits >> n:
            raise SetFileError(f"line {lineno}: value exceeds {n} bits")
        elements.append(BitVector(n, bits))
    if "size" in header and header["size"] != len(elements):
        raise SetFileError(f"header size {header['size']} but {len(elements)} body lines")
    if not elements:
        raise SetFileError("set file has no elements")
    params = {k: v for k, v in header.items() if k not in _RESERVED}
    return CandidateSet(
        n, tuple(elements), method=header.get("method", "unknown"), params=params,
        random_bits=int(header.get("random_bits", 0)),
    )


def write(S: CandidateSet, path: str | Path):
    Path(path).write_text(serialize(S))


def read(path: str | Path) -> CandidateSet:
    return parse(Path(path).read_text())
