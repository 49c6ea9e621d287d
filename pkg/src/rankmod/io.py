"""Text formats for permutations, codes and result tables.

A code file is a header line followed by one permutation per line in
lexicographic order::

    n=4 k=1 kind=two_neighbor size=8
    1 2 3 4
    ...

Codebooks with a distance guarantee append ``d=<d> metric=<metric>`` to
the header. Files are UTF-8 with LF line endings.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

from .constraints import ConstraintKind
from .constructions import Code
from .ecc import ECCCode
from .perm import Permutation

__all__ = [
    "format_code",
    "parse_code",
    "write_code",
    "read_code",
    "format_value",
    "rows_to_csv",
    "rows_to_json",
]


def format_code(code: Code | ECCCode) -> str:
    ecc = code if isinstance(code, ECCCode) else None
    base = ecc.base if ecc else code
    c = base.constraint
    header = f"n={base.n} k={c.k if c else 0} kind={c.kind if c else 'none'} size={len(base)}"
    if ecc:
        header += f" d={ecc.min_distance_claim} metric={ecc.metric}"
    lines = [header] + [" ".join(map(str, row)) for row in base.array.tolist()]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code | ECCCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    try:
        header = dict(tok.split("=", 1) for tok in lines[0].split())
        n = int(header["n"])
        size = int(header["size"])
        kind = header["kind"]
        k = int(header["k"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad header line: {lines[0]!r}") from exc
    members = [Permutation.from_text(ln) for ln in lines[1:]]
    if len(members) != size:
        raise ValueError(f"header says size={size} but {len(members)} permutations follow")
    if any(len(p) != n for p in members):
        raise ValueError(f"every permutation must have length {n}")
    constraint = None if kind == "none" else ConstraintKind(kind, k)
    code = Code.from_members(n, members, constraint)
    if len(code) != size:
        raise ValueError("code file contains duplicate permutations")
    if "d" in header:
        return ECCCode(code, int(header["d"]), header.get("metric", "inversion"))
    return code


def write_code(code: Code | ECCCode, path) -> None:
    Path(path).write_text(format_code(code), encoding="utf-8", newline="\n")


def read_code(path) -> Code | ECCCode:
    return parse_code(Path(path).read_text(encoding="utf-8"))


def format_value(v):
    """Exact integers stay integers; rationals and floats print as the shortest float repr."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else repr(float(v))
    if isinstance(v, float):
        return repr(v)
    return v


def rows_to_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if columns is None:
        columns = list(rows[0]) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    return buf.getvalue()


def rows_to_json(rows: list[dict], columns: list[str] | None = None) -> str:
    def plain(v):
        if isinstance(v, Fraction):
            return v.numerator if v.denominator == 1 else float(v)
        if isinstance(v, float) and not math.isfinite(v):
            return None  # JSON has no NaN
        if v == "":
            return None
        return v

    out = [{c: plain(row[c]) for c in (columns or list(row))} for row in rows]
    return json.dumps(out, indent=2) + "\n"
