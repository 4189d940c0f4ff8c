"""Text formats: germ corpus lines, boundary strings and csv/json/table writers.

Corpus line: ``r;a1,a2,a3[,a4];e;ftype;mon1 mon2 ...`` with monomials written
``e1.e2.e3.e4``. Three weights and nothing else (``r;a1,a2,a3``) denote a
cyclic quotient. An empty monomial field means only the leading part of f is
known; a trailing ``@T`` declares truncation degree T.

Every rational is written ``p/q`` (or an integer), never as a decimal.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, TextIO, Union

from .exact import Monomial, MonomialSupport, Weight, parse_rat
from .explore import MldRecord
from .hyperquotient import HyperquotientGerm
from .toric import Boundary, CyclicQuotient

FORMATS = ("csv", "json", "table")


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from exc


def parse_rats(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rat(x) for x in text.split(",") if x.strip())


def parse_monomial(text: str) -> Monomial:
    try:
        return Monomial(tuple(int(x) for x in text.strip().split(".")))
    except ValueError as exc:
        raise ValueError(f"bad monomial {text!r}; expected e1.e2.e3[.e4]") from exc


def parse_support(text: str, sep: Optional[str] = None) -> Optional[MonomialSupport]:
    """Monomials separated by whitespace (or ``sep``), optional ``@T`` suffix; None when empty."""
    body, _, trunc = text.partition("@")
    parts = [p for p in (body.split(sep) if sep else body.split()) if p.strip()]
    if not parts:
        if trunc.strip():
            raise ValueError("a truncation degree needs at least one monomial")
        return None
    t = int(trunc) if trunc.strip() else None
    return MonomialSupport(frozenset(parse_monomial(p) for p in parts), t)


def format_support(f: Optional[MonomialSupport]) -> str:
    if f is None:
        return ""
    body = " ".join(str(m) for m in f.sorted())
    return body if f.truncation_degree is None else f"{body}@{f.truncation_degree}"


def parse_boundary(text: str) -> Boundary:
    """``b1:m+m;b2:m`` as printed by Boundary.__str__; the empty string is the zero boundary."""
    text = text.strip()
    if not text:
        return Boundary()
    comps = []
    for chunk in text.split(";"):
        coef, sep, mons = chunk.partition(":")
        if not sep:
            raise ValueError(f"boundary component {chunk!r} lacks 'coefficient:monomials'")
        f = parse_support(mons, sep="+")
        if f is None:
            raise ValueError(f"boundary component {chunk!r} has no monomials")
        comps.append((parse_rat(coef), f))
    return Boundary(tuple(comps))


Germ = Union[CyclicQuotient, HyperquotientGerm]


def parse_germ_line(line: str) -> Germ:
    fields = [x.strip() for x in line.strip().split(";")]
    if len(fields) == 2:
        return CyclicQuotient(int(fields[0]), parse_ints(fields[1]))
    if len(fields) != 5:
        raise ValueError(f"expected 'r;a1,..;e;ftype;monomials', got {line!r}")
    r, a, e, f_type, mons = fields
    weights = parse_ints(a)
    if len(weights) != 4:
        raise ValueError("hyperquotient lines carry four weights")
    return HyperquotientGerm(int(r), weights, int(e), f_type, parse_support(mons))


def format_germ_line(germ: Germ) -> str:
    if isinstance(germ, CyclicQuotient):
        return f"{germ.r};{','.join(map(str, germ.a))}"
    return f"{germ.r};{','.join(map(str, germ.a))};{germ.e};{germ.f_type};{format_support(germ.g_support)}"


def read_corpus(path: Union[str, Path]) -> list[Germ]:
    """Germ lines of a file; blank lines and '#' comments are skipped."""
    out = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_germ_line(line))
    return out


# ---------------------------------------------------------------- writers


def cell(value: Any) -> Any:
    """Wire form of a value: rationals as 'p/q', weights as '(x,y,z)', containers recursively."""
    if isinstance(value, float):
        raise TypeError("floating-point values never reach the output")
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, (Fraction, Weight, Monomial, MonomialSupport, Boundary, CyclicQuotient)):
        return str(value)
    if isinstance(value, HyperquotientGerm):
        return format_germ_line(value)
    if isinstance(value, dict):
        return {str(k): cell(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else value
        return [cell(v) for v in items]
    return str(value)


def _flat(value: Any) -> str:
    v = cell(value)
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def render(rows: Sequence[dict], fmt: str, meta: Optional[dict] = None) -> str:
    """Rows of dicts rendered as csv (header row), a json object, or an aligned table."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    cols: list[str] = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    if fmt == "json":
        doc = {"meta": cell(meta or {}), "records": [cell(row) for row in rows]}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_flat(row.get(c)) for c in cols])
        return buf.getvalue()
    lines = [f"# {k}: {_flat(v)}" for k, v in (meta or {}).items()]
    if cols:
        table = [cols] + [[_flat(row.get(c)) for c in cols] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
        for r in table:
            lines.append("  ".join(x.ljust(wd) for x, wd in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def emit(text: str, out: Optional[Union[str, Path]], stream: TextIO) -> None:
    if out is None or str(out) == "-":
        stream.write(text)
    else:
        Path(out).write_text(text)


def rows_of(items: Iterable[Any], *fields: str) -> list[dict]:
    return [{f: getattr(item, f) for f in fields} for item in items]


def record_row(rec: MldRecord) -> dict:
    """An MldRecord as a wire row; ``parse_record_row`` inverts it."""
    return {"germ": format_germ_line(rec.germ), "boundary": str(rec.boundary), "mld": rec.mld, "enc": rec.enc, "k0": rec.k0}


def parse_record_row(row: dict) -> MldRecord:
    germ = parse_germ_line(str(row["germ"]))
    enc = row["enc"] if isinstance(row["enc"], bool) else str(row["enc"]) == "True"
    return MldRecord(germ, parse_boundary(str(row["boundary"] or "")), parse_rat(str(row["mld"])), enc, int(row["k0"]))
