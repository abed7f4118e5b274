"""Deterministic emitters: canonical JSON, aligned text tables, and DOT.

Everything routed through here is byte-stable across runs: keys are sorted,
fractions are printed exactly, and node identifiers come from canonical
reduced words.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .admissible import AdmissibleSet, ClosurePoset
from .iwahori_weyl import (
    IwElement,
    affine_gens,
    element_to_obj,
    length,
    omega_component,
    reduced_word,
)
from .root_datum import RootDatum


def json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def frac_str(q) -> str:
    return str(Fraction(q))


def frac_list(v) -> list[str]:
    return [frac_str(q) for q in v]


def parse_frac_list(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(s) for s in v)


def word_labels(datum: RootDatum, word) -> list[str]:
    gens = affine_gens(datum)
    return [gens[i].label for i in word]


def element_str(datum: RootDatum, x: IwElement) -> str:
    word, om = reduced_word(x)
    head = ".".join(word_labels(datum, word)) if word else "e"
    tail = "t(" + ",".join(str(c) for c in om.trans) + ")"
    if om.fin.word:
        tail += "w(" + ",".join(str(i) for i in om.fin.word) + ")"
    return f"{head}|{tail}"


def element_row(datum: RootDatum, x: IwElement) -> dict:
    word, _ = reduced_word(x)
    return {
        "element": element_to_obj(x),
        "word": list(word),
        "word_labels": word_labels(datum, word),
        "length": length(x),
        "omega_class": list(omega_component(x)),
        "trans": list(x.trans),
        "id": element_str(datum, x),
    }


def render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines) + "\n"


def admissible_rows(datum: RootDatum, aset: AdmissibleSet) -> list[dict]:
    return [element_row(datum, x) for x in aset.elements]


def admissible_table(datum: RootDatum, aset: AdmissibleSet) -> str:
    rows = []
    for x in aset.elements:
        word, _ = reduced_word(x)
        rows.append([
            element_str(datum, x),
            str(length(x)),
            ",".join(str(c) for c in omega_component(x)),
            "(" + ",".join(str(c) for c in x.trans) + ")",
        ])
    return render_table(["element", "length", "omega", "trans"], rows)


def poset_dot(datum: RootDatum, poset: ClosurePoset, basic_flags=None) -> str:
    """DOT digraph ranked by length; basic nodes filled when flags given."""
    ids = [element_str(datum, x) for x in poset.nodes]
    lines = ["digraph closure {", "  rankdir=BT;", "  node [shape=box];"]
    for i, x in enumerate(poset.nodes):
        style = ""
        if basic_flags is not None:
            style = ', style=filled, fillcolor="gray85"' if basic_flags[i] else ""
        lines.append(f'  "{ids[i]}" [label="{ids[i]}"{style}];')
    by_len: dict[int, list[str]] = {}
    for i, x in enumerate(poset.nodes):
        by_len.setdefault(length(x), []).append(ids[i])
    for ln in sorted(by_len):
        group = "; ".join(f'"{n}"' for n in by_len[ln])
        lines.append(f"  {{ rank=same; {group}; }}")
    for lo, hi in poset.covers:
        lines.append(f'  "{ids[lo]}" -> "{ids[hi]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def validate_element_rows(doc) -> bool:
    if not isinstance(doc, list):
        return False
    for row in doc:
        if not isinstance(row, dict):
            return False
        for key in ("element", "word", "length", "omega_class", "trans", "id"):
            if key not in row:
                return False
        el = row["element"]
        if not isinstance(el, dict) or "trans" not in el or "fin_word" not in el:
            return False
    return True


def roundtrip_ok(text: str) -> bool:
    """Canonical-form JSON round trip: parse then re-emit byte-identically."""
    obj = json.loads(text)
    return json_dumps(obj) == text
