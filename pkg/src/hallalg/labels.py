"""Parsing for the human-readable object label grammar.

Heart classes:   "0" | name("^"mult)? joined with "+"      e.g. S1^2+X12
Graded objects:  terms additionally carry "[degree]"       e.g. S1^2[1]+X12[0]

Printing lives on IsoClass.label() and GradedObject.label(); these parsers
accept any term order and merge duplicates, so parse(print(x)) == x and
printing is canonical.
"""

from __future__ import annotations

import re
from collections import Counter

from .derived import GradedObject
from .errors import LabelError

_TERM = re.compile(
    r"^(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"(?:\^(?P<mult>\d+))?"
    r"(?:\[(?P<deg>-?\d+)\])?$"
)


def _parse_terms(text, label):
    if not text or text != text.strip():
        text = text.strip()
    if not text:
        raise LabelError(f"empty label {label!r}")
    if text == "0":
        return []
    out = []
    for raw in text.split("+"):
        m = _TERM.match(raw.strip())
        if m is None:
            raise LabelError(f"cannot parse term {raw!r} in label {label!r}")
        mult = int(m.group("mult") or 1)
        if mult < 1:
            raise LabelError(f"multiplicity must be positive in {raw!r}")
        deg = m.group("deg")
        out.append((m.group("name"), mult, None if deg is None else int(deg)))
    return out


def _resolve(heart, name, label):
    names = heart.indec_names()
    if name not in names:
        raise LabelError(
            f"unknown indecomposable {name!r} in label {label!r}; "
            f"valid names: {', '.join(names)}"
        )
    return names.index(name)


def parse_class(text, heart):
    """Parse a heart class label; degree suffixes are rejected here."""
    counts = Counter()
    for name, mult, deg in _parse_terms(text, text):
        if deg is not None:
            raise LabelError(
                f"degree suffix not allowed in a heart label: {text!r}"
            )
        counts[_resolve(heart, name, text)] += mult
    return heart.iso_class(counts)


def parse_graded(text, heart):
    """Parse a graded label; terms without [n] default to degree 0."""
    by_degree = {}
    for name, mult, deg in _parse_terms(text, text):
        deg = 0 if deg is None else deg
        by_degree.setdefault(deg, Counter())[_resolve(heart, name, text)] += mult
    return GradedObject(
        heart, [(n, heart.iso_class(c)) for n, c in by_degree.items()]
    )


def parse_label(text, heart, graded):
    return parse_graded(text, heart) if graded else parse_class(text, heart)
