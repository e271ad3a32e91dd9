"""Structure constant tables: a deterministic, diffable text format that
doubles as the memo cache for repeated runs.

Layout: header lines "key = value", a "---" separator, then one record per
line "x_label y_label z_label numerator/denominator", sorted lexicographically
by the three labels.  All values are reduced exact fractions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigError


HEADER_KEYS = ("table", "quiver", "vertices", "arrows", "p", "mode",
               "max_dim", "degrees", "version")


class ConstantTable:
    def __init__(self, header, records=()):
        self.header = dict(header)
        self.records = list(records)

    def sorted_records(self):
        return sorted(self.records, key=lambda r: (r[0], r[1], r[2]))

    def compatible_with(self, other_header):
        """Cache compatibility: same category and mode; bounds may differ
        since bounds never change a constant's value."""
        keys = ("quiver", "vertices", "arrows", "p", "mode")
        return all(self.header.get(k) == other_header.get(k) for k in keys)

    def by_pair(self):
        out = {}
        for x, y, z, val in self.records:
            out.setdefault((x, y), []).append((z, val))
        return out

    def render(self):
        lines = []
        for key in HEADER_KEYS:
            if key in self.header:
                lines.append(f"{key} = {self.header[key]}")
        lines.append("---")
        for x, y, z, val in self.sorted_records():
            lines.append(f"{x} {y} {z} {val.numerator}/{val.denominator}")
        return "\n".join(lines) + "\n"

    def write(self, path):
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(self.render())
        except OSError as exc:
            raise ConfigError(f"cannot write table {path}: {exc}") from exc


def header_for(quiver, p, mode, max_dim, degrees, version):
    arrows = ",".join(f"{s + 1}->{t + 1}" for s, t in quiver.arrows) or "-"
    deg_text = f"{degrees[0]}..{degrees[-1]}" if degrees else "-"
    return {
        "table": "hall structure constants",
        "quiver": quiver.name,
        "vertices": quiver.vertex_count,
        "arrows": arrows,
        "p": p,
        "mode": mode,
        "max_dim": max_dim,
        "degrees": deg_text,
        "version": version,
    }


def read_table(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read table {path}: {exc}") from exc
    header = {}
    records = []
    in_records = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "---":
            in_records = True
            continue
        if not in_records:
            key, _, val = line.partition("=")
            if not _:
                raise ConfigError(f"{path}:{lineno}: malformed header line")
            header[key.strip()] = _coerce(val.strip())
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ConfigError(f"{path}:{lineno}: expected 'x y z a/b'")
        num, _, den = parts[3].partition("/")
        try:
            val = Fraction(int(num), int(den or 1))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{path}:{lineno}: bad fraction {parts[3]!r}") from exc
        records.append((parts[0], parts[1], parts[2], val))
    return ConstantTable(header, records)


def _coerce(val):
    try:
        return int(val)
    except ValueError:
        return val
