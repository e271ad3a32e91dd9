"""Run configuration: resource bounds and the quiver config file format."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .fpmatrix import is_prime
from .quiver import Quiver


@dataclass(frozen=True)
class Bounds:
    """Resource limits; exceeding any of them raises ResourceBoundError.

    max_p: largest allowed field characteristic.
    max_total_dim: largest total dimension admitted for subobject
        enumeration (the z of a structure constant).
    max_enum: cap on any brute-force enumeration size (endomorphism
        combos, morphism sets, chain map classes).
    """

    max_p: int = 13
    max_total_dim: int = 6
    max_enum: int = 1 << 16


@dataclass(frozen=True)
class QuiverConfig:
    name: str
    vertex_count: int
    arrows: tuple  # 0-based (source, target) pairs
    p: int

    def build_quiver(self):
        return Quiver(self.vertex_count, self.arrows, name=self.name)


def parse_quiver_config(text, path="<config>"):
    """Parse the key-value quiver config format.

    Example::

        name = a2
        vertices = 2
        p = 2
        arrows:
          1 -> 2

    Vertices are 1-based in the file.  Errors carry file:line positions.
    """
    name = None
    vertices = None
    p = 2
    arrows = []
    in_arrows = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "arrows:":
            in_arrows = True
            continue
        if "=" in line:
            in_arrows = False
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key == "name":
                name = val
            elif key == "vertices":
                try:
                    vertices = int(val)
                except ValueError:
                    raise ConfigError(f"{path}:{lineno}: vertices must be an integer")
            elif key == "p":
                try:
                    p = int(val)
                except ValueError:
                    raise ConfigError(f"{path}:{lineno}: p must be an integer")
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            continue
        if in_arrows:
            arrow = line.replace("->", " ").split()
            if len(arrow) != 2:
                raise ConfigError(f"{path}:{lineno}: expected 'source -> target'")
            try:
                s, t = int(arrow[0]), int(arrow[1])
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: arrow endpoints must be integers")
            arrows.append((s, t))
            continue
        raise ConfigError(f"{path}:{lineno}: unrecognized line {line!r}")

    if vertices is None:
        raise ConfigError(f"{path}: missing required key 'vertices'")
    if vertices < 1:
        raise ConfigError(f"{path}: vertices must be positive")
    if not is_prime(p):
        raise ConfigError(f"{path}: p = {p} is not prime")
    for s, t in arrows:
        if not (1 <= s <= vertices and 1 <= t <= vertices):
            raise ConfigError(f"{path}: arrow ({s}, {t}) out of range 1..{vertices}")
    cfg = QuiverConfig(
        name=name or f"Q{vertices}",
        vertex_count=vertices,
        arrows=tuple((s - 1, t - 1) for s, t in arrows),
        p=p,
    )
    try:
        cfg.build_quiver()
    except Exception as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return cfg


def load_quiver_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read quiver config {path}: {exc}") from exc
    return parse_quiver_config(text, path=str(path))
