"""Built-in defect geometries used by the examples, the CLI sweeps and the tests.

Each function returns a :class:`Scenario`.  The cut helpers describe walls
of removed bonds: ``hcut(y, x0, x1)`` removes the vertical bonds
``(x, y)-(x, y+1)`` for ``x0 <= x <= x1`` (a horizontal wall between rows
``y`` and ``y + 1``) and ``vcut(x, y0, y1)`` removes the horizontal bonds
``(x, y)-(x+1, y)`` (a vertical wall between columns ``x`` and ``x + 1``).
"""

from __future__ import annotations

from .errors import DomainError
from .lattice import LatticeKind, Site
from .scenario import Scenario
from .woodbury import EditSet

SQ = LatticeKind.SQUARE
TRI = LatticeKind.TRIANGULAR

OBSTACLE_MAX_D = 30
CHAIN_MAX_NB = 20


def hcut(y: int, x0: int, x1: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    return [((x, y), (x, y + 1)) for x in range(x0, x1 + 1)]


def vcut(x: int, y0: int, y1: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    return [((x, y), (x + 1, y)) for y in range(y0, y1 + 1)]


def _scenario(kind, pairs, queries, name, window=None, auto_augment=True) -> Scenario:
    es = EditSet.removal(kind, pairs)
    q = [(Site(*i), Site(*j)) for i, j in queries]
    return Scenario(es, q, auto_augment=auto_augment, current_window=window, output_prefix=name, name=name)


def four_bond() -> Scenario:
    """Four bonds around one plaquette."""
    pairs = [((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((0, 1), (0, 0))]
    return _scenario(SQ, pairs, [((1, 0), (1, 1)), ((1, 0), (0, 1))], "four_bond", ((-4, -4), (5, 5)))


def _lake_perimeter():
    # the pair of sites (1, 1), (2, 1) cut off by their six outer bonds
    return [
        ((0, 1), (1, 1)),
        ((1, 0), (1, 1)),
        ((1, 1), (1, 2)),
        ((2, 0), (2, 1)),
        ((2, 1), (2, 2)),
        ((2, 1), (3, 1)),
    ]


def lake7() -> Scenario:
    """Two isolated sites: six perimeter bonds plus the bond between them."""
    pairs = _lake_perimeter() + [((1, 1), (2, 1))]
    return _scenario(SQ, pairs, [((0, 2), (3, 0))], "lake7", ((-3, -3), (6, 5)))


def lake5() -> Scenario:
    """The lake with its two dangling bonds already restored."""
    kept = {((1, 1), (1, 2)), ((2, 1), (2, 2))}
    pairs = [p for p in _lake_perimeter() if p not in kept] + [((1, 1), (2, 1))]
    return _scenario(SQ, pairs, [((0, 2), (3, 0))], "lake5", ((-3, -3), (6, 5)))


def island8() -> Scenario:
    """A 2 x 2 island of sites (1..2, 1..2) cut off by its eight perimeter bonds."""
    pairs = hcut(0, 1, 2) + hcut(2, 1, 2) + vcut(0, 1, 2) + vcut(2, 1, 2)
    return _scenario(SQ, pairs, [((0, 3), (3, 0))], "island8", ((-3, -3), (6, 6)))


def periodic_chain(nb: int = 4) -> Scenario:
    """``nb`` horizontal bonds on row 2, one in every second column."""
    if not 1 <= nb <= CHAIN_MAX_NB:
        raise DomainError(f"number of bonds must be in 1..{CHAIN_MAX_NB}")
    pairs = [((2 * k, 2), (2 * k + 1, 2)) for k in range(nb)]
    window = ((-3, -1), (2 * nb + 2, 5))
    return _scenario(SQ, pairs, [((0, 2), (2 * nb - 1, 2))], f"periodic_chain_{nb}", window)


def hexagon5() -> Scenario:
    """Triangular lattice: five of the six bonds at the origin removed."""
    ends = [(1, -1), (1, 0), (0, 1), (-1, 1), (-1, 0)]
    pairs = [((0, 0), e) for e in ends]
    return _scenario(TRI, pairs, [((1, 0), (-1, 0))], "hexagon5", ((-4, -4), (4, 4)))


def hexagon6() -> Scenario:
    """Triangular lattice: the origin fully isolated."""
    ends = [(1, -1), (1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)]
    pairs = [((0, 0), e) for e in ends]
    return _scenario(TRI, pairs, [((1, 0), (-1, 0))], "hexagon6", ((-4, -4), (4, 4)))


def obstacle(d: int = 0) -> Scenario:
    """A straight slit of nine vertical bonds between rows 0 and 1, x = 1..9.

    Source and sink sit on the symmetry axis x = 5 on opposite sides, each
    ``d`` rows away from the slit.
    """
    if not 0 <= d <= OBSTACLE_MAX_D:
        raise DomainError(f"distance must be in 0..{OBSTACLE_MAX_D}")
    window = ((-2, -d - 3), (12, d + 4))
    return _scenario(SQ, hcut(0, 1, 9), [((5, -d), (5, d + 1))], f"obstacle_{d}", window)


def car() -> Scenario:
    """Side view of a car drawn with 43 removed bonds.

    Two wheels are single isolated sites, so augmentation puts back one
    dangling bond each and leaves 41 edits.  The body is an open outline: a
    floor, a hood, a windscreen, a roof and a rear, with the door line left
    open so the cabin stays connected to the outside.
    """
    wheels = []
    for cx in (2, 6):
        wheels += [((cx - 1, 0), (cx, 0)), ((cx, 0), (cx + 1, 0)), ((cx, -1), (cx, 0)), ((cx, 0), (cx, 1))]
    body = (
        hcut(1, 0, 1)  # floor, rear of the rear wheel
        + hcut(1, 3, 5)  # floor between the wheels
        + hcut(1, 7, 8)  # floor ahead of the front wheel
        + vcut(8, 2, 3)  # bumper
        + hcut(3, 6, 8)  # hood
        + vcut(5, 4, 5)  # windscreen
        + hcut(5, 1, 5)  # roof
        + vcut(0, 4, 5)  # rear window
        + hcut(3, 0, 0)  # trunk lid
        + vcut(-1, 2, 3)  # tail
        + hcut(0, 0, 0)  # rear skirt
        + hcut(0, 8, 8)  # front skirt
        + vcut(3, 3, 3)  # door pillar
        + hcut(4, 3, 4)  # belt line
        + vcut(7, 0, 1)  # wheel arch
        + vcut(0, 0, 1)  # wheel arch
        + vcut(2, 2, 3)  # door trailing edge
    )
    return _scenario(SQ, wheels + body, [((8, 1), (0, 5))], "car", ((-4, -4), (12, 9)))


# seven-segment glyphs, three sites wide and two rows per half
_GLYPH_W = 3
_GLYPH_H = 2
_SEGMENTS = {
    "J": ("ur", "lr", "hook"),
    "P": ("top", "ul", "ur", "mid", "ll"),
    "A": ("top", "ul", "ur", "mid", "ll", "lr"),
    "0": ("top", "ul", "ur", "ll", "lr", "bot"),
    "2": ("top", "ur", "mid", "ll", "bot"),
    "5": ("top", "ul", "mid", "lr", "bot"),
}


def glyph(ch: str, ox: int, oy: int) -> list:
    """Removed bonds of one seven-segment glyph with lower-left site ``(ox, oy)``."""
    W, H = _GLYPH_W, _GLYPH_H
    x1 = ox + W - 1
    seg = {
        "bot": hcut(oy - 1, ox, x1),
        "mid": hcut(oy + H - 1, ox, x1),
        "top": hcut(oy + 2 * H - 1, ox, x1),
        "ll": vcut(ox - 1, oy, oy + H - 1),
        "ul": vcut(ox - 1, oy + H, oy + 2 * H - 1),
        "lr": vcut(x1, oy, oy + H - 1),
        "ur": vcut(x1, oy + H, oy + 2 * H - 1),
        "hook": hcut(oy - 1, ox + 1, ox + 1),
    }
    out = []
    for name in _SEGMENTS[ch]:
        out += seg[name]
    return out


def jpa2025() -> Scenario:
    """The text "JPA 2025" in seven-segment glyphs, 84 removed bonds.

    Glyphs sit on a pitch of five columns in rows 6..9; the closed upper
    halves of P and A and the whole of the 0 become islands.
    """
    pairs = []
    for slot, ch in enumerate("JPA 2025"):
        if ch != " ":
            pairs += glyph(ch, 5 * slot, 6)
    return _scenario(SQ, pairs, [((2, 8), (21, 8))], "jpa2025", ((-3, 2), (40, 13)))


ALL = {
    "four_bond": four_bond,
    "lake7": lake7,
    "lake5": lake5,
    "island8": island8,
    "periodic_chain": periodic_chain,
    "hexagon5": hexagon5,
    "hexagon6": hexagon6,
    "obstacle": obstacle,
    "car": car,
    "jpa2025": jpa2025,
}


def default_scenarios() -> dict[str, Scenario]:
    """Every built-in geometry at its default parameters."""
    return {name: make() for name, make in ALL.items()}


def write_all(directory) -> list:
    """Write one scenario file per built-in geometry; returns the paths."""
    from pathlib import Path

    from .scenario import format_scenario

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, sc in default_scenarios().items():
        p = directory / f"{name}.scn"
        p.write_text(format_scenario(sc))
        paths.append(p)
    return paths


if __name__ == "__main__":
    import sys

    for p in write_all(sys.argv[1] if len(sys.argv) > 1 else "scenarios"):
        print(p)
