"""Built-in groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .errors import GrowthLabError
from .groupfile import load_group_file, parse_group_text
from .presentation import GroupPresentation


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    text: str
    default_radius: int
    # known answers, used by the tests only
    expected: dict = field(default_factory=dict, compare=False)

    @property
    def presentation(self) -> GroupPresentation:
        return _load(self.key)


_ENTRIES = (
    CatalogEntry(
        "f2",
        "name: f2\ngenerators: a, b\noracle: free\ndelta: 1\n",
        12,
        {"sphere_prefix": [1, 4, 12, 36, 108], "function": ([1, 1], [1, -3]), "lambda": "3"},
    ),
    CatalogEntry(
        "z",
        "name: z\ngenerators: a\noracle: free\ndelta: 1\n",
        20,
        {"sphere_prefix": [1, 2, 2, 2], "function": ([1, 1], [1, -1]), "lambda": "1"},
    ),
    CatalogEntry(
        "z2",
        "name: z2\ngenerators: a, b\nrelator: a b a' b'\noracle: kb\ndelta: 2\n",
        40,
        {"sphere_prefix": [1, 4, 8, 12, 16], "function": ([1, 2, 1], [1, -2, 1]), "lambda": "1"},
    ),
    CatalogEntry(
        "c2c3",
        "name: c2c3\ngenerators: a, b\nrelators: a a, b b b\noracle: kb\ndelta: 1\n",
        14,
        {
            "sphere_prefix": [1, 3, 4, 6, 8, 12, 16],
            "function": ([1, 3, 2], [1, 0, -2]),
            "lambda": "sqrt(2)",
        },
    ),
    CatalogEntry(
        "surface2",
        "name: surface2\n"
        "# genus-2 surface group: four generators, one relator of length eight\n"
        "generators: a, b, c, d\n"
        "relator: a b a' b' c d c' d'\n"
        "oracle: dehn\n"
        "surface: yes\n"
        "delta: 4\n",
        8,
        {
            "sphere_prefix": [1, 8, 56, 392, 2736, 19096, 133288, 930328, 6493536],
            "function": ([1, 2, 2, 2, 1], [1, -6, -6, -6, 1]),
            "lambda": "root of x^4 - 6x^3 - 6x^2 - 6x + 1",
        },
    ),
)

CATALOG = {e.key: e for e in _ENTRIES}


@lru_cache(maxsize=None)
def _load(key: str) -> GroupPresentation:
    return parse_group_text(CATALOG[key].text, f"catalog:{key}")


def load_group(source: str) -> GroupPresentation:
    """A catalog key, or a path to a group definition file."""
    if source in CATALOG:
        return _load(source)
    path = Path(source)
    if path.is_file():
        return load_group_file(path)
    raise GrowthLabError(f"unknown group {source!r}: not a catalog key ({', '.join(CATALOG)}) or a readable file")


def default_radius(source: str) -> int | None:
    entry = CATALOG.get(source)
    return entry.default_radius if entry else None
