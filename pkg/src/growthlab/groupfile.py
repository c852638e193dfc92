"""Group definition files.

Grammar (UTF-8, one entry per line)::

    # comment                      ignored, as are blank lines
    name: <text>                   required
    generators: a, b, c            required; comma or space separated names
    relators: a a, b b b           optional; comma-separated words
    relator: a b a' b'             optional, repeatable; one word per line
    oracle: auto|free|kb|dehn      optional, default auto
    delta: <positive integer>      optional
    order: interleaved|grouped     optional letter order, default interleaved
    surface: yes|no                optional; default detected from the relator

Letters in a word are generator names separated by spaces; a trailing
``'`` (or ``^-1``) marks an inverse.  Text after ``#`` is a comment.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GrowthLabError, PresentationError
from .presentation import GroupPresentation, build_presentation
from .words import Alphabet, is_cyclically_reduced

KEYS = ("name", "generators", "relators", "relator", "oracle", "delta", "order", "surface")
_BOOL = {"yes": True, "true": True, "1": True, "no": False, "false": False, "0": False}


def parse_group_text(text: str, source: str = "<string>") -> GroupPresentation:
    fields: dict[str, str] = {}
    lines: dict[str, int] = {}
    relators: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PresentationError(f"{source}: expected 'key: value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split(":", 1))
        key = key.lower()
        if key not in KEYS:
            raise PresentationError(f"{source}: unknown key {key!r}; known keys are {', '.join(KEYS)}", lineno)
        if key == "relator":
            relators.append((value, lineno))
            continue
        if key == "relators":
            relators.extend((w.strip(), lineno) for w in value.split(",") if w.strip())
            continue
        if key in fields:
            raise PresentationError(f"{source}: duplicate key {key!r}", lineno)
        fields[key] = value
        lines[key] = lineno

    for required in ("name", "generators"):
        if required not in fields:
            raise PresentationError(f"{source}: missing required key {required!r}", None)

    gens = fields["generators"].replace(",", " ").split()
    delta = None
    if "delta" in fields:
        try:
            delta = int(fields["delta"])
        except ValueError:
            raise PresentationError(f"{source}: delta must be an integer", lines["delta"]) from None
    surface = None
    if "surface" in fields:
        flag = fields["surface"].lower()
        if flag not in _BOOL:
            raise PresentationError(f"{source}: surface must be yes or no", lines["surface"])
        surface = _BOOL[flag]

    # validate words here so that errors point at the right line
    try:
        alphabet = Alphabet(tuple(gens), fields.get("order", "interleaved"))
    except (GrowthLabError, ValueError) as exc:
        line = lines.get("generators") if "order" not in fields else lines["order"]
        raise PresentationError(f"{source}: {exc}", line) from None
    for word, lineno in relators:
        try:
            w = alphabet.parse(word)
        except GrowthLabError as exc:
            raise PresentationError(f"{source}: {exc}", lineno) from None
        if not w or not is_cyclically_reduced(w, alphabet):
            raise PresentationError(f"{source}: relator {word!r} is empty or not cyclically reduced", lineno)

    try:
        return build_presentation(
            fields["name"],
            gens,
            [w for w, _ in relators],
            oracle=fields.get("oracle", "auto"),
            delta=delta,
            order=fields.get("order", "interleaved"),
            surface=surface,
        )
    except PresentationError as exc:
        line = lines.get("oracle") if exc.line is None else exc.line
        raise PresentationError(f"{source}: {exc}", line) from None


def load_group_file(path: str | Path) -> GroupPresentation:
    path = Path(path)
    return parse_group_text(path.read_text(encoding="utf-8"), str(path))


def dump_group(p: GroupPresentation, oracle: str | None = None) -> str:
    """Group file text that reloads to an equal presentation."""
    lines = [f"name: {p.name}", f"generators: {', '.join(p.generators)}"]
    for r in p.relators:
        lines.append(f"relator: {p.format(r)}")
    lines.append(f"oracle: {oracle or p.oracle}")
    if p.delta is not None:
        lines.append(f"delta: {p.delta}")
    if p.alphabet.order != "interleaved":
        lines.append(f"order: {p.alphabet.order}")
    if p.surface:
        lines.append("surface: yes")
    return "\n".join(lines) + "\n"
