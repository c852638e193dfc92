"""Finitely presented groups with an equality oracle attached."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dehn import DehnRules, dehn_reduce_with, is_surface_relator, max_piece_ratio
from .errors import (
    CompletionDivergedError,
    OracleMismatchError,
    OracleResolutionError,
    PresentationError,
)
from .rewriting import (
    DEFAULT_MAX_LHS_LEN,
    DEFAULT_MAX_RULES,
    RewritingSystem,
    free_group_system,
    kb_complete,
    normal_form,
)
from .words import Alphabet, Word, inverse, is_cyclically_reduced

ORACLES = ("auto", "free", "kb", "dehn")
C_PRIME_BOUND = (1, 6)


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    alphabet: Alphabet
    relators: tuple[Word, ...]
    oracle: str  # resolved: "free", "kb" or "dehn"
    delta: int | None = None
    surface: bool = False
    rewriting: RewritingSystem | None = field(default=None, compare=False, repr=False)
    dehn_rules: DehnRules | None = field(default=None, compare=False, repr=False)

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.generators

    @property
    def has_normal_forms(self) -> bool:
        return self.rewriting is not None

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def format(self, w: Sequence[int]) -> str:
        return self.alphabet.format(w)

    def is_identity(self, w: Sequence[int]) -> bool:
        w = self.alphabet.check(w)
        if self.rewriting is not None:
            return normal_form(w, self.rewriting) == ()
        return dehn_reduce_with(w, self.dehn_rules) == ()

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.is_identity(tuple(u) + inverse(v, self.alphabet))


def build_presentation(
    name: str,
    generators: Sequence[str],
    relators: Sequence[str | Sequence[int]] = (),
    oracle: str = "auto",
    delta: int | None = None,
    order: str = "interleaved",
    surface: bool | None = None,
    max_rules: int = DEFAULT_MAX_RULES,
    max_lhs_len: int = DEFAULT_MAX_LHS_LEN,
) -> GroupPresentation:
    """Validate a presentation and resolve its equality oracle.

    ``oracle="auto"`` uses free reduction when there are no relators, then
    tries Knuth-Bendix completion, then Dehn's algorithm when the relators
    are C'(1/6) or form a surface relator.
    """
    alphabet = Alphabet(tuple(generators), order=order)
    rels: list[Word] = []
    for r in relators:
        w = alphabet.parse(r) if isinstance(r, str) else alphabet.check(r)
        if not w:
            raise PresentationError("empty relator")
        if not is_cyclically_reduced(w, alphabet):
            raise PresentationError(f"relator {alphabet.format(w)!r} is not cyclically reduced")
        rels.append(w)
    if delta is not None and (not isinstance(delta, int) or delta < 1):
        raise PresentationError(f"delta must be a positive integer, got {delta!r}")
    if oracle not in ORACLES:
        raise PresentationError(f"oracle must be one of {ORACLES}, got {oracle!r}")
    detected_surface = len(rels) == 1 and is_surface_relator(rels[0], alphabet)
    if surface and not detected_surface:
        raise PresentationError("flagged as a surface group but the relator is not a product of commutators")
    surface = detected_surface if surface is None else bool(surface)
    common = dict(name=name, alphabet=alphabet, relators=tuple(rels), delta=delta, surface=surface)

    if oracle == "free" or (oracle == "auto" and not rels):
        if rels:
            raise OracleResolutionError("oracle 'free' requires a presentation without relators")
        return GroupPresentation(oracle="free", rewriting=free_group_system(alphabet), **common)

    failure = None
    if oracle in ("kb", "auto"):
        try:
            rs = kb_complete(alphabet, rels, max_rules=max_rules, max_lhs_len=max_lhs_len)
            return GroupPresentation(oracle="kb", rewriting=rs, **common)
        except CompletionDivergedError as exc:
            failure = exc
            if oracle == "kb":
                raise OracleResolutionError(f"strategy 'kb' failed: {exc}") from exc

    ratio = max_piece_ratio(rels, alphabet)
    if ratio * C_PRIME_BOUND[1] >= C_PRIME_BOUND[0] and not surface:
        prefix = f"strategy 'kb' failed ({failure}); " if failure else ""
        raise OracleResolutionError(
            f"{prefix}strategy 'dehn' needs C'(1/6) relators but a piece reaches {ratio} of its relator"
        )
    return GroupPresentation(oracle="dehn", dehn_rules=DehnRules(alphabet, tuple(rels)), **common)


def dehn_reduce(w: Sequence[int], p: GroupPresentation) -> Word:
    """Apply Dehn moves (and free cancellation) until none applies."""
    if p.oracle != "dehn":
        raise OracleMismatchError(f"group {p.name!r} uses oracle {p.oracle!r}, not 'dehn'")
    return dehn_reduce_with(p.alphabet.check(w), p.dehn_rules)


def canonical_form(w: Sequence[int], p: GroupPresentation, index=None) -> Word:
    """Shortlex-least geodesic representative of the element ``w`` represents.

    Groups without normal forms need an element index covering the element;
    one is built on demand from a ball enumeration when ``index`` is omitted.
    """
    w = p.alphabet.check(w)
    if p.rewriting is not None:
        return normal_form(w, p.rewriting)
    reduced = dehn_reduce(w, p)
    if index is None:
        from .cayley import ElementIndex

        index = ElementIndex.for_ball(p, len(reduced))
    return index.canonical(reduced)


def group_op(g: Sequence[int], h: Sequence[int], p: GroupPresentation, index=None) -> Word:
    return canonical_form(tuple(g) + tuple(h), p, index)


def invert(g: Sequence[int], p: GroupPresentation, index=None) -> Word:
    return canonical_form(inverse(g, p.alphabet), p, index)
