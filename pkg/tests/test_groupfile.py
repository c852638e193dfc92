import pytest

from growthlab.catalog import CATALOG, default_radius, load_group
from growthlab.errors import GrowthLabError, PresentationError
from growthlab.groupfile import dump_group, load_group_file, parse_group_text


@pytest.mark.parametrize("key", list(CATALOG))
def test_dump_reload_round_trip(key):
    p = load_group(key)
    q = parse_group_text(dump_group(p))
    assert (q.name, q.generators, q.relators, q.oracle, q.delta, q.surface) == (
        p.name,
        p.generators,
        p.relators,
        p.oracle,
        p.delta,
        p.surface,
    )


def test_load_from_path(tmp_path):
    path = tmp_path / "bs.group"
    path.write_text("name: c2c3\n# comment\ngenerators: a b\nrelator: a a\nrelator: b b b  # trailing\ndelta: 1\n")
    p = load_group(str(path))
    assert p.relators == load_group("c2c3").relators and p.oracle == "kb"
    assert load_group_file(path).name == "c2c3"


def test_grouped_order():
    p = parse_group_text("name: g\ngenerators: a, b\norder: grouped\n")
    assert p.alphabet.order == "grouped"
    assert "order: grouped" in dump_group(p)


@pytest.mark.parametrize(
    "text, line",
    [
        ("name: x\ngenerators: a\nfoo: 1\n", 3),
        ("name: x\ngenerators: a\nrelator: a c\n", 3),
        ("name: x\ngenerators: a, b\n\nrelator: a b a'\n", 4),
        ("name: x\ngenerators: a\ndelta: many\n", 3),
        ("name: x\nname: y\ngenerators: a\n", 2),
        ("name: x\ngenerators: a\njust words\n", 3),
        ("name: x\ngenerators: a\nsurface: maybe\n", 3),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(PresentationError) as info:
        parse_group_text(text, "g.txt")
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: g.txt")


def test_missing_required_key():
    with pytest.raises(PresentationError, match="generators"):
        parse_group_text("name: x\n")


def test_unknown_group():
    with pytest.raises(GrowthLabError):
        load_group("no-such-group")
    assert default_radius("no-such-group") is None
    assert default_radius("f2") == 12


def test_catalog_expectations():
    for key, entry in CATALOG.items():
        p = entry.presentation
        assert p.name == key and p.delta is not None
        assert entry.expected["sphere_prefix"][0] == 1
