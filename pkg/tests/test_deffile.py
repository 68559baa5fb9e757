import numpy as np
import pytest

from skewlab.deffile import dump_entry, load_definitions, parse_definitions
from skewlab.errors import DefinitionError


def zn_text(n, name=None):
    name = name or f"z{n}"
    rows = lambda f: "\n".join(" ".join(str(f(a, b) % n) for b in range(n)) for a in range(n))  # noqa: E731
    return f"ring {name} {n}\nadd\n{rows(lambda a, b: a + b)}\nmul\n{rows(lambda a, b: a * b)}\none 1\n"


def test_z5_file_gives_one_entry(tmp_path):
    path = tmp_path / "z5.defs"
    path.write_text("# the integers mod 5\n" + zn_text(5))
    (entry,) = load_definitions(path)
    assert entry.id == "z5" and entry.provenance == "file"
    assert [s.name for s in entry.endomorphisms] == ["id"]
    assert [m.name for m in entry.modules] == ["regular"]


def test_non_associative_table_is_rejected():
    # Z_2-algebra on basis 1, u, v (bits 0, 1, 2) with u*u = v, u*v = u, v*u = v*v = 0.
    # Bilinear with a unit, so every axiom except associativity holds.
    basis = {(0, 0): 1, (0, 1): 2, (0, 2): 4, (1, 0): 2, (2, 0): 4, (1, 1): 4, (1, 2): 2, (2, 1): 0, (2, 2): 0}

    def mul(x, y):
        out = 0
        for i in range(3):
            for j in range(3):
                if x >> i & 1 and y >> j & 1:
                    out ^= basis[(i, j)]
        return out

    table = "\n".join(" ".join(str(mul(x, y)) for y in range(8)) for x in range(8))
    add = "\n".join(" ".join(str(x ^ y) for y in range(8)) for x in range(8))
    text = f"ring bad 8\nadd\n{add}\nmul\n{table}\none 1\n"
    with pytest.raises(DefinitionError) as exc:
        parse_definitions(text, "bad.defs")
    msg = str(exc.value)
    assert msg.startswith("bad.defs:1:1:")
    assert "multiplicative associativity" in msg
    a, b, c = (int(t) for t in msg.split("fails at (")[1].split(")")[0].split(", "))
    assert mul(mul(a, b), c) != mul(a, mul(b, c))


def test_corrupted_builtin_dump_rejected(catalog):
    from skewlab.catalog import find_entry

    text = dump_entry(find_entry(catalog, "z4"))
    lines = text.splitlines()
    row = lines.index("mul") + 3
    lines[row] = "0 2 0 1"
    with pytest.raises(DefinitionError, match="z4:") as exc:
        parse_definitions("\n".join(lines), "z4.defs")
    assert exc.value.line == 2


def test_duplicate_ring_reports_both_lines():
    text = zn_text(3, "r") + zn_text(3, "r")
    with pytest.raises(DefinitionError) as exc:
        parse_definitions(text, "dup.defs")
    assert "lines 1 and 11" in str(exc.value)
    assert exc.value.line == 11


def test_parse_error_positions():
    with pytest.raises(DefinitionError) as exc:
        parse_definitions("ring r 2\nadd\n0 1\n1 x\n")
    assert (exc.value.line, exc.value.column) == (4, 3)
    assert "expected element index" in str(exc.value)
    with pytest.raises(DefinitionError, match="expected 'mul'"):
        parse_definitions("ring r 1\nadd\n0\nmult\n0\none 0\n")
    with pytest.raises(DefinitionError, match="unexpected end of file"):
        parse_definitions("ring r 2\nadd\n0 1\n")
    with pytest.raises(DefinitionError, match="expected 'ring', 'endo' or 'module'"):
        parse_definitions("rng r 2\n")
    with pytest.raises(DefinitionError, match="extra token"):
        parse_definitions("ring r 1 2\n")


def test_endomorphism_lines():
    base = zn_text(3, "r")
    with pytest.raises(DefinitionError, match="not unital"):
        parse_definitions(base + "endo zero r\n0 0 0\n")
    with pytest.raises(DefinitionError, match="unknown ring"):
        parse_definitions(base + "endo f s\n0 1 2\n")
    with pytest.raises(DefinitionError, match="duplicate endomorphism"):
        parse_definitions(base + "endo f r\n0 1 2\nendo f r\n0 1 2\n")
    (entry,) = parse_definitions(base + "endo id r\n0 1 2\n")
    assert [s.name for s in entry.endomorphisms] == ["id"]


def test_modules():
    text = zn_text(4) + "module z2 over z4 2\nadd\n0 1\n1 0\naction\n0 0 0 0\n0 1 0 1\nmodule regular over z4\n"
    (entry,) = parse_definitions(text)
    assert [m.name for m in entry.modules] == ["z2", "regular"]
    assert entry.module("regular").is_regular()
    broken = text.replace("0 1 0 1", "0 1 1 1")
    with pytest.raises(DefinitionError, match="module z2"):
        parse_definitions(broken)


def test_builtins_round_trip(catalog):
    for entry in catalog:
        text = dump_entry(entry)
        (back,) = parse_definitions(text)
        assert np.array_equal(back.ring.add, entry.ring.add) and np.array_equal(back.ring.mul, entry.ring.mul)
        assert back.ring.one == entry.ring.one and back.ring.labels == entry.ring.labels
        assert [(s.name, s.map.tolist()) for s in back.endomorphisms] == [
            (s.name, s.map.tolist()) for s in entry.endomorphisms
        ]
        assert [(m.name, m.action.tolist()) for m in back.modules] == [
            (m.name, m.action.tolist()) for m in entry.modules
        ]
        assert dump_entry(back).split("\n", 1)[1] == text.split("\n", 1)[1]
