import json

import pytest
from hypothesis import given, strategies as st

from qring.errors import InvalidWindow, StructureFileError
from qring.gallery import builtin, builtin_names
from qring.structure import Structure, load_structure, parse_structure

PADIC = {
    "ring": {"kind": "integers"},
    "relation": {"kind": "valuation", "valuation": {"kind": "padic", "p": 2}},
    "window": {"kind": "interval", "lo": -8, "hi": 8},
}


def test_parse_padic():
    st_ = parse_structure(PADIC)
    assert st_.relation.leq(2, 3) and not st_.relation.leq(3, 2)
    assert len(st_.window) == 17


@pytest.mark.parametrize("name", [n for n in builtin_names()])
def test_builtin_descriptions_parse_back(name):
    b = builtin(name)
    doc = Structure(b.ring, b.relation, b.window).describe()
    again = parse_structure(json.loads(json.dumps(doc)))
    assert again.describe() == doc
    els = list(again.window)[:15]
    assert all(again.relation.leq(x, y) == b.relation.leq(x, y) for x in els for y in els)


def test_other_relation_kinds_roundtrip():
    docs = [
        {"ring": {"kind": "modular", "n": 6}, "relation": {"kind": "trivial_at_prime", "generators": [3]}},
        {"ring": {"kind": "modular", "n": 3},
         "relation": {"kind": "matrix", "rows": [[1, 1, 1], [0, 1, 1], [0, 1, 1]]}},
        {"ring": {"kind": "product", "factors": [{"kind": "modular", "n": 2}, {"kind": "modular", "n": 3}]},
         "relation": {"kind": "valuation", "valuation": {"kind": "trivial", "generators": [[0, 1]]}}},
        {"ring": {"kind": "modular", "n": 3},
         "relation": {"kind": "valuation", "valuation": {"kind": "table", "values": [None, 0, 0]}}},
        {"ring": {"kind": "polynomial", "vars": ["X", "Y"]},
         "relation": {"kind": "order", "order": {"kind": "poly_at_infinity", "precedence": ["Y", "X"]}},
         "window": {"kind": "poly", "max_degree": 1, "coeffs": [1, -1]}},
        {"ring": {"kind": "polynomial", "vars": ["X", "Y"]},
         "relation": {"kind": "valuation", "valuation": {"kind": "monomial", "weights": {"X": [1, 0], "Y": [0, 1]}}},
         "window": {"kind": "poly", "max_degree": 1, "coeffs": [1, -1]}},
        {"ring": {"kind": "modular", "n": 5},
         "relation": {"kind": "order", "order": {"kind": "cone", "elements": [0, 1, 2, 3, 4]}}},
        {"ring": {"kind": "integers"}, "relation": {"kind": "order", "order": {"kind": "standard"}},
         "window": {"kind": "elements", "elements": [0, 1, -1, 5, -5]}},
    ]
    for doc in docs:
        s = parse_structure(doc)
        again = parse_structure(json.loads(json.dumps(s.describe())))
        assert again.describe() == s.describe()


@pytest.mark.parametrize("doc, location", [
    ({"ring": {"kind": "integers"}, "relation": {"kind": "order", "order": {"kind": "standard"}}, "extra": 1}, ""),
    ({"ring": {"kind": "modular", "n": 1}, "relation": {"kind": "counterexample_sec3"}}, "ring.n"),
    ({"ring": {"kind": "modular", "n": 4, "m": 2}, "relation": {"kind": "counterexample_sec3"}}, "ring"),
    ({"ring": {"kind": "field"}, "relation": {"kind": "counterexample_sec3"}}, "ring"),
    ({"ring": {"kind": "integers"}, "relation": {"kind": "valuation", "valuation": {"kind": "padic", "p": 4}},
      "window": {"kind": "interval", "lo": -2, "hi": 2}}, "relation.valuation"),
    ({"ring": {"kind": "integers"}, "relation": {"kind": "order", "order": {"kind": "standard"}}}, "window"),
    ({"ring": {"kind": "modular", "n": 4}, "relation": {"kind": "trivial_at_prime", "generators": [9]}},
     "relation.generators[0]"),
    ({"ring": {"kind": "modular", "n": 2}, "relation": {"kind": "matrix", "rows": [[1, 0], [0, 1]]}}, "relation"),
    ({"ring": {"kind": "integers"}, "relation": {"kind": "order", "order": {"kind": "standard"}},
      "window": {"kind": "interval", "lo": -2, "hi": "3"}}, "window.hi"),
])
def test_malformed_structures_report_a_location(doc, location):
    with pytest.raises(StructureFileError) as info:
        parse_structure(doc)
    assert info.value.location == location


def test_window_without_minus_one_is_an_invalid_window():
    doc = dict(PADIC, window={"kind": "elements", "elements": [0, 1, 2]})
    with pytest.raises(InvalidWindow):
        parse_structure(doc)


def test_load_structure_errors(tmp_path):
    p = tmp_path / "s.json"
    p.write_text("{\n  \"ring\": ", encoding="utf-8")
    with pytest.raises(StructureFileError, match="invalid JSON") as info:
        load_structure(p)
    assert info.value.location.startswith("line 2")
    with pytest.raises(StructureFileError, match="cannot read"):
        load_structure(tmp_path / "missing.json")
    p.write_text(json.dumps(PADIC), encoding="utf-8")
    assert load_structure(p).describe() == parse_structure(PADIC).describe()


@given(st.integers(2, 40))
def test_modular_rings_parse(n):
    s = parse_structure({"ring": {"kind": "modular", "n": n},
                         "relation": {"kind": "matrix", "rows": [[1] * n] * n}})
    assert s.ring.size == n and len(s.window) == n
