import json

import pytest

from ltsplit.formats import (
    decomposition_from_data,
    decomposition_to_data,
    dumps_json,
    emit_system,
    embedding_from_data,
    embedding_to_data,
    load_embedding,
    masa_from_data,
    masa_pairs_to_data,
    parse_masa,
    parse_system,
    read_json,
    system_from_data,
    write_text,
)
from ltsplit.leibniz_embedding import LeibnizAlgebra, standard_embedding
from ltsplit.models import AlgebraError
from ltsplit.triple_core import TripleSystem

from conftest import CORPUS_DIR


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return str(path)


# ---------- system files ----------

def test_minimal_triple_file(tmp_path):
    T = parse_system(write(tmp_path, "t.json", {"kind": "triple", "dim": 1, "products": []}))
    assert isinstance(T, TripleSystem)
    assert T.dim == 1 and not T.nonzero
    assert not T.verified


def test_sl2_file_is_an_algebra():
    L = parse_system(str(CORPUS_DIR / "c3_sl2.json"))
    assert isinstance(L, LeibnizAlgebra)
    assert L.dim == 3
    assert L.basis_names == ("h", "e", "f")


@pytest.mark.parametrize("path", sorted(p for p in CORPUS_DIR.glob("*.json") if not p.name.endswith(".masa.json")))
def test_canonical_files_round_trip_exactly(path):
    text = path.read_text(encoding="utf-8")
    assert emit_system(parse_system(str(path))) == text


def test_committed_files_match_the_builder(corpus):
    for name, item in corpus.items():
        assert (CORPUS_DIR / f"{name}.json").read_text(encoding="utf-8") == emit_system(item.system), name
        if item.masa_pairs is not None:
            masa_text = (CORPUS_DIR / f"{name}.masa.json").read_text(encoding="utf-8")
            assert masa_text == dumps_json(masa_pairs_to_data(item.masa_pairs)), name


@pytest.mark.parametrize(
    "data, code",
    [
        ({"kind": "triple", "dim": 2, "products": [{"args": [0, 1], "value": {"0": "1"}}]}, "E_PARSE"),
        ({"kind": "algebra", "dim": 2, "products": [{"args": [0, 1, 1], "value": {"0": "1"}}]}, "E_PARSE"),
        ({"kind": "triple", "dim": 2, "products": [{"args": [0, 0, 2], "value": {"0": "1"}}]}, "E_INDEX_RANGE"),
        ({"kind": "triple", "dim": 2, "products": [{"args": [0, 0, 0], "value": {"9": "1"}}]}, "E_INDEX_RANGE"),
        ({"kind": "triple", "dim": 2, "products": [{"args": [0, 0, 0], "value": {"0": "0.5"}}]}, "E_BAD_SCALAR"),
        ({"kind": "triple", "dim": 2, "products": [{"args": [0, 0, 0], "value": {"0": 0.5}}]}, "E_BAD_SCALAR"),
        ({"kind": "quaternion", "dim": 2, "products": []}, "E_PARSE"),
        ({"kind": "triple", "dim": 0, "products": []}, "E_PARSE"),
        ({"kind": "triple", "dim": 2, "basis": ["x"], "products": []}, "E_PARSE"),
        (
            {
                "kind": "triple",
                "dim": 2,
                "products": [{"args": [0, 0, 0], "value": {"0": "1"}}, {"args": [0, 0, 0], "value": {"1": "1"}}],
            },
            "E_PARSE",
        ),
        ([1, 2, 3], "E_PARSE"),
    ],
)
def test_bad_system_data(data, code):
    with pytest.raises(AlgebraError) as exc:
        system_from_data(data, "bad.json")
    assert exc.value.code == code


def test_zero_coefficients_are_dropped():
    T = system_from_data({"kind": "triple", "dim": 1, "products": [{"args": [0, 0, 0], "value": {"0": "0"}}]})
    assert not T.nonzero


def test_invalid_json_reports_position(tmp_path):
    path = write(tmp_path, "broken.json", '{\n  "kind": "triple",\n  "dim": \n}')
    with pytest.raises(AlgebraError) as exc:
        read_json(path)
    assert exc.value.code == "E_PARSE"
    assert exc.value.detail["line"] == 4


def test_missing_file(tmp_path):
    with pytest.raises(AlgebraError) as exc:
        parse_system(str(tmp_path / "nope.json"))
    assert exc.value.code == "E_PARSE"


# ---------- MASA files ----------

def test_masa_pairs_and_elements_agree(corpus):
    E = standard_embedding(corpus["c3_sl2_derived"].system)
    from_pairs = parse_masa(str(CORPUS_DIR / "c3_sl2_derived.masa.json"), E)
    assert len(from_pairs) == 1
    elements = {"elements": [[str(x) for x in from_pairs[0]]]}
    assert masa_from_data(elements, E) == from_pairs


def test_masa_vector_length_is_checked(corpus):
    E = standard_embedding(corpus["c3_sl2_derived"].system)
    with pytest.raises(AlgebraError) as exc:
        masa_from_data({"elements": [["1", "0"]]}, E)
    assert exc.value.code == "E_NOT_IN_L0"
    with pytest.raises(AlgebraError) as exc:
        masa_from_data({"masa": []}, E)
    assert exc.value.code == "E_PARSE"
    with pytest.raises(AlgebraError) as exc:
        masa_from_data({"pair_elements": [[[0, 7, "1"]]]}, E)
    assert exc.value.code == "E_INDEX_RANGE"


# ---------- embeddings & decompositions ----------

def test_embedding_file(tmp_path, corpus):
    E = standard_embedding(corpus["c3_sl2_derived"].system)
    data = embedding_to_data(E)
    assert data["kind"] == "standard_embedding"
    assert data["schema_version"] == 1
    assert data["dim"] == 6
    assert data["grading"]["l0_dim"] == 3
    assert len(data["grading"]["pair_map"]) == 3
    again = embedding_from_data(json.loads(dumps_json(data)))
    assert again.pair_map == E.pair_map
    assert load_embedding(write(tmp_path, "e.json", dumps_json(data))).l0_dim == 3


def test_tampered_embedding_is_refused(corpus):
    data = embedding_to_data(standard_embedding(corpus["c3_sl2_derived"].system))
    data["grading"]["pair_map"][0][0] = "7"
    with pytest.raises(AlgebraError) as exc:
        embedding_from_data(data)
    assert exc.value.code == "E_PARSE"


def test_load_embedding_accepts_a_triple_file():
    E = load_embedding(str(CORPUS_DIR / "c6_hs_standard_derived.json"))
    assert E.l0_dim == 5


def test_decomposition_file(sl2_decomposition):
    data = json.loads(dumps_json(decomposition_to_data(sl2_decomposition)))
    assert data["roots"]["t_roots"] == {"-2": 1, "2": 1}
    D = decomposition_from_data(data)
    assert D.t_roots == sl2_decomposition.t_roots
    data["roots"]["t_zero"] = 2
    with pytest.raises(AlgebraError) as exc:
        decomposition_from_data(data)
    assert exc.value.code == "E_PARSE"


def test_dumps_json_keeps_unicode():
    assert dumps_json({"basis": ["h'", "α"]}).endswith("]\n}\n")
    assert "α" in dumps_json({"basis": ["α"]})


def test_zero_coefficient_still_needs_a_valid_index():
    data = {"kind": "triple", "dim": 2, "products": [{"args": [0, 0, 0], "value": {"5": "0"}}]}
    with pytest.raises(AlgebraError) as exc:
        system_from_data(data)
    assert exc.value.code == "E_INDEX_RANGE"


def test_write_text_reports_the_path(tmp_path):
    with pytest.raises(AlgebraError) as exc:
        write_text(str(tmp_path / "no" / "such" / "dir.json"), "{}\n")
    assert exc.value.code == "E_IO"
    assert exc.value.detail["path"].endswith("dir.json")
