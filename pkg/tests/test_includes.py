import pytest

from miniqt_bmc import VerifierConfig, resolve_includes
from miniqt_bmc.ast_nodes import structurally_equal
from miniqt_bmc.errors import IncludeNotFound
from miniqt_bmc.lexer import tokenize
from miniqt_bmc.parser import parse

from conftest import MODELS_DIR


def parse_src(src: str) -> "Program":
    return parse(tokenize(src, "t.cpp"), "t.cpp")


def test_model_class_is_prepended(cfg):
    program = parse_src("#include <QList>\nint main() { return 0; }")
    merged = resolve_includes(program, cfg)
    assert merged.classes[0].name == "QList"
    assert merged.includes == []


def test_no_includes_is_identity(cfg):
    program = parse_src("int main() { return 0; }")
    assert resolve_includes(program, cfg) is program


def test_missing_model_raises(cfg):
    program = parse_src("#include <QDateTime>\nint main() { return 0; }")
    with pytest.raises(IncludeNotFound) as err:
        resolve_includes(program, cfg)
    assert err.value.name == "QDateTime"
    assert str(MODELS_DIR) in err.value.search_dirs


def test_empty_include_path_fails():
    program = parse_src("#include <QList>\nint main() { return 0; }")
    with pytest.raises(IncludeNotFound):
        resolve_includes(program, VerifierConfig())


def test_repeated_includes_load_once(cfg):
    once = parse_src("#include <QList>\nint main() { return 0; }")
    twice = parse_src(
        "#include <QList>\n#include <QList>\nint main() { return 0; }"
    )
    assert structurally_equal(
        resolve_includes(once, cfg), resolve_includes(twice, cfg)
    )


def test_first_matching_directory_wins(tmp_path, cfg):
    override = tmp_path / "override"
    override.mkdir()
    (override / "QList.mqt").write_text(
        "class QList { int marker; };\n", encoding="utf-8"
    )
    config = VerifierConfig(include_paths=(str(override), str(MODELS_DIR)))
    program = parse_src("#include <QList>\nint main() { return 0; }")
    merged = resolve_includes(program, config)
    assert merged.classes[0].fields[0].name == "marker"
    # Reversed order resolves to the shipped template model instead.
    config = VerifierConfig(include_paths=(str(MODELS_DIR), str(override)))
    program = parse_src("#include <QList>\nint main() { return 0; }")
    merged = resolve_includes(program, config)
    assert merged.classes[0].type_param == "T"


def test_bare_name_match_beats_mqt_suffix(tmp_path):
    d = tmp_path / "m"
    d.mkdir()
    (d / "Thing").write_text("class Thing { int x; };\n", encoding="utf-8")
    (d / "Thing.mqt").write_text("class Thing { int y; };\n", encoding="utf-8")
    config = VerifierConfig(include_paths=(str(d),))
    program = parse_src("#include <Thing>\nint main() { return 0; }")
    merged = resolve_includes(program, config)
    assert merged.classes[0].fields[0].name == "x"


def test_nested_includes_followed(tmp_path):
    d = tmp_path / "m"
    d.mkdir()
    (d / "Outer.mqt").write_text(
        "#include <Inner>\nclass Outer { int o; };\n", encoding="utf-8"
    )
    (d / "Inner.mqt").write_text("class Inner { int i; };\n", encoding="utf-8")
    config = VerifierConfig(include_paths=(str(d),))
    program = parse_src("#include <Outer>\nint main() { return 0; }")
    merged = resolve_includes(program, config)
    assert [c.name for c in merged.classes] == ["Inner", "Outer"]
