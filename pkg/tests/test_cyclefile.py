import pytest

from cayleyham.constructions import construct
from cayleyham.cyclefile import MAGIC, CycleFileError, emit, parse, read, write
from cayleyham.group_core import GroupParams, R, S, T, T_INV

r1 = R(1)


def test_plain_emit_g312():
    p = GroupParams(3, 1, 2)
    text = emit(p, [T, T, r1] * 6)
    lines = text.splitlines()
    assert lines[0] == "hamcycle v1"
    assert lines[1] == "group d=3 e=1 n=2"
    assert lines[2] == " ".join(["t t r1"] * 6)
    assert text.endswith("\n")


def test_rle_emit_g312():
    p = GroupParams(3, 1, 2)
    body = emit(p, [T, T, r1] * 6, rle=True).splitlines()[2]
    assert body == " ".join(["t*2 r1"] * 6)


def test_line_wrapping():
    p = GroupParams(2, 2, 4)
    word = construct(p).word
    lines = emit(p, word).splitlines()[2:]
    assert all(len(ln.split()) <= 64 for ln in lines)
    assert sum(len(ln.split()) for ln in lines) == 3072


def test_comments():
    p = GroupParams(1, 3, 2)
    text = emit(p, [S, r1] * 3, comments=["made by hand", ""])
    cf = parse(text)
    assert cf.comments == ["made by hand", ""]
    assert cf.word == [S, r1] * 3


def test_round_trip_with_t_inverse():
    p = GroupParams(3, 2, 3)
    word = construct(p).word
    assert T_INV in word
    for rle in (False, True):
        assert parse(emit(p, word, rle=rle)).word == word


def test_file_round_trip(tmp_path):
    p = GroupParams(2, 3, 2)
    path = tmp_path / "c.hc"
    write(path, p, construct(p).word, rle=True)
    cf = read(path)
    assert cf.params == p and cf.word == construct(p).word


def test_crlf_accepted():
    text = "hamcycle v1\r\ngroup d=1 e=2 n=2\r\ns r1 s r1\r\n"
    assert parse(text).word == [S, r1, S, r1]


def test_t_inverse_normalized_for_involution():
    assert parse("hamcycle v1\ngroup d=2 e=1 n=2\nt- r1\n").word == [T, r1]


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("", 1, 1),
        ("hamcycle v2\ngroup d=1 e=2 n=2\n", 1, 1),
        (" hamcycle v1\ngroup d=1 e=2 n=2\n", 1, 1),
        ("hamcycle v1\n", 2, 1),
        ("hamcycle v1\ngroup d=1 e=2\n", 2, 1),
        ("hamcycle v1\ngroup d=0 e=2 n=2\n", 2, 1),
        ("hamcycle v1\ngroup d=1 e=1 n=2\n", 2, 1),
        ("hamcycle v1\n# early comment\ngroup d=1 e=2 n=2\n", 2, 1),
        ("hamcycle v1\ngroup d=1 e=2 n=2\ns r1 x\n", 3, 6),
        ("hamcycle v1\ngroup d=1 e=2 n=2\ns r1\n  t\n", 4, 3),
        ("hamcycle v1\ngroup d=1 e=2 n=2\ns r2\n", 3, 3),
        ("hamcycle v1\ngroup d=1 e=2 n=2\ns*0\n", 3, 1),
        ("hamcycle v1\ngroup d=1 e=2 n=2\ns* 2\n", 3, 1),
        ("hamcycle v1\ngroup d=1 e=2 n=2\nr\n", 3, 1),
        ("hamcycle v1\ngroup d=1 e=2 n=2\ns*99999999999\n", 3, 1),
    ],
)
def test_parse_errors(text, line, col):
    with pytest.raises(CycleFileError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


def test_bad_utf8():
    data = MAGIC.encode() + b"\ngroup d=1 e=2 n=2\ns \xff\n"
    with pytest.raises(CycleFileError) as info:
        parse(data)
    assert (info.value.line, info.value.column) == (3, 3)


def test_order_cap():
    with pytest.raises(CycleFileError):
        parse("hamcycle v1\ngroup d=8 e=8 n=6\n", max_order=10**6)
