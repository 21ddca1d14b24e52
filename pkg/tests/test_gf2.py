from modules import gf2


def test_pack_and_unpack():
    assert gf2.pack([1, 0, 1, 1]) == 0b1101
    assert gf2.unpack(0b1101, 5) == [1, 0, 1, 1, 0]
    assert gf2.pack([3, 2, -1]) == 0b101


def test_parity_and_support():
    assert gf2.parity(0b1011) == 1
    assert gf2.parity(0) == 0
    assert gf2.support(0b10100) == [2, 4]


def test_pair_on_standard_rows():
    rows = [0b10, 0b01]
    assert gf2.pair(0b01, 0b10, rows) == 1
    assert gf2.pair(0b11, 0b11, rows) == 0
    assert gf2.pair(0b01, 0b01, rows) == 0


def test_rank():
    assert gf2.rank([0b0001, 0b0010, 0b0100, 0b1000], 4) == 4
    assert gf2.rank([0b011, 0b110, 0b101], 3) == 2
    assert gf2.rank([0, 0], 2) == 0


def test_is_alternating():
    assert gf2.is_alternating(gf2.matrix_rows([[0, 1], [1, 0]]))
    assert not gf2.is_alternating(gf2.matrix_rows([[1, 0], [0, 0]]))
    assert not gf2.is_alternating(gf2.matrix_rows([[0, 1], [0, 0]]))
