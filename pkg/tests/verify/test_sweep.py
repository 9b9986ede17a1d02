from gassmann.verify.sweep import UnionFind, fan_out


def _square(x):
    return x * x


def test_union_find_groups():
    uf = UnionFind(6)
    uf.union(4, 1)
    uf.union(2, 5)
    uf.union(5, 4)
    assert uf.groups() == [[0], [1, 2, 4, 5], [3]]
    assert uf.find(2) == uf.find(1)


def test_fan_out_keeps_order():
    assert fan_out(_square, range(6)) == [0, 1, 4, 9, 16, 25]
    assert fan_out(_square, [3], jobs=4) == [9]


def test_fan_out_over_processes():
    assert fan_out(_square, range(10), jobs=2) == [x * x for x in range(10)]
