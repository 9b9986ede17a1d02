import pytest

from gassmann.families import named
from gassmann.tables import class_table, fingerprint_table, kernel_orbit_table, similarity_table


@pytest.mark.parametrize("p", (3, 5))
def test_similarity_table(p):
    df = similarity_table(p)
    assert len(df) == p * p + p
    assert list(df.columns) == ["kind", "w", "z", "y", "matrix", "trace", "det"]
    assert set(df["kind"]) == {"scalar", "jordan", "split", "nonsplit"}
    assert (df["det"] != 0).sum() == p * p - 1


def test_class_table_mod_3():
    df = class_table(3, 1)
    assert df["size"].sum() == 48
    assert len(df) == 8


def test_class_table_mod_9():
    df = class_table(3, 2)
    assert df["size"].sum() == 3888
    assert df.loc[df["l"] == 2, "size"].tolist() == [1] * 6


def test_fingerprint_table():
    df = fingerprint_table(named("T", 3, 2))
    assert df["count"].sum() == 27
    assert list(df.columns) == ["l", "d", "tr", "det", "count"]


def test_kernel_orbit_table():
    df = kernel_orbit_table(3)
    assert df["size"].sum() == 212
    assert set(df["dim"]) == {0, 1, 2, 3, 4}
    assert df.loc[df["dim"] == 0, "families"].item() == "ker01.1"
    assert (df["families"] != "").all()
