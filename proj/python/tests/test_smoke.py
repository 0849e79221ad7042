import random

import pytest

import implicit_lce as il


def naive_lce(t, i, j):
    k = 0
    while i + k < len(t) and j + k < len(t) and t[i + k] == t[j + k]:
        k += 1
    return k


def naive_sa(t):
    return sorted(range(len(t)), key=lambda i: t[i:])


def test_banana():
    idx = il.Index.build(b"banana", seed=1)
    assert len(idx) == 6
    assert idx.sparse_suffix_sort([0, 2, 4]) == [0, 4, 2]
    assert idx.sparse_suffix_sort(list(range(6)), strict=True) == [5, 3, 1, 0, 4, 2]
    assert idx.sparse_lcp([0, 4, 2]) == [0, 0, 2]
    assert idx.select(0) == 5
    assert idx.select(5) == 2
    assert il.lcp_array(b"banana") == [0, 1, 3, 0, 0, 2]
    assert il.lcp_array(b"banana", variant="small_alphabet") == [0, 1, 3, 0, 0, 2]


def test_lce_against_naive():
    rng = random.Random(5)
    t = [rng.randrange(4) for _ in range(300)]
    t[150:250] = t[0:100]
    idx = il.Index.build(t, sigma=4, seed=2, deterministic=True)
    for _ in range(2000):
        i, j = rng.randrange(300), rng.randrange(300)
        want = naive_lce(t, i, j)
        assert idx.lce(i, j) == want
        assert idx.lce(i, j, fast=False) == want


def test_roundtrip_and_serialization():
    data = bytes(random.Random(3).randrange(256) for _ in range(1000))
    idx = il.Index.build(data, seed=7)
    blob = idx.serialize()
    again = il.Index.deserialize(blob)
    assert again.q == idx.q and again.seed == idx.seed
    assert bytes(again.extract(10, 50)) == data[10:60]
    assert bytes(idx.restore()) == data
    with pytest.raises(il.StateError):
        idx.lce(0, 1)


def test_sparse_sort_matches_naive():
    rng = random.Random(9)
    t = [rng.randrange(2) for _ in range(500)]
    idx = il.Index.build(t, sigma=2, seed=4)
    pos = rng.sample(range(500), 100)
    assert idx.sparse_suffix_sort(pos) == sorted(pos, key=lambda i: t[i:])
    assert il.lcp_array(t, sigma=2) == [0] + [
        naive_lce(t, a, b) for a, b in zip(naive_sa(t), naive_sa(t)[1:])
    ]


def test_errors():
    with pytest.raises(ValueError):
        il.Index.build([0, 5], sigma=4)
    idx = il.Index.build(b"abc")
    with pytest.raises(IndexError):
        idx.lce(0, 3)
    with pytest.raises(il.ContractError):
        idx.sparse_lcp([2, 1, 0])


def test_forced_collision():
    t = b"a" * 1000 + b"b" + b"a" * 1000
    idx = il.Index.build(t, tau=63, seed=1)
    assert idx.check_collisions("compact")["ok"]
