"""Helpers shared by the sweeps: disjoint sets and an ordered worker fan-out."""
from concurrent.futures import ProcessPoolExecutor

from tqdm import tqdm

from gassmann.utils import get_settings


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        xroot, yroot = self.find(x), self.find(y)
        if xroot == yroot:
            return
        if self.rank[xroot] < self.rank[yroot]:
            xroot, yroot = yroot, xroot
        self.parent[yroot] = xroot
        if self.rank[xroot] == self.rank[yroot]:
            self.rank[xroot] += 1

    def groups(self):
        """Components as sorted index lists, ordered by their least member."""
        out = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return sorted(out.values(), key=lambda g: g[0])


def fan_out(fn, items, jobs=None, desc=None):
    """``map(fn, items)`` in input order, over worker processes when jobs > 1."""
    settings = get_settings()
    jobs = jobs or settings.jobs
    items = list(items)
    show = settings.progress and desc is not None
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in tqdm(items, desc=desc, disable=not show)]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(tqdm(executor.map(fn, items), total=len(items), desc=desc, disable=not show))
