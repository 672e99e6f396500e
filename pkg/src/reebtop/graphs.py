"""Tiny multigraph with degree-two smoothing.

Used to classify vertex links up to topological type and to turn raw Reeb
quotients into their Morse-style pictures.  Loops contribute two to the
degree of their node.
"""

from __future__ import annotations


class Multigraph:
    def __init__(self, nodes=(), edges=()):
        self.nodes = list(nodes)
        self.edges = list(tuple(e) for e in edges)

    def degree(self, node):
        d = 0
        for u, v in self.edges:
            if u == node:
                d += 1
            if v == node:
                d += 1
        return d

    def degree_multiset(self):
        return sorted(self.degree(n) for n in self.nodes)

    def betti0(self):
        parent = {n: n for n in self.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
        return len({find(n) for n in self.nodes})

    def betti1(self):
        return len(self.edges) - len(self.nodes) + self.betti0()

    def is_connected(self):
        return self.betti0() <= 1

    def smoothed(self):
        """Contract every degree-two node whose two edge slots differ.

        A pure cycle ends as one node carrying a loop; path endpoints and
        branch nodes are untouched.
        """
        nodes = list(self.nodes)
        edges = list(self.edges)
        changed = True
        while changed:
            changed = False
            for node in nodes:
                slots = [i for i, (u, v) in enumerate(edges) if node in (u, v)]
                deg = sum(
                    (1 if edges[i][0] == node else 0) + (1 if edges[i][1] == node else 0)
                    for i in slots
                )
                if deg != 2 or len(slots) != 2:
                    continue
                e1, e2 = edges[slots[0]], edges[slots[1]]
                a = e1[0] if e1[1] == node else e1[1]
                b = e2[0] if e2[1] == node else e2[1]
                for i in sorted(slots, reverse=True):
                    edges.pop(i)
                nodes.remove(node)
                edges.append((a, b))
                changed = True
                break
        return Multigraph(nodes, edges)

    def loop_count(self):
        return sum(1 for u, v in self.edges if u == v)


def from_one_complex(c):
    """Multigraph of a complex of dimension at most one."""
    return Multigraph(list(c.vertices), [tuple(e) for e in c.simplices_of_dim(1)])


def classify_link(lk):
    """Topological type of a one-complex link.

    Returns one of "circle", "arc", "theta", "figure8", "point", "other";
    the first four are the catalog of branched-surface local models.
    """
    if not lk.simplices:
        return "other"
    if lk.dim > 1:
        return "other"
    g = from_one_complex(lk)
    if not g.is_connected():
        return "other"
    s = g.smoothed()
    n, e, loops = len(s.nodes), len(s.edges), s.loop_count()
    if n == 1 and e == 0:
        return "point"
    if n == 1 and e == 1 and loops == 1:
        return "circle"
    if n == 2 and e == 1 and loops == 0 and s.degree_multiset() == [1, 1]:
        return "arc"
    if n == 2 and e == 3 and loops == 0 and s.degree_multiset() == [3, 3]:
        return "theta"
    if n == 1 and e == 2 and loops == 2:
        return "figure8"
    return "other"
