"""Brute-force isolated clique pair counts, built from scratch over prime fields,
compared with the `oracle` field of `polar-eig count-check`."""

import argparse
import itertools
import json
import math
import subprocess
import sys


def vectors(dim, p):
    return list(itertools.product(range(p), repeat=dim))


def normalized(v):
    for x in v:
        if x:
            return x == 1
    return False


def quadratic(dim, p, eps):
    pairs = dim // 2 if eps == 1 else dim // 2 - 1
    tail = None
    if eps == -1:
        # any irreducible t^2 + a t + b gives an isometric form
        tail = next((a, b) for a in range(p) for b in range(p)
                    if all((t * t + a * t + b) % p for t in range(p)))

    def Q(x):
        s = sum(x[2 * i] * x[2 * i + 1] for i in range(pairs))
        if tail:
            a, b = tail
            u, w = x[-2], x[-1]
            s += u * u + a * u * w + b * w * w
        return s % p
    return Q


def polar_graph(family, dim, p):
    if family == "sp":
        def B(x, y):
            return sum(x[i] * y[i + 1] - x[i + 1] * y[i] for i in range(0, dim, 2)) % p
        pts = [v for v in vectors(dim, p) if normalized(v)]
    else:
        Q = quadratic(dim, p, 1 if family == "o+" else -1)

        def B(x, y):
            return (Q(tuple(a + b for a, b in zip(x, y))) - Q(x) - Q(y)) % p
        pts = [v for v in vectors(dim, p) if normalized(v) and Q(v) == 0]
    n = len(pts)
    return [{j for j in range(n) if j != i and B(pts[i], pts[j]) == 0} for i in range(n)]


def affine_graph(m, eps, p):
    Q = quadratic(2 * m, p, eps)
    vs = vectors(2 * m, p)
    n = len(vs)
    return [{j for j in range(n) if j != i and Q(tuple((a - b) % p for a, b in zip(vs[i], vs[j]))) == 0}
            for i in range(n)]


def theta1(adj):
    n = len(adj)
    k = len(adj[0])
    i = 0
    j = next(x for x in adj[0])
    lam = len(adj[i] & adj[j])
    z = next(x for x in range(1, n) if x not in adj[0])
    mu = len(adj[0] & adj[z])
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    r = math.isqrt(disc)
    assert r * r == disc
    return ((lam - mu) + r) // 2


def cliques(adj, s):
    out = []

    def grow(cur, cand):
        if len(cur) == s:
            out.append(frozenset(cur))
            return
        for v in sorted(cand):
            if cur and v < cur[-1]:
                continue
            grow(cur + [v], cand & adj[v])
    grow([], set(range(len(adj))))
    return out


def isolated_pairs(adj):
    s = theta1(adj) + 1
    cl = cliques(adj, s)
    closed = [set().union(*(adj[v] | {v} for v in c)) for c in cl]
    return sum(1 for a in range(len(cl)) for b in range(a + 1, len(cl)) if not (cl[b] & closed[a]))


CASES = [
    ("sp", 2, 2, lambda: polar_graph("sp", 4, 2)),
    ("sp", 2, 3, lambda: polar_graph("sp", 4, 3)),
    ("o+", 2, 2, lambda: polar_graph("o+", 4, 2)),
    ("o+", 2, 3, lambda: polar_graph("o+", 4, 3)),
    ("vo+", 2, 2, lambda: affine_graph(2, 1, 2)),
    ("vo-", 2, 2, lambda: affine_graph(2, -1, 2)),
    ("vo+", 2, 3, lambda: affine_graph(2, 1, 3)),
    ("vo-", 2, 3, lambda: affine_graph(2, -1, 3)),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    args = ap.parse_args()
    bad = 0
    for family, n, q, build in CASES:
        expected = isolated_pairs(build())
        flag = "--m" if family.startswith("vo") else "--n"
        proc = subprocess.run([args.cli, "count-check", "--family", family, flag, str(n), "--q", str(q)],
                              capture_output=True, text=True)
        if proc.returncode not in (0, 5):
            print(f"FAIL {family}:{n}:{q} exit {proc.returncode}: {proc.stderr.strip()}")
            bad += 1
            continue
        got = json.loads(proc.stdout)["oracle"]
        status = "ok" if got == expected else "FAIL"
        bad += got != expected
        print(f"{status} {family}:{n}:{q} python {expected} cli {got}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
