"""Brute-force oracle used to freeze expected values in the C++ tests.

Independent of the library: groups are tuples of residues, relations are
Python sets, hyperaddition is evaluated straight from its definition.
Run: python3 tests/oracles/hyperfield_oracle.py
"""
import itertools
import math
from fractions import Fraction

ZERO = "0"


def elements(factors):
    return list(itertools.product(*[range(d) for d in factors])) if factors else [()]


def gmul(factors, a, b):
    return tuple((x + y) % d for x, y, d in zip(a, b, factors))


def ginv(factors, a):
    return tuple((-x) % d for x, d in zip(a, factors))


def gorder(factors, a):
    ident = tuple(0 for _ in factors)
    k, cur = 1, a
    while cur != ident:
        cur = gmul(factors, cur, a)
        k += 1
    return k


def blocks(factors, m1):
    els = elements(factors)
    ident = tuple(0 for _ in factors)
    neg = lambda u: gmul(factors, m1, u)
    seen, out = set(), []
    for x in els:
        for y in els:
            if (x, y) in seen:
                continue
            orbit, todo = set(), [(x, y)]
            while todo:
                p = todo.pop()
                if p in orbit:
                    continue
                orbit.add(p)
                px, py = p
                todo.append((neg(py), neg(px)))
                if px != ident:
                    xi = ginv(factors, px)
                    todo.append((xi, gmul(factors, xi, py)))
            seen |= orbit
            out.append(orbit)
    return out


class HF:
    def __init__(self, factors, m1, pi):
        self.f, self.m1, self.pi = factors, m1, set(pi)
        self.els = elements(factors)
        self.ident = tuple(0 for _ in factors)
        self.all = [ZERO] + self.els

    def mul(self, a, b):
        if a == ZERO or b == ZERO:
            return ZERO
        return gmul(self.f, a, b)

    def add(self, x, y):
        if x == ZERO:
            return {y}
        if y == ZERO:
            return {x}
        z = gmul(self.f, ginv(self.f, y), x)
        s = {gmul(self.f, y, w) for (u, w) in self.pi if u == z}
        if z == self.m1:
            s.add(ZERO)
        return s

    def sadd(self, A, x):
        out = set()
        for a in A:
            out |= self.add(a, x)
        return out

    def is_hyperfield(self):
        A = self.all
        for x in A:
            for y in A:
                if not self.add(x, y):
                    return "empty"
                if self.add(x, y) != self.add(y, x):
                    return "comm"
        for x in A:
            negs = [y for y in A if ZERO in self.add(x, y)]
            if len(negs) != 1:
                return "neg"
        for x in A:
            for y in A:
                for z in A:
                    l = self.sadd(self.add(x, y), z)
                    r = self.sadd(self.add(y, z), x)
                    if l != r:
                        return "assoc"
                    if {self.mul(x, e) for e in self.add(y, z)} != self.add(self.mul(x, y), self.mul(x, z)):
                        return "dist"
        return None

    def mk(self):
        rows = [sum(1 for (u, w) in self.pi if u == g) for g in self.els]
        cols = [sum(1 for (u, w) in self.pi if w == g) for g in self.els]
        return min(rows), min(cols)


def autos(factors, fix):
    els = elements(factors)
    out = []
    # brute-force over all bijections for small groups
    for perm in itertools.permutations(els):
        s = dict(zip(els, perm))
        if all(s[gmul(factors, a, b)] == gmul(factors, s[a], s[b]) for a in els for b in els):
            if fix is None or s[fix] == fix:
                out.append(s)
    return out


def canon(hf, auts):
    best = None
    for s in auts:
        img = {(s[x], s[y]) for (x, y) in hf.pi}
        bits = "".join("1" if (x, y) in img else "0" for x in hf.els for y in hf.els)
        best = bits if best is None or bits < best else best
    return best


def letters(n):
    return [chr(ord("A") + i) for i in range(n)]


def census(factors, m1):
    bl = blocks(factors, m1)
    auts = autos(factors, m1)
    names = letters(len(bl))
    found, classes, ample = [], {}, 0
    fails = {}
    r = len(elements(factors))
    for mask in range(1 << len(bl)):
        pi = set().union(*[bl[i] for i in range(len(bl)) if mask >> i & 1]) if mask else set()
        hf = HF(factors, m1, pi)
        why = hf.is_hyperfield()
        label = "".join(names[i] for i in range(len(bl)) if mask >> i & 1)
        if why is None:
            found.append(label)
            m, k = hf.mk()
            if m + k > r:
                ample += 1
            classes.setdefault(canon(hf, auts), []).append(label)
        else:
            fails[label] = why
    return found, classes, ample, fails


def count(C, d):
    n = len(C[0]) if C else 0
    tot = 0
    for x in itertools.product([0, 1], repeat=n):
        if all(sum(c * xi for c, xi in zip(row, x)) > dd for row, dd in zip(C, d)):
            tot += 1
    return tot


def coeff(factors, m1):
    bl = blocks(factors, m1)
    els = elements(factors)
    rows = []
    for g in els:
        row = [sum(1 for (x, y) in B if x == g) for B in bl]
        if row not in rows:
            rows.append(row)
    return rows


if __name__ == "__main__":
    print("Z3 blocks", [sorted(b) for b in blocks((3,), (0,))])
    f, cl, am, fails = census((3,), (0,))
    print("Z3 census", len(f), f, "classes", len(cl), list(cl.values()), "ample", am)
    print("Z3 fails", fails)
    print("Z7 coeff", coeff((7,), (0,)))
    print("swap before", count([[2, 1, 0], [0, 3, 0]], [1.5, 1.5]),
          "after", count([[0, 1, 2], [0, 3, 0]], [1.5, 1.5]))
    for r in (3, 5, 7):
        C = coeff((r,), (0,))
        b = len(C[0])
        print("r", r, "b", b, "rows", len(C), "exact", count(C, [r / 2] * len(C)),
              "bound", 2 ** (b - (r + 1) // 2), "inf", 2 ** (b - r))
    print("Z10 blocks", len(blocks((10,), (0,))) + len(blocks((10,), (5,))))
    print("Z2xZ4 order (1,2):", gorder((2, 4), (1, 2)))
    print("Z2 census m1=a", census((2,), (1,))[:3])
    print("trivial census", census((), ())[:3])


def field(p, k):
    """Elements as tuples of k coefficients (low degree first)."""
    def polymulmod(a, b, mod):
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return tuple(prod[:k])

    els = list(itertools.product(range(p), repeat=k))
    for tail in itertools.product(range(p), repeat=k):
        mod = list(tail) + [1]
        mul = lambda a, b: polymulmod(a, b, mod)
        one = tuple([1] + [0] * (k - 1))
        nz = [e for e in els if any(e)]
        # field iff every nonzero element has an inverse
        if all(any(mul(a, b) == one for b in nz) for a in nz):
            add = lambda a, b: tuple((x + y) % p for x, y in zip(a, b))
            return els, add, mul, one
    raise ValueError


def quotient(p, k, r):
    els, add, mul, one = field(p, k)
    q = p ** k
    nz = [e for e in els if any(e)]
    G = {e for e in nz}
    G = {mul_pow for mul_pow in nz}  # placeholder
    # G = r-th powers
    def pw(a, n):
        out = one
        for _ in range(n):
            out = mul(out, a)
        return out
    G = {pw(a, r) for a in nz}
    assert len(G) == (q - 1) // r
    cosets, cls = [], {}
    for a in nz:
        if a in cls:
            continue
        c = frozenset(mul(a, g) for g in G)
        for x in c:
            cls[x] = len(cosets)
        cosets.append(c)
    return els, add, mul, one, G, cosets, cls


def quotient_hf(p, k, r):
    els, add, mul, one, G, cosets, cls = quotient(p, k, r)
    # identify the coset group with Z_r via a generator class
    nz = [e for e in els if any(e)]
    zero = tuple([0] * k)
    # find a class generating the class group
    def cmul(i, j):
        return cls[mul(next(iter(cosets[i])), next(iter(cosets[j])))]
    ident = cls[one]
    for gcls in range(len(cosets)):
        seq, cur = [ident], gcls
        while cur != ident:
            seq.append(cur)
            cur = cmul(cur, gcls)
        if len(seq) == r:
            break
    expo = {c: i for i, c in enumerate(seq)}
    pi = set()
    for x in range(r):
        rep = next(iter(cosets[seq[x]]))
        for g in G:
            s = add(mul(rep, g), one)
            if s != zero:
                pi.add(((x,), (expo[cls[s]],)))
    minus_one = tuple((-c) % p for c in one)
    return HF((r,), (expo[cls[minus_one]],), pi)


if __name__ == "__main__":
    bl = blocks((3,), (0,))
    auts = autos((3,), (0,))
    names = "ABCD"
    label_of = {}
    for mask in range(16):
        pi = set().union(*[bl[i] for i in range(4) if mask >> i & 1]) if mask else set()
        label_of[canon(HF((3,), (0,), pi), auts)] = "".join(names[i] for i in range(4) if mask >> i & 1)
    for (p, k) in [(7, 1), (2, 2), (13, 1), (2, 4), (19, 1), (5, 2), (31, 1), (37, 1), (43, 1),
                   (7, 2), (61, 1), (2, 6), (67, 1), (73, 1), (79, 1)]:
        hf = quotient_hf(p, k, 3)
        print("q", p ** k, "->", label_of.get(canon(hf, auts)), hf.is_hyperfield())
