"""One-off oracle for the frozen values in the unit and acceptance tests.

Independent of the C++ code: re-implements the seeded generator
(SplitMix64 seeding, xoshiro256**, 53-bit uniform) and solves the
instance with Held-Karp dynamic programming.
"""
import itertools
import math

M = (1 << 64) - 1


def splitmix(state):
    state = (state + 0x9E3779B97F4A7C15) & M
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return state, z ^ (z >> 31)


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & M


class Xoshiro:
    def __init__(self, seed):
        self.s = []
        st = seed
        for _ in range(4):
            st, v = splitmix(st)
            self.s.append(v)

    def next(self):
        s = self.s
        result = (rotl((s[1] * 5) & M, 7) * 9) & M
        t = (s[1] << 17) & M
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return result

    def uniform01(self):
        return (self.next() >> 11) * 2.0 ** -53


def random_instance(n, seed):
    rng = Xoshiro(seed)
    pts = []
    for _ in range(n):
        x = 100.0 * rng.uniform01()
        y = 100.0 * rng.uniform01()
        pts.append((x, y))
    return pts


def held_karp(d):
    n = len(d)
    dp = {}
    for k in range(1, n):
        dp[(1 << k, k)] = (d[0][k], [0, k])
    for size in range(2, n):
        for sub in itertools.combinations(range(1, n), size):
            bits = sum(1 << b for b in sub)
            for k in sub:
                prev = bits & ~(1 << k)
                dp[(bits, k)] = min(
                    ((dp[(prev, m)][0] + d[m][k], dp[(prev, m)][1] + [k]) for m in sub if m != k),
                    key=lambda t: t[0])
    full = sum(1 << k for k in range(1, n))
    return min(((dp[(full, k)][0] + d[k][0], dp[(full, k)][1]) for k in range(1, n)), key=lambda t: t[0])


if __name__ == "__main__":
    pts = random_instance(12, 3)
    print("first point %.17g %.17g" % pts[0])
    d = [[math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) for b in pts] for a in pts]
    cost, tour = held_karp(d)
    # recompute the closed length along the tour
    length = sum(d[tour[i]][tour[(i + 1) % len(tour)]] for i in range(len(tour)))
    print("n=12 seed=3 optimum %.17g tour %s" % (length, tour))
