#!/usr/bin/env python3
"""Derive the bundled group, cover and parameter fixtures under data/.

Every cover is built from an explicit matrix group acting on the nonzero
vectors of a 2-dimensional space over a finite field (row vectors, right
action), so each fixture can be regenerated and audited from this script:

  SL25    SL_2(F_5) on 24 vectors, projecting to A_5 through its action on the
          cosets of an A_4 inside PSL_2(5).
  2S6     SigmaL_2(F_9) = <SL_2(F_9), Frobenius> on 80 vectors, projecting to
          S_6 through the action of PSigmaL_2(9) on the cosets of a subgroup of
          index 6.
  2S5     the preimage in 2S6 of a point stabilizer S_5 of that action.
  2PGL27  {A in GL_2(F_7) : det A = +-1} on 48 vectors, projecting to PGL_2(7)
          on the 8 points of the projective line.

Usage: derive_fixtures.py [output-dir]   (default: data/ next to this script)
"""

import json
import os
import random
import sys


# --- finite fields --------------------------------------------------------

class PrimeField:
    def __init__(self, p):
        self.p = p
        self.q = p
        self.elements = list(range(p))

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def frob(self, a):
        return a


class F9:
    """F_3[i] / (i^2 + 1); element a + b*i is stored as a + 3*b."""

    def __init__(self):
        self.p = 3
        self.q = 9
        self.elements = list(range(9))

    @staticmethod
    def split(x):
        return x % 3, x // 3

    @staticmethod
    def join(a, b):
        return (a % 3) + 3 * (b % 3)

    def add(self, x, y):
        a, b = self.split(x)
        c, d = self.split(y)
        return self.join(a + c, b + d)

    def mul(self, x, y):
        a, b = self.split(x)
        c, d = self.split(y)
        return self.join(a * c - b * d, a * d + b * c)

    def neg(self, x):
        a, b = self.split(x)
        return self.join(-a, -b)

    def frob(self, x):
        # (a + b i)^3 = a - b i in characteristic 3.
        a, b = self.split(x)
        return self.join(a, -b)


def nonzero_vectors(field):
    return [(x, y) for x in field.elements for y in field.elements if (x, y) != (0, 0)]


def projective_points(field):
    pts = [(1, y) for y in field.elements]
    pts.append((0, 1))
    return pts


def normalize(field, v):
    x, y = v
    if x != 0:
        inv = next(t for t in field.elements if field.mul(t, x) == 1)
        return (1, field.mul(y, inv))
    return (0, 1)


def apply_matrix(field, m, v):
    (a, b), (c, d) = m
    x, y = v
    return (field.add(field.mul(x, a), field.mul(y, c)), field.add(field.mul(x, b), field.mul(y, d)))


# --- permutations (0-based image lists, right action: (p*q)[x] = q[p[x]]) --

def perm_from_map(points, f):
    index = {pt: i for i, pt in enumerate(points)}
    return tuple(index[f(pt)] for pt in points)


def compose(p, q):
    return tuple(q[x] for x in p)


def inverse(p):
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def identity(n):
    return tuple(range(n))


def closure(gens):
    n = len(gens[0])
    seen = {identity(n)}
    queue = [identity(n)]
    for g in queue:
        for s in gens:
            h = compose(g, s)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return queue


def cycles(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            continue
        cyc = []
        x = i
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = p[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "()"


def cycle_type(p):
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        x = i
        while not seen[x]:
            seen[x] = True
            n += 1
            x = p[x]
        lengths.append(n)
    return sorted(lengths, reverse=True)


# --- quotient and coset actions -------------------------------------------

def find_subgroup(elements, order, rng):
    """A subgroup of the given order, found from random 2-generated subgroups."""
    for _ in range(200000):
        a, b = rng.choice(elements), rng.choice(elements)
        sub = closure([a, b])
        if len(sub) == order:
            return sub
    raise RuntimeError("no subgroup of order %d found" % order)


def coset_action(subgroup, elements, g):
    """Action of g on the right cosets Hx, cosets numbered by first appearance."""
    h = set(subgroup)
    reps = []
    covered = set()
    for x in elements:
        if x in covered:
            continue
        reps.append(x)
        covered.update(compose(s, x) for s in h)
    coset_of = {}
    for i, r in enumerate(reps):
        for s in h:
            coset_of[compose(s, r)] = i
    return tuple(coset_of[compose(r, g)] for r in reps)


def check_homomorphism(cover_gens, image_gens):
    """The graph of the map generates a group of the cover's order."""
    pairs = [c + tuple(len(c) + x for x in i) for c, i in zip(cover_gens, image_gens)]
    cover_order = len(closure(list(cover_gens)))
    graph_order = len(closure(pairs))
    if graph_order != cover_order:
        raise RuntimeError("projection is not well defined")


# --- constructions --------------------------------------------------------

def sl2_generators(field, extra=()):
    one = 1
    gens = [((one, one), (0, one)), ((one, 0), (one, one))]
    gens.extend(extra)
    return gens


def build_sl25(rng):
    f = PrimeField(5)
    vecs = nonzero_vectors(f)
    proj = projective_points(f)
    mats = sl2_generators(f)
    cover = [perm_from_map(vecs, lambda v, m=m: apply_matrix(f, m, v)) for m in mats]
    on_line = [perm_from_map(proj, lambda v, m=m: normalize(f, apply_matrix(f, m, v))) for m in mats]
    psl = closure(on_line)
    assert len(closure(cover)) == 120 and len(psl) == 60
    a4 = find_subgroup(psl, 12, rng)
    images = [coset_action(a4, psl, g) for g in on_line]
    assert len(closure(images)) == 60
    check_homomorphism(cover, images)
    return cover, images


def build_2s6(rng):
    f = F9()
    vecs = nonzero_vectors(f)
    proj = projective_points(f)
    i = F9.join(0, 1)
    mats = sl2_generators(f, [((1, i), (0, 1)), ((1, 0), (i, 1))])
    frob = lambda v: (f.frob(v[0]), f.frob(v[1]))
    cover = [perm_from_map(vecs, lambda v, m=m: apply_matrix(f, m, v)) for m in mats]
    cover.append(perm_from_map(vecs, frob))
    line = [perm_from_map(proj, lambda v, m=m: normalize(f, apply_matrix(f, m, v))) for m in mats]
    line.append(perm_from_map(proj, lambda v: normalize(f, frob(v))))
    cover_elems = closure(cover)
    quotient = closure(line)
    assert len(cover_elems) == 1440 and len(quotient) == 720
    h = find_subgroup(quotient, 120, rng)
    images = [coset_action(h, quotient, g) for g in line]
    assert len(closure(images)) == 720
    check_homomorphism(cover, images)
    return cover, images, cover_elems, h, quotient, line


def build_2s5(s6_data):
    cover, images, cover_elems, h, quotient, line = s6_data
    # Image of every cover element in S_6, via a word-free BFS over the cover.
    n_img = len(images[0])
    img_of = {identity(len(cover[0])): identity(n_img)}
    queue = [identity(len(cover[0]))]
    for g in queue:
        for c, im in zip(cover, images):
            nxt = compose(g, c)
            if nxt not in img_of:
                img_of[nxt] = compose(img_of[g], im)
                queue.append(nxt)
    transposition = five_cycle = None
    for g in cover_elems:
        im = img_of[g]
        if im[0] != 0:
            continue
        ct = cycle_type(im)
        if transposition is None and ct == [2, 1, 1, 1, 1]:
            transposition = g
        if five_cycle is None and ct == [5, 1]:
            five_cycle = g
    gens = [transposition, five_cycle]
    restricted = [tuple(img_of[g][x] - 1 for x in range(1, 6)) for g in gens]
    assert len(closure(gens)) == 240 and len(closure(restricted)) == 120
    check_homomorphism(gens, restricted)
    return gens, restricted


def build_2pgl27():
    f = PrimeField(7)
    vecs = nonzero_vectors(f)
    proj = projective_points(f)
    mats = sl2_generators(f, [((1, 0), (0, 6))])  # diag(1, -1) has det -1
    cover = [perm_from_map(vecs, lambda v, m=m: apply_matrix(f, m, v)) for m in mats]
    images = [perm_from_map(proj, lambda v, m=m: normalize(f, apply_matrix(f, m, v))) for m in mats]
    assert len(closure(cover)) == 672 and len(closure(images)) == 336
    check_homomorphism(cover, images)
    return cover, images


# --- output ---------------------------------------------------------------

def write_json(path, obj):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def group_file(name, gens, note):
    return {"name": name, "degree": len(gens[0]), "generators": [cycles(g) for g in gens], "note": note}


def cover_file(name, base, cover, images, note):
    return {
        "name": name,
        "base_group": base,
        "cover_degree": len(cover[0]),
        "cover_generators": [cycles(g) for g in cover],
        "image_generators": [cycles(g) for g in images],
        "note": note,
    }


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")
    rng = random.Random(20240518)

    sym = lambda n: [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    write_json(os.path.join(root, "groups", "S4.json"), group_file("S4", sym(4), "symmetric group"))
    write_json(os.path.join(root, "groups", "S5.json"), group_file("S5", sym(5), "symmetric group"))
    write_json(os.path.join(root, "groups", "S6.json"), group_file("S6", sym(6), "symmetric group"))
    a5 = [(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)]
    write_json(os.path.join(root, "groups", "A5.json"), group_file("A5", a5, "(1 2 3), (3 4 5)"))

    sl_cover, sl_images = build_sl25(rng)
    write_json(os.path.join(root, "groups", "SL25.json"),
               group_file("SL2(5)", sl_cover, "SL_2(F_5) on the 24 nonzero vectors of F_5^2"))
    write_json(os.path.join(root, "covers", "SL25.json"),
               cover_file("SL2(5)", "A5", sl_cover, sl_images, "SL_2(F_5) -> PSL_2(5) = A_5"))

    s6 = build_2s6(rng)
    write_json(os.path.join(root, "covers", "2S6.json"),
               cover_file("2.S6", "S6", s6[0], s6[1], "SigmaL_2(F_9) -> PSigmaL_2(9) = S_6"))
    s5_cover, s5_images = build_2s5(s6)
    write_json(os.path.join(root, "covers", "2S5.json"),
               cover_file("2.S5", "S5", s5_cover, s5_images, "preimage of a point stabilizer S_5 in 2.S6"))

    pgl_cover, pgl_images = build_2pgl27()
    write_json(os.path.join(root, "groups", "PGL27.json"),
               group_file("PGL2(7)", pgl_images, "PGL_2(7) on the projective line over F_7"))
    write_json(os.path.join(root, "covers", "2PGL27.json"),
               cover_file("2.PGL2(7)", "../groups/PGL27.json", pgl_cover, pgl_images,
                          "{A in GL_2(F_7) : det A = +-1} -> PGL_2(7)"))

    params = {
        "h25.json": {"group": "S5", "classes": ["(1 2)", "(1 2 3 4 5)"], "nu": [4, 1]},
        "h25_not_allowed.json": {"group": "S5", "classes": ["(1 2)", "(1 2 3 4 5)"], "nu": [3, 1]},
        "s5_221.json": {"group": "S5", "classes": ["(1 2)", "(1 2 3)", "(1 2 3 4 5)"], "nu": [2, 2, 1]},
        "s5_212.json": {"group": "S5", "classes": ["(1 2)", "(1 2 3)", "(1 2 3 4 5)"], "nu": [2, 1, 2]},
    }
    for n in (3, 4, 5, 6):
        params["a5_c3_%d.json" % n] = {"group": "A5", "classes": ["(1 2 3)"], "nu": [n],
                                      "cover": "../covers/SL25.json"}
    for name, obj in params.items():
        write_json(os.path.join(root, "params", name), obj)

    # Class lists for condition E. C42 and C33 both lie in A6, so these are
    # not Hurwitz parameters of S6 and carry no nu.
    classlists = {
        "s6_42_33.json": {"group": "../groups/S6.json",
                          "classes": [{"order": 4, "cycle_type": [4, 2]}, {"order": 3, "cycle_type": [3, 3]}],
                          "cover": "../covers/2S6.json"},
        "s6_42_2111.json": {"group": "../groups/S6.json",
                            "classes": [{"order": 4, "cycle_type": [4, 2]}, {"order": 2, "cycle_type": [2]}],
                            "cover": "../covers/2S6.json"},
    }
    os.makedirs(os.path.join(root, "classlists"), exist_ok=True)
    for name, obj in classlists.items():
        write_json(os.path.join(root, "classlists", name), obj)


if __name__ == "__main__":
    main()
