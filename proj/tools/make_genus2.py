#!/usr/bin/env python3
"""Writes the genus-2 fixture: boundary of a 5x3x1 slab of unit cubes with two
interior cubes removed, each unit face split into a 2x2 grid of quads."""
import sys

SOLID = {(x, y) for x in range(5) for y in range(3)} - {(1, 1), (3, 1)}
SPLIT = 2


def faces():
    # (origin, u, v) with u x v pointing out of the solid, in units of cells.
    for (x, y) in sorted(SOLID):
        if (x - 1, y) not in SOLID:
            yield (x, y, 0), (0, 0, 1), (0, 1, 0)
        if (x + 1, y) not in SOLID:
            yield (x + 1, y, 0), (0, 1, 0), (0, 0, 1)
        if (x, y - 1) not in SOLID:
            yield (x, y, 0), (1, 0, 0), (0, 0, 1)
        if (x, y + 1) not in SOLID:
            yield (x, y + 1, 0), (0, 0, 1), (1, 0, 0)
        yield (x, y, 0), (0, 1, 0), (1, 0, 0)
        yield (x, y, 1), (1, 0, 0), (0, 1, 0)


def main(path):
    index, points, tris = {}, [], []

    def vid(p):
        if p not in index:
            index[p] = len(points)
            points.append(p)
        return index[p]

    for o, u, v in faces():
        def at(i, j):
            return tuple(SPLIT * o[k] + i * u[k] + j * v[k] for k in range(3))
        for i in range(SPLIT):
            for j in range(SPLIT):
                a, b, c, d = vid(at(i, j)), vid(at(i + 1, j)), vid(at(i + 1, j + 1)), vid(at(i, j + 1))
                tris.append((a, b, c))
                tris.append((a, c, d))

    with open(path, "w") as f:
        f.write("OFF\n# genus-2 slab\n%d %d 0\n" % (len(points), len(tris)))
        for p in points:
            f.write("%g %g %g\n" % tuple(c / SPLIT for c in p))
        for t in tris:
            f.write("3 %d %d %d\n" % t)
    edges = {tuple(sorted((t[k], t[(k + 1) % 3]))) for t in tris for k in range(3)}
    print("V=%d E=%d F=%d chi=%d" % (len(points), len(edges), len(tris), len(points) - len(edges) + len(tris)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "genus2.off")
