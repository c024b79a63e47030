#!/usr/bin/env python3
"""Digitize the 3D building-block atlas from layer-diagram coordinates.

Each block with a reference layer diagram is transcribed here as per-layer
fill groups (x ranges x y ranges), bottom layer first.  Blocks defined by
rotation are generated from their base block and, where an independent
reference diagram exists (d, a), cross-checked against a verbatim transcription.
Bump partners without reference diagrams (X, Y, Z) are built as a full cube plus the
bounding-box complement of the matching dent block, attached on the
appropriate face.

Outputs, under data/atlas3/:
  <name>.vox      one cell per line "x y z", canonicalized, sorted
  manifest.json   bounding boxes, cube anchors, complement specs, sha256
"""

import hashlib
import json
import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "atlas3")


def cells_from_layers(layers):
    """layers: list of list of (xs, ys) fill groups."""
    s = set()
    for z, groups in enumerate(layers):
        for xs, ys in groups:
            for x in xs:
                for y in ys:
                    key = (x, y, z)
                    assert key not in s, f"duplicate fill {key}"
                    s.add(key)
    return s


R = range


def full8():
    return [(R(0, 8), R(0, 8))]


# --- block c: functional cube, dent on the north side (fig. layers 1..8) ---
c_L2 = [(R(0, 8), [0, 1, 2, 3, 4, 7]), (R(0, 8), []), ([0, 7], [5, 6])]
c_L3 = [(R(0, 8), [0, 1, 2, 3, 4, 7]), ([0, 7], [5, 6]), (R(2, 6), [6])]
c_L45 = [(R(0, 8), R(0, 5)), ([0, 7], [5, 6]), ([2, 5], [6]),
         ([0, 1, 2, 5, 6, 7], [7])]
c_layers = [full8(), c_L2, c_L3, c_L45, c_L45, c_L3, c_L2, full8()]

# --- block c-: 8x7x8, same dent, base one unit shorter to the south ---
cm_L2 = [(R(0, 8), [0, 1, 2, 3, 6]), ([0, 7], [4, 5])]
cm_L3 = [(R(0, 8), [0, 1, 2, 3, 6]), ([0, 7], [4, 5]), (R(2, 6), [5])]
cm_L45 = [(R(0, 8), R(0, 4)), ([0, 7], [4, 5]), ([2, 5], [5]),
          ([0, 1, 2, 5, 6, 7], [6])]
cm_layers = [[(R(0, 8), R(0, 7))], cm_L2, cm_L3, cm_L45, cm_L45, cm_L3,
             cm_L2, [(R(0, 8), R(0, 7))]]

# --- block C: functional cube, bump on the south side ---
C_L2 = full8() + [(R(1, 7), [-2, -3])]
C_L3 = full8() + [([1, 6], [-2]), (R(1, 7), [-3])]
C_L45 = full8() + [([3, 4], [-1, -2]), ([1, 6], [-2]), (R(1, 7), [-3])]
C_layers = [full8(), C_L2, C_L3, C_L45, C_L45, C_L3, C_L2, full8()]

# --- block d (independent transcription; must equal c rotated 180) ---
d_L2 = [(R(0, 8), [0, 3, 4, 5, 6, 7]), ([0, 7], [1, 2])]
d_L3 = [(R(0, 8), [0, 3, 4, 5, 6, 7]), ([0, 7], [1, 2]), (R(2, 6), [1])]
d_L45 = [(R(0, 8), R(3, 8)), ([0, 7], [1, 2]), ([2, 5], [1]),
         ([0, 1, 2, 5, 6, 7], [0])]
d_layers = [full8(), d_L2, d_L3, d_L45, d_L45, d_L3, d_L2, full8()]

# --- block D+: 8x9x8 base, bump on the north side ---
full9 = [(R(0, 8), R(0, 9))]
Dp_L2 = full9 + [(R(1, 7), [10, 11])]
Dp_L3 = full9 + [(R(1, 7), [11]), ([1, 6], [10])]
Dp_L45 = full9 + [(R(1, 7), [11]), ([1, 6], [10]), ([3, 4], [9, 10])]
Dp_layers = [full9, Dp_L2, Dp_L3, Dp_L45, Dp_L45, Dp_L3, Dp_L2, full9]

# --- block a (independent transcription; must equal c rotated 90 cw) ---
a_L2 = [([0, 1, 2, 3, 4, 7], R(0, 8)), ([5, 6], [0, 7])]
a_L3 = [([0, 1, 2, 3, 4, 7], R(0, 8)), ([5, 6], [0, 7]), ([6], R(2, 6))]
a_L45 = [(R(0, 5), R(0, 8)), ([5, 6], [0, 7]), ([6], [2, 5]),
         ([7], [0, 1, 2, 5, 6, 7])]
a_layers = [full8(), a_L2, a_L3, a_L45, a_L45, a_L3, a_L2, full8()]

# --- block x: functional cube, dent on the west side (narrow mouth) ---
x_L27 = [([0, 3, 4, 5, 6, 7], R(0, 8)), ([1, 2], [0, 7])]
x_L36 = [([0, 3, 4, 5, 6, 7], R(0, 8)), ([1, 2], [0, 7]), ([1], R(2, 6))]
x_L45 = [(R(3, 8), R(0, 8)), ([1, 2], [0, 7]), ([1], [2, 3, 5]),
         ([0], [0, 1, 2, 3, 5, 6, 7])]
x_layers = [full8(), x_L27, x_L36, x_L45, x_L45, x_L36, x_L27, full8()]

# --- standard filler F (6 layers) ---
F_L16 = [(R(1, 7), [1, 2, 5, 6])]
F_L25 = [(R(1, 7), [1, 6]), ([1, 6], [2, 5])]
F_L34 = [(R(1, 7), [1, 6]), ([1, 6], [2, 5]), ([3, 4], R(2, 6))]
F_layers = [F_L16, F_L25, F_L34, F_L34, F_L25, F_L16]

# --- bigger filler F+ (8 layers, with the 8x1x8 middle slab) ---
Fp_L18 = [(R(0, 8), [3])]
Fp_L27 = [(R(1, 7), [0, 1, 5, 6]), (R(0, 8), [3])]
Fp_L36 = [(R(1, 7), [0, 6]), ([1, 6], [1, 5]), (R(0, 8), [3])]
Fp_L45 = [(R(1, 7), [0, 6]), ([1, 6], [1, 5]), ([3, 4], R(1, 6)),
          ([0, 1, 2, 5, 6, 7], [3])]
Fp_layers = [Fp_L18, Fp_L27, Fp_L36, Fp_L45, Fp_L45, Fp_L36, Fp_L27, Fp_L18]


def canon(cells):
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    mz = min(c[2] for c in cells)
    return {(x - mx, y - my, z - mz) for x, y, z in cells}


def rot_z_cw(cells):  # north -> east
    return canon({(y, -x, z) for x, y, z in cells})


def rot_z_ccw(cells):  # north -> west
    return canon({(-y, x, z) for x, y, z in cells})


def rot_z_180(cells):
    return canon({(-x, -y, z) for x, y, z in cells})


def rot_y_west_down(cells):  # west -> bottom
    return canon({(-z, y, x) for x, y, z in cells})


def bbox(cells):
    return tuple(max(c[i] for c in cells) + 1 for i in range(3))


def complement(cells):
    b = bbox(cells)
    return {(x, y, z) for x in range(b[0]) for y in range(b[1])
            for z in range(b[2]) if (x, y, z) not in cells}


def cube():
    return {(x, y, z) for x in range(8) for y in range(8) for z in range(8)}


def shift(cells, v):
    return {(x + v[0], y + v[1], z + v[2]) for x, y, z in cells}


def connected(cells):
    cells = set(cells)
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y, z = stack.pop()
        for d in ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1),
                  (0, 0, -1)):
            n = (x + d[0], y + d[1], z + d[2])
            if n in cells and n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(cells)


def is_full_box(cells):
    b = bbox(cells)
    return len(cells) == b[0] * b[1] * b[2]


def main():
    blk = {}
    blk["c"] = canon(cells_from_layers(c_layers))
    blk["c-"] = canon(cells_from_layers(cm_layers))
    blk["C"] = canon(cells_from_layers(C_layers))
    blk["x"] = canon(cells_from_layers(x_layers))
    blk["F"] = canon(cells_from_layers(F_layers))
    blk["F+"] = canon(cells_from_layers(Fp_layers))
    blk["D+"] = canon(cells_from_layers(Dp_layers))

    # rotation-defined blocks, cross-checked where a diagram exists
    blk["d"] = rot_z_180(blk["c"])
    assert blk["d"] == canon(cells_from_layers(d_layers)), "d transcription"
    blk["d-"] = rot_z_180(blk["c-"])
    blk["a"] = rot_z_cw(blk["c"])
    assert blk["a"] == canon(cells_from_layers(a_layers)), "a transcription"
    blk["b"] = rot_z_ccw(blk["c"])
    blk["A"] = rot_z_cw(blk["C"])
    blk["B"] = rot_z_ccw(blk["C"])
    blk["y"] = rot_z_ccw(blk["x"])
    blk["z"] = rot_y_west_down(blk["x"])

    # bump partners of x/y/z: full cube plus the dent complement on a face
    blk["X"] = canon(cube() | shift(complement(blk["x"]), (8, 0, 0)))
    blk["Y"] = canon(cube() | shift(complement(blk["y"]), (0, 8, 0)))
    blk["Z"] = canon(cube() | shift(complement(blk["z"]), (0, 0, 8)))

    complements = [
        ("c", "C", (0, 5, 0), (8, 16, 8)),
        ("c-", "C", (0, 4, 0), (8, 15, 8)),
        ("d", "D+", (0, -9, 0), (8, 17, 8)),
        ("d-", "D+", (0, -9, 0), (8, 16, 8)),
        ("a", "A", (5, 0, 0), (16, 8, 8)),
        ("b", "B", (-8, 0, 0), (16, 8, 8)),
        ("x", "X", (-8, 0, 0), (16, 8, 8)),
        ("y", "Y", (0, -8, 0), (8, 16, 8)),
        ("z", "Z", (0, 0, -8), (8, 8, 16)),
    ]
    for dent, bump, off, ext in complements:
        u = set(blk[dent]) | shift(blk[bump], off)
        assert len(u) == len(blk[dent]) + len(blk[bump]), (dent, bump)
        cu = canon(u)
        assert bbox(cu) == ext and is_full_box(cu), (dent, bump, bbox(cu))

    # cube anchors: canonical position of the main-box minimum corner
    anchors = {n: (0, 0, 0) for n in blk}
    anchors["C"] = (0, 3, 0)
    anchors["A"] = (3, 0, 0)

    for n, s in blk.items():
        assert connected(s), n

    os.makedirs(OUT, exist_ok=True)
    manifest = {"blocks": {}, "complements": []}
    for n in sorted(blk):
        path = os.path.join(OUT, n + ".vox")
        lines = [f"# block {n}\n"]
        for x, y, z in sorted(blk[n]):
            lines.append(f"{x} {y} {z}\n")
        data = "".join(lines)
        with open(path, "w") as f:
            f.write(data)
        manifest["blocks"][n] = {
            "file": n + ".vox",
            "bbox": list(bbox(blk[n])),
            "cells": len(blk[n]),
            "cube_anchor": list(anchors[n]),
            "sha256": hashlib.sha256(data.encode()).hexdigest(),
        }
    for dent, bump, off, ext in complements:
        manifest["complements"].append({
            "dent": dent, "bump": bump,
            "offset": list(off), "extents": list(ext),
        })
    with open(os.path.join(OUT, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=1, sort_keys=True)
        f.write("\n")
    for n in sorted(blk):
        print(f"{n:3s} cells={len(blk[n]):4d} bbox={bbox(blk[n])}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
