#!/usr/bin/env python3
"""Writes data/catalog.json and the malformed catalog fixtures."""
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def poly(terms):
    """terms: {(i, j): int or (re, im)} -> canonical JSON polynomial."""
    out = []
    for (i, j), c in sorted(terms.items(), key=lambda t: (t[0][0] + t[0][1], -t[0][0])):
        re, im = (c, 0) if isinstance(c, int) else c
        out.append({"i": i, "j": j, "re": [str(re), "1"], "im": [str(im), "1"]})
    return {"terms": out}


def entry(name, first, second, tags, degree=None):
    e = {"name": name, "map": {"first": poly(first), "second": poly(second)}, "tags": tags}
    if degree is not None:
        e["expected_degree"] = degree
    return e


AUT = ["keller", "automorphism"]
CATALOG = [
    entry("identity", {(1, 0): 1}, {(0, 1): 1}, AUT, 1),
    entry("shear_x2", {(1, 0): 1, (0, 2): 1}, {(0, 1): 1}, AUT, 1),
    entry("shear_y3", {(1, 0): 1}, {(0, 1): 1, (3, 0): 1}, AUT, 1),
    entry("swap_neg", {(0, 1): 1, (2, 0): 1}, {(1, 0): -1}, AUT, 1),
    entry("affine_a", {(1, 0): 2, (0, 1): 1, (0, 0): 1}, {(1, 0): 1, (0, 1): 1, (0, 0): -1}, AUT, 1),
    entry("henon_like", {(0, 1): 1}, {(1, 0): -1, (0, 2): 1, (0, 0): 1}, AUT, 1),
    entry("translate", {(1, 0): 1, (0, 0): 3}, {(0, 1): 1}, AUT, 1),
    # (X + (Y + X^2)^2, Y + X^2)
    entry("tame_mix", {(1, 0): 1, (0, 2): 1, (2, 1): 2, (4, 0): 1}, {(0, 1): 1, (2, 0): 1}, AUT, 1),
    entry("square_x", {(2, 0): 1}, {(0, 1): 1}, ["power"], 2),
    entry("cube_y", {(1, 0): 1}, {(0, 3): 1}, ["power"], 3),
    entry("xy_map", {(1, 1): 1}, {(0, 1): 1}, ["exploratory"], 1),
    entry("xy2_map", {(1, 2): 1}, {(0, 1): 1}, ["exploratory"], 1),
]


def write(path, doc):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")


def main():
    write(ROOT / "data" / "catalog.json", {"maps": CATALOG})
    fixtures = ROOT / "tests" / "fixtures"
    write(fixtures / "bad_tag.json", {"maps": [entry("square_x", {(2, 0): 1}, {(0, 1): 1}, ["keller"])]})
    write(fixtures / "duplicate.json", {"maps": [CATALOG[1], dict(CATALOG[2], name="shear_x2")]})
    write(fixtures / "bad_automorphism.json",
          {"maps": [entry("square_x", {(2, 0): 1}, {(0, 1): 1}, ["automorphism"])]})
    (fixtures / "malformed.json").write_text('{"maps": [\n  {"name": "identity",\n   "map": }\n]}\n')
    write(fixtures / "missing_field.json", {"maps": [{"name": "identity", "tags": []}]})
    return 0


if __name__ == "__main__":
    sys.exit(main())
