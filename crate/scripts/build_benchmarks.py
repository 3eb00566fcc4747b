#!/usr/bin/env python3
"""Assemble the benchmark corpus in KEEL .dat format.

Sources:
  * the `keel_ds` wheel (headerless KEEL dumps), `pip download keel-ds --no-deps`
  * the `linfa-datasets` crate (winequality-red.csv.gz)

glass and yeast are only shipped as one-vs-rest variants in keel_ds; the
multiclass versions are rebuilt by matching feature-vector multisets and
cross-checked against the other one-vs-rest files.

usage: build_benchmarks.py <keel_ds package dir> <linfa-datasets dir> <out dir>
"""
import gzip
import os
import sys
from collections import Counter


def load_raw(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("@"):
                continue
            parts = [p.strip() for p in line.split(",")]
            rows.append((parts[:-1], parts[-1]))
    return rows


def is_int(tok):
    try:
        return float(tok) == int(float(tok)) and "." not in tok
    except ValueError:
        return False


def write_keel(path, name, rows, attr_names=None):
    n_attr = len(rows[0][0])
    attr_names = attr_names or [f"a{i + 1}" for i in range(n_attr)]
    classes = []
    for _, y in rows:
        if y not in classes:
            classes.append(y)
    with open(path, "w") as fh:
        fh.write(f"@relation {name}\n")
        for j, an in enumerate(attr_names):
            col = [r[0][j] for r in rows]
            vals = [float(c) for c in col]
            kind = "integer" if all(is_int(c) for c in col) else "real"
            lo, hi = min(vals), max(vals)
            fmt = (lambda v: str(int(v))) if kind == "integer" else repr
            fh.write(f"@attribute {an} {kind} [{fmt(lo)}, {fmt(hi)}]\n")
        fh.write("@attribute class {" + ", ".join(classes) + "}\n")
        fh.write("@inputs " + ", ".join(attr_names) + "\n")
        fh.write("@outputs class\n@data\n")
        for x, y in rows:
            fh.write(", ".join(x) + ", " + y + "\n")


def rebuild_glass(imb):
    base = load_raw(os.path.join(imb, "glass0.dat"))
    labels = [None] * len(base)
    for fname, cls in [("glass0", "1"), ("glass1", "2"), ("glass4", "5"), ("glass5", "6"), ("glass6", "7")]:
        other = load_raw(os.path.join(imb, fname + ".dat"))
        assert [r[0] for r in other] == [r[0] for r in base], fname
        for i, (_, y) in enumerate(other):
            if y == "positive":
                assert labels[i] is None
                labels[i] = cls
    labels = [l or "3" for l in labels]
    assert Counter(labels)["3"] == 17
    return [(x, l) for (x, _), l in zip(base, labels)]


def key_of(x):
    return tuple(float(v) for v in x)


def rebuild_yeast(imb):
    def load(f):
        return load_raw(os.path.join(imb, f))

    def vecs(f, which):
        return Counter(key_of(x) for x, y in load(f) if y == which)

    base = load("yeast1.dat")
    allv = Counter(key_of(x) for x, _ in base)
    cls = {
        "NUC": vecs("yeast1.dat", "positive"),
        "ME3": vecs("yeast3.dat", "positive"),
        "ME2": vecs("yeast4.dat", "positive"),
        "ME1": vecs("yeast5.dat", "positive"),
        "EXC": vecs("yeast6.dat", "positive"),
        "VAC": vecs("yeast-1-2-8-9_vs_7.dat", "positive"),
        "POX": vecs("yeast-2_vs_8.dat", "positive"),
        "CYT": vecs("yeast-2_vs_4.dat", "negative"),
    }
    cls["ERL"] = vecs("yeast-1-2-8-9_vs_7.dat", "negative") - cls["NUC"] - cls["CYT"] - cls["POX"]
    rest = allv.copy()
    for v in cls.values():
        rest -= v
    cls["MIT"] = rest
    total = Counter()
    for v in cls.values():
        total += v
    assert total == allv
    assert vecs("yeast-0-5-6-7-9_vs_4.dat", "negative") == cls["MIT"] + cls["ME3"] + cls["EXC"] + cls["VAC"] + cls["ERL"]
    assert vecs("yeast-0-3-5-9_vs_7-8.dat", "negative") == cls["MIT"] + cls["ME1"] + cls["ME3"] + cls["ERL"]
    order = ["MIT", "NUC", "CYT", "ME1", "ME2", "ME3", "EXC", "VAC", "POX", "ERL"]
    remaining = {k: cls[k].copy() for k in order}
    rows = []
    for x, _ in base:
        key = key_of(x)
        for k in order:
            if remaining[k][key] > 0:
                remaining[k][key] -= 1
                rows.append((x, k))
                break
    assert len(rows) == len(base)
    return rows


def main():
    keel_dir, linfa_dir, out = sys.argv[1:4]
    os.makedirs(out, exist_ok=True)
    bal = os.path.join(keel_dir, "data", "balanced", "raw")
    imb = os.path.join(keel_dir, "data", "imbalanced", "raw")
    for name in ["australian", "bands", "bupa", "heart", "ionosphere", "pima", "sonar",
                 "vehicle", "vowel", "wine", "wisconsin"]:
        write_keel(os.path.join(out, name + ".dat"), name, load_raw(os.path.join(bal, name + ".dat")))
    write_keel(os.path.join(out, "glass.dat"), "glass", rebuild_glass(imb))
    write_keel(os.path.join(out, "yeast.dat"), "yeast", rebuild_yeast(imb))
    with gzip.open(os.path.join(linfa_dir, "data", "winequality-red.csv.gz"), "rt") as fh:
        lines = [l.strip() for l in fh if l.strip()]
    header = [h.strip('"').replace(" ", "_") for h in lines[0].split(",")]
    rows = [([p for p in l.split(",")[:-1]], l.split(",")[-1]) for l in lines[1:]]
    write_keel(os.path.join(out, "winequality-red.dat"), "winequality-red", rows, header[:-1])


if __name__ == "__main__":
    main()
