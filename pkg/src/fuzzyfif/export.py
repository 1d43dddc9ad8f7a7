"""Deterministic table and manifest writers.

Floats are serialized with shortest round-trip repr, tables carry a fixed
column order, and the manifest records a digest per table plus a bundle
digest over all of them, so identical runs diff byte-for-byte.
"""

import hashlib
import json
import os

import numpy as np

from .errors import FuzzyFifError


def format_float(v):
    return repr(float(v))


def write_csv(path, header, columns):
    cols = [np.asarray(c) for c in columns]
    n = cols[0].size
    if any(c.size != n for c in cols):
        raise FuzzyFifError("table columns differ in length")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in range(n):
            fh.write(",".join(format_float(c[row]) for c in cols) + "\n")


def file_digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def level_tag(lam):
    return format(float(lam), "g")


class ExportBundle:
    """Accumulates tables in an output directory, then seals a manifest."""

    def __init__(self, out_dir):
        os.makedirs(out_dir, exist_ok=True)
        self.out_dir = out_dir
        self.tables = {}
        self.meta = {}

    def add_table(self, name, header, columns):
        path = os.path.join(self.out_dir, name)
        write_csv(path, header, columns)
        self.tables[name] = file_digest(path)
        return path

    def write_manifest(self, extra=None):
        bundle = hashlib.sha256()
        for name in sorted(self.tables):
            bundle.update(name.encode())
            bundle.update(self.tables[name].encode())
        doc = {
            "tables": {k: self.tables[k] for k in sorted(self.tables)},
            "bundle_checksum": bundle.hexdigest(),
        }
        doc.update(self.meta)
        if extra:
            doc.update(extra)
        path = os.path.join(self.out_dir, "manifest.json")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return path


def samples_table(bundle, fif, levels, name="fif_samples.csv"):
    """x column, then per exported level the lower/upper endpoint columns."""
    header = ["x"]
    columns = [fif.grid_x]
    for lam in sorted(set(float(x) for x in levels)):
        k, w = fif.grid.interp_weights(lam)
        lo = (1 - w) * fif.lower[:, k] + w * fif.lower[:, k + 1]
        up = (1 - w) * fif.upper[:, k] + w * fif.upper[:, k + 1]
        tag = level_tag(lam)
        header += [f"lower_{tag}", f"upper_{tag}"]
        columns += [lo, up]
    return bundle.add_table(name, header, columns)


def level_curves_table(bundle, entries, name="level_curves.csv"):
    """Per level: fuzzy slice curves, independent scalar curves, and their gap.

    ``entries`` is a list of (level, x, fif_lower, fif_upper, scalar_lower,
    scalar_upper); all levels share the x grid.
    """
    if not entries:
        return None
    header = ["x"]
    columns = [entries[0][1]]
    for lam, _x, flo, fup, slo, sup in sorted(entries, key=lambda e: e[0]):
        tag = level_tag(lam)
        gap = np.maximum(np.abs(flo - slo), np.abs(fup - sup))
        header += [
            f"fif_lower_{tag}", f"fif_upper_{tag}",
            f"scalar_lower_{tag}", f"scalar_upper_{tag}", f"gap_{tag}",
        ]
        columns += [flo, fup, slo, sup, gap]
    return bundle.add_table(name, header, columns)
