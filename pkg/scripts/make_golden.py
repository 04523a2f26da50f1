#!/usr/bin/env python3
"""Regenerate the packaged golden JSON files for the conformal vectors and
the eight highest weight vectors.

The golden files pin the exact closed forms; the verification commands
compare freshly constructed states against them byte-for-byte, so any
accidental change to the constructors is caught.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from e6coset import fock, hwv, virasoro  # noqa: E402

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "src" / "e6coset" / "golden"


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)
    items = {
        "omega_e6.json": virasoro.omega_e6().state,
        "omega_f4.json": virasoro.omega_f4().state,
        "omega_coset.json": virasoro.omega_coset().state,
    }
    for b in hwv.builtin_hwvs():
        items[f"hwv_{b.name}.json"] = b.state
    for name, state in sorted(items.items()):
        path = GOLDEN / name
        path.write_text(fock.dump_state(state) + "\n", encoding="utf-8")
        print(f"wrote {path} ({len(state)} terms)")


if __name__ == "__main__":
    main()
