#!/usr/bin/env python3
"""Regenerate the machine-file fixtures from the corpus builders."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pebbletk import corpus
from pebbletk.machinefile import print_definitions

HERE = pathlib.Path(__file__).resolve().parents[1]


def main():
    fixtures = HERE / "fixtures"
    fixtures.mkdir(exist_ok=True)
    files = {
        "examples.ptk": [corpus.make("mapRev"), corpus.make("copier"),
                         corpus.ulsq(), corpus.square(),
                         corpus.zebra(1), corpus.zebra(2)],
        "blind_suite.ptk": [corpus.ulsq(("a", "b")), corpus.blind_pos1(),
                            corpus.blind_eps_leaf(), corpus.blind_padded_ulsq(),
                            corpus.blind_cube()],
        "last_suite.ptk": [corpus.square(), corpus.last_pos1(),
                           corpus.last_eps_leaf(), corpus.last_padded_square(),
                           corpus.last_marked_echo()],
    }
    for fname, machines in files.items():
        path = fixtures / fname
        path.write_text(print_definitions(machines), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
