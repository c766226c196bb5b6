"""Regenerate the JSON documents in this directory.

    python3 fixtures/make_fixtures.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from twodesc import io
from twodesc.catalog import B, involution_fixtures
from twodesc.descent_data import action_to_descent, galois_to_cover, identity_descent_morphism
from twodesc.groupoid import terminal
from twodesc.groups import GroupAction, cyclic, symmetric, trivial_action
from twodesc.weak_action import action_on_one_object

HERE = Path(__file__).resolve().parent


def documents() -> dict[str, object]:
    z1, z2, z3 = cyclic(1), cyclic(2), cyclic(3)
    fx = involution_fixtures()
    inversion = action_to_descent(fx["B(Z3) inversion"])
    return {
        "terminal.json": terminal(),
        "bz3.json": B(z3),
        "z2.json": z2,
        "z3.json": z3,
        "s3.json": symmetric(3),
        "bz3_inversion.action.json": fx["B(Z3) inversion"],
        "bz3_inversion.galois.json": inversion,
        "bz3_inversion.cover.json": galois_to_cover(inversion),
        "bz2_trivial.galois.json": action_to_descent(fx["B(Z2) trivial"]),
        "bz2_twisted.action.json": fx["B(Z2) twisted"],
        "bz3_trivial_gamma.galois.json": action_to_descent(
            action_on_one_object(trivial_action(z1, z3))),
        "bz3_inversion.identity.morphism.json": identity_descent_morphism(inversion),
        "bs3_trivial.galois.json": action_to_descent(
            action_on_one_object(GroupAction(z2, symmetric(3), np.tile(np.arange(6), (2, 1))))),
    }


def main() -> None:
    for name, entity in documents().items():
        io.save(entity, HERE / name)


if __name__ == "__main__":
    main()
