"""Desk-scale enumeration guards.

Enumerations over coverings, block permutations, and merging posets grow
very fast; the guards below keep default runs in the minutes range.  Every
bound can be raised explicitly through the STEINFORGE_GUARD_OVERRIDE
environment variable, e.g.

    STEINFORGE_GUARD_OVERRIDE="max_bricks=16,merging_n_s2=7"
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import GuardExceededError

ENV_VAR = "STEINFORGE_GUARD_OVERRIDE"


@dataclass(frozen=True)
class Guards:
    max_bricks: int = 12          # exhaustive coarsening enumeration
    perm_blocks: int = 8          # block-permutation search in vertex comparisons
    stab_blocks: int = 6          # stabilizer enumeration
    elementary_s: int = 3         # exhaustive elementary-covering enumeration
    merging_n_s1: int = 8         # merging posets, by dimension
    merging_n_s2: int = 6
    merging_n_s3: int = 5

    def merging_n(self, s: int) -> int:
        if s == 1:
            return self.merging_n_s1
        if s == 2:
            return self.merging_n_s2
        return self.merging_n_s3


def active_guards() -> Guards:
    g = Guards()
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return g
    names = {f.name for f in fields(Guards)}
    overrides = {}
    for item in raw.split(","):
        if not item.strip():
            continue
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in names:
            raise GuardExceededError(f"unknown guard override {key!r}")
        overrides[key] = int(value)
    return replace(g, **overrides)


def check_guard(value: int, bound: int, what: str) -> None:
    if value > bound:
        raise GuardExceededError(
            f"{what}: {value} exceeds guard {bound}; "
            f"set {ENV_VAR} to raise it explicitly"
        )
