"""Resource caps for the combinatorial blow-ups in this package.

Every operation that enumerates shapes, leaf subsets or edge multisets checks
one of these limits first and refuses (with a clear error) instead of running
away.  The verification suite downgrades a refused check to "skipped with
reason" rather than silently truncating it.  Defaults are sized for desk-scale
runs; the ``TREEPOLY_CAPS`` environment variable overrides them, e.g.
``TREEPOLY_CAPS="max_columns=200000,max_scan=5000000"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import DomainError

ENV_VAR = "TREEPOLY_CAPS"


@dataclass(frozen=True)
class ResourceCaps:
    #: largest shape family RB_U(m) a density matrix will be built over
    max_columns: int = 100_000
    #: largest number of subsets / edge multisets an exhaustive scan may visit
    max_scan: int = 10_000_000
    #: largest shape family the verification suite will enumerate exhaustively
    max_shapes: int = 100_000

    @classmethod
    def from_env(cls, environ: "os._Environ[str] | dict[str, str] | None" = None) -> "ResourceCaps":
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_VAR, "").strip()
        caps = cls()
        if not raw:
            return caps
        known = {f.name for f in fields(cls)}
        for item in raw.split(","):
            name, _, value = item.partition("=")
            name = name.strip()
            if name not in known:
                raise DomainError(f"unknown cap {name!r} in {ENV_VAR}")
            try:
                caps = replace(caps, **{name: int(value)})
            except ValueError as exc:
                raise DomainError(f"cap {name!r} needs an integer, got {value!r}") from exc
        return caps


DEFAULT_CAPS = ResourceCaps()
