"""Parameter regions on which the plain or rotated operators are uniformly bounded."""

from __future__ import annotations

import math

from ..errors import ConfigError
from ..norms import BESOV, TRIEBEL_LIZORKIN, SpaceParams

PLAIN = "plain"
ROTATED = "rotated"
OPS = (PLAIN, ROTATED)

TL_ROTATED = "Triebel-Lizorkin rotated region (2<=p<=inf, 2<=q<=inf, s>0 with q=2 edge rules)"
TL_PLAIN = "Triebel-Lizorkin plain region (2<=q<=p<inf, s>=0)"
B_ROTATED = "Besov rotated region (2<=p<=inf, 0<q<=inf, s>0; q=inf when p=inf)"
B_PLAIN = "Besov plain region (2<=p<inf, 0<q<=inf, s>=0)"


def tl_rotated_region(sp: SpaceParams) -> bool:
    p, q, s = sp.p, sp.q, sp.s
    if sp.kind != TRIEBEL_LIZORKIN or p < 2 or q < 2:
        return False
    if math.isinf(p):
        return (q == 2 and s == 0) or (math.isinf(q) and s > 0)
    if q == 2:
        return s >= 0
    return s > 0


def tl_plain_region(sp: SpaceParams) -> bool:
    return sp.kind == TRIEBEL_LIZORKIN and 2 <= sp.q <= sp.p < math.inf and sp.s >= 0


def besov_rotated_region(sp: SpaceParams) -> bool:
    if sp.kind != BESOV or sp.p < 2 or not sp.q > 0 or not sp.s > 0:
        return False
    return not math.isinf(sp.p) or math.isinf(sp.q)


def besov_plain_region(sp: SpaceParams) -> bool:
    return sp.kind == BESOV and 2 <= sp.p < math.inf and sp.q > 0 and sp.s >= 0


_RULES = {
    (TRIEBEL_LIZORKIN, PLAIN): (tl_plain_region, TL_PLAIN),
    (TRIEBEL_LIZORKIN, ROTATED): (tl_rotated_region, TL_ROTATED),
    (BESOV, PLAIN): (besov_plain_region, B_PLAIN),
    (BESOV, ROTATED): (besov_rotated_region, B_ROTATED),
}


def region_name(sp: SpaceParams, op: str) -> str:
    return _RULES[(sp.kind, op)][1]


def in_region(sp: SpaceParams, op: str) -> bool:
    if op not in OPS:
        raise ConfigError(f"operator must be one of {OPS}, got {op!r}")
    return _RULES[(sp.kind, op)][0](sp)


def admissible_ops(sp: SpaceParams) -> list[str]:
    return [op for op in OPS if in_region(sp, op)]


def require_region(sp: SpaceParams, op: str) -> None:
    """Raise ``ConfigError`` naming the region when ``op`` is not covered on ``sp``."""
    if not in_region(sp, op):
        raise ConfigError(f"space {sp} lies outside the {region_name(sp, op)} for the {op} operator")


def ops_for(sp: SpaceParams, requested: str = "auto") -> list[str]:
    """Operators to test on ``sp``: all covered ones for ``auto``, else the one requested."""
    if requested == "auto":
        ops = admissible_ops(sp)
        if not ops:
            raise ConfigError(
                f"space {sp} lies outside every boundedness region "
                f"({region_name(sp, PLAIN)}; {region_name(sp, ROTATED)})"
            )
        return ops
    require_region(sp, requested)
    return [requested]
